"""Pure-Python polynomial kernels.

Reference implementations of the hot routines; the compiled module
`prym_atlas._kernels` mirrors this API exactly.  Two structurally
different routes build the same matrix entries:

- `hw_entry_terms` enumerates bounded compositions of the target degree
  directly, multiplying binomial factors along the way;
- `series_coefficient` expands prod_k (1 + z_k t)^{c_k} one factor at a
  time, truncated in t, and reads off one t-slice.

Keys are exponent tuples of length len(caps); values are residues mod p
with zeros dropped.
"""

from math import comb

BACKEND = "python"


def _binom_row(c: int, p: int) -> list[int]:
    return [comb(c, l) % p for l in range(c + 1)]


def hw_entry_terms(caps, upsilon, p):
    """Terms of sum over compositions of upsilon within caps of
    prod_k C(caps_k, l_k) z^l, reduced mod p."""
    s = len(caps)
    out = {}
    if upsilon < 0:
        return out
    suffix = [0] * (s + 1)
    for k in range(s - 1, -1, -1):
        suffix[k] = suffix[k + 1] + caps[k]
    if upsilon > suffix[0]:
        return out
    binom = [_binom_row(c, p) for c in caps]
    expo = [0] * s

    def rec(k, rem, coeff):
        if k == s - 1:
            if rem <= caps[k]:
                v = coeff * binom[k][rem] % p
                if v:
                    expo[k] = rem
                    out[tuple(expo)] = v
            return
        lo = max(0, rem - suffix[k + 1])
        hi = min(caps[k], rem)
        for l in range(lo, hi + 1):
            expo[k] = l
            rec(k + 1, rem - l, coeff * binom[k][l] % p)

    if s == 0:
        if upsilon == 0:
            out[()] = 1
        return out
    rec(0, upsilon, 1)
    return out


def series_slices(caps, top, p):
    """t-slices 0..top of prod_k (1 + z_k t)^{caps_k} over F_p.

    Iterative truncated product; slice d holds the coefficient of t^d as
    an exponent-tuple dict.  Zero values are kept out of the result.
    """
    s = len(caps)
    zero = (0,) * s
    slices = [dict() for _ in range(top + 1)]
    if top < 0:
        return slices
    slices[0][zero] = 1
    done = 0  # sum of caps processed so far
    for k, c in enumerate(caps):
        binom = _binom_row(c, p)
        new = [dict() for _ in range(top + 1)]
        # source slices live in degrees 0..done; later ones are still empty
        for d in range(min(top, done) + 1):
            for key, val in slices[d].items():
                for l in range(0, min(c, top - d) + 1):
                    x = val * binom[l] % p
                    key2 = key[:k] + (l,) + key[k + 1 :]
                    tgt = new[d + l]
                    acc = tgt.get(key2, 0) + x
                    tgt[key2] = acc % p
        slices = new
        done += c
    for d in range(top + 1):
        slices[d] = {k: v for k, v in slices[d].items() if v}
    return slices


def series_coefficient(caps, upsilon, p):
    """Coefficient of t^upsilon in prod_k (1 + z_k t)^{caps_k} over F_p."""
    if upsilon < 0:
        return {}
    return series_slices(caps, upsilon, p)[upsilon]


def hw_block_agrees(caps, d, p):
    """Whether all d x d entries match between the two construction routes.

    Entry (i, j) has target degree (d-i+1)(p-1) + (i-j); the series route
    is run once to the top slice and compared slice-by-slice against the
    direct route.
    """
    upsilons = sorted(
        {
            (d - i + 1) * (p - 1) + (i - j)
            for i in range(1, d + 1)
            for j in range(1, d + 1)
            if (d - i + 1) * (p - 1) + (i - j) >= 0
        }
    )
    if not upsilons:
        return True
    slices = series_slices(caps, upsilons[-1], p)
    for u in upsilons:
        if hw_entry_terms(caps, u, p) != slices[u]:
            return False
    return True


def poly_mul(a, b, nvars, p):
    """Sparse product of two exponent-tuple dicts over F_p."""
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            acc = out.get(key, 0) + va * vb
            out[key] = acc % p
    return {k: v for k, v in out.items() if v}


def products_equal(a1, b1, a2, b2, nvars, p):
    """Whether a1*b1 == a2*b2 over F_p without keeping both products."""
    diff = {}
    for ka, va in a1.items():
        for kb, vb in b1.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            diff[key] = (diff.get(key, 0) + va * vb) % p
    for ka, va in a2.items():
        for kb, vb in b2.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            diff[key] = (diff.get(key, 0) - va * vb) % p
    return not any(diff.values())
