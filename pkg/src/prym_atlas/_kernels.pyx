# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels.

Same API and semantics as `prym_atlas._kernels_py` (the reference).
Exponent vectors are packed into 64-bit keys, variable 0 in the highest
byte, so enumeration order equals numeric key order; inputs that do not
fit the packed layout (more than 8 variables, exponents beyond 255) are
delegated to the pure backend.
"""

from libc.stdlib cimport free, malloc, qsort
from libc.string cimport memset

from math import comb

from . import _kernels_py as _py

BACKEND = "compiled"

cdef enum:
    MAXV = 8

ctypedef unsigned long long u64
ctypedef long long i64

ctypedef struct Term:
    u64 key
    i64 val

ctypedef struct TermBuf:
    Term* t
    Py_ssize_t n


cdef int _cmp_term(const void* a, const void* b) noexcept nogil:
    cdef u64 x = (<const Term*> a).key
    cdef u64 y = (<const Term*> b).key
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


cdef Py_ssize_t _compress(Term* t, Py_ssize_t n, i64 p) noexcept nogil:
    """Sort-by-key assumed done; sum equal keys mod p, drop zeros."""
    cdef Py_ssize_t w = 0, r = 0
    cdef u64 key
    cdef i64 acc
    while r < n:
        key = t[r].key
        acc = 0
        while r < n and t[r].key == key:
            acc += t[r].val
            r += 1
        acc %= p
        if acc:
            t[w].key = key
            t[w].val = acc
            w += 1
    return w


cdef bint _packable(caps) except? 0:
    if len(caps) > MAXV:
        return 0
    for c in caps:
        if c < 0 or c > 255:
            return 0
    return 1


cdef i64** _binom_tables(caps, i64 p) except NULL:
    cdef int s = len(caps)
    cdef i64** rows = <i64**> malloc(s * sizeof(i64*))
    if rows == NULL:
        raise MemoryError()
    cdef int k, l, c
    for k in range(s):
        rows[k] = NULL
    try:
        for k in range(s):
            c = caps[k]
            rows[k] = <i64*> malloc((c + 1) * sizeof(i64))
            if rows[k] == NULL:
                raise MemoryError()
            row = [comb(c, l) % p for l in range(c + 1)]
            for l in range(c + 1):
                rows[k][l] = row[l]
    except BaseException:
        _free_binom(rows, s)
        raise
    return rows


cdef void _free_binom(i64** rows, int s) noexcept:
    cdef int k
    if rows == NULL:
        return
    for k in range(s):
        if rows[k] != NULL:
            free(rows[k])
    free(rows)


# ---------------------------------------------------------------------------
# direct route: bounded compositions of one degree

ctypedef struct DirectCtx:
    int s
    i64 p
    long* caps
    long* suffix
    i64** binom
    Term* out
    Py_ssize_t n


cdef void _direct_rec(DirectCtx* c, int k, long rem, i64 coeff, u64 key) noexcept nogil:
    cdef long lo, hi, l
    cdef int shift
    cdef i64 b, v
    if k == c.s - 1:
        b = c.binom[k][rem]
        if b:
            v = coeff * b % c.p
            if v:
                c.out[c.n].key = key | <u64> rem
                c.out[c.n].val = v
                c.n += 1
        return
    lo = rem - c.suffix[k + 1]
    if lo < 0:
        lo = 0
    hi = c.caps[k]
    if rem < hi:
        hi = rem
    shift = 8 * (c.s - 1 - k)
    for l in range(lo, hi + 1):
        b = c.binom[k][l]
        if b:
            _direct_rec(c, k + 1, rem - l, coeff * b % c.p, key | (<u64> l << shift))


cdef Py_ssize_t _count_compositions(long* caps, int s, long upsilon) noexcept nogil:
    """Upper bound (exact when no binomial vanishes) on emitted terms."""
    cdef Py_ssize_t* ways
    cdef Py_ssize_t total
    cdef long r, l, c
    cdef int k
    if upsilon < 0:
        return 0
    ways = <Py_ssize_t*> malloc((upsilon + 1) * sizeof(Py_ssize_t))
    if ways == NULL:
        return -1
    cdef Py_ssize_t* nxt = <Py_ssize_t*> malloc((upsilon + 1) * sizeof(Py_ssize_t))
    if nxt == NULL:
        free(ways)
        return -1
    for r in range(upsilon + 1):
        ways[r] = 1 if r == 0 else 0
    for k in range(s - 1, -1, -1):
        c = caps[k]
        for r in range(upsilon + 1):
            total = 0
            l = 0
            while l <= c and l <= r:
                total += ways[r - l]
                l += 1
            nxt[r] = total
        ways, nxt = nxt, ways
    total = ways[upsilon]
    free(ways)
    free(nxt)
    return total


cdef TermBuf _direct_terms(long* caps, int s, long upsilon, i64 p, i64** binom) except *:
    cdef TermBuf buf
    cdef long suffix[MAXV + 1]
    cdef int k
    cdef DirectCtx ctx
    buf.t = NULL
    buf.n = 0
    if upsilon < 0:
        return buf
    suffix[s] = 0
    for k in range(s - 1, -1, -1):
        suffix[k] = suffix[k + 1] + caps[k]
    if upsilon > suffix[0]:
        return buf
    cdef Py_ssize_t cap = _count_compositions(caps, s, upsilon)
    if cap < 0:
        raise MemoryError()
    if cap == 0:
        return buf
    buf.t = <Term*> malloc(cap * sizeof(Term))
    if buf.t == NULL:
        raise MemoryError()
    ctx.s = s
    ctx.p = p
    ctx.caps = caps
    ctx.suffix = suffix
    ctx.binom = binom
    ctx.out = buf.t
    ctx.n = 0
    _direct_rec(&ctx, 0, upsilon, 1, 0)
    buf.n = ctx.n
    return buf


# ---------------------------------------------------------------------------
# series route: truncated product, one factor at a time

cdef void _free_slices(TermBuf* sl, long top) noexcept:
    cdef long d
    if sl == NULL:
        return
    for d in range(top + 1):
        if sl[d].t != NULL:
            free(sl[d].t)
    free(sl)


cdef TermBuf* _series_packed(long* caps, int s, long top, i64 p, i64** binom) except NULL:
    """Slices 0..top of prod_k (1 + z_k t)^{caps_k}, each sorted by key."""
    cdef TermBuf* cur = <TermBuf*> malloc((top + 1) * sizeof(TermBuf))
    cdef TermBuf* new = NULL
    cdef long d, dd, l, c, done = 0
    cdef int k, shift
    cdef Py_ssize_t i, need, w
    cdef i64 b
    if cur == NULL:
        raise MemoryError()
    for d in range(top + 1):
        cur[d].t = NULL
        cur[d].n = 0
    cur[0].t = <Term*> malloc(sizeof(Term))
    if cur[0].t == NULL:
        free(cur)
        raise MemoryError()
    cur[0].t[0].key = 0
    cur[0].t[0].val = 1
    cur[0].n = 1
    try:
        for k in range(s):
            c = caps[k]
            shift = 8 * (s - 1 - k)
            new = <TermBuf*> malloc((top + 1) * sizeof(TermBuf))
            if new == NULL:
                raise MemoryError()
            for d in range(top + 1):
                new[d].t = NULL
                new[d].n = 0
            for dd in range(top + 1):
                need = 0
                l = dd - done if dd - done > 0 else 0
                while l <= c and l <= dd:
                    need += cur[dd - l].n
                    l += 1
                if need == 0:
                    continue
                new[dd].t = <Term*> malloc(need * sizeof(Term))
                if new[dd].t == NULL:
                    raise MemoryError()
                w = 0
                l = dd - done if dd - done > 0 else 0
                while l <= c and l <= dd:
                    b = binom[k][l]
                    if b:
                        for i in range(cur[dd - l].n):
                            new[dd].t[w].key = cur[dd - l].t[i].key | (<u64> l << shift)
                            new[dd].t[w].val = cur[dd - l].t[i].val * b % p
                            w += 1
                    l += 1
                qsort(new[dd].t, w, sizeof(Term), _cmp_term)
                new[dd].n = _compress(new[dd].t, w, p)
            _free_slices(cur, top)
            cur = new
            new = NULL
            done += c
        return cur
    except BaseException:
        _free_slices(new, top)
        _free_slices(cur, top)
        raise


# ---------------------------------------------------------------------------
# public API

cdef dict _terms_to_dict(TermBuf buf, int s):
    cdef dict out = {}
    cdef Py_ssize_t i
    cdef int v
    cdef u64 key
    for i in range(buf.n):
        key = buf.t[i].key
        out[tuple((key >> (8 * (s - 1 - v))) & 0xFF for v in range(s))] = buf.t[i].val
    return out


cdef void _fill_caps(caps, long* ccaps):
    cdef int k
    for k in range(len(caps)):
        ccaps[k] = caps[k]


def hw_entry_terms(caps, upsilon, p):
    """Terms of sum over compositions of upsilon within caps of
    prod_k C(caps_k, l_k) z^l, reduced mod p."""
    if not _packable(caps):
        return _py.hw_entry_terms(caps, upsilon, p)
    cdef int s = len(caps)
    if s == 0:
        return {(): 1} if upsilon == 0 else {}
    cdef long ccaps[MAXV]
    _fill_caps(caps, ccaps)
    cdef i64** binom = _binom_tables(caps, p)
    cdef TermBuf buf
    buf.t = NULL
    try:
        buf = _direct_terms(ccaps, s, upsilon, p, binom)
        return _terms_to_dict(buf, s)
    finally:
        if buf.t != NULL:
            free(buf.t)
        _free_binom(binom, s)


def series_slices(caps, top, p):
    """t-slices 0..top of prod_k (1 + z_k t)^{caps_k} over F_p."""
    if not _packable(caps):
        return _py.series_slices(caps, top, p)
    cdef int s = len(caps)
    if s == 0 or top < 0:
        return _py.series_slices(caps, top, p)
    cdef long ccaps[MAXV]
    _fill_caps(caps, ccaps)
    cdef i64** binom = _binom_tables(caps, p)
    cdef TermBuf* slices = NULL
    cdef long d
    try:
        slices = _series_packed(ccaps, s, top, p, binom)
        return [_terms_to_dict(slices[d], s) for d in range(top + 1)]
    finally:
        _free_slices(slices, top)
        _free_binom(binom, s)


def series_coefficient(caps, upsilon, p):
    """Coefficient of t^upsilon in prod_k (1 + z_k t)^{caps_k} over F_p."""
    if upsilon < 0:
        return {}
    if not _packable(caps):
        return _py.series_coefficient(caps, upsilon, p)
    return series_slices(caps, upsilon, p)[upsilon]


def hw_block_agrees(caps, d, p):
    """Whether all d x d entries match between the two construction routes."""
    if not _packable(caps):
        return _py.hw_block_agrees(caps, d, p)
    cdef int s = len(caps)
    if s == 0:
        return _py.hw_block_agrees(caps, d, p)
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
    cdef long top = upsilons[len(upsilons) - 1]
    cdef long ccaps[MAXV]
    _fill_caps(caps, ccaps)
    cdef i64** binom = _binom_tables(caps, p)
    cdef TermBuf* slices = NULL
    cdef TermBuf direct
    cdef Py_ssize_t i
    cdef long u
    cdef bint ok = True
    direct.t = NULL
    try:
        slices = _series_packed(ccaps, s, top, p, binom)
        for u in upsilons:
            direct = _direct_terms(ccaps, s, u, p, binom)
            if direct.n != slices[u].n:
                ok = False
            else:
                for i in range(direct.n):
                    if (
                        direct.t[i].key != slices[u].t[i].key
                        or direct.t[i].val != slices[u].t[i].val
                    ):
                        ok = False
                        break
            if direct.t != NULL:
                free(direct.t)
                direct.t = NULL
            if not ok:
                return False
        return True
    finally:
        if direct.t != NULL:
            free(direct.t)
        _free_slices(slices, top)
        _free_binom(binom, s)


# ---------------------------------------------------------------------------
# dense-box products

cdef i64* _box_accumulate(
    dict a, dict b, long* strides, int nvars, i64 p, Py_ssize_t size, i64* buf, int sign, bint lazy
) except NULL:
    """buf += sign * a*b over the dense exponent box; lazy skips per-op mod."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t* ia = <Py_ssize_t*> malloc(na * sizeof(Py_ssize_t))
    cdef Py_ssize_t* ib = <Py_ssize_t*> malloc(nb * sizeof(Py_ssize_t))
    cdef i64* va = <i64*> malloc(na * sizeof(i64))
    cdef i64* vb = <i64*> malloc(nb * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef int v
    cdef Py_ssize_t idx
    cdef i64 x
    if ia == NULL or ib == NULL or va == NULL or vb == NULL:
        if ia != NULL: free(ia)
        if ib != NULL: free(ib)
        if va != NULL: free(va)
        if vb != NULL: free(vb)
        raise MemoryError()
    try:
        i = 0
        for key, val in a.items():
            idx = 0
            for v in range(nvars):
                idx += <Py_ssize_t> key[v] * strides[v]
            ia[i] = idx
            va[i] = (<i64> val % p) * sign
            i += 1
        j = 0
        for key, val in b.items():
            idx = 0
            for v in range(nvars):
                idx += <Py_ssize_t> key[v] * strides[v]
            ib[j] = idx
            vb[j] = <i64> val % p
            j += 1
        with nogil:
            for i in range(na):
                x = va[i]
                for j in range(nb):
                    if lazy:
                        buf[ia[i] + ib[j]] += x * vb[j]
                    else:
                        buf[ia[i] + ib[j]] = (buf[ia[i] + ib[j]] + x * vb[j]) % p
        return buf
    finally:
        free(ia)
        free(ib)
        free(va)
        free(vb)


cdef tuple _box_plan(polys, int nvars):
    """Per-variable bounds and strides for the dense product box."""
    bounds = [0] * nvars
    for pair in polys:
        cur = [0] * nvars
        for poly in pair:
            mx = [0] * nvars
            for key in poly:
                for v in range(nvars):
                    if key[v] > mx[v]:
                        mx[v] = key[v]
            for v in range(nvars):
                cur[v] += mx[v]
        for v in range(nvars):
            if cur[v] > bounds[v]:
                bounds[v] = cur[v]
    size = 1
    for v in range(nvars):
        size *= bounds[v] + 1
    strides = [0] * nvars
    acc = 1
    for v in range(nvars - 1, -1, -1):
        strides[v] = acc
        acc *= bounds[v] + 1
    return bounds, strides, size

BOX_LIMIT = 1 << 26


def poly_mul(a, b, nvars, p):
    """Sparse product of two exponent-tuple dicts over F_p."""
    if not a or not b:
        return {}
    bounds, strides, size = _box_plan([(a, b)], nvars)
    if size > BOX_LIMIT or nvars == 0:
        return _py.poly_mul(a, b, nvars, p)
    cdef i64* buf = <i64*> malloc(size * sizeof(i64))
    cdef long cstrides[64]
    cdef Py_ssize_t idx
    cdef int v
    if buf == NULL:
        raise MemoryError()
    memset(buf, 0, size * sizeof(i64))
    for v in range(nvars):
        cstrides[v] = strides[v]
    try:
        _box_accumulate(a, b, cstrides, nvars, p, size, buf, 1, 0)
        out = {}
        for idx in range(size):
            if buf[idx]:
                key = []
                rem = idx
                for v in range(nvars):
                    key.append(rem // strides[v])
                    rem %= strides[v]
                out[tuple(key)] = buf[idx] % p
        return out
    finally:
        free(buf)


def products_equal(a1, b1, a2, b2, nvars, p):
    """Whether a1*b1 == a2*b2 over F_p without keeping both products."""
    bounds, strides, size = _box_plan([(a1, b1), (a2, b2)], nvars)
    if size > BOX_LIMIT or nvars == 0 or nvars > 64:
        return _py.products_equal(a1, b1, a2, b2, nvars, p)
    cdef i64 pairs = <i64> len(a1) * len(b1) + <i64> len(a2) * len(b2) + 1
    cdef bint lazy = (p - 1) * (p - 1) <= (<i64> 1 << 62) // pairs
    cdef i64* buf = <i64*> malloc(size * sizeof(i64))
    cdef long cstrides[64]
    cdef Py_ssize_t idx
    cdef int v
    if buf == NULL:
        raise MemoryError()
    memset(buf, 0, size * sizeof(i64))
    for v in range(nvars):
        cstrides[v] = strides[v]
    try:
        _box_accumulate(a1, b1, cstrides, nvars, p, size, buf, 1, lazy)
        _box_accumulate(a2, b2, cstrides, nvars, p, size, buf, -1, lazy)
        for idx in range(size):
            if buf[idx] % p:
                return False
        return True
    finally:
        free(buf)
