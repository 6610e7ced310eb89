"""Arithmetic in F_{p^k} with a deterministic choice of modulus.

Elements are encoded as integers in [0, p^k): the integer sum c_0 + c_1 p
+ ... + c_{k-1} p^{k-1} stands for the residue polynomial sum c_i x^i.
Scanning field elements in their natural integer order is therefore a
deterministic, documented traversal; 0 and 1 encode themselves, and for
k = 1 the encoding is the usual residue.

The modulus is the monic irreducible x^k + (lower part) whose coefficient
vector (c_0, ..., c_{k-1}) has the least base-p integer value.  This is a
fixed convention of the package (it agrees with minimality conventions of
the classical tables at these sizes) and is recorded in any output that
depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

Poly = tuple[int, ...]  # dense, low-to-high, no forced trimming


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    # f monic
    a = a[:]
    while len(a) >= len(f):
        c = a[-1]
        if c:
            shift = len(a) - len(f)
            for i, y in enumerate(f):
                a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
    return _trim(a)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [(x * inv) % p for x in b]
        a, b = b, _poly_mod(a, monic, p)
    return a


def _poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Monic f of degree k >= 1: x^(p^k) = x mod f and no subfield factors."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p**k, f, p)
    if _trim([(a - b) % p for a, b in zip_pad(xq, x)]):
        return False
    for t in _prime_divisors(k):
        xe = _poly_powmod(x, p ** (k // t), f, p)
        diff = _trim([(a - b) % p for a, b in zip_pad(xe, x)])
        g = _poly_gcd(f, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def zip_pad(a: list[int], b: list[int]) -> list[tuple[int, int]]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=256)
def minimal_irreducible(p: int, k: int) -> Poly:
    """The conventional degree-k modulus over F_p (see module docstring)."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        low = _digits(code, p, k)
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise DomainError(f"no irreducible of degree {k} over F_{p}")  # unreachable


def _digits(code: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return tuple(out)


@dataclass(frozen=True)
class FiniteField:
    """F_{p^k} with integer-encoded elements (see module docstring)."""

    p: int
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise DomainError(f"extension degree must be >= 1, got {self.k}")

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def modulus(self) -> Poly:
        return minimal_irreducible(self.p, self.k)

    def modulus_string(self) -> str:
        terms = []
        coeffs = list(self.modulus)
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"

    # -- element codecs

    def _decode(self, e: int) -> list[int]:
        return list(_digits(e, self.p, self.k))

    def _encode(self, poly: list[int]) -> int:
        acc = 0
        for c in reversed(poly[: self.k] + [0] * max(0, self.k - len(poly))):
            acc = acc * self.p + c
        return acc

    def element(self, e: int) -> int:
        if not 0 <= e < self.order:
            raise DomainError(f"{e} is not an element code of F_{self.p}^{self.k}")
        return e

    def from_int(self, n: int) -> int:
        """Image of the rational integer n in the prime subfield."""
        return n % self.p

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x - y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mul(self._decode(a), self._decode(b), self.p)
        return self._encode(_poly_mod(prod, list(self.modulus), self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.order - 2)

    def elements(self):
        """All elements in the documented deterministic order."""
        return range(self.order)


def determinant(field: FiniteField, rows: list[list[int]]) -> int:
    """Determinant over the field by fraction-free Gaussian elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant needs a square matrix")
    a = [row[:] for row in rows]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field.neg(det)
        det = field.mul(det, a[col][col])
        inv = field.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            factor = field.mul(a[r][col], inv)
            for c in range(col, n):
                a[r][c] = field.sub(a[r][c], field.mul(factor, a[col][c]))
    return det
