"""Hasse-Witt matrices of abelian covers, as exact polynomials mod p.

Fix a prime p = 1 (mod N) and set q = (p-1)/N.  On the n-eigenspace of
the cover (dimension d = d(n)) the matrix of the Frobenius-semilinear
Cartier dual, with respect to the monomial differential basis and with
the branch points z_1..z_s kept symbolic, has (i, j) entry

    sum over compositions (l_1..l_s) of Y with l_k <= c_k of
        prod_k C(c_k, l_k) z_k^{l_k}          (mod p)

where c_k = q.((-alpha_k(n)) mod N) and Y = (d-i+1)(p-1) + (i-j); the
entry is the zero polynomial when Y < 0.  Every entry is homogeneous of
degree Y, and the same data arises as the coefficient of t^Y in
prod_k (1 + z_k t)^{c_k}, which this module keeps as an independently
coded route (`hasse_witt_entry_series`) for cross-checking.

Specializing z at pairwise distinct field points gives the actual matrix
over F_{p^k}; the Prym part of the cover is ordinary at a point exactly
when every anti-invariant block specializes to an invertible matrix
(invertibility of the one-step matrix and of its semilinear iterate
agree, so no Frobenius twisting is needed for this test).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from .covers import (
    CoverMatrix,
    PrymDatum,
    Vector,
    character_representatives,
    vneg,
)
from .errors import CapExceededError, ConsistencyError, DomainError
from .gf import FiniteField, determinant
from .hodge import alpha_vector, anti_invariant_dim, eigen_dim

PRIME_SEARCH_CAP = 10**7


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def choose_prime(N: int, lower: int | None = None) -> int:
    """Smallest prime p >= max(lower, N+1) with p = 1 (mod N)."""
    start = max(lower or 0, N + 1)
    p = start + ((1 - start) % N)  # first candidate >= start, = 1 mod N
    while p <= PRIME_SEARCH_CAP:
        if p > N and _is_prime(p):
            return p
        p += N
    raise CapExceededError(f"no prime = 1 mod {N} found below {PRIME_SEARCH_CAP}")


def check_prime(N: int, p: int) -> None:
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p % N != 1:
        raise DomainError(f"prime {p} is not 1 mod {N}")


class SparsePoly:
    """Multivariate polynomial over F_p with exponent-tuple term keys.

    Canonicalized on construction: coefficients reduced mod p with zeros
    dropped.  Equality and hashing are structural on the canonical term
    map; no probabilistic identity testing anywhere.
    """

    __slots__ = ("p", "nvars", "terms", "_canon")

    def __init__(self, p: int, nvars: int, terms: dict):
        self.p = p
        self.nvars = nvars
        clean = {}
        for key, val in terms.items():
            key = tuple(int(e) for e in key)
            if len(key) != nvars or any(e < 0 for e in key):
                raise DomainError(f"bad exponent vector {key} for {nvars} variables")
            v = int(val) % p
            if v:
                clean[key] = v
        self.terms = clean
        self._canon = tuple(sorted(clean.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.p, self.nvars, self._canon) == (other.p, other.nvars, other._canon)

    def __hash__(self) -> int:
        return hash((self.p, self.nvars, self._canon))

    def __repr__(self) -> str:
        return f"SparsePoly(p={self.p}, nvars={self.nvars}, {len(self.terms)} terms)"

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        if (self.p, self.nvars) != (other.p, other.nvars):
            raise DomainError("polynomial product across different rings")
        return SparsePoly(
            self.p, self.nvars, kernels.poly_mul(self.terms, other.terms, self.nvars, self.p)
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return list(self._canon)


def _caps(matrix: CoverMatrix, n: Vector, p: int) -> tuple[int, ...]:
    N = matrix.N
    q = (p - 1) // N
    return tuple(q * ((N - a) % N) for a in alpha_vector(matrix, n))


def upsilon_degree(d: int, p: int, i: int, j: int) -> int:
    """Target degree of entry (i, j) in a d x d block (1-based indices)."""
    return (d - i + 1) * (p - 1) + (i - j)


def _entry_preconditions(matrix: CoverMatrix, n: Vector, i: int, j: int, p: int) -> int:
    check_prime(matrix.N, p)
    d = eigen_dim(matrix, n)
    if d < 1:
        raise DomainError(f"character {n} has d = {d}; no matrix block exists")
    if not (1 <= i <= d and 1 <= j <= d):
        raise DomainError(f"indices ({i}, {j}) outside 1..{d}")
    return d


def hasse_witt_entry(matrix: CoverMatrix, n: Vector, i: int, j: int, p: int) -> SparsePoly:
    """Entry (i, j) of the block for character n, by direct enumeration."""
    d = _entry_preconditions(matrix, n, i, j, p)
    caps = _caps(matrix, n, p)
    y = upsilon_degree(d, p, i, j)
    return SparsePoly(p, matrix.s, kernels.hw_entry_terms(caps, y, p))


def hasse_witt_entry_series(matrix: CoverMatrix, n: Vector, i: int, j: int, p: int) -> SparsePoly:
    """Same entry via the truncated-product route (the cross-check)."""
    d = _entry_preconditions(matrix, n, i, j, p)
    caps = _caps(matrix, n, p)
    y = upsilon_degree(d, p, i, j)
    return SparsePoly(p, matrix.s, kernels.series_coefficient(caps, y, p))


@dataclass(frozen=True)
class HWMatrix:
    """The d x d symbolic block for one character."""

    character: Vector
    p: int
    q: int
    d: int
    entries: tuple[tuple[SparsePoly, ...], ...]

    def entry(self, i: int, j: int) -> SparsePoly:
        if not (1 <= i <= self.d and 1 <= j <= self.d):
            raise DomainError(f"indices ({i}, {j}) outside 1..{self.d}")
        return self.entries[i - 1][j - 1]


def hasse_witt_matrix(matrix: CoverMatrix, n: Vector, p: int) -> HWMatrix:
    """All d(n) x d(n) entries for character n (d >= 1 required)."""
    check_prime(matrix.N, p)
    d = eigen_dim(matrix, n)
    if d < 1:
        raise DomainError(f"character {n} has d = {d}; no matrix block exists")
    caps = _caps(matrix, n, p)
    rows = tuple(
        tuple(
            SparsePoly(
                p, matrix.s, kernels.hw_entry_terms(caps, upsilon_degree(d, p, i, j), p)
            )
            for j in range(1, d + 1)
        )
        for i in range(1, d + 1)
    )
    return HWMatrix(tuple(n), p, (p - 1) // matrix.N, d, rows)


# ---------------------------------------------------------------------------
# specialization and ordinarity


def evaluate(poly: SparsePoly, point: Sequence[int], field: FiniteField) -> int:
    """Value of the polynomial at a tuple of field element codes."""
    if field.p != poly.p:
        raise DomainError(f"field characteristic {field.p} != polynomial modulus {poly.p}")
    if len(point) != poly.nvars:
        raise DomainError(f"point has {len(point)} coordinates, need {poly.nvars}")
    total = 0
    for key, coeff in poly.terms.items():
        acc = field.from_int(coeff)
        for z, e in zip(point, key):
            if e:
                acc = field.mul(acc, field.pow(z, e))
        total = field.add(total, acc)
    return total


def _check_point(point: Sequence[int], s: int, field: FiniteField) -> tuple[int, ...]:
    pt = tuple(field.element(int(z)) for z in point)
    if len(pt) != s:
        raise DomainError(f"point has {len(pt)} coordinates, need {s}")
    if len(set(pt)) != len(pt):
        raise DomainError("branch points must be pairwise distinct")
    return pt


def specialize(hwm: HWMatrix, point: Sequence[int], field: FiniteField) -> list[list[int]]:
    """The block as a matrix of field elements at pairwise distinct points."""
    pt = _check_point(point, hwm.entries[0][0].nvars if hwm.entries else 0, field)
    return [[evaluate(e, pt, field) for e in row] for row in hwm.entries]


def is_prym_ordinary_at(
    datum: PrymDatum, p: int, point: Sequence[int], field: FiniteField | None = None
) -> bool:
    """Whether the Prym part is ordinary at the given branch-point tuple.

    True iff every anti-invariant block (characters with d^-(n) > 0) has
    invertible specialization at the point.
    """
    matrix = datum.matrix
    check_prime(matrix.N, p)
    if field is None:
        field = FiniteField(p, 1)
    pt = _check_point(point, matrix.s, field)
    for n in character_representatives(matrix):
        if anti_invariant_dim(datum, n) <= 0:
            continue
        block = specialize(hasse_witt_matrix(matrix, n, p), pt, field)
        if determinant(field, block) == 0:
            return False
    return True


@dataclass(frozen=True)
class OrdinaryPoint:
    point: tuple[int, ...]
    ext_degree: int
    field_order: int
    modulus: str  # human-readable modulus of the extension used


def _distinct_tuples(field: FiniteField, s: int) -> Iterator[tuple[int, ...]]:
    # lexicographic scan over the documented element order, distinct entries
    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == s:
            yield tuple(prefix)
            return
        for z in field.elements():
            if z in prefix:
                continue
            prefix.append(z)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def find_ordinary_point(
    datum: PrymDatum,
    p: int,
    max_ext_degree: int = 2,
    max_candidates: int = 10**6,
) -> OrdinaryPoint | None:
    """First ordinary branch-point tuple in the documented scan order.

    Scans extension degrees k = 1..max_ext_degree in order; within each
    field, point tuples in lexicographic element order, skipping tuples
    with repeated coordinates.  Returns None when the scan is exhausted
    (a legal outcome); raises CapExceededError after max_candidates
    ordinarity tests.
    """
    matrix = datum.matrix
    check_prime(matrix.N, p)
    tested = 0
    for k in range(1, max_ext_degree + 1):
        field = FiniteField(p, k)
        if field.order < matrix.s:
            continue  # not enough distinct coordinates
        for pt in _distinct_tuples(field, matrix.s):
            tested += 1
            if tested > max_candidates:
                raise CapExceededError(
                    f"ordinary-point scan exceeded {max_candidates} candidates"
                )
            if is_prym_ordinary_at(datum, p, pt, field):
                return OrdinaryPoint(pt, k, field.order, field.modulus_string())
    return None


# ---------------------------------------------------------------------------
# structure identities


def _dims_for_identity(matrix: CoverMatrix, a: Vector) -> tuple[int, int]:
    return eigen_dim(matrix, a), eigen_dim(matrix, vneg(a, matrix.N))


def product_identity_holds(matrix: CoverMatrix, a: Vector, a2: Vector, p: int) -> bool:
    """Whether A_a . A_{-a} equals A_{a2} . A_{-a2} as polynomials.

    All four blocks must be 1 x 1 (d = 1 for a, -a, a2, -a2).
    """
    check_prime(matrix.N, p)
    for c in (a, a2):
        da, db = _dims_for_identity(matrix, c)
        if (da, db) != (1, 1):
            raise DomainError(
                f"product identity needs 1x1 blocks; character {c} has type {(da, db)}"
            )
    neg_a, neg_a2 = vneg(a, matrix.N), vneg(a2, matrix.N)
    y = p - 1
    t = lambda n: kernels.hw_entry_terms(_caps(matrix, n, p), y, p)
    return kernels.products_equal(t(a), t(neg_a), t(a2), t(neg_a2), matrix.s, p)


def _orient_type_1_s3(matrix: CoverMatrix, n: Vector) -> Vector:
    """Return n or -n so that d(-n) = 1 and d(n) = s - 3 (type {1, s-3})."""
    s = matrix.s
    if s < 4:
        raise DomainError(f"type {{1, s-3}} needs s >= 4, got s = {s}")
    dn, dneg = _dims_for_identity(matrix, n)
    if {dn, dneg} != {1, s - 3}:
        raise DomainError(
            f"character {n} has type {(dn, dneg)}, not {{1, {s - 3}}}"
        )
    if dneg == 1 and dn == s - 3:
        return n
    return vneg(n, matrix.N)


def scaled_row_identity_holds(matrix: CoverMatrix, n: Vector, n2: Vector, p: int) -> bool:
    """Whether A_n / a_n equals A_{n2} / a_{n2} entrywise.

    Here both characters have unordered type {1, s-3}; each is oriented so
    d(-n) = 1, a_n denotes the single entry of the block at -n, and the
    quotient is compared by cross-multiplication:
    a_{n2} . (A_n)_{v,t} == a_n . (A_{n2})_{v,t} for all (v, t).
    """
    check_prime(matrix.N, p)
    n = _orient_type_1_s3(matrix, n)
    n2 = _orient_type_1_s3(matrix, n2)
    d = eigen_dim(matrix, n)
    caps_n = _caps(matrix, n, p)
    caps_n2 = _caps(matrix, n2, p)
    a_n = kernels.hw_entry_terms(_caps(matrix, vneg(n, matrix.N), p), p - 1, p)
    a_n2 = kernels.hw_entry_terms(_caps(matrix, vneg(n2, matrix.N), p), p - 1, p)
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            y = upsilon_degree(d, p, i, j)
            lhs = kernels.hw_entry_terms(caps_n, y, p)
            rhs = kernels.hw_entry_terms(caps_n2, y, p)
            if not kernels.products_equal(a_n2, lhs, a_n, rhs, matrix.s, p):
                return False
    return True


# ---------------------------------------------------------------------------
# divisibility exponents


def divisibility_exponent(poly: SparsePoly, i: int, h: int) -> float:
    """Order in z_h of the restriction z_i = 0 (1-based variable indices).

    The minimum of e_h over terms with e_i = 0; +inf when the restriction
    is the zero polynomial.
    """
    if i == h:
        raise DomainError("need two distinct variable indices")
    for idx in (i, h):
        if not 1 <= idx <= poly.nvars:
            raise DomainError(f"variable index {idx} outside 1..{poly.nvars}")
    best = math.inf
    for key in poly.terms:
        if key[i - 1] == 0 and key[h - 1] < best:
            best = key[h - 1]
    return best


def _support_order(caps: Sequence[int], y: int, i: int, h: int) -> float:
    """min e_h over bounded compositions of y with e_i = 0; inf if none."""
    rest = sum(c for idx, c in enumerate(caps, start=1) if idx not in (i, h))
    if y > rest + caps[h - 1]:
        return math.inf
    return max(0, y - rest)


def closed_form_exponents(
    matrix: CoverMatrix, n: Vector, p: int, i: int, h: int
) -> tuple[float | None, float | None]:
    """Predicted divisibility exponents (r, u) for the two identities.

    r: for 1 x 1 blocks (d(n) = d(-n) = 1), the order in z_h at z_i = 0 of
    the single entry of A_n.  u: for type {1, s-3} (oriented so d(-n) = 1),
    the combined order of a_n . (A_n)_{1,1}.  Each component is None when
    its precondition fails; both failing is an error.  Values match
    `divisibility_exponent` on the constructed polynomials (the support of
    an entry is the full truncated box, so order = support bound).
    """
    check_prime(matrix.N, p)
    dn, dneg = _dims_for_identity(matrix, n)
    s = matrix.s
    r: float | None = None
    u: float | None = None
    if (dn, dneg) == (1, 1):
        r = _support_order(_caps(matrix, n, p), p - 1, i, h)
    if s >= 4 and {dn, dneg} == {1, s - 3}:
        m = _orient_type_1_s3(matrix, n)
        d = eigen_dim(matrix, m)
        u1 = _support_order(_caps(matrix, vneg(m, matrix.N), p), p - 1, i, h)
        u2 = _support_order(_caps(matrix, m, p), d * (p - 1), i, h)
        u = u1 + u2
    if r is None and u is None:
        raise DomainError(
            f"character {n} fits neither closed form: type {(dn, dneg)}, s = {s}"
        )
    return r, u


# ---------------------------------------------------------------------------
# text dump format


def dump_entry(poly: SparsePoly, n: Vector, i: int, j: int) -> str:
    """One block: header `p=.. s=.. char=.. i=.. j=..`, then sorted term lines."""
    char = ",".join(str(x) for x in n)
    lines = [f"p={poly.p} s={poly.nvars} char={char} i={i} j={j}"]
    for key, coeff in poly.sorted_terms():
        lines.append(" ".join([str(coeff), *[str(e) for e in key]]))
    return "\n".join(lines) + "\n"


def dump_matrix(hwm: HWMatrix) -> str:
    """All d x d blocks, row-major."""
    parts = []
    for i in range(1, hwm.d + 1):
        for j in range(1, hwm.d + 1):
            parts.append(dump_entry(hwm.entry(i, j), hwm.character, i, j))
    return "".join(parts)
