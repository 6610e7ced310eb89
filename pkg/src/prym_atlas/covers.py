"""Combinatorial data of abelian covers of the line.

A Galois cover of the projective line with abelian deck group, branched
over s points z_1, ..., z_s, is encoded by an m x s matrix over Z/N.
Column j is the local monodromy vector at z_j; the deck group G is the
subgroup of (Z/N)^m spanned by the columns.  In equations, the cover is

    w_i^N = prod_j (z - z_j)^{r_ij},   i = 1..m,

with r_ij the representative of the (i, j) entry in [0, N).

A matrix is valid when the vector sum of its columns is zero in (Z/N)^m
(each row sums to 0 mod N, so the w_i close up at infinity), no column
is the zero vector (every z_j is an actual branch point), and s >= 3.
It is irreducible when its rows are linearly independent over Z/N;
equivalently the columns span all of (Z/N)^m, so the cover does not
factor through a cover with smaller invariants in the same coordinates.

A Prym datum is a matrix together with a subgroup H <= G; the curve
quotient C = C~/H and the Prym variety of C~ -> C are computed in the
hodge module from the datum alone.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice, product
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceededError,
    MembershipError,
    TrivialSubgroupError,
)

Vector = tuple[int, ...]

DEFAULT_GROUP_CAP = 10**6

#: validation rule identifiers, stable across releases
RULE_SHAPE = "shape"
RULE_COLUMN_SUM = "column-sum"
RULE_ZERO_COLUMN = "zero-column"


@dataclass(frozen=True)
class CoverMatrix:
    """An m x s matrix over Z/N with entries stored in [0, N)."""

    N: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or self.N < 2:
            raise ValueError(f"modulus N must be an integer >= 2, got {self.N!r}")
        if not self.rows or any(len(r) == 0 for r in self.rows):
            raise ValueError("matrix must have at least one row and one column")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged rows")
        for r in self.rows:
            for x in r:
                if not isinstance(x, int) or not 0 <= x < self.N:
                    raise ValueError(f"entry {x!r} not a residue in [0, {self.N})")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def s(self) -> int:
        return len(self.rows[0])

    def columns(self) -> tuple[Vector, ...]:
        return tuple(zip(*self.rows))

    @classmethod
    def from_rows(cls, N: int, rows: Sequence[Sequence[int]]) -> "CoverMatrix":
        """Build a matrix, reducing entries mod N (warns when any is out of range)."""
        if not isinstance(N, int) or N < 2:
            raise ValueError(f"modulus N must be an integer >= 2, got {N!r}")
        if any(not 0 <= x < N for r in rows for x in r):
            warnings.warn(f"entries outside [0, {N}) reduced mod {N}", stacklevel=2)
        return cls(N, tuple(tuple(int(x) % N for x in r) for r in rows))

    @classmethod
    def from_columns(cls, N: int, cols: Sequence[Vector]) -> "CoverMatrix":
        return cls(N, tuple(zip(*cols)))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of `validate`: ok flag plus (rule, detail) violation pairs."""

    ok: bool
    violations: tuple[tuple[str, str], ...]


def validate(matrix: CoverMatrix) -> ValidationReport:
    """Check the matrix axioms; never raises, reports every violated rule."""
    violations: list[tuple[str, str]] = []
    N = matrix.N
    if matrix.s < 3:
        violations.append((RULE_SHAPE, f"s = {matrix.s} < 3 branch points"))
    for i, row in enumerate(matrix.rows):
        t = sum(row) % N
        if t:
            violations.append(
                (RULE_COLUMN_SUM, f"columns sum to {t} (mod {N}) in coordinate {i}")
            )
    for j, col in enumerate(matrix.columns()):
        if not any(col):
            violations.append((RULE_ZERO_COLUMN, f"column {j} is the zero vector"))
    return ValidationReport(ok=not violations, violations=tuple(violations))


def vadd(a: Vector, b: Vector, N: int) -> Vector:
    return tuple((x + y) % N for x, y in zip(a, b))


def vneg(a: Vector, N: int) -> Vector:
    return tuple((-x) % N for x in a)


def vdot(a: Vector, b: Vector, N: int) -> int:
    return sum(x * y for x, y in zip(a, b)) % N


def element_order(v: Vector, N: int) -> int:
    """Order of v in (Z/N)^m: N / gcd(N, entries)."""
    return N // gcd(N, *v) if any(v) else 1


def _closure(N: int, generators: tuple[Vector, ...], cap: int) -> frozenset[Vector]:
    zero = (0,) * (len(generators[0]) if generators else 1)
    elems = {zero}
    frontier = [zero]
    while frontier:
        e = frontier.pop()
        for g in generators:
            f = vadd(e, g, N)
            if f not in elems:
                if len(elems) >= cap:
                    raise CapExceededError(
                        f"group closure exceeds cap of {cap} elements"
                    )
                elems.add(f)
                frontier.append(f)
    return frozenset(elems)


@lru_cache(maxsize=4096)
def group_elements(matrix: CoverMatrix, cap: int = DEFAULT_GROUP_CAP) -> tuple[Vector, ...]:
    """All elements of the deck group G (column span), sorted lexicographically."""
    return tuple(sorted(_closure(matrix.N, matrix.columns(), cap)))


def local_monodromy_orders(matrix: CoverMatrix) -> tuple[int, ...]:
    """Order of each column in (Z/N)^m: ramification index over each branch point."""
    return tuple(element_order(c, matrix.N) for c in matrix.columns())


@lru_cache(maxsize=4096)
def left_kernel(matrix: CoverMatrix) -> tuple[Vector, ...]:
    """All c in (Z/N)^m with c.A = 0 mod N, sorted; (0,...,0) alone iff irreducible."""
    N, m = matrix.N, matrix.m
    cols = matrix.columns()
    out = [
        c
        for c in product(range(N), repeat=m)
        if all(vdot(c, col, N) == 0 for col in cols)
    ]
    return tuple(out)


def _smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns the absolute diagonal entries (not normalized to a divisibility
    chain; that is irrelevant for testing whether the cokernel is trivial).
    """
    a = [row[:] for row in mat]
    nr, nc = len(a), len(a[0]) if a else 0
    diag: list[int] = []
    t = 0
    while t < nr and t < nc:
        while True:
            # pivot: entry of least nonzero magnitude in the working block
            piv = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return diag
            pi, pj = piv
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                dirty = dirty or a[t][j] != 0
            if not dirty:
                break
            # leftover remainders are smaller than |p|; repeat with new pivot
        diag.append(abs(a[t][t]))
        t += 1
    return diag


BRUTE_FORCE_LIMIT = 10**6


def is_irreducible(matrix: CoverMatrix, method: str = "auto") -> bool:
    """Whether the rows are linearly independent over Z/N.

    Equivalent formulations: the left kernel is trivial; the columns span
    all of (Z/N)^m.  `method` picks the route: "brute" scans all c in
    (Z/N)^m, "snf" reduces [A | N.I] over the integers and asks for m unit
    invariant factors, "auto" uses brute force while N^m stays small.
    """
    if method == "auto":
        method = "brute" if matrix.N**matrix.m <= BRUTE_FORCE_LIMIT else "snf"
    if method == "brute":
        return len(left_kernel(matrix)) == 1
    if method == "snf":
        N, m = matrix.N, matrix.m
        lifted = [list(r) for r in matrix.rows]
        for i in range(m):
            scaling = [0] * m
            scaling[i] = N
            # append N-scaling columns: surjectivity of A mod N as a Z-map
            for k in range(m):
                lifted[k].append(scaling[k])
        diag = _smith_diagonal(lifted)
        return len(diag) == m and all(d == 1 for d in diag)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=4096)
def character_representatives(matrix: CoverMatrix) -> tuple[Vector, ...]:
    """One representative per character of the deck group G, zero first.

    Characters of G are classes of (Z/N)^m modulo the left kernel of the
    matrix (pair a class with G by the dot product).  For an irreducible
    matrix this is all of (Z/N)^m.  Representatives are the lexicographic
    minima of their cosets, listed in lexicographic order.
    """
    N, m = matrix.N, matrix.m
    ker = left_kernel(matrix)
    if len(ker) == 1:
        return tuple(product(range(N), repeat=m))
    reps = []
    for v in product(range(N), repeat=m):
        if v == min(vadd(v, k, N) for k in ker):
            reps.append(v)
    return tuple(reps)


@dataclass(frozen=True)
class PrymDatum:
    """A cover matrix plus a subgroup H of its deck group.

    `h_generators` is how H entered (kept for serialization); `h_elements`
    is the full sorted element tuple of H.
    """

    matrix: CoverMatrix
    h_generators: tuple[Vector, ...]
    h_elements: tuple[Vector, ...]

    @property
    def h_order(self) -> int:
        return len(self.h_elements)


def subgroup_closure(
    matrix: CoverMatrix,
    generators: Iterable[Vector],
    allow_trivial: bool = False,
) -> PrymDatum:
    """Close a generator list inside G and package the Prym datum.

    Raises MembershipError if a generator lies outside the deck group and
    TrivialSubgroupError for H = {0} unless `allow_trivial` is set.
    """
    gens = tuple(tuple(int(x) % matrix.N for x in g) for g in generators)
    group = set(group_elements(matrix))
    for g in gens:
        if len(g) != matrix.m:
            raise MembershipError(f"generator {g} has wrong length, expected {matrix.m}")
        if g not in group:
            raise MembershipError(f"generator {g} is not in the deck group")
    if gens:
        elems = _closure(matrix.N, gens, cap=len(group))
    else:
        elems = frozenset({(0,) * matrix.m})
    if len(elems) == 1 and not allow_trivial:
        raise TrivialSubgroupError("H = {0} rejected; pass allow_trivial to keep it")
    return PrymDatum(matrix, gens, tuple(sorted(elems)))


def full_group_datum(matrix: CoverMatrix) -> PrymDatum:
    """The datum with H = G (quotient curve is the line itself)."""
    elems = group_elements(matrix)
    gens = []
    seen: set[Vector] = set()
    for c in matrix.columns():  # columns generate G; keep first occurrences
        if c not in seen and any(c):
            gens.append(c)
            seen.add(c)
    return PrymDatum(matrix, tuple(gens), elems)


def order_in_quotient(datum: PrymDatum, g: Vector) -> int:
    """Order of the class of g in G/H: least k >= 1 with k.g in H."""
    N = datum.matrix.N
    if g not in set(group_elements(datum.matrix)):
        raise MembershipError(f"{g} is not in the deck group")
    hset = set(datum.h_elements)
    acc = g
    k = 1
    while acc not in hset:
        acc = vadd(acc, g, N)
        k += 1
    return k


def _minimal_generators(N: int, elems: Sequence[Vector]) -> tuple[Vector, ...]:
    gens: list[Vector] = []
    have: frozenset[Vector] = frozenset({tuple([0] * len(elems[0]))})
    for e in sorted(elems):
        if e not in have:
            gens.append(e)
            have = _closure(N, tuple(gens), cap=len(elems))
    return tuple(gens)


def subgroups(matrix: CoverMatrix) -> tuple[tuple[Vector, ...], ...]:
    """All subgroups of the deck group, each as a sorted element tuple.

    Listed in a deterministic order: by order, then by the element tuple.
    Intended for the small groups that occur here (|G| <= a few hundred).
    """
    N = matrix.N
    group = group_elements(matrix)
    zero = (0,) * matrix.m
    found: set[frozenset[Vector]] = {frozenset({zero})}
    frontier = [frozenset({zero})]
    while frontier:
        h = frontier.pop()
        for g in group:
            if g not in h:
                bigger = _closure(N, tuple(h | {g}), cap=len(group))
                if bigger not in found:
                    found.add(bigger)
                    frontier.append(bigger)
    return tuple(
        tuple(sorted(h)) for h in sorted(found, key=lambda h: (len(h), tuple(sorted(h))))
    )


# ---------------------------------------------------------------------------
# enumeration


def _nonzero_vectors(N: int, m: int) -> list[Vector]:
    return [v for v in product(range(N), repeat=m) if any(v)]


def _cell_matrices(N: int, m: int, s: int) -> Iterator[CoverMatrix]:
    """Valid matrices of one shape in lexicographic column order.

    The first s-1 columns run over nonzero vectors in lexicographic order;
    the last column is forced by the column-sum rule and the matrix is
    emitted when it is nonzero.  Since two emitted matrices first differ
    within the free columns, the emitted sequence is lexicographic in the
    flattened column tuple.
    """
    nonzero = _nonzero_vectors(N, m)
    for prefix in product(nonzero, repeat=s - 1):
        last = tuple((-sum(col[i] for col in prefix)) % N for i in range(m))
        if any(last):
            yield CoverMatrix.from_columns(N, prefix + (last,))


def _cell_matrices_sorted(N: int, m: int, s: int) -> Iterator[CoverMatrix]:
    """Valid matrices with nondecreasing columns: one per permutation class."""
    nonzero = _nonzero_vectors(N, m)
    zero = (0,) * m

    def rec(start: int, chosen: list[Vector], acc: Vector) -> Iterator[CoverMatrix]:
        if len(chosen) == s:
            if acc == zero:
                yield CoverMatrix.from_columns(N, tuple(chosen))
            return
        for idx in range(start, len(nonzero)):
            v = nonzero[idx]
            chosen.append(v)
            yield from rec(idx, chosen, vadd(acc, v, N))
            chosen.pop()

    yield from rec(0, [], zero)


def _as_range(r: int | Iterable[int]) -> tuple[int, ...]:
    if isinstance(r, int):
        return (r,)
    return tuple(r)


def enumerate_data(
    N_range: int | Iterable[int],
    m_range: int | Iterable[int],
    s_range: int | Iterable[int],
    *,
    require_irreducible: bool = False,
    h_mode: str = "full",
    allow_trivial_h: bool = False,
    dedupe_permutations: bool = False,
    max_count: int | None = None,
) -> Iterator[PrymDatum]:
    """Stream Prym data over shape ranges, deterministically.

    Cells (N, m, s) are visited in ascending order; within a cell, matrices
    come in lexicographic column order (see _cell_matrices).  Every emitted
    matrix is valid; `require_irreducible` additionally filters to
    irreducible ones.  `h_mode` selects the subgroup choices per matrix:

    - "full": H = G (one datum per matrix)
    - "all-subgroups": every subgroup of G, ordered by (order, elements);
      the trivial one only with `allow_trivial_h`
    - "index-2": subgroups of index 2 only

    `max_count` caps the stream: the generator raises CapExceededError
    after yielding `max_count` data if more would follow.
    """
    if h_mode not in ("full", "all-subgroups", "index-2"):
        raise ValueError(f"unknown h_mode {h_mode!r}")
    count = 0

    def emit(d: PrymDatum) -> Iterator[PrymDatum]:
        nonlocal count
        if max_count is not None and count >= max_count:
            raise CapExceededError(f"enumeration cap of {max_count} data exceeded")
        count += 1
        yield d

    for N in _as_range(N_range):
        for m in _as_range(m_range):
            for s in _as_range(s_range):
                if s < 3:
                    continue
                gen = (
                    _cell_matrices_sorted(N, m, s)
                    if dedupe_permutations
                    else _cell_matrices(N, m, s)
                )
                for matrix in gen:
                    if require_irreducible and not is_irreducible(matrix):
                        continue
                    if h_mode == "full":
                        yield from emit(full_group_datum(matrix))
                        continue
                    group = group_elements(matrix)
                    for h in subgroups(matrix):
                        if len(h) == 1 and not allow_trivial_h:
                            continue
                        if h_mode == "index-2" and 2 * len(h) != len(group):
                            continue
                        gens = _minimal_generators(N, h) or ((0,) * m,)
                        yield from emit(PrymDatum(matrix, gens, h))


def take(iterator: Iterator, k: int) -> list:
    """First k items of an iterator (fewer if it ends early)."""
    return list(islice(iterator, k))


# ---------------------------------------------------------------------------
# serialization


def datum_to_dict(datum: PrymDatum) -> dict:
    return {
        "N": datum.matrix.N,
        "rows": [list(r) for r in datum.matrix.rows],
        "H": [list(g) for g in datum.h_generators],
    }


def datum_from_dict(data: dict, *, allow_trivial_h: bool = False) -> PrymDatum:
    """Parse the canonical datum mapping {"N":, "rows":, "H":}.

    "H" holds generators; a missing or null "H" means H = G.  Integers are
    reduced mod N with a warning when out of [0, N).
    """
    if not isinstance(data, dict):
        raise ValueError("datum must be a JSON object")
    try:
        N = data["N"]
        rows = data["rows"]
    except KeyError as e:
        raise ValueError(f"datum is missing key {e.args[0]!r}") from None
    matrix = CoverMatrix.from_rows(N, rows)
    hgens = data.get("H")
    if hgens is None:
        return full_group_datum(matrix)
    return subgroup_closure(matrix, [tuple(g) for g in hgens], allow_trivial=allow_trivial_h)


def load_datum(path: str, *, allow_trivial_h: bool = False) -> PrymDatum:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return datum_from_dict(data, allow_trivial_h=allow_trivial_h)


def dump_datum(datum: PrymDatum, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(datum_to_dict(datum), fh, indent=2, sort_keys=True)
        fh.write("\n")
