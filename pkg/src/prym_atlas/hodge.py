"""Hodge data of an abelian cover: eigenspaces, genera, Prym varieties.

The deck group G acts on the holomorphic differentials of the cover C~,
splitting H^0(C~, omega) into character eigenspaces.  For the character
paired with n in (Z/N)^m by the dot product, write

    alpha_j(n) = sum_i n_i r_ij  mod N      (one residue per branch point)

and the eigenspace dimension is

    d(n) = -1 + sum_j <alpha_j(n)* / N>     n != 0,    d(0) = 0,

where x* = (-x mod N) and <.> is integer division here: the sum of the
residues (-alpha_j(n) mod N) is always divisible by N for a valid matrix,
so d(n) is computed exactly in integers, never floats.

Genera come from two independent routes that must agree: Riemann-Hurwitz
over the branch orders, and the sum of d(n) over one representative per
character of G.  For a datum (matrix, H) the quotient C = C~/H has the
same two routes with quotient branch orders and H-trivial characters; the
Prym variety of C~ -> C has dimension g(C~) - g(C), which also equals the
total dimension of the anti-invariant eigenspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .covers import (
    CoverMatrix,
    PrymDatum,
    Vector,
    character_representatives,
    group_elements,
    local_monodromy_orders,
    order_in_quotient,
    vdot,
    vneg,
)
from .errors import ConsistencyError, IncomparableSectionsError, MembershipError


def alpha_vector(matrix: CoverMatrix, n: Vector) -> tuple[int, ...]:
    """Residues alpha_j(n) = sum_i n_i r_ij mod N, one per column."""
    if len(n) != matrix.m:
        raise MembershipError(f"character {n} has wrong length, expected {matrix.m}")
    N = matrix.N
    return tuple(sum(ni * rij for ni, rij in zip(n, col)) % N for col in matrix.columns())


def eigen_dim(matrix: CoverMatrix, n: Vector) -> int:
    """dim of the n-eigenspace of H^0(omega); 0 for the trivial character."""
    if not any(x % matrix.N for x in n):
        return 0
    N = matrix.N
    total = sum((N - a) % N for a in alpha_vector(matrix, n))
    if total % N:
        raise ConsistencyError(
            f"character sum {total} not divisible by {N}; matrix violates column-sum"
        )
    return total // N - 1


def genus_total(matrix: CoverMatrix) -> int:
    """Genus of the cover by Riemann-Hurwitz over the line.

    2g - 2 = |G| (s - 2) - sum_j |G| / m_j with m_j the branch orders.
    A non-integral or negative result raises ConsistencyError (invalid datum).
    """
    order = len(group_elements(matrix))
    s = matrix.s
    val = order * (s - 2)
    for mj in local_monodromy_orders(matrix):
        if order % mj:
            raise ConsistencyError(f"branch order {mj} does not divide |G| = {order}")
        val -= order // mj
    if val % 2:
        raise ConsistencyError(f"Riemann-Hurwitz gave odd 2g-2 = {val}")
    g = (val + 2) // 2
    if g < 0:
        raise ConsistencyError(f"Riemann-Hurwitz gave negative genus {g}")
    return g


def genus_from_characters(matrix: CoverMatrix) -> int:
    """Genus as the sum of eigenspace dimensions over the characters of G."""
    return sum(eigen_dim(matrix, n) for n in character_representatives(matrix))


def _quotient_orders(datum: PrymDatum) -> tuple[int, ...]:
    return tuple(order_in_quotient(datum, c) for c in datum.matrix.columns())


def quotient_genus(datum: PrymDatum) -> int:
    """Genus of C = C~/H by Riemann-Hurwitz with quotient branch orders."""
    matrix = datum.matrix
    order = len(group_elements(matrix)) // datum.h_order
    val = order * (matrix.s - 2)
    for mj in _quotient_orders(datum):
        if order % mj:
            raise ConsistencyError(f"quotient branch order {mj} does not divide {order}")
        val -= order // mj
    if val % 2:
        raise ConsistencyError(f"Riemann-Hurwitz gave odd 2g-2 = {val} on the quotient")
    g = (val + 2) // 2
    if g < 0:
        raise ConsistencyError(f"Riemann-Hurwitz gave negative quotient genus {g}")
    return g


def quotient_genus_from_characters(datum: PrymDatum) -> int:
    """Quotient genus as the eigenspace sum over H-trivial characters."""
    matrix = datum.matrix
    N = matrix.N
    return sum(
        eigen_dim(matrix, n)
        for n in character_representatives(matrix)
        if all(vdot(n, h, N) == 0 for h in datum.h_generators)
    )


def anti_invariant_dim(datum: PrymDatum, n: Vector) -> int:
    """d^-(n): the eigenspace dimension if n is nontrivial on H, else 0."""
    N = datum.matrix.N
    if all(vdot(n, h, N) == 0 for h in datum.h_generators):
        return 0
    return eigen_dim(datum.matrix, n)


def prym_dimension(datum: PrymDatum) -> int:
    """dim of the Prym variety of C~ -> C~/H: genus difference."""
    return genus_total(datum.matrix) - quotient_genus(datum)


def prym_dimension_from_characters(datum: PrymDatum) -> int:
    """Prym dimension as the total anti-invariant eigenspace dimension."""
    return sum(
        anti_invariant_dim(datum, n) for n in character_representatives(datum.matrix)
    )


def polarization_type(datum: PrymDatum) -> tuple[int, ...]:
    """Type (d_1 | d_2 | ... | d_l) of the induced polarization on the Prym.

    The entry 1 appears g - 1 times when C~ -> C is unramified and g times
    otherwise (g the quotient genus); all remaining entries equal |H|.
    """
    g_top = genus_total(datum.matrix)
    g = quotient_genus(datum)
    l = g_top - g
    orders = local_monodromy_orders(datum.matrix)
    ramified = any(q < m for q, m in zip(_quotient_orders(datum), orders))
    ones = g if ramified else g - 1
    if not 0 <= ones <= l:
        raise ConsistencyError(f"polarization shape impossible: l = {l}, ones = {ones}")
    return (1,) * ones + (datum.h_order,) * (l - ones)


def eigenspace_type(datum: PrymDatum, n: Vector) -> tuple[int, int]:
    """(d^-(n), d^-(-n)); the class of n is trivial when either entry is 0."""
    return (
        anti_invariant_dim(datum, n),
        anti_invariant_dim(datum, vneg(n, datum.matrix.N)),
    )


# ---------------------------------------------------------------------------
# differential forms


@dataclass(frozen=True)
class DifferentialMonomial:
    """z^power . prod_i w_i^{n_i} . prod_j (z - z_j)^{e_j} dz."""

    character: Vector
    z_power: int
    branch_exponents: tuple[int, ...]


def differential_basis(matrix: CoverMatrix, n: Vector) -> tuple[DifferentialMonomial, ...]:
    """The monomial basis of the n-eigenspace of H^0(omega).

    Entry nu (0 <= nu < d(n)) is z^nu prod w_i^{n_i} prod (z-z_j)^{e_j} dz
    with e_j = floor(-alpha_j(n)/N), which is 0 for alpha_j = 0 and -1
    otherwise.
    """
    d = eigen_dim(matrix, n)
    al = alpha_vector(matrix, n)
    exps = tuple(0 if a == 0 else -1 for a in al)
    return tuple(DifferentialMonomial(tuple(n), nu, exps) for nu in range(d))


def _normalized_product(
    matrix: CoverMatrix, a: Vector, nu: int, b: Vector, mu: int
) -> tuple[Vector, int, tuple[int, ...]]:
    """Normal form of omega_{a,nu} . omega_{b,mu} as (character, z-power, exps).

    Products of w_i beyond exponent N-1 are reduced by w_i^N = prod (z-z_j)^{r_ij},
    which shifts the branch exponents by the matrix entries.
    """
    N = matrix.N
    for (c, k) in ((a, nu), (b, mu)):
        d = eigen_dim(matrix, c)
        if d < 1:
            raise MembershipError(f"character {c} has no differentials (d = {d})")
        if not 0 <= k < d:
            raise MembershipError(f"index {k} out of range for d = {d}")
    al_a = alpha_vector(matrix, a)
    al_b = alpha_vector(matrix, b)
    char = tuple((x + y) % N for x, y in zip(a, b))
    carries = tuple((x + y) // N for x, y in zip(a, b))
    exps = []
    for j, col in enumerate(matrix.columns()):
        e = (0 if al_a[j] == 0 else -1) + (0 if al_b[j] == 0 else -1)
        e += sum(r * c for r, c in zip(col, carries))
        exps.append(e)
    return char, nu + mu, tuple(exps)


def section_product_equal(
    matrix: CoverMatrix,
    a: Vector,
    nu: int,
    b: Vector,
    mu: int,
    a2: Vector,
    nu2: int,
    b2: Vector,
    mu2: int,
) -> bool:
    """Whether omega_{a,nu}.omega_{b,mu} = omega_{a2,nu2}.omega_{b2,mu2}.

    Both products are brought to the normal form z^k prod w^c prod (z-z_j)^e;
    products in different character spaces (c mismatch) are not comparable
    and raise IncomparableSectionsError.
    """
    left = _normalized_product(matrix, a, nu, b, mu)
    right = _normalized_product(matrix, a2, nu2, b2, mu2)
    if left[0] != right[0]:
        raise IncomparableSectionsError(
            f"products live in different character spaces {left[0]} vs {right[0]}"
        )
    return left[1:] == right[1:]


# ---------------------------------------------------------------------------
# eigenspace profiles


@dataclass(frozen=True)
class EigenRecord:
    n: Vector
    alpha: tuple[int, ...]
    d: int
    d_minus: int
    pair_type: tuple[int, int]


@dataclass(frozen=True)
class EigenspaceProfile:
    """Per-character eigenspace data for a Prym datum, sorted by character."""

    datum: PrymDatum
    records: tuple[EigenRecord, ...]

    def record(self, n: Vector) -> EigenRecord:
        for r in self.records:
            if r.n == n:
                return r
        raise MembershipError(f"{n} is not a character representative here")

    def to_json_list(self) -> list[dict]:
        return [
            {
                "n": list(r.n),
                "alpha": list(r.alpha),
                "d": r.d,
                "d_minus": r.d_minus,
                "type": list(r.pair_type),
            }
            for r in self.records
        ]


@lru_cache(maxsize=1024)
def eigenspace_profile(datum: PrymDatum) -> EigenspaceProfile:
    """Profile every character representative of the deck group."""
    matrix = datum.matrix
    records = [
        EigenRecord(
            n=n,
            alpha=alpha_vector(matrix, n),
            d=eigen_dim(matrix, n),
            d_minus=anti_invariant_dim(datum, n),
            pair_type=eigenspace_type(datum, n),
        )
        for n in character_representatives(matrix)
    ]
    return EigenspaceProfile(datum, tuple(records))
