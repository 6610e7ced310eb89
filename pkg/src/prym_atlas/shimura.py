"""Speciality classification for families of Prym varieties.

Moving the s branch points gives an (s-3)-dimensional family of Prym
varieties inside a moduli space of polarized abelian varieties.  The deck
group action cuts out a distinguished subvariety P(G) whose dimension is
determined by the eigenspace profile; comparing dim P(G), the family
dimension s-3, and a lower bound for the smallest special subvariety
containing the family yields one of four verdicts:

- SPECIAL_PEL: dim P(G) = s-3, so the family fills P(G) and is special.
- NOT_SPECIAL_DIM: every special subvariety containing the family has
  dimension > s-3, so the family cannot be one.
- NOT_SPECIAL_S4: the one-parameter case s = 4 with dim P(G) > 1,
  excluded under an injectivity hypothesis for the reduction of the Prym
  map mod p (flagged in the verdict).
- NOT_SPECIAL_TYPE_1_S3: dim P(G) > s-3 with an eigenspace class of
  unordered type {1, s-3}, excluded under the same hypothesis.

Anything else is INCONCLUSIVE.  The rules are evaluated in that order and
the first match wins; every fired rule appends an identifier string to
the verdict's reasons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .covers import PrymDatum, Vector, is_irreducible, vneg
from .errors import ReducibleMatrixError
from .hodge import EigenspaceProfile, eigenspace_profile

VERDICT_SPECIAL_PEL = "SPECIAL_PEL"
VERDICT_NOT_SPECIAL_DIM = "NOT_SPECIAL_DIM"
VERDICT_NOT_SPECIAL_S4 = "NOT_SPECIAL_S4"
VERDICT_NOT_SPECIAL_TYPE_1_S3 = "NOT_SPECIAL_TYPE_1_S3"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class PairClass:
    """An unordered character pair {n, -n} with its anti-invariant type.

    `members` is (n,) when 2n = 0 (self-dual class) and (n, -n) otherwise.
    `pair_type` is oriented as (d^-(n), d^-(-n)) for the stored n.
    """

    members: tuple[Vector, ...]
    pair_type: tuple[int, int]
    self_dual: bool

    @property
    def trivial(self) -> bool:
        return 0 in self.pair_type

    @property
    def unordered_type(self) -> tuple[int, int]:
        a, b = self.pair_type
        return (a, b) if a <= b else (b, a)


def pair_classes(profile: EigenspaceProfile) -> tuple[PairClass, ...]:
    """Group the nonzero characters into unordered {n, -n} classes."""
    N = profile.datum.matrix.N
    d_minus = {r.n: r.d_minus for r in profile.records}
    out: list[PairClass] = []
    seen: set[Vector] = set()
    for r in profile.records:
        n = r.n
        if not any(n) or n in seen:
            continue
        neg = vneg(n, N)
        if neg == n:
            out.append(PairClass((n,), (r.d_minus, r.d_minus), True))
            seen.add(n)
        else:
            out.append(PairClass((n, neg), (r.d_minus, d_minus[neg]), False))
            seen.add(n)
            seen.add(neg)
    return tuple(out)


def class_contribution(pair_type: tuple[int, int], self_dual: bool) -> int:
    """Dimension contributed by one eigenspace class to the group subvariety.

    A non-self-dual class of type (a, b) moves in an a x b block (dimension
    a.b); a self-dual class of type (a, a) moves in a symmetric a x a block
    (dimension a(a+1)/2).
    """
    a, b = pair_type
    if self_dual:
        if a != b:
            raise ValueError(f"self-dual class with asymmetric type {pair_type}")
        return a * (a + 1) // 2
    return a * b


def pel_dimension(profile: EigenspaceProfile) -> int:
    """dim P(G): total over all classes of their block dimensions."""
    return sum(class_contribution(c.pair_type, c.self_dual) for c in pair_classes(profile))


def special_lower_bound(profile: EigenspaceProfile) -> int:
    """Lower bound for the dimension of the smallest special subvariety
    containing the family.

    Nontrivial classes are grouped by unordered type (self-dual classes
    separate from non-self-dual ones); each distinct type counts once.
    """
    kinds = {
        (c.unordered_type, c.self_dual)
        for c in pair_classes(profile)
        if not c.trivial
    }
    return sum(class_contribution(t, sd) for (t, sd) in sorted(kinds))


def family_dimension(s: int) -> int:
    """Dimension s - 3 of the family traced by moving the branch points."""
    return s - 3


@dataclass(frozen=True)
class SpecialityVerdict:
    verdict: str
    dim_P_G: int
    dim_Pf_lower: int
    s_minus_3: int
    assumes_condition_star: bool
    reasons: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "dim_P_G": self.dim_P_G,
            "dim_Pf_lower": self.dim_Pf_lower,
            "s_minus_3": self.s_minus_3,
            "assumes_condition_star": self.assumes_condition_star,
            "reasons": list(self.reasons),
        }


def classify(datum: PrymDatum) -> SpecialityVerdict:
    """Run the ordered rule chain on an irreducible Prym datum."""
    if not is_irreducible(datum.matrix):
        raise ReducibleMatrixError(
            "classification needs an irreducible matrix; this one factors"
        )
    profile = eigenspace_profile(datum)
    s = datum.matrix.s
    dim_pg = pel_dimension(profile)
    lower = special_lower_bound(profile)
    expected = family_dimension(s)
    reasons: list[str] = []
    star = False

    if dim_pg == expected:
        verdict = VERDICT_SPECIAL_PEL
        reasons.append(
            f"pel-dimension-match: dim P(G) = {dim_pg} equals s-3 = {expected}; "
            "the family fills the group-constructed special subvariety"
        )
    elif lower > expected:
        verdict = VERDICT_NOT_SPECIAL_DIM
        reasons.append(
            f"factor-dimension-bound: every special subvariety containing the "
            f"family has dimension >= {lower} > s-3 = {expected}"
        )
    elif s == 4 and dim_pg > 1:
        verdict = VERDICT_NOT_SPECIAL_S4
        star = True
        reasons.append(
            f"one-parameter-exclusion: s = 4 and dim P(G) = {dim_pg} > 1 "
            "(assumes injectivity of the mod-p reduction of the Prym map)"
        )
    elif dim_pg > expected and any(
        c.unordered_type == (1, expected) for c in pair_classes(profile) if not c.trivial
    ):
        verdict = VERDICT_NOT_SPECIAL_TYPE_1_S3
        star = True
        reasons.append(
            f"thin-eigenspace-exclusion: dim P(G) = {dim_pg} > s-3 = {expected} and "
            f"an eigenspace class of type (1, {expected}) exists "
            "(assumes injectivity of the mod-p reduction of the Prym map)"
        )
    else:
        verdict = VERDICT_INCONCLUSIVE
        reasons.append("inconclusive: no rule of the chain applies")
    if dim_pg < expected:
        reasons.append(
            f"warning: dim P(G) = {dim_pg} < s-3 = {expected}; the family cannot "
            "fill the group-constructed subvariety, check the datum"
        )
    return SpecialityVerdict(
        verdict=verdict,
        dim_P_G=dim_pg,
        dim_Pf_lower=lower,
        s_minus_3=expected,
        assumes_condition_star=star,
        reasons=tuple(reasons),
    )
