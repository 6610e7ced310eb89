"""prym-atlas: abelian covers of the line, their Pryms, and what is special.

The package computes, exactly and deterministically:

- eigenspace dimensions, genera and Prym data of abelian covers of the
  projective line given by a matrix over Z/N (`covers`, `hodge`);
- the speciality classification of the resulting families of Prym
  varieties (`shimura`);
- Hasse-Witt matrices in characteristic p as exact polynomials in the
  branch points, ordinary-point searches over F_{p^k}, and the product
  and scaled-row identity checks (`hasse_witt`);
- a CLI exposing the above (`cli`, console script `prym-atlas`).

Hot polynomial kernels run in the compiled `_kernels` extension when
available, with a pure-Python fallback selected at import (`kernels`).
"""

from .covers import (
    CoverMatrix,
    PrymDatum,
    ValidationReport,
    character_representatives,
    datum_from_dict,
    datum_to_dict,
    enumerate_data,
    full_group_datum,
    group_elements,
    is_irreducible,
    left_kernel,
    load_datum,
    local_monodromy_orders,
    order_in_quotient,
    subgroup_closure,
    subgroups,
    validate,
)
from .gf import FiniteField, determinant
from .hasse_witt import (
    HWMatrix,
    OrdinaryPoint,
    SparsePoly,
    choose_prime,
    closed_form_exponents,
    divisibility_exponent,
    dump_entry,
    dump_matrix,
    evaluate,
    find_ordinary_point,
    hasse_witt_entry,
    hasse_witt_entry_series,
    hasse_witt_matrix,
    is_prym_ordinary_at,
    product_identity_holds,
    scaled_row_identity_holds,
    specialize,
)
from .hodge import (
    DifferentialMonomial,
    EigenspaceProfile,
    alpha_vector,
    anti_invariant_dim,
    differential_basis,
    eigen_dim,
    eigenspace_profile,
    eigenspace_type,
    genus_from_characters,
    genus_total,
    polarization_type,
    prym_dimension,
    prym_dimension_from_characters,
    quotient_genus,
    quotient_genus_from_characters,
    section_product_equal,
)
from .kernels import BACKEND
from .shimura import (
    SpecialityVerdict,
    class_contribution,
    classify,
    family_dimension,
    pair_classes,
    pel_dimension,
    special_lower_bound,
)

__version__ = "0.1.0"
