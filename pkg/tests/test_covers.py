"""Cover matrices: validity, group structure, enumeration, serialization."""

import json

import pytest

from prym_atlas.covers import (
    CoverMatrix,
    PrymDatum,
    character_representatives,
    datum_from_dict,
    datum_to_dict,
    dump_datum,
    element_order,
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
    take,
    validate,
    vneg,
)
from prym_atlas.errors import (
    CapExceededError,
    MembershipError,
    ReducibleMatrixError,
    TrivialSubgroupError,
)


def test_valid_matrix_accepted():
    m = CoverMatrix(5, ((1, 1, 4, 4),))
    assert validate(m).ok
    assert m.m == 1 and m.s == 4


def test_column_sum_violation_reported():
    m = CoverMatrix(5, ((1, 1, 4, 3),))
    rep = validate(m)
    assert not rep.ok
    assert any("column-sum" == kind for kind, _ in rep.violations)


def test_zero_column_violation_reported():
    m = CoverMatrix(4, ((0, 2, 2), (0, 1, 3)))
    rep = validate(m)
    assert not rep.ok
    assert any("zero-column" == kind for kind, _ in rep.violations)


def test_too_few_columns_reported():
    m = CoverMatrix(3, ((1, 2),))
    rep = validate(m)
    assert not rep.ok
    assert any("shape" == kind for kind, _ in rep.violations)


def test_entries_must_be_reduced():
    with pytest.raises(ValueError):
        CoverMatrix(3, ((1, 1, 4),))


def test_from_rows_reduces_mod_N():
    with pytest.warns(UserWarning):
        m = CoverMatrix.from_rows(3, ((1, 1, 4),))
    assert m.rows == ((1, 1, 1),)


def test_from_columns_round_trip():
    m = CoverMatrix(4, ((1, 1, 2), (2, 1, 1)))
    assert CoverMatrix.from_columns(4, m.columns()) == m


def test_element_order():
    assert element_order((0, 0), 6) == 1
    assert element_order((2, 0), 6) == 3
    assert element_order((2, 3), 6) == 6


def test_group_elements_cyclic():
    m = CoverMatrix(5, ((1, 1, 4, 4),))
    assert len(group_elements(m)) == 5


def test_group_elements_product_group():
    # columns generate all of (Z/2)^2
    m = CoverMatrix(2, ((1, 0, 1, 0), (0, 1, 0, 1)))
    assert len(group_elements(m)) == 4


def test_group_elements_proper_subgroup():
    # every column lies in the diagonal of (Z/2)^2
    m = CoverMatrix(2, ((1, 1, 1, 1), (1, 1, 1, 1)))
    assert group_elements(m) == ((0, 0), (1, 1))


def test_local_monodromy_orders():
    m = CoverMatrix(6, ((2, 3, 1),))
    assert local_monodromy_orders(m) == (3, 2, 6)


def test_left_kernel_trivial_iff_irreducible():
    good = CoverMatrix(2, ((1, 0, 1, 0), (0, 1, 0, 1)))
    assert left_kernel(good) == ((0, 0),)
    assert is_irreducible(good)
    bad = CoverMatrix(2, ((1, 1, 1, 1), (1, 1, 1, 1)))
    assert len(left_kernel(bad)) == 2
    assert not is_irreducible(bad)


def test_irreducibility_methods_agree():
    mats = [
        CoverMatrix(4, ((1, 1, 2), (2, 1, 1))),
        CoverMatrix(4, ((2, 2, 0), (0, 2, 2))),
        CoverMatrix(6, ((1, 2, 3), (3, 2, 1))),
        CoverMatrix(2, ((1, 1, 1, 1),)),
        CoverMatrix(2, ((1, 1, 1, 1), (1, 1, 1, 1))),
    ]
    for m in mats:
        assert is_irreducible(m, method="brute") == is_irreducible(m, method="snf"), m


def test_character_representatives_irreducible_is_everything():
    m = CoverMatrix(3, ((1, 1, 2, 2),))
    assert character_representatives(m) == ((0,), (1,), (2,))


def test_character_representatives_reducible_cosets():
    # diagonal subgroup of (Z/2)^2: two characters restrict trivially
    m = CoverMatrix(2, ((1, 1, 1, 1), (1, 1, 1, 1)))
    reps = character_representatives(m)
    assert len(reps) == 2
    seen = set()
    for n in reps:
        seen.add(tuple(sum(a * b for a, b in zip(n, g)) % 2 for g in group_elements(m)))
    assert len(seen) == 2


def test_subgroup_closure_and_membership():
    m = CoverMatrix(2, ((1, 0, 1, 0), (0, 1, 0, 1)))
    d = subgroup_closure(m, ((1, 1),))
    assert set(d.h_elements) == {(0, 0), (1, 1)}
    assert d.h_order == 2
    # (1,0) lies outside the diagonal group generated by this matrix
    small = CoverMatrix(2, ((1, 1, 1, 1), (1, 1, 1, 1)))
    with pytest.raises(MembershipError):
        subgroup_closure(small, ((1, 0),))


def test_trivial_subgroup_rejected_by_default():
    m = CoverMatrix(2, ((1, 1, 1, 1),))
    with pytest.raises(TrivialSubgroupError):
        subgroup_closure(m, ((0,),))
    d = subgroup_closure(m, ((0,),), allow_trivial=True)
    assert d.h_elements == ((0,),)


def test_full_group_datum():
    m = CoverMatrix(5, ((1, 1, 4, 4),))
    d = full_group_datum(m)
    assert d.h_order == 5
    assert set(d.h_generators) == {(1,), (4,)}


def test_order_in_quotient():
    m = CoverMatrix(2, ((1, 0, 1, 0), (0, 1, 0, 1)))
    d = PrymDatum(m, ((1, 1),), ((0, 0), (1, 1)))
    assert order_in_quotient(d, (0, 0)) == 1
    assert order_in_quotient(d, (1, 1)) == 1
    assert order_in_quotient(d, (1, 0)) == 2


def test_subgroups_of_z6():
    m = CoverMatrix(6, ((1, 1, 4),))
    orders = sorted(len(h) for h in subgroups(m))
    assert orders == [1, 2, 3, 6]


def test_enumerate_full_mode_counts():
    # s - 1 free nonzero columns, last column forced and nonzero
    data = list(enumerate_data(2, 1, 4))
    assert len(data) == 1  # only (1,1,1,1)
    data = list(enumerate_data(3, 1, 4))
    assert len(data) == 6  # 2^3 prefixes minus the two with zero completion
    for d in data:
        assert validate(d.matrix).ok


def test_enumerate_is_deterministic():
    a = [d.matrix.rows for d in enumerate_data((2, 3), 1, (4, 5))]
    b = [d.matrix.rows for d in enumerate_data((2, 3), 1, (4, 5))]
    assert a == b
    assert a == sorted(a, key=lambda rows: (len(rows[0]), rows))


def test_enumerate_irreducible_filter():
    # m = 2, N = 2: reducible matrices are skipped
    for d in enumerate_data(2, 2, 4, require_irreducible=True):
        assert is_irreducible(d.matrix)


def test_enumerate_all_subgroups_mode():
    data = list(enumerate_data(6, 1, 3, h_mode="all-subgroups"))
    by_rows = {}
    for d in data:
        by_rows.setdefault(d.matrix.rows, []).append(d.h_order)
    for rows, orders in by_rows.items():
        assert 1 not in orders
        assert sorted(orders) == sorted(
            len(h) for h in subgroups(CoverMatrix(6, rows)) if len(h) > 1
        )


def test_enumerate_index_2_mode():
    data = list(enumerate_data(4, 1, 3, h_mode="index-2"))
    assert data
    for d in data:
        assert 2 * d.h_order == len(group_elements(d.matrix))


def test_enumerate_max_count_raises_after_cap():
    gen = enumerate_data(3, 1, 4, max_count=3)
    got = []
    with pytest.raises(CapExceededError):
        for d in gen:
            got.append(d)
    assert len(got) == 3


def test_enumerate_max_count_exact_fit_ok():
    # cap equal to the stream length: no error
    assert len(list(enumerate_data(2, 1, 4, max_count=1))) == 1


def test_take():
    assert take(iter(range(10)), 3) == [0, 1, 2]
    assert take(iter(range(2)), 5) == [0, 1]


def test_dedupe_permutations():
    plain = {d.matrix.rows for d in enumerate_data(3, 1, 4)}
    deduped = [d.matrix.rows for d in enumerate_data(3, 1, 4, dedupe_permutations=True)]
    assert len(deduped) < len(plain)
    for rows in deduped:
        cols = list(zip(*rows))
        assert cols == sorted(cols)


def test_datum_round_trip(tmp_path):
    m = CoverMatrix(4, ((1, 1, 2), (2, 1, 1)))
    d = full_group_datum(m)
    path = tmp_path / "datum.json"
    dump_datum(d, str(path))
    back = load_datum(str(path))
    assert back == d


def test_datum_from_dict_defaults_to_full_group():
    d = datum_from_dict({"N": 5, "rows": [[1, 1, 4, 4]]})
    assert d.h_order == 5


def test_datum_dict_has_wire_keys(tmp_path):
    m = CoverMatrix(5, ((1, 1, 4, 4),))
    d = full_group_datum(m)
    data = datum_to_dict(d)
    assert set(data) == {"N", "rows", "H"}
    json.dumps(data)  # serializable as-is
