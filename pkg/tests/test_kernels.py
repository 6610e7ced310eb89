"""Backend-agreement and reference checks for the polynomial kernels.

Both implementations ship with the package; the compiled one is exercised
whenever it built, and every result is compared against the pure one.
"""

import random

import pytest

from prym_atlas import _kernels_py as pure
from prym_atlas import kernels

try:
    from prym_atlas import _kernels as compiled
except ImportError:  # pragma: no cover - source-only install
    compiled = None

BACKENDS = [pure] + ([compiled] if compiled is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda b: b.BACKEND)
def backend(request):
    return request.param


def test_selected_backend_is_one_of_the_two():
    assert kernels.BACKEND in ("python", "compiled")


def test_entry_terms_small_example(backend):
    # (1 + z1)(1 + z2) ... degree-2 part over F_3: six square-free quadratics
    terms = backend.hw_entry_terms((1, 1, 1, 1), 2, 3)
    assert terms == {
        (1, 1, 0, 0): 1,
        (1, 0, 1, 0): 1,
        (1, 0, 0, 1): 1,
        (0, 1, 1, 0): 1,
        (0, 1, 0, 1): 1,
        (0, 0, 1, 1): 1,
    }


def test_entry_terms_binomial_coefficients(backend):
    # single variable: coefficient C(4, 2) mod 3 = 0 drops the term
    assert backend.hw_entry_terms((4,), 2, 3) == {}
    assert backend.hw_entry_terms((4,), 1, 3) == {(1,): 1}


def test_entry_terms_empty_cases(backend):
    assert backend.hw_entry_terms((2, 2), -1, 5) == {}
    assert backend.hw_entry_terms((2, 2), 5, 5) == {}
    assert backend.hw_entry_terms((0, 0), 0, 5) == {(0, 0): 1}


def test_series_slices_match_direct(backend):
    caps = (3, 2, 4)
    p = 7
    slices = backend.series_slices(caps, 9, p)
    for u in range(10):
        assert slices[u] == backend.hw_entry_terms(caps, u, p), u


def test_series_total_term_count(backend):
    # over the rationals the slices partition the full box; with p large
    # enough no coefficient vanishes
    caps = (2, 2, 1)
    p = 101
    slices = backend.series_slices(caps, 5, p)
    assert sum(len(s) for s in slices) == 3 * 3 * 2


def test_series_coefficient(backend):
    assert backend.series_coefficient((2, 2), 2, 5) == {
        (2, 0): 1,
        (1, 1): 4,
        (0, 2): 1,
    }


def test_block_agrees_is_true_on_real_caps(backend):
    # caps of the shape produced by covers: sum = (p-1)(d+1)
    assert backend.hw_block_agrees((4, 4, 2, 2), 2, 5)
    assert backend.hw_block_agrees((2, 2), 1, 3)


def test_poly_mul_basic(backend):
    a = {(1, 0): 1, (0, 1): 1}
    assert backend.poly_mul(a, a, 2, 5) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert backend.poly_mul(a, {}, 2, 5) == {}


def test_poly_mul_cancellation(backend):
    # (x + y)(x - y) = x^2 - y^2; the xy terms cancel mod p
    a = {(1, 0): 1, (0, 1): 1}
    b = {(1, 0): 1, (0, 1): 6}
    assert backend.poly_mul(a, b, 2, 7) == {(2, 0): 1, (0, 2): 6}


def test_products_equal_commutativity(backend):
    a = {(2, 1): 3, (0, 2): 4}
    b = {(1, 1): 2, (3, 0): 6}
    assert backend.products_equal(a, b, b, a, 2, 7)


def test_products_equal_detects_difference(backend):
    a = {(1, 0): 1}
    b = {(0, 1): 1}
    assert not backend.products_equal(a, a, b, b, 2, 5)


def test_products_equal_zero_sides(backend):
    assert backend.products_equal({}, {}, {}, {}, 3, 5)
    assert not backend.products_equal({(0, 0, 0): 1}, {(0, 0, 0): 1}, {}, {}, 3, 5)


@pytest.mark.skipif(compiled is None, reason="compiled backend absent")
def test_backends_agree_randomized():
    rng = random.Random(20240817)
    for _ in range(150):
        s = rng.randint(1, 6)
        p = rng.choice([3, 5, 7, 11, 13, 29])
        caps = tuple(rng.randint(0, 10) for _ in range(s))
        top = rng.randint(0, sum(caps) + 1)
        assert pure.series_slices(caps, top, p) == compiled.series_slices(
            caps, top, p
        ), (caps, top, p)
        u = rng.randint(-1, sum(caps) + 1)
        assert pure.hw_entry_terms(caps, u, p) == compiled.hw_entry_terms(
            caps, u, p
        ), (caps, u, p)


@pytest.mark.skipif(compiled is None, reason="compiled backend absent")
def test_backends_agree_on_products():
    rng = random.Random(99)
    for _ in range(60):
        nv = rng.randint(1, 4)
        p = rng.choice([3, 7, 10**9 + 7])

        def rpoly():
            return {
                tuple(rng.randint(0, 5) for _ in range(nv)): rng.randint(1, p - 1)
                for _ in range(rng.randint(0, 7))
            }

        a1, b1, a2, b2 = rpoly(), rpoly(), rpoly(), rpoly()
        assert pure.poly_mul(a1, b1, nv, p) == compiled.poly_mul(a1, b1, nv, p)
        assert pure.products_equal(a1, b1, a2, b2, nv, p) == compiled.products_equal(
            a1, b1, a2, b2, nv, p
        )


@pytest.mark.skipif(compiled is None, reason="compiled backend absent")
def test_compiled_falls_back_on_wide_input():
    # 9 variables exceed the packed key layout; results must still match
    caps = (1,) * 9
    assert compiled.hw_entry_terms(caps, 4, 5) == pure.hw_entry_terms(caps, 4, 5)
    caps = (300, 2)
    assert compiled.series_slices(caps, 3, 7) == pure.series_slices(caps, 3, 7)


def test_env_override_selects_pure_backend(tmp_path):
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from prym_atlas import kernels; print(kernels.BACKEND)"],
        env={"PRYM_ATLAS_PURE": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
        cwd=str(tmp_path),
    )
    assert out.stdout.strip() == "python"
