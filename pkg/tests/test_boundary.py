import numpy as np
import pytest

from helpers import sample_phis
from monopot.boundary import boundary_value, exceptional_slots, lemma_check
from monopot.clifford import AlgebraContext
from monopot.distributions import (
    delta,
    dirac_power_kernel,
    fp_power,
    hilbert_kernel,
    hilbert_power_kernel,
    log_kernel,
    pair,
    pair_dirac,
)
from monopot.special import sigma


def test_examples():
    for m in (2, 3, 4, 5):
        assert boundary_value("a", -1, "+", m).allclose(delta(m))
        b0 = fp_power(m, -(m - 1), 1 / sigma(m), omega=True)
        assert boundary_value("b", 0, "+", m).allclose(b0)
        assert boundary_value("b", 0, "-", m).allclose(b0 * float((-1) ** m))
        assert boundary_value("a", -1, "-", m).allclose(-delta(m))
        assert boundary_value("b", -1, "-", m).allclose(boundary_value("b", -1, "+", m))
        assert boundary_value("b", -1, "+", m).allclose(hilbert_kernel(m))
    assert boundary_value("a", 1, "+", 5).allclose(fp_power(5, -3, 1 / (3 * sigma(5))))
    assert boundary_value("a", 3, "+", 4).allclose(log_kernel(4, 0))  # E_4
    assert boundary_value("a", 3, "-", 4).allclose(log_kernel(4, 0))


def test_m2_exceptional_a1_is_E2():
    E2 = fp_power(2, 0, -1 / (2 * np.pi), log_power=1)
    assert boundary_value("a", 1, "+", 2).allclose(E2)


def test_m3_exceptional_a2_is_minus_F3():
    assert boundary_value("a", 2, "+", 3).allclose(log_kernel(3, 0) * -1.0)
    assert boundary_value("a", 2, "+", 3).allclose(fp_power(3, 0, 1 / sigma(4), log_power=1))


def test_c_series_combination():
    m = 3
    e0bar = -AlgebraContext(m).basis(1)
    for k in (-3, -1, 0, 2):
        for side in "+-":
            a, b = boundary_value("a", k, side, m), boundary_value("b", k, side, m)
            assert boundary_value("c", k, side, m).allclose(a * 0.5 + e0bar * (b * 0.5))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_downstream_side_symmetries(m):
    for l in range(1, 5):
        a_p, a_m = boundary_value("a", -2 * l, "+", m), boundary_value("a", -2 * l, "-", m)
        b_p, b_m = boundary_value("b", -2 * l, "+", m), boundary_value("b", -2 * l, "-", m)
        assert a_m.allclose(a_p) and b_m.allclose(-b_p)
        a_p, a_m = boundary_value("a", -2 * l - 1, "+", m), boundary_value("a", -2 * l - 1, "-", m)
        b_p, b_m = boundary_value("b", -2 * l - 1, "+", m), boundary_value("b", -2 * l - 1, "-", m)
        assert a_m.allclose(-a_p) and b_m.allclose(b_p)


def test_downstream_table_matches_kernels():
    m = 3
    assert boundary_value("a", -2, "+", m).allclose(hilbert_power_kernel(1, m) * -1.0)
    assert boundary_value("b", -2, "+", m).allclose(dirac_power_kernel(1, m) * -1.0)
    assert boundary_value("a", -3, "+", m).allclose(dirac_power_kernel(2, m))
    assert boundary_value("b", -3, "+", m).allclose(hilbert_power_kernel(2, m))


def test_exceptional_slots():
    even = exceptional_slots(4, 3)
    assert even[("a", 3)] == (1, 0) and even[("b", 4)] == (-1, 1)
    odd = exceptional_slots(3, 3)
    assert odd[("a", 2)] == (-1, 0) and odd[("b", 3)] == (1, 1)


def test_bad_arguments():
    with pytest.raises(ValueError):
        boundary_value("a", 0, "x", 3)
    with pytest.raises(ValueError):
        boundary_value("z", 0, "+", 3)
    with pytest.raises(ValueError):
        boundary_value("a", 0, "+", 1)
    with pytest.raises(ValueError):
        lemma_check(0, 3)


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("k", range(1, 6))
def test_chain_relations_all_indices(m, k):
    # -dirac a_k = b_{k-1} and -dirac b_k = a_{k-1} on both sides
    for side in "+-":
        for src, dst in (("a", "b"), ("b", "a")):
            T = boundary_value(src, k, side, m)
            U = boundary_value(dst, k - 1, side, m)
            for phi in sample_phis(m):
                assert np.allclose(-pair_dirac(T, phi).coeffs, pair(U, phi).coeffs, atol=1e-10)


def test_downstream_chain_relations():
    for m in (2, 3, 4, 5):
        for k in range(-5, 1):
            for side in "+-":
                for src, dst in (("a", "b"), ("b", "a")):
                    T = boundary_value(src, k, side, m)
                    U = boundary_value(dst, k - 1, side, m)
                    if (k, side, src) == (0, "-", "b") and m % 2 == 0:
                        # the lower Green pair for even m is singular along the
                        # negative x0-axis; the defect sits at the origin
                        U = U + delta(m, 0, 2.0)
                    for phi in sample_phis(m):
                        assert np.allclose(-pair_dirac(T, phi).coeffs, pair(U, phi).coeffs, atol=1e-9)


@pytest.mark.parametrize("m", [3, 5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_lemma(m, k):
    rep = lemma_check(k, m)
    assert rep.passed
    parts = {r["part"] for r in rep.rows}
    assert parts == {"i", "ii", "iii", "iv"}
    assert all(r["error"] <= 1e-10 for r in rep.rows if r["part"] in ("i", "ii"))
    assert all(r["check"] == "table-consistent" for r in rep.rows if r["part"] in ("iii", "iv"))
    assert rep.to_dict()["passed"]
