import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import dirac_power_pair, polar_integral, sample_phis
from monopot.clifford import AlgebraContext
from monopot.distributions import (
    BoundaryDistribution,
    delta,
    dirac_power_kernel,
    fp_power,
    hilbert_kernel,
    hilbert_power_kernel,
    log_kernel,
    make_normalized,
    pair,
    pair_dirac,
    pq_constants,
)
from monopot.special import sigma
from monopot.testfunctions import GaussPolyTestFunction as G


def test_normalized_examples():
    for m in (2, 3, 4, 5):
        assert make_normalized("T", -m, m).allclose(delta(m, 0, math.pi ** (m / 2) / math.gamma(m / 2)))
        assert make_normalized("U", -m - 1, m).allclose(
            delta(m, 1, -math.pi ** (m / 2) / (2 * math.gamma(m / 2 + 1)))
        )
    assert make_normalized("T", 0, 2).allclose(fp_power(2, 0, math.pi))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_normalized_pole_branch_constants(m):
    for l in range(4):
        c = math.pi ** (m / 2 - l) / (4**l * math.gamma(m / 2 + l))
        assert make_normalized("T", -m - 2 * l, m).allclose(delta(m, 2 * l, c))


def test_pair_examples():
    ctx = AlgebraContext(2)
    assert pair(delta(2), G.gaussian(ctx)).allclose(1.0)
    assert pair(make_normalized("T", 0, 2), G.gaussian(ctx)).allclose(math.pi**2, atol=1e-13)
    for m in (2, 3, 4):
        xg = G.xvec_gaussian(AlgebraContext(m))
        assert pair(make_normalized("U", -m - 1, m), xg).allclose(-sigma(m) / 2, atol=1e-13)
        assert pair(delta(m, 1), xg).allclose(m, atol=1e-13)


def test_pair_against_quadrature():
    # smooth radial piece paired with a Clifford-valued test function
    for m in (2, 3):
        T = fp_power(m, 1.5, 0.7) + fp_power(m, 0.5, AlgebraContext(m).basis(1), omega=True)
        for phi in sample_phis(m):

            def f(xs):
                r = np.linalg.norm(xs, axis=1)
                vals = phi.evaluate(xs)
                out = 0.7 * r[:, None] ** 1.5 * vals
                ctx = phi.context
                for j in range(m):
                    b = (ctx.basis(1) * ctx.basis(1 << (j + 1))).coeffs
                    blade = int(np.nonzero(b)[0][0])
                    sign = b[blade]
                    for a in range(ctx.blade_count):
                        piece = (ctx.basis(blade) * ctx.basis(a)).coeffs
                        out += sign * (r ** -0.5 * xs[:, j] * vals[:, a])[:, None] * piece[None, :]
                return out

            want = polar_integral(m, f)
            got = pair(T, phi).coeffs
            assert np.allclose(got, want, atol=1e-9)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_entirety_grid(m):
    ctx = AlgebraContext(m)
    g, xg = G.gaussian(ctx), G.xvec_gaussian(ctx)
    for lam in np.arange(-m - 4, 4.0 + 1e-9, 0.5):
        t = pair(make_normalized("T", float(lam), m), g).scalar_part()
        u = pair(make_normalized("U", float(lam), m), xg).scalar_part()
        assert abs(t - sigma(m) / 2 * math.pi ** ((lam + m) / 2)) <= 1e-10
        assert abs(u + sigma(m) / 2 * math.pi ** ((lam + m + 1) / 2)) <= 1e-10


def test_pq_examples():
    for m in (2, 3, 4):
        p0 = pq_constants(0, m)
        assert (p0.p, p0.q) == (-1 / (2 ** (m - 1) * math.pi**m), 0.0)
    p1 = pq_constants(1, 2)
    assert p1.p == pytest.approx(1 / (4 * math.pi**3), rel=1e-15)
    assert p1.q == pytest.approx(-1 / (8 * math.pi**3), rel=1e-15)
    with pytest.raises(ValueError):
        pq_constants(-1, 2)


def test_E2_is_minus_log_over_two_pi():
    E2 = dirac_power_kernel(-2, 2)
    want = fp_power(2, 0, -1 / (2 * math.pi), log_power=1)
    assert E2.allclose(want, rtol=1e-14)
    p0 = pq_constants(0, 2)
    assert p0.p * math.pi == pytest.approx(-1 / (2 * math.pi), rel=1e-14)


@pytest.mark.parametrize("m,n", [(2, 0), (2, 1), (2, 2), (4, 0), (4, 1), (3, 0), (3, 1), (3, 2), (5, 0)])
def test_log_kernels_are_fundamental_solutions(m, n):
    if m % 2 == 0:
        K, target = dirac_power_kernel(-m - n, m), delta(m)
    else:
        K, target = hilbert_power_kernel(-m - n, m), hilbert_kernel(m)
    assert K.allclose(log_kernel(m, n))
    for phi in sample_phis(m):
        got = dirac_power_pair(K, phi, m + n).coeffs
        assert np.allclose(got, pair(target, phi).coeffs, atol=1e-12)


def test_dirac_power_examples():
    for m in (2, 3, 4):
        assert dirac_power_kernel(0, m).allclose(delta(m))
        assert dirac_power_kernel(1, m).allclose(delta(m, 1))
        c = -2 * math.gamma((m + 2) / 2) * math.pi ** (-m / 2)
        assert dirac_power_kernel(1, m).allclose(make_normalized("U", -m - 1, m) * c)
        for k in range(4):
            assert dirac_power_kernel(2 * k, m).allclose(delta(m, 2 * k))


def test_hilbert_power_examples():
    for m in (2, 3, 4):
        H = hilbert_power_kernel(0, m)
        assert H.allclose(fp_power(m, -m, -2 / sigma(m + 1), omega=True))
        c = 2 * math.gamma((m + 1) / 2) * math.pi ** (-(m - 1) / 2)
        assert hilbert_power_kernel(1, m).allclose(make_normalized("T", -m - 1, m) * c)
        # dirac H = -(2/sigma_{m+1}) Fp r^{-m-1}
        assert hilbert_power_kernel(1, m).allclose(fp_power(m, -m - 1, -2 / sigma(m + 1)))
    assert hilbert_power_kernel(-3, 3).allclose(log_kernel(3, 0))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_hilbert_derivative_matches_distributional_derivative(m):
    for phi in sample_phis(m):
        lhs = pair_dirac(hilbert_kernel(m), phi).coeffs
        rhs = pair(hilbert_power_kernel(1, m), phi).coeffs
        assert np.allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("m", [2, 3])
def test_powers_compose_under_differentiation(m):
    for mu in (-2.5, -1, 0.5, 1, 2):
        for K in (dirac_power_kernel, hilbert_power_kernel):
            for phi in sample_phis(m):
                lhs = pair_dirac(K(mu, m), phi).coeffs
                rhs = pair(K(mu + 1, m), phi).coeffs
                assert np.allclose(lhs, rhs, atol=1e-11)


@given(st.integers(2, 4), st.sampled_from([-1, 0, 1, 2, 3]), st.floats(1e-9, 1e-7))
def test_continuity_in_mu(m, mu, eps):
    for phi in sample_phis(m)[:2]:
        for K in (dirac_power_kernel, hilbert_power_kernel):
            a = pair(K(mu, m), phi).coeffs
            b = pair(K(mu + eps, m), phi).coeffs
            assert np.abs(a - b).max() <= 1e-4


def test_non_integer_power_is_complex_and_integer_real():
    assert np.iscomplexobj(dirac_power_kernel(0.5, 3).radial[0].coeff)
    for piece in dirac_power_kernel(3, 3).radial:
        assert not np.iscomplexobj(piece.coeff)


def test_distribution_algebra():
    m = 3
    T = delta(m) + fp_power(m, -1.0, 2.0)
    assert (T - T).canonical().is_zero()
    assert (T * 2.0).allclose(T + T)
    e0 = AlgebraContext(m).basis(1)
    assert (e0 * (e0 * T)).allclose(-T)
    assert "delta" in delta(m).pretty()
    assert delta(m).pretty() == "delta"
    assert isinstance(BoundaryDistribution(AlgebraContext(m)).pretty(), str)


@pytest.mark.parametrize("phi_id", [0, 1])
def test_E2_against_quadrature(phi_id):
    phi = sample_phis(2)[phi_id]
    lap = phi.laplacian() * -1.0

    def f(xs):
        r = np.linalg.norm(xs, axis=1)
        return (-np.log(r) / (2 * np.pi))[:, None] * lap.evaluate(xs)

    got = polar_integral(2, f, n_r=600)
    assert np.allclose(got, phi.value_at_zero().coeffs, atol=1e-6)
