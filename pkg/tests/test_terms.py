import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from monopot.clifford import AlgebraContext, Point, left_multiply
from monopot.terms import (
    CanonicalTerm,
    TermSum,
    apply_CR,
    cauchy_kernel,
    d_x0,
    dirac_vec,
    downstream,
    evaluate_batch,
    evaluate_terms,
    green_half,
)


def ts(m, *terms):
    return TermSum.from_terms(AlgebraContext(m), [CanonicalTerm(*t) for t in terms])


def pts(rng, m, n=50):
    p = rng.normal(size=(n, m + 1))
    p /= np.linalg.norm(p, axis=1)[:, None]
    return p * rng.uniform(0.5, 2.0, size=(n, 1))


def same(f, g, points):
    a, b = evaluate_batch(f, points), evaluate_batch(g, points)
    return np.allclose(a, b, rtol=1e-12, atol=1e-12)


def test_d_x0_examples(rng):
    P = pts(rng, 2)
    f = ts(2, (1, 0, 1, 0, 3, 0))
    want = ts(2, (1, 0, 0, 0, 3, 0), (-3, 0, 2, 0, 5, 0))
    assert same(d_x0(f), want, P)
    q = 4
    assert same(d_x0(ts(2, (1, 0, 0, 0, q, 0))), ts(2, (-q, 0, 1, 0, q + 2, 0)), P)
    assert d_x0(ts(2, (1, 0, 0, 0, 0, 0))).is_zero()


def test_dirac_vec_examples(rng):
    for m in (2, 3, 4):
        P = pts(rng, m)
        r2 = ts(m, (1, 0, 0, 1, 0, 0))
        assert same(dirac_vec(r2), ts(m, (2, 0, 0, 0, 0, 1)), P)
        xv = ts(m, (1, 0, 0, 0, 0, 1))
        assert same(dirac_vec(xv), ts(m, (-m, 0, 0, 0, 0, 0)), P)
        assert same(dirac_vec(ts(m, (1, 0, 0, 0, 3, 0))), ts(m, (-3, 0, 0, 0, 5, 1)), P)


def test_canonical_form_is_unique():
    # r^2 |x|^-2 rewritten through r^2 = |x|^2 - x0^2 equals 1 - x0^2 |x|^-2
    a = ts(2, (1, 0, 0, 1, 2, 0))
    b = ts(2, (1, 0, 0, 0, 0, 0), (-1, 0, 2, 0, 2, 0))
    assert (a - b).is_zero()


@pytest.mark.parametrize("m", range(2, 7))
def test_cauchy_kernel_exactly_monogenic(m):
    assert apply_CR(cauchy_kernel(m)).is_zero()


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_downstream_chain_monogenic(m):
    for k in range(1, 7):
        assert apply_CR(downstream(m, k)).is_zero()


@pytest.mark.parametrize("m", [2, 3, 5])
def test_green_function_gives_cauchy_kernel(m):
    assert (apply_CR(green_half(m), conjugated=True) - cauchy_kernel(m) * Fraction(1, 2)).is_zero()


def test_constant_killed():
    one = ts(3, (1, 0, 0, 0, 0, 0))
    assert apply_CR(one, conjugated=True).is_zero()
    assert apply_CR(one).is_zero()


def test_evaluate_examples():
    C = cauchy_kernel(2)
    assert evaluate_terms(C, Point(1, [0, 0])).allclose(1 / (4 * math.pi), atol=1e-15)
    assert evaluate_terms(C, Point(2, [0, 0])).allclose(1 / (16 * math.pi), atol=1e-15)
    ctx = AlgebraContext(2)
    want = ctx.blade(0) * ctx.vector(0, [0.6, 0.8]) * (1 / (4 * math.pi))
    assert evaluate_terms(C, Point(0, [0.6, 0.8])).allclose(want, atol=1e-15)
    with pytest.raises(ValueError):
        evaluate_terms(C, Point(0, [0, 0]))


terms = st.lists(
    st.tuples(
        st.integers(-3, 3).filter(bool),
        st.integers(0, 1),
        st.integers(0, 3),
        st.integers(0, 2),
        st.integers(0, 7),
        st.integers(0, 1),
    ),
    min_size=1,
    max_size=5,
)


@given(st.integers(2, 4), terms)
def test_mixed_partials_commute(m, raw):
    f = ts(m, *raw)
    assert (d_x0(dirac_vec(f)) - dirac_vec(d_x0(f))).is_zero()


def _fd_conj_D(f, P, m, h=1e-4):
    ctx = AlgebraContext(m)
    grads = []
    for i in range(m + 1):
        e = np.zeros(m + 1)
        e[i] = h
        grads.append((evaluate_batch(f, P + e) - evaluate_batch(f, P - e)) / (2 * h))
    dv = sum(left_multiply(ctx.basis(1 << j), grads[j]) for j in range(1, m + 1))
    return 0.5 * (grads[0] + left_multiply(ctx.basis(1), dv))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_conj_D_matches_finite_differences(m, rng):
    P = pts(rng, m, 100)
    C = cauchy_kernel(m)
    exact = evaluate_batch(apply_CR(C, conjugated=True), P)
    approx = _fd_conj_D(C, P, m)
    scale = np.linalg.norm(exact, axis=1)
    assert np.all(np.linalg.norm(exact - approx, axis=1) <= 1e-6 * scale)


def test_depth_limits():
    with pytest.raises(ValueError):
        downstream(2, 0)
    with pytest.raises(ValueError):
        downstream(2, 20)
