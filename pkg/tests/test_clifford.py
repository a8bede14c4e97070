import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from monopot.clifford import (
    AlgebraContext,
    Multivector,
    Point,
    blade_label,
    conjugate,
    embed_point,
    geometric_product,
    left_multiply,
)

coeff = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def mv(m):
    n = 1 << (m + 1)
    return st.lists(coeff, min_size=n, max_size=n).map(lambda c: Multivector(AlgebraContext(m), np.array(c)))


dims = st.integers(2, 4)


def test_generator_rules():
    ctx = AlgebraContext(2)
    e0, e1 = ctx.blade(0), ctx.blade(1)
    assert (e0 * e0).allclose(-1.0)
    assert (e0 * e1).allclose(ctx.basis(0b011))
    assert (e1 * e0).allclose(-ctx.basis(0b011))
    assert ((e0 + e1) * (e0 + e1)).allclose(-2.0)


def test_conjugate_examples():
    ctx = AlgebraContext(3)
    assert conjugate(ctx.scalar(1.0)).allclose(1.0)
    assert conjugate(ctx.blade(0)).allclose(-ctx.blade(0))
    assert conjugate(ctx.blade(0, 1)).allclose(-ctx.blade(0, 1))
    assert (conjugate(ctx.blade(0)) * ctx.blade(0)).allclose(1.0)


def test_embed_examples():
    e = embed_point(Point(1, [0, 0]))
    assert (e * e).allclose(-1.0)
    x = embed_point(Point(0, [1, 2]))
    assert (x * x).allclose(-5.0)
    assert Point(3, [4, 0]).norm == pytest.approx(5.0)


def test_context_bounds():
    with pytest.raises(ValueError):
        AlgebraContext(1)
    with pytest.raises(ValueError):
        AlgebraContext(13)
    with pytest.raises(ValueError):
        AlgebraContext(2).blade(3)


def test_context_mismatch():
    with pytest.raises(ValueError):
        geometric_product(AlgebraContext(2).scalar(1.0), AlgebraContext(3).scalar(1.0))


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        Multivector(AlgebraContext(2), np.full(8, np.nan))


def test_blade_labels():
    assert blade_label(0) == "1"
    assert blade_label(1) == "e0"
    assert blade_label(0b101) == "e02"


@given(dims.flatmap(lambda m: st.tuples(mv(m), mv(m), mv(m))))
def test_associative(abc):
    a, b, c = abc
    lhs = ((a * b) * c).coeffs
    rhs = (a * (b * c)).coeffs
    assert np.allclose(lhs, rhs, atol=1e-10 * (1 + np.abs(lhs).max()))


@given(dims.flatmap(lambda m: st.tuples(mv(m), mv(m), mv(m))))
def test_distributive(abc):
    a, b, c = abc
    assert np.allclose((a * (b + c)).coeffs, (a * b + a * c).coeffs, atol=1e-10)


@given(dims.flatmap(lambda m: st.tuples(mv(m), mv(m))))
def test_conjugation_is_anti_involution(ab):
    a, b = ab
    assert np.array_equal(conjugate(conjugate(a)).coeffs, a.coeffs)
    assert np.allclose(conjugate(a * b).coeffs, (conjugate(b) * conjugate(a)).coeffs, atol=1e-10)


@pytest.mark.parametrize("m", range(2, 7))
def test_embed_squares_to_minus_norm(m, rng):
    for _ in range(1000 if m < 5 else 200):
        p = Point(rng.normal(), rng.normal(size=m))
        x = embed_point(p)
        sq = x * x
        assert sq.allclose(-(p.norm**2), atol=1e-12)


def test_left_multiply_batch(rng):
    ctx = AlgebraContext(3)
    c = Multivector(ctx, rng.normal(size=16))
    batch = rng.normal(size=(5, 16))
    out = left_multiply(c, batch)
    for i in range(5):
        assert np.allclose(out[i], (c * Multivector(ctx, batch[i])).coeffs)


def test_to_dict_and_repr():
    ctx = AlgebraContext(2)
    d = (ctx.scalar(2.0) + ctx.blade(0, 2)).to_dict()
    assert d == {"1": 2.0, "e02": 1.0}
    assert "e02" in repr(ctx.blade(0, 2))
    assert math.isclose(ctx.blade(1).norm(), 1.0)
