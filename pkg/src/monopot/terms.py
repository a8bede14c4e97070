"""Exact calculus on the function class spanned by the Cauchy kernel.

A term is ``c * E * x0^a * (r^2)^s * |x|^(-q) * xvec^eps`` with ``E`` either
1 or e0 and ``eps`` in {0, 1}. The class is closed under d/dx0, the vector
Dirac operator acting from the left, and left multiplication by e0, so the
whole downstream chain can be produced without numerical differentiation.

Canonical form eliminates r^2 through r^2 = |x|^2 - x0^2, which leaves
monomials x0^a |x|^(-q) that are linearly independent as functions; the
zero function is therefore exactly the empty sum. Chain coefficients are
kept as exact fractions and a common float ``scale`` (e.g. 1/sigma_{m+1})
is applied only on evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Number
from typing import Iterable, NamedTuple

import numpy as np

from .clifford import AlgebraContext, Multivector, Point
from .special import sigma

__all__ = [
    "CanonicalTerm",
    "TermSum",
    "d_x0",
    "dirac_vec",
    "left_e0",
    "apply_CR",
    "evaluate_terms",
    "cauchy_kernel",
    "green_half",
    "downstream",
]

ZERO_TOL = 1e-14


class CanonicalTerm(NamedTuple):
    c: Number
    E: int  # 0 -> 1, 1 -> e0
    a: int
    s: int
    q: int
    eps: int


def _expand(E: int, a: int, s: int, q: int, eps: int, c) -> Iterable[tuple[tuple, object]]:
    # (r^2)^s = sum_i C(s,i) (-x0^2)^i |x|^(2(s-i))
    for i in range(s + 1):
        yield (E, a + 2 * i, 0, q - 2 * s + 2 * i, eps), c * comb(s, i) * (-1) ** i


@dataclass(frozen=True, eq=False)
class TermSum:
    context: AlgebraContext
    coeffs: dict = field(default_factory=dict)
    scale: float = 1.0

    @classmethod
    def from_terms(cls, context: AlgebraContext, terms: Iterable[CanonicalTerm], scale: float = 1.0) -> "TermSum":
        acc: dict = {}
        for t in terms:
            if t.E not in (0, 1) or t.eps not in (0, 1) or t.a < 0 or t.s < 0:
                raise ValueError(f"not a canonical term: {t}")
            for key, c in _expand(t.E, t.a, t.s, t.q, t.eps, t.c):
                acc[key] = acc.get(key, 0) + c
        return cls(context, _prune(acc), scale)

    @property
    def terms(self) -> list[CanonicalTerm]:
        return [CanonicalTerm(c, *k) for k, c in sorted(self.coeffs.items())]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def _with(self, coeffs: dict) -> "TermSum":
        return TermSum(self.context, _prune(coeffs), self.scale)

    def __add__(self, other: "TermSum") -> "TermSum":
        if other.context != self.context:
            raise ValueError("context mismatch")
        a, b = self, other
        if a.scale != b.scale:
            a, b = a.unscaled(), b.unscaled()
        acc = dict(a.coeffs)
        for k, c in b.coeffs.items():
            acc[k] = acc.get(k, 0) + c
        return a._with(acc)

    def __neg__(self) -> "TermSum":
        return self._with({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "TermSum") -> "TermSum":
        return self + (-other)

    def __mul__(self, factor) -> "TermSum":
        return self._with({k: c * factor for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def unscaled(self) -> "TermSum":
        """Fold ``scale`` into float coefficients."""
        return TermSum(self.context, _prune({k: float(c) * self.scale for k, c in self.coeffs.items()}), 1.0)

    def __repr__(self) -> str:
        parts = []
        for t in self.terms:
            f = "e0*" if t.E else ""
            f += f"x0^{t.a}*" if t.a else ""
            f += f"|x|^{-t.q}" if t.q else "1"
            f += "*xv" if t.eps else ""
            parts.append(f"({t.c})*{f}")
        return f"TermSum(m={self.context.m}, scale={self.scale:.6g}: " + (" + ".join(parts) or "0") + ")"


def _prune(acc: dict) -> dict:
    out = {}
    for k, c in acc.items():
        if isinstance(c, (int, Fraction)):
            if c != 0:
                out[k] = c
        elif abs(c) > ZERO_TOL:
            out[k] = c
    return out


def _accumulate(pairs: Iterable[tuple[tuple, object]]) -> dict:
    acc: dict = {}
    for k, c in pairs:
        acc[k] = acc.get(k, 0) + c
    return acc


def d_x0(f: TermSum) -> TermSum:
    """Exact partial derivative in x0."""

    def rules():
        for (E, a, _, q, eps), c in f.coeffs.items():
            if a:
                yield (E, a - 1, 0, q, eps), c * a
            if q:
                yield (E, a + 1, 0, q + 2, eps), -c * q

    return f._with(_accumulate(rules()))


def dirac_vec(f: TermSum) -> TermSum:
    """Left action of sum_j e_j d/dx_j (j = 1..m)."""
    m = f.context.m

    def rules():
        for (E, a, _, q, eps), c in f.coeffs.items():
            # e_j e0 = -e0 e_j, so the e0 factor flips the sign
            c = -c if E else c
            if eps == 0:
                if q:
                    yield (E, a, 0, q + 2, 1), -c * q
            else:
                # d(x g) = -m g - r^2 h  with  dg = h x,  h = -q x0^a |x|^(-q-2)
                yield (E, a, 0, q, 0), c * (q - m)
                if q:
                    yield (E, a + 2, 0, q + 2, 0), -c * q

    return f._with(_accumulate(rules()))


def left_e0(f: TermSum) -> TermSum:
    return f._with({(1 - E, a, s, q, eps): (c if E == 0 else -c) for (E, a, s, q, eps), c in f.coeffs.items()})


def apply_CR(f: TermSum, conjugated: bool = False) -> TermSum:
    """D = (d_x0 - e0 dirac)/2, or its conjugate (d_x0 + e0 dirac)/2."""
    vec = left_e0(dirac_vec(f))
    total = d_x0(f) + vec if conjugated else d_x0(f) - vec
    return total * Fraction(1, 2)


def evaluate_batch(f: TermSum, points: np.ndarray) -> np.ndarray:
    """Evaluate at an (N, m+1) array of points; returns (N, blades)."""
    m = f.context.m
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != m + 1:
        raise ValueError(f"points need {m + 1} coordinates, got {pts.shape[1]}")
    x0 = pts[:, 0]
    xv = pts[:, 1:]
    rho = np.sqrt(x0 * x0 + np.einsum("ij,ij->i", xv, xv))
    if np.any(rho == 0):
        raise ValueError("term sums are singular at the origin")
    out = np.zeros((pts.shape[0], f.context.blade_count))
    for (E, a, _, q, eps), c in f.coeffs.items():
        v = float(c) * f.scale * x0**a * rho ** (-q)
        if eps == 0:
            out[:, E] += v
        else:
            for j in range(1, m + 1):
                out[:, (1 << j) | E] += v * xv[:, j - 1]
    return out


def evaluate_terms(f: TermSum, p: Point) -> Multivector:
    if p.m != f.context.m:
        raise ValueError("point dimension does not match the algebra")
    if p.norm == 0:
        raise ValueError("term sums are singular at the origin")
    return Multivector(f.context, evaluate_batch(f, p.as_array()[None, :])[0])


def cauchy_kernel(m: int) -> TermSum:
    """C_{-1} = (x0 - conj(e0) xvec)/(sigma_{m+1} |x|^{m+1})."""
    ctx = AlgebraContext(m)
    return TermSum.from_terms(
        ctx,
        [CanonicalTerm(1, 0, 1, 0, m + 1, 0), CanonicalTerm(1, 1, 0, 0, m + 1, 1)],
        scale=1.0 / sigma(m + 1),
    )


def green_half(m: int) -> TermSum:
    """A_0/2 = -|x|^{1-m} / ((m-1) sigma_{m+1}), the Green function of Delta_{m+1}."""
    ctx = AlgebraContext(m)
    return TermSum.from_terms(ctx, [CanonicalTerm(Fraction(-1, m - 1), 0, 0, 0, m - 1, 0)], scale=1.0 / sigma(m + 1))


MAX_DEPTH = 8


@lru_cache(maxsize=None)
def downstream(m: int, k: int) -> TermSum:
    """C_{-k} for k >= 1, i.e. conj(D)^(k-1) applied to the Cauchy kernel."""
    if not 1 <= k <= MAX_DEPTH + 1:
        raise ValueError(f"downstream depth must be in [1, {MAX_DEPTH + 1}], got {k}")
    if k == 1:
        return cauchy_kernel(m)
    return apply_CR(downstream(m, k - 1), conjugated=True)
