"""Clifford-valued test functions of the form P(x) exp(-|x|^2).

P is a polynomial with multivector coefficients. The class is closed under
partial derivatives, the left Dirac operator and left multiplication by the
vector variable, which is what the exact pairing engine needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .clifford import AlgebraContext, Multivector, _tables

__all__ = ["GaussPolyTestFunction", "gp_arrays"]


def gp_arrays(m: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Geometric product of two raw coefficient arrays."""
    xor, sign, _ = _tables(m)
    out = np.zeros(a.shape, dtype=np.result_type(a, b))
    for i in np.nonzero(a)[0]:
        out[xor[i]] += a[i] * sign[i] * b
    return out


@dataclass(frozen=True, eq=False)
class GaussPolyTestFunction:
    context: AlgebraContext
    poly: dict = field(default_factory=dict)  # exponent tuple -> coefficient array

    @classmethod
    def monomial(cls, context: AlgebraContext, alpha: Iterable[int] | None = None, coeff=1.0) -> "GaussPolyTestFunction":
        alpha = tuple(alpha) if alpha is not None else (0,) * context.m
        if len(alpha) != context.m or any(a < 0 for a in alpha):
            raise ValueError(f"bad exponent vector {alpha} for m={context.m}")
        c = coeff.coeffs if isinstance(coeff, Multivector) else context.scalar(coeff).coeffs
        return cls(context, {alpha: np.array(c)})

    @classmethod
    def gaussian(cls, context: AlgebraContext) -> "GaussPolyTestFunction":
        return cls.monomial(context)

    @classmethod
    def xvec_gaussian(cls, context: AlgebraContext) -> "GaussPolyTestFunction":
        """The vector variable times the Gaussian."""
        return cls.gaussian(context).times_xvec()

    def _new(self, acc: dict) -> "GaussPolyTestFunction":
        return GaussPolyTestFunction(self.context, {k: v for k, v in acc.items() if np.any(v != 0)})

    def __add__(self, other: "GaussPolyTestFunction") -> "GaussPolyTestFunction":
        if other.context != self.context:
            raise ValueError("context mismatch")
        acc = {k: v.copy() for k, v in self.poly.items()}
        for k, v in other.poly.items():
            acc[k] = acc[k] + v if k in acc else v.copy()
        return self._new(acc)

    def __mul__(self, factor) -> "GaussPolyTestFunction":
        return self._new({k: v * factor for k, v in self.poly.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "GaussPolyTestFunction":
        return self * -1.0

    def left(self, c: Multivector) -> "GaussPolyTestFunction":
        return self._new({k: gp_arrays(self.context.m, c.coeffs, v) for k, v in self.poly.items()})

    def partial(self, j: int) -> "GaussPolyTestFunction":
        """d/dx_j for j in 1..m."""
        if not 1 <= j <= self.context.m:
            raise ValueError(f"coordinate index {j} out of range")
        i = j - 1
        acc: dict = {}
        for alpha, c in self.poly.items():
            if alpha[i]:
                lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
                acc[lower] = acc.get(lower, 0) + alpha[i] * c
            upper = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :]
            acc[upper] = acc.get(upper, 0) - 2.0 * c
        return self._new(acc)

    def dirac(self) -> "GaussPolyTestFunction":
        """Left action of sum_j e_j d/dx_j."""
        out = GaussPolyTestFunction(self.context, {})
        for j in range(1, self.context.m + 1):
            out = out + self.partial(j).left(self.context.basis(1 << j))
        return out

    def laplacian(self) -> "GaussPolyTestFunction":
        out = GaussPolyTestFunction(self.context, {})
        for j in range(1, self.context.m + 1):
            out = out + self.partial(j).partial(j)
        return out

    def times_coordinate(self, j: int) -> "GaussPolyTestFunction":
        i = j - 1
        return self._new({a[:i] + (a[i] + 1,) + a[i + 1 :]: c for a, c in self.poly.items()})

    def times_xvec(self) -> "GaussPolyTestFunction":
        """Left multiplication by the vector variable."""
        out = GaussPolyTestFunction(self.context, {})
        for j in range(1, self.context.m + 1):
            out = out + self.times_coordinate(j).left(self.context.basis(1 << j))
        return out

    def value_at_zero(self) -> Multivector:
        c = self.poly.get((0,) * self.context.m)
        return Multivector(self.context, c) if c is not None else self.context.zero()

    def evaluate(self, xs: np.ndarray) -> np.ndarray:
        """Values at an (N, m) array of points, shape (N, blades)."""
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        env = np.exp(-np.einsum("ij,ij->i", xs, xs))
        dtype = np.result_type(float, *[c for c in self.poly.values()]) if self.poly else float
        out = np.zeros((xs.shape[0], self.context.blade_count), dtype=dtype)
        for alpha, c in self.poly.items():
            mono = np.prod(xs ** np.array(alpha), axis=1)
            out += (mono * env)[:, None] * c[None, :]
        return out

    def __repr__(self) -> str:
        return f"GaussPolyTestFunction(m={self.context.m}, {len(self.poly)} monomials)"
