"""Dense arithmetic in the real Clifford algebra R_{0,m+1}.

Blades are indexed by bitmask: bit ``j`` set means ``e_j`` is a factor, so
``e0`` is mask 1, ``e1`` mask 2, ``e0 e1`` mask 3 and so on. Every generator
squares to -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from numbers import Number

import numpy as np

__all__ = [
    "AlgebraContext",
    "Multivector",
    "Point",
    "blade_label",
    "geometric_product",
    "conjugate",
    "embed_point",
    "left_multiply",
]

MAX_DIM = 12


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting e_A e_B into canonical order, including e_j^2 = -1."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b).count("1")
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _tables(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = 1 << (m + 1)
    idx = np.arange(n)
    xor = idx[:, None] ^ idx[None, :]
    sign = np.empty((n, n), dtype=np.int8)
    for a in range(n):
        for b in range(n):
            sign[a, b] = _reorder_sign(a, b)
    grades = np.array([bin(i).count("1") for i in range(n)])
    conj = np.where((grades * (grades + 1) // 2) % 2 == 0, 1, -1).astype(np.int8)
    return xor, sign, conj


@dataclass(frozen=True)
class AlgebraContext:
    """Boundary dimension ``m``; the algebra has ``m + 1`` generators."""

    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or not 2 <= self.m <= MAX_DIM:
            raise ValueError(f"boundary dimension must be an integer in [2, {MAX_DIM}], got {self.m!r}")

    @property
    def generators(self) -> int:
        return self.m + 1

    @property
    def blade_count(self) -> int:
        return 1 << (self.m + 1)

    def blade(self, *indices: int) -> "Multivector":
        """Return e_{i1} e_{i2} ... (indices may repeat or be unordered)."""
        out = self.scalar(1.0)
        for j in indices:
            if not 0 <= j <= self.m:
                raise ValueError(f"generator index {j} out of range for m={self.m}")
            out = out * self.basis(1 << j)
        return out

    def basis(self, mask: int) -> "Multivector":
        c = np.zeros(self.blade_count)
        c[mask] = 1.0
        return Multivector(self, c)

    def scalar(self, value: complex) -> "Multivector":
        c = np.zeros(self.blade_count, dtype=np.result_type(type(value), float))
        c[0] = value
        return Multivector(self, c)

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.blade_count))

    def vector(self, x0: float, xvec) -> "Multivector":
        return embed_point(Point(x0, xvec))


def blade_label(mask: int) -> str:
    if mask == 0:
        return "1"
    bits = [j for j in range(mask.bit_length()) if mask >> j & 1]
    sep = "," if bits[-1] >= 10 else ""
    return "e" + sep.join(str(j) for j in bits)


@dataclass(frozen=True, eq=False)
class Multivector:
    context: AlgebraContext
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs)
        if c.shape != (self.context.blade_count,):
            raise ValueError(f"expected {self.context.blade_count} coefficients, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("multivector coefficients must be finite")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def _check(self, other: "Multivector") -> None:
        if other.context != self.context:
            raise ValueError(f"context mismatch: m={self.context.m} vs m={other.context.m}")

    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return self.context.scalar(other)

    def __add__(self, other) -> "Multivector":
        other = self._lift(other)
        return Multivector(self.context, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other) -> "Multivector":
        other = self._lift(other)
        return Multivector(self.context, self.coeffs - other.coeffs)

    def __rsub__(self, other) -> "Multivector":
        return self._lift(other) - self

    def __neg__(self) -> "Multivector":
        return Multivector(self.context, -self.coeffs)

    def __mul__(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if not isinstance(other, Number):
            return NotImplemented
        return Multivector(self.context, self.coeffs * other)

    def __rmul__(self, other) -> "Multivector":
        if not isinstance(other, Number):
            return NotImplemented
        return Multivector(self.context, other * self.coeffs)

    def __truediv__(self, other) -> "Multivector":
        return Multivector(self.context, self.coeffs / other)

    def __getitem__(self, mask: int):
        return self.coeffs[mask]

    def conj(self) -> "Multivector":
        return conjugate(self)

    def scalar_part(self):
        return self.coeffs[0]

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def allclose(self, other, atol: float = 1e-12, rtol: float = 0.0) -> bool:
        other = self._lift(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=rtol))

    def to_dict(self, tol: float = 0.0) -> dict[str, float]:
        return {
            blade_label(i): (complex(c) if np.iscomplexobj(self.coeffs) else float(c))
            for i, c in enumerate(self.coeffs)
            if abs(c) > tol
        }

    def __repr__(self) -> str:
        terms = self.to_dict()
        if not terms:
            return "Multivector(0)"
        return "Multivector(" + " + ".join(f"{v:.6g}*{k}" for k, v in terms.items()) + ")"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    xor, sign, _ = _tables(a.context.m)
    dtype = np.result_type(a.coeffs, b.coeffs)
    out = np.zeros(a.context.blade_count, dtype=dtype)
    nz_a = np.nonzero(a.coeffs)[0]
    nz_b = np.nonzero(b.coeffs)[0]
    if nz_a.size and nz_b.size:
        prod = a.coeffs[nz_a, None] * b.coeffs[None, nz_b] * sign[np.ix_(nz_a, nz_b)]
        np.add.at(out, xor[np.ix_(nz_a, nz_b)], prod)
    return Multivector(a.context, out)


def conjugate(a: Multivector) -> Multivector:
    """Main anti-involution: grade-k part times (-1)^(k(k+1)/2)."""
    _, _, conj = _tables(a.context.m)
    return Multivector(a.context, a.coeffs * conj)


def left_multiply(c: Multivector, field_values: np.ndarray) -> np.ndarray:
    """Left-multiply a batch of multivectors, shape (..., blades), by constant ``c``."""
    xor, sign, _ = _tables(c.context.m)
    vals = np.asarray(field_values)
    out = np.zeros(vals.shape, dtype=np.result_type(vals, c.coeffs))
    for a in np.nonzero(c.coeffs)[0]:
        out[..., xor[a]] += c.coeffs[a] * sign[a] * vals
    return out


@dataclass(frozen=True)
class Point:
    """A point (x0, x) of R^{m+1}; ``xvec`` has length m."""

    x0: float
    xvec: tuple[float, ...]

    def __init__(self, x0: float, xvec) -> None:
        object.__setattr__(self, "x0", float(x0))
        object.__setattr__(self, "xvec", tuple(float(v) for v in np.ravel(xvec)))

    @property
    def m(self) -> int:
        return len(self.xvec)

    @property
    def r(self) -> float:
        return float(np.hypot.reduce(self.xvec)) if self.xvec else 0.0

    @property
    def norm(self) -> float:
        return float(np.hypot(self.x0, self.r))

    def as_array(self) -> np.ndarray:
        return np.array((self.x0, *self.xvec))


def embed_point(p: Point) -> Multivector:
    """x = x0 e0 + x1 e1 + ... + xm em."""
    ctx = AlgebraContext(p.m)
    c = np.zeros(ctx.blade_count)
    c[1] = p.x0
    for j, v in enumerate(p.xvec, start=1):
        c[1 << j] = v
    return Multivector(ctx, c)
