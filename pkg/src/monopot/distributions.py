"""Boundary distributions on R^m and their exact pairing with test functions.

A :class:`BoundaryDistribution` is a finite sum of radial pieces
``c * ln^k(r) * Fp r^beta [* omega]`` and point pieces ``c * dirac^n delta``,
where every coefficient ``c`` is a (possibly complex) multivector standing
to the left. Even point orders cover (-Laplacian)^l delta since the Dirac
operator squares to minus the Laplacian.

Pairing against ``P(x) exp(-r^2)`` is exact: the angular part reduces to
monomial sphere moments, the radial part to Gamma values (finite parts at
poles) or, for log pieces, to Gamma * digamma.

Convention for derivatives: <dirac T, phi> = -sum_j e_j <T, d_j phi>, blades
multiplying from the left.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .clifford import AlgebraContext, Multivector, blade_label
from .special import radial_moment, sigma, sphere_moment
from .testfunctions import GaussPolyTestFunction, gp_arrays

__all__ = [
    "RadialPiece",
    "PointSupportPiece",
    "BoundaryDistribution",
    "PQConstants",
    "make_normalized",
    "pair",
    "pair_dirac",
    "pq_constants",
    "log_kernel",
    "dirac_power_kernel",
    "hilbert_power_kernel",
    "delta",
    "hilbert_kernel",
    "fp_power",
]

COEFF_TOL = 1e-300


def _is_pole(z: float) -> bool:
    return z <= 0 and float(z).is_integer()


def _gamma(z: float) -> float:
    if _is_pole(z):
        raise ZeroDivisionError(f"Gamma has a pole at {z}")
    return math.gamma(z)


def _as_int(mu: float) -> int | None:
    return int(mu) if float(mu).is_integer() else None


@dataclass(frozen=True, eq=False)
class RadialPiece:
    coeff: np.ndarray
    beta: float
    omega: bool = False
    log_power: int = 0

    def __post_init__(self) -> None:
        if self.log_power not in (0, 1):
            raise ValueError("log_power must be 0 or 1")

    @property
    def key(self) -> tuple:
        return (round(float(self.beta), 12), self.omega, self.log_power)


@dataclass(frozen=True, eq=False)
class PointSupportPiece:
    coeff: np.ndarray
    order: int  # dirac^order delta

    @property
    def key(self) -> int:
        return self.order


@dataclass(frozen=True, eq=False)
class BoundaryDistribution:
    context: AlgebraContext
    radial: tuple = ()
    point: tuple = ()

    @property
    def m(self) -> int:
        return self.context.m

    def _coerce(self, c) -> np.ndarray:
        if isinstance(c, Multivector):
            return np.array(c.coeffs)
        return np.array(self.context.scalar(c).coeffs)

    def radial_piece(self, coeff, beta: float, omega: bool = False, log_power: int = 0) -> "BoundaryDistribution":
        return BoundaryDistribution(self.context, self.radial + (RadialPiece(self._coerce(coeff), float(beta), omega, log_power),), self.point)

    def point_piece(self, coeff, order: int) -> "BoundaryDistribution":
        if order < 0:
            raise ValueError("point-support order must be >= 0")
        return BoundaryDistribution(self.context, self.radial, self.point + (PointSupportPiece(self._coerce(coeff), int(order)),))

    def __add__(self, other: "BoundaryDistribution") -> "BoundaryDistribution":
        if other.context != self.context:
            raise ValueError("context mismatch")
        return BoundaryDistribution(self.context, self.radial + other.radial, self.point + other.point).canonical()

    def __neg__(self) -> "BoundaryDistribution":
        return self * -1

    def __sub__(self, other: "BoundaryDistribution") -> "BoundaryDistribution":
        return self + (-other)

    def __mul__(self, factor) -> "BoundaryDistribution":
        if isinstance(factor, Multivector):
            raise TypeError("multiply Clifford constants from the left: c * T")
        return BoundaryDistribution(
            self.context,
            tuple(RadialPiece(p.coeff * factor, p.beta, p.omega, p.log_power) for p in self.radial),
            tuple(PointSupportPiece(p.coeff * factor, p.order) for p in self.point),
        )

    def __rmul__(self, factor) -> "BoundaryDistribution":
        if isinstance(factor, Multivector):
            m = self.m
            return BoundaryDistribution(
                self.context,
                tuple(RadialPiece(gp_arrays(m, factor.coeffs, p.coeff), p.beta, p.omega, p.log_power) for p in self.radial),
                tuple(PointSupportPiece(gp_arrays(m, factor.coeffs, p.coeff), p.order) for p in self.point),
            )
        return self * factor

    def canonical(self, tol: float = 1e-14) -> "BoundaryDistribution":
        """Merge pieces of equal shape and drop vanishing ones."""
        rad: dict = {}
        betas: dict = {}
        for p in self.radial:
            # the key rounds beta for merging; keep the exact exponent
            betas.setdefault(p.key, p.beta)
            rad[p.key] = rad[p.key] + p.coeff if p.key in rad else p.coeff
        pts: dict = {}
        for p in self.point:
            pts[p.key] = pts[p.key] + p.coeff if p.key in pts else p.coeff
        scale = max([np.max(np.abs(c)) for c in (*rad.values(), *pts.values())], default=0.0)
        keep = lambda c: np.max(np.abs(c)) > max(tol * scale, COEFF_TOL)
        radial = tuple(
            RadialPiece(_realify(c), betas[key], key[1], key[2]) for key, c in sorted(rad.items()) if keep(c)
        )
        point = tuple(PointSupportPiece(_realify(c), n) for n, c in sorted(pts.items()) if keep(c))
        return BoundaryDistribution(self.context, radial, point)

    def allclose(self, other: "BoundaryDistribution", rtol: float = 1e-12) -> bool:
        a, b = self.canonical(), other.canonical()
        diff = (a - b).canonical(tol=0.0)
        scale = max([np.max(np.abs(p.coeff)) for p in (*a.radial, *a.point, *b.radial, *b.point)], default=0.0)
        worst = max([np.max(np.abs(p.coeff)) for p in (*diff.radial, *diff.point)], default=0.0)
        return worst <= rtol * max(scale, 1e-300)

    def is_zero(self) -> bool:
        c = self.canonical()
        return not c.radial and not c.point

    def pretty(self, digits: int = 12) -> str:
        c = self.canonical()
        rows = []
        for p in c.radial:
            parts = [_fmt_coeff(p.coeff, digits)]
            if p.log_power:
                parts.append("ln(r)")
            parts.append(f"r^{_fmt_num(p.beta, digits)}")
            if p.omega:
                parts.append("ω")
            rows.append(" · ".join(parts))
        for p in c.point:
            unit = _is_unit(p.coeff)
            op = "delta" if p.order == 0 else f"D^{p.order} delta"
            rows.append(op if unit else f"{_fmt_coeff(p.coeff, digits)} · {op}")
        return " + ".join(rows) if rows else "0"

    def __repr__(self) -> str:
        return f"BoundaryDistribution(m={self.m}: {self.pretty(6)})"


def _realify(c: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(c) and np.all(np.abs(c.imag) <= 1e-15 * max(np.max(np.abs(c)), 1e-300)):
        return c.real.copy()
    return c


def _is_unit(c: np.ndarray) -> bool:
    return abs(c[0] - 1) < 1e-15 and not np.any(np.abs(c[1:]) > 1e-15)


def _fmt_num(x, digits: int) -> str:
    if isinstance(x, complex) or np.iscomplexobj(x):
        x = complex(x)
        if abs(x.imag) > 1e-15 * max(abs(x), 1e-300):
            return f"({x.real:.{digits}g}{x.imag:+.{digits}g}j)"
        x = x.real
    return f"{float(x):.{digits}g}"


def _fmt_coeff(c: np.ndarray, digits: int) -> str:
    nz = [i for i in range(len(c)) if abs(c[i]) > 1e-300]
    if nz == [0]:
        return _fmt_num(c[0], digits)
    return "(" + " + ".join(f"{_fmt_num(c[i], digits)} {blade_label(i)}" if i else _fmt_num(c[i], digits) for i in nz) + ")"


# ---------------------------------------------------------------- builders


def delta(m: int, order: int = 0, coeff=1.0) -> BoundaryDistribution:
    """coeff * dirac^order delta."""
    return BoundaryDistribution(AlgebraContext(m)).point_piece(coeff, order)


def fp_power(m: int, beta: float, coeff=1.0, omega: bool = False, log_power: int = 0) -> BoundaryDistribution:
    """coeff * ln^k(r) * Fp r^beta, optionally times omega."""
    return BoundaryDistribution(AlgebraContext(m)).radial_piece(coeff, beta, omega, log_power)


def make_normalized(family: str, lam: float, m: int) -> BoundaryDistribution:
    """The Gamma-normalized families T*_lam (scalar) and U*_lam (vector)."""
    if family == "T":
        z = (lam + m) / 2
        if _is_pole(z):
            l = int(-z)
            c = math.pi ** (m / 2 - l) / (2 ** (2 * l) * math.gamma(m / 2 + l))
            return delta(m, 2 * l, c)
        return fp_power(m, lam, math.pi**z / math.gamma(z))
    if family == "U":
        z = (lam + m + 1) / 2
        if _is_pole(z):
            l = int(-z)
            c = -math.pi ** (m / 2 - l) / (2 ** (2 * l + 1) * math.gamma(m / 2 + l + 1))
            return delta(m, 2 * l + 1, c)
        return fp_power(m, lam, math.pi**z / math.gamma(z), omega=True)
    raise ValueError(f"family must be 'T' or 'U', got {family!r}")


def hilbert_kernel(m: int) -> BoundaryDistribution:
    """H = -(2/sigma_{m+1}) Pv omega / r^m."""
    return fp_power(m, -m, -2.0 / sigma(m + 1), omega=True)


# ---------------------------------------------------------------- pairing


def _pair_radial(piece: RadialPiece, phi: GaussPolyTestFunction) -> np.ndarray:
    m = phi.context.m
    out = np.zeros(phi.context.blade_count, dtype=np.result_type(piece.coeff, complex))
    for alpha, c in phi.poly.items():
        deg = sum(alpha)
        if piece.omega:
            # omega picks up one extra power of each omega_j
            if deg % 2 == 0:
                continue
            R = radial_moment(piece.beta + deg + m - 1, piece.log_power)
            for j in range(1, m + 1):
                shifted = list(alpha)
                shifted[j - 1] += 1
                M = sphere_moment(shifted)
                if M:
                    ej = np.zeros(phi.context.blade_count)
                    ej[1 << j] = 1.0
                    out += M * R * gp_arrays(m, gp_arrays(m, piece.coeff, ej), c)
        else:
            if deg % 2:
                continue
            M = sphere_moment(alpha)
            if M:
                out += M * radial_moment(piece.beta + deg + m - 1, piece.log_power) * gp_arrays(m, piece.coeff, c)
    return out


def _pair_point(piece: PointSupportPiece, phi: GaussPolyTestFunction) -> np.ndarray:
    # <dirac^n delta, phi> = (-1)^n (dirac^n phi)(0)
    g = phi
    for _ in range(piece.order):
        g = g.dirac()
    val = g.value_at_zero().coeffs * (-1) ** piece.order
    return gp_arrays(phi.context.m, piece.coeff, val)


def pair(T: BoundaryDistribution, phi: GaussPolyTestFunction) -> Multivector:
    """Exact value of <T, phi>."""
    if T.context != phi.context:
        raise ValueError("context mismatch between distribution and test function")
    out = np.zeros(T.context.blade_count, dtype=complex)
    for p in T.radial:
        out = out + _pair_radial(p, phi)
    for p in T.point:
        out = out + _pair_point(p, phi)
    return Multivector(T.context, _realify(out))


def pair_dirac(T: BoundaryDistribution, phi: GaussPolyTestFunction) -> Multivector:
    """<dirac T, phi> = -sum_j e_j <T, d_j phi>."""
    ctx = T.context
    out = ctx.zero()
    for j in range(1, ctx.m + 1):
        out = out - ctx.basis(1 << j) * pair(T, phi.partial(j))
    return out


# ---------------------------------------------------------------- log kernels


@dataclass(frozen=True)
class PQConstants:
    n: int
    p: float
    q: float


@lru_cache(maxsize=None)
def _pq_table(m: int, n: int) -> tuple[tuple[float, float], ...]:
    p, q = -1.0 / (2 ** (m - 1) * math.pi**m), 0.0
    table = [(p, q)]
    for i in range(n):
        if i % 2 == 0:  # odd index from even: i = 2j
            p, q = -p / (2 * math.pi), -(q - p / (m + i)) / (2 * math.pi)
        else:  # even index from odd: i = 2j + 1
            p, q = p / (i + 1), (q - p / (i + 1)) / (i + 1)
        table.append((p, q))
    return tuple(table)


def pq_constants(n: int, m: int) -> PQConstants:
    if n < 0:
        raise ValueError("pq index must be >= 0")
    p, q = _pq_table(m, n)[n]
    return PQConstants(n, p, q)


def log_kernel(m: int, n: int) -> BoundaryDistribution:
    """(p_n ln r + q_n) T*_n for even n, (p_n ln r + q_n) U*_n for odd n.

    This is E_{m+n} for even m and F_{m+n} for odd m.
    """
    pq = pq_constants(n, m)
    omega = n % 2 == 1
    z = (n + m + (1 if omega else 0)) / 2
    norm = math.pi**z / math.gamma(z)
    base = BoundaryDistribution(AlgebraContext(m))
    out = base.radial_piece(pq.p * norm, n, omega, 1)
    if pq.q:
        out = out.radial_piece(pq.q * norm, n, omega, 0)
    return out


# ---------------------------------------------------------------- operator powers


def _two_piece(m: int, mu: float, t_weight: complex, u_weight: complex) -> BoundaryDistribution:
    out = BoundaryDistribution(AlgebraContext(m))
    if t_weight != 0:
        c = t_weight * 2**mu * _gamma((m + mu) / 2) / math.pi ** ((m - mu) / 2)
        out = out + make_normalized("T", -m - mu, m) * c
    if u_weight != 0:
        c = -u_weight * 2**mu * _gamma((m + mu + 1) / 2) / math.pi ** ((m - mu + 1) / 2)
        out = out + make_normalized("U", -m - mu, m) * c
    return out.canonical()


def dirac_power_kernel(mu: float, m: int) -> BoundaryDistribution:
    """Convolution kernel of the real power dirac^mu."""
    n = _as_int(mu)
    if n is None:
        w = cmath.exp(1j * math.pi * mu)
        return _two_piece(m, mu, (1 + w) / 2, (1 - w) / 2)
    if n % 2 == 0:
        if _is_pole((m + n) / 2):
            return log_kernel(m, -n - m)
        return _two_piece(m, n, 1.0, 0.0)
    if _is_pole((m + n + 1) / 2):
        return log_kernel(m, -n - m)
    return _two_piece(m, n, 0.0, 1.0)


def hilbert_power_kernel(mu: float, m: int) -> BoundaryDistribution:
    """Convolution kernel dirac^mu H of the operator ^mu H."""
    n = _as_int(mu)
    if n is None:
        w = cmath.exp(1j * math.pi * mu)
        return _two_piece(m, mu, (1 - w) / 2, (1 + w) / 2)
    if n % 2 == 0:
        if _is_pole((m + n + 1) / 2):
            return log_kernel(m, -n - m)
        return _two_piece(m, n, 0.0, 1.0)
    if _is_pole((m + n) / 2):
        return log_kernel(m, -n - m)
    return _two_piece(m, n, 1.0, 0.0)
