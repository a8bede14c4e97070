"""Scalar special functions: sphere areas, the profile function F_m,
finite-part Gamma values and exact monomial moments over the unit sphere."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy import special as sp

__all__ = [
    "sigma",
    "F_profile",
    "F_profile_inf",
    "fp_gamma",
    "fp_gamma_deriv",
    "sphere_moment",
    "radial_moment",
]


def sigma(d: int) -> float:
    """Area of the unit sphere S^{d-1} in R^d."""
    if d < 1:
        raise ValueError(f"sigma needs d >= 1, got {d}")
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def F_profile_inf(m: int) -> float:
    return 0.5 * math.sqrt(math.pi) * math.gamma(m / 2) / math.gamma((m + 1) / 2)


def F_profile(m: int, v, at_infinity: bool = False):
    """F_m(v) = int_0^v eta^(m-1) (1+eta^2)^(-(m+1)/2) d eta.

    Evaluated through the regularized incomplete beta function in
    t = v^2/(1+v^2); for |v| > 1 the complementary form is used so that
    large arguments keep full relative accuracy. Negative arguments follow
    F_m(-v) = (-1)^m F_m(v). Accepts scalars or arrays.
    """
    if m < 1:
        raise ValueError(f"F_profile needs m >= 1, got {m}")
    full = F_profile_inf(m)
    if at_infinity:
        return full
    v = np.asarray(v, dtype=float)
    a = abs(v)
    v2 = a * a
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        small = full * sp.betainc(m / 2, 0.5, v2 / (1.0 + v2))
        large = full * (1.0 - sp.betainc(0.5, m / 2, 1.0 / (1.0 + v2)))
    out = np.where(a <= 1.0, small, large)
    out = np.where(np.isinf(a), full, out)
    if m % 2 == 1:
        out = np.where(v < 0, -out, out)
    return out if out.ndim else float(out)


def fp_gamma(z: float) -> float:
    """Gamma(z) off the poles; the Laurent constant term at z = -n."""
    if z <= 0 and float(z).is_integer():
        n = int(-z)
        return (-1) ** n * float(sp.digamma(n + 1)) / math.factorial(n)
    return float(sp.gamma(z))


def fp_gamma_deriv(z: float) -> float:
    """d/dz Gamma(z) = Gamma(z) psi(z), off the poles only."""
    if z <= 0 and float(z).is_integer():
        raise ValueError(f"Gamma'(z) has a double pole at z={z}")
    return float(sp.gamma(z) * sp.digamma(z))


def radial_moment(s: float, log_power: int = 0) -> float:
    """Finite part of int_0^inf r^s ln^k(r) e^{-r^2} dr for k in {0, 1}.

    The plain integral is Gamma((s+1)/2)/2; the log moment is its derivative
    in s. At the poles s = -1, -3, ... the Laurent constant is used.
    """
    z = (s + 1) / 2
    if log_power == 0:
        return 0.5 * fp_gamma(z)
    if log_power == 1:
        return 0.25 * fp_gamma_deriv(z)
    raise ValueError(f"log_power must be 0 or 1, got {log_power}")


def sphere_moment(exponents: Sequence[int]) -> float:
    """Integral of omega^alpha over S^{m-1}; zero when any exponent is odd."""
    alpha = [int(a) for a in exponents]
    if any(a < 0 for a in alpha):
        raise ValueError("monomial exponents must be non-negative")
    if any(a % 2 for a in alpha):
        return 0.0
    half = [(a + 1) / 2 for a in alpha]
    logval = sum(math.lgamma(h) for h in half) - math.lgamma(sum(half))
    return 2.0 * math.exp(logval)
