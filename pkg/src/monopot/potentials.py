"""Pointwise evaluation of the potential chain in both half-spaces.

``C_k = A_k/2 + conj(e0) B_k/2`` with scalar ``A_k`` and vector ``B_k``.
Downstream members (k <= -1) come from the exact term algebra; k = 0, 1, 2
from closed forms built on the profile function F_m.

For k = 1 at m = 2 and k = 2 at m = 3 the general closed forms have a pole
in m. In those dimensions the potentials are the finite parts of the
general forms (the pole is a constant, hence harmonic): A_1 = -(2/sigma_3)
ln(x0 + |x|) for m = 2 and A_2 = (x0 F_1(r/x0)/r + ln|x|)/sigma_4 for
m = 3. Their boundary values are exactly the logarithmic kernels E_2 and
-F_3.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford import AlgebraContext, Multivector, Point
from .special import F_profile, sigma
from .terms import MAX_DEPTH, downstream, evaluate_batch

__all__ = [
    "PotentialId",
    "parse_potential",
    "eval_potential",
    "eval_batch",
    "pointwise_limit",
    "axis_limit",
    "is_available",
]

COMPONENTS = ("A", "B", "C")


@dataclass(frozen=True)
class PotentialId:
    component: str
    k: int

    def __post_init__(self) -> None:
        if self.component not in COMPONENTS:
            raise ValueError(f"component must be one of {COMPONENTS}, got {self.component!r}")
        if not -(MAX_DEPTH + 1) <= self.k <= 2:
            raise ValueError(f"potential index must be in [{-(MAX_DEPTH + 1)}, 2], got {self.k}")

    def __str__(self) -> str:
        return f"{self.component}:{self.k}"


def parse_potential(text: str) -> PotentialId:
    """Parse ``"C:-2"`` style identifiers."""
    match = re.fullmatch(r"\s*([ABC])\s*:\s*(-?\d+)\s*", text)
    if not match:
        raise ValueError(f"cannot parse potential id {text!r}; expected e.g. 'C:-2'")
    return PotentialId(match.group(1), int(match.group(2)))


def is_available(k: int, m: int) -> bool:
    """Whether C_k has a pointwise evaluator in dimension m."""
    if k <= 0:
        return k >= -(MAX_DEPTH + 1)
    if k == 1:
        return m >= 2
    if k == 2:
        return m >= 3
    return False


def _split(points: np.ndarray, m: int):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != m + 1:
        raise ValueError(f"points need {m + 1} coordinates, got {pts.shape[1]}")
    x0 = pts[:, 0]
    xv = pts[:, 1:]
    r = np.sqrt(np.einsum("ij,ij->i", xv, xv))
    rho = np.hypot(x0, r)
    if np.any(rho == 0):
        raise ValueError("potentials are singular at the origin")
    return pts, x0, xv, r, rho


def _profile(n: int, v, m: int):
    """F_n(r/x0) as used below the boundary.

    For v < 0 this is -F_n(|v|) + (1 + (-1)^m) F_n(inf): the odd extension
    for odd m and the analytic continuation through v = inf for even m.
    Either way the result is monogenic in the lower half-space and has the
    boundary limit (-1)^m F_n(inf).
    """
    v = np.asarray(v, dtype=float)
    upper = F_profile(n, np.abs(v))
    lower = -upper + (1 + (-1) ** m) * F_profile(n, 0.0, at_infinity=True)
    return np.where(v >= 0, upper, lower)


def _scaled_profile(n: int, r, x0, m: int):
    """r^(-n) F_n(r/x0), continuous up to the x0-axis where it tends to +-|x0|^(-n)/n."""
    on_axis = r == 0
    if np.any(on_axis & (x0 < 0)) and m % 2 == 0:
        raise ValueError("the lower-half potentials for even m are singular on the negative x0-axis")
    safe_r = np.where(on_axis, 1.0, r)
    body = safe_r ** (-n) * _profile(n, safe_r / x0, m)
    axis = np.sign(x0) * np.abs(x0) ** (-n) / n
    return np.where(on_axis, axis, body)


def _upstream_parts(k: int, x0, r, rho, m: int):
    """Return (A, b) with B = b * xvec."""
    if np.any(x0 == 0):
        raise ValueError(f"C_{k} is evaluated off the boundary only (x0 != 0); use pointwise_limit")
    s = sigma(m + 1)
    P_m = _scaled_profile(m, r, x0, m)
    P_m2 = _scaled_profile(m - 2, r, x0, m) if m > 2 else None
    if k == 0:
        A = -2.0 / ((m - 1) * s) * rho ** (1 - m)
        b = 2.0 / s * P_m
        return A, b
    if k == 1:
        if m == 2:
            A = -2.0 / s * np.log(x0 + rho)
        else:
            A = 2.0 / ((m - 1) * s) * P_m2
        b = 2.0 / s * x0 * P_m - 2.0 / ((m - 1) * s) * rho ** (1 - m)
        return A, b
    if k == 2:
        if m == 2:
            raise ValueError("C_2 has no closed form for m = 2")
        if m == 3:
            A = (x0 * P_m2 + np.log(rho)) / s
        else:
            A = 2.0 / ((m - 1) * s) * x0 * P_m2 - 2.0 / (
                (m - 1) * (m - 3) * s
            ) * rho ** (3 - m)
        b = rho**2 * P_m / s
        if m != 3:
            b = b - (m - 3) / ((m - 1) * s) * P_m2
        return A, b
    raise ValueError(f"no interior evaluator for C_{k}")


@lru_cache(maxsize=None)
def _chain(m: int, k: int):
    return downstream(m, -k)


def _assemble(component: str, A, b, xv, m: int) -> np.ndarray:
    n = xv.shape[0]
    out = np.zeros((n, 1 << (m + 1)))
    if component in ("A", "C"):
        out[:, 0] = A if component == "A" else 0.5 * A
    for j in range(1, m + 1):
        if component == "B":
            out[:, 1 << j] = b * xv[:, j - 1]
        elif component == "C":
            # conj(e0) e_j = -e0 e_j
            out[:, 1 | (1 << j)] = -0.5 * b * xv[:, j - 1]
    return out


def eval_batch(pid: PotentialId, points: np.ndarray, m: int) -> np.ndarray:
    """Values at an (N, m+1) array of points (x0, x1..xm); shape (N, blades)."""
    pts, x0, xv, r, rho = _split(points, m)
    if pid.k <= -1:
        C = evaluate_batch(_chain(m, pid.k), pts)
        if pid.component == "C":
            return C
        A = 2.0 * C[:, 0]
        b = np.zeros_like(A)
        # recover b from any nonzero e0 e_j component: C[e0 e_j] = -b x_j / 2
        num = np.zeros_like(A)
        den = np.zeros_like(A)
        for j in range(1, m + 1):
            num += C[:, 1 | (1 << j)] * xv[:, j - 1]
            den += xv[:, j - 1] ** 2
        b = np.where(den > 0, -2.0 * num / np.where(den > 0, den, 1.0), 0.0)
        return _assemble(pid.component, A, b, xv, m)
    if not is_available(pid.k, m):
        raise ValueError(f"{pid} is not available for m={m}")
    A, b = _upstream_parts(pid.k, x0, r, rho, m)
    return _assemble(pid.component, A, b, xv, m)


def eval_potential(pid: PotentialId, p: Point) -> Multivector:
    ctx = AlgebraContext(p.m)
    return Multivector(ctx, eval_batch(pid, p.as_array()[None, :], p.m)[0])


def _limit_parts(k: int, r: float, m: int, side: str):
    """Closed-form x0 -> 0+- limits, as (A, b) with B = b * xvec."""
    sm, s1 = sigma(m), sigma(m + 1)
    par = 1.0 if side == "+" else float((-1) ** m)
    if k == -1:
        return 0.0, -2.0 / s1 * r ** (-m - 1)
    if k == 0:
        return -2.0 / ((m - 1) * s1) * r ** (1 - m), par / sm * r ** (-m)
    if k == 1:
        A = -2.0 / s1 * math.log(r) if m == 2 else par / (sm * (m - 2)) * r ** (2 - m)
        return A, -2.0 / ((m - 1) * s1) * r ** (1 - m)
    if k == 2:
        if m == 2:
            raise ValueError("C_2 has no closed form for m = 2")
        A = math.log(r) / s1 if m == 3 else -2.0 / ((m - 1) * (m - 3) * s1) * r ** (3 - m)
        return A, par * 0.5 / (sm * (m - 2)) * r ** (2 - m)
    raise ValueError(f"no pointwise limit stated for index {k}")


def pointwise_limit(pid: PotentialId, xvec, side: str) -> Multivector:
    """Limit as x0 -> 0 from side '+' or '-' at a boundary point xvec != 0."""
    if side not in ("+", "-"):
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    xv = np.asarray(xvec, dtype=float).ravel()
    m = xv.size
    r = float(np.linalg.norm(xv))
    if r == 0:
        raise ValueError("pointwise boundary limits need xvec != 0")
    if pid.k <= -2:
        # downstream members are smooth across the boundary away from the origin
        return eval_potential(pid, Point(0.0, xv))
    A, b = _limit_parts(pid.k, r, m, side)
    return Multivector(AlgebraContext(m), _assemble(pid.component, np.array([A]), np.array([b]), xv[None, :], m)[0])


def axis_limit(pid: PotentialId, x0: float, m: int) -> Multivector:
    """Limit as xvec -> 0 at fixed x0 != 0, for k in {-1, 0}."""
    if x0 == 0:
        raise ValueError("axis limits need x0 != 0")
    s1 = sigma(m + 1)
    if pid.k == -1:
        A = 2.0 / s1 * x0 / abs(x0) ** (m + 1)
    elif pid.k == 0:
        if x0 < 0 and m % 2 == 0 and pid.component != "A":
            # the continued B_0 behaves like xvec / r^m along the negative axis
            raise ValueError("B_0 has no axis limit below the boundary for even m")
        A = -2.0 / ((m - 1) * s1) / abs(x0) ** (m - 1)
    else:
        raise ValueError(f"no axis limit implemented for {pid}")
    return Multivector(AlgebraContext(m), _assemble(pid.component, np.array([A]), np.array([0.0]), np.zeros((1, m)), m)[0])
