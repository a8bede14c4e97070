"""Hyperfunction representations of dirac^n delta and dirac^n H, with a
numerical harness that measures jumps of the representing potentials.

A distribution T on R^m is represented by a pair (F+, F-) of monogenic
functions in the two half-spaces when F+(x0, .) - F-(-x0, .) -> T as
x0 -> 0+. The jump is measured by pairing each side with a test function by
polar quadrature on a ladder of heights and extrapolating to x0 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .boundary import boundary_value
from .clifford import AlgebraContext, Multivector, left_multiply
from .distributions import BoundaryDistribution, dirac_power_kernel, hilbert_power_kernel, pair
from .potentials import PotentialId, eval_batch, is_available
from .terms import MAX_DEPTH
from .testfunctions import GaussPolyTestFunction

__all__ = [
    "PREFACTORS",
    "RepresentationEntry",
    "representation",
    "QuadratureConfig",
    "pair_interior",
    "richardson",
    "jump_battery",
    "jump_check",
    "JumpRow",
    "fd_dirac_residual",
    "fd_dirac",
]

PREFACTORS = ("1", "-1", "e0", "ebar0")
MIN_RADIAL_NODES = 8
MIN_CIRCLE_NODES = 16
R_MAX = 6.0


def prefactor(label: str, m: int) -> Multivector:
    ctx = AlgebraContext(m)
    table = {"1": ctx.scalar(1.0), "-1": ctx.scalar(-1.0), "e0": ctx.basis(1), "ebar0": -ctx.basis(1)}
    try:
        return table[label]
    except KeyError:
        raise ValueError(f"unknown prefactor {label!r}; expected one of {PREFACTORS}") from None


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class RepresentationEntry:
    """dirac^n delta <-> delta pair and dirac^n H <-> H pair, both built on C_{-n-1}."""

    n: int
    m: int
    potential: "PotentialRef"
    delta_prefactors: tuple[str, str]
    hilbert_prefactors: tuple[str, str]
    applicable: bool
    checkable: bool

    @property
    def prefactor_plus(self) -> str:
        return self.delta_prefactors[0]

    @property
    def prefactor_minus(self) -> str:
        return self.delta_prefactors[1]

    @property
    def target_delta(self) -> BoundaryDistribution:
        return dirac_power_kernel(self.n, self.m)

    @property
    def target_H(self) -> BoundaryDistribution:
        return hilbert_power_kernel(self.n, self.m)

    def pairs(self) -> dict[str, tuple[str, str]]:
        return {"delta": self.delta_prefactors, "H": self.hilbert_prefactors}

    def describe(self) -> dict[str, str]:
        k = self.potential.k

        def side(label: str, s: str) -> str:
            head = {"1": "", "-1": "-", "e0": "e0 ", "ebar0": "ebar0 "}[label]
            return f"{head}C_{k}^{s}"

        d, h = self.delta_prefactors, self.hilbert_prefactors
        return {
            "delta": f"D^{self.n} delta <-> ({side(d[0], '+')}, {side(d[1], '-')})",
            "H": f"D^{self.n} H <-> ({side(h[0], '+')}, {side(h[1], '-')})",
        }

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "potential": str(self.potential),
            "delta_prefactors": list(self.delta_prefactors),
            "hilbert_prefactors": list(self.hilbert_prefactors),
            "applicable": self.applicable,
            "checkable": self.checkable,
            **self.describe(),
        }


def representation(n: int, m: int) -> RepresentationEntry:
    """Registry entry for index n in boundary dimension m.

    n even: delta <-> (C+, C-), H <-> (e0 C+, ebar0 C-);
    n odd:  delta <-> (ebar0 C+, ebar0 C-), H <-> (-C+, C-);
    with C = C_{-n-1}. Upstream indices (n <= -1) only work for odd m: for
    even m the two boundary values coincide and the jump vanishes.
    """
    if m < 2:
        raise ValueError(f"boundary dimension must be >= 2, got {m}")
    k = -n - 1
    if n % 2 == 0:
        dp, hp = ("1", "1"), ("e0", "ebar0")
    else:
        dp, hp = ("ebar0", "ebar0"), ("-1", "1")
    applicable = n >= 0 or m % 2 == 1
    checkable = -(MAX_DEPTH + 1) <= k <= 2 and is_available(k, m)
    return RepresentationEntry(n, m, PotentialRef("C", k), dp, hp, applicable, checkable)


@dataclass(frozen=True)
class PotentialRef:
    """Names C_k for any integer k; only some have an interior evaluator."""

    component: str
    k: int

    def __str__(self) -> str:
        return f"{self.component}:{self.k}"

    def evaluator(self) -> PotentialId:
        return PotentialId(self.component, self.k)


def boundary_jump(entry: RepresentationEntry, kind: str = "delta") -> BoundaryDistribution:
    """Jump predicted by the boundary-value tables: p+ c^+ - p- c^-."""
    k = entry.potential.k
    pp, pm = entry.pairs()[kind]
    m = entry.m
    cp, cm = boundary_value("c", k, "+", m), boundary_value("c", k, "-", m)
    return (prefactor(pp, m) * cp - prefactor(pm, m) * cm).canonical()


def boundary_sum(entry: RepresentationEntry, kind: str = "delta") -> BoundaryDistribution:
    k = entry.potential.k
    pp, pm = entry.pairs()[kind]
    m = entry.m
    cp, cm = boundary_value("c", k, "+", m), boundary_value("c", k, "-", m)
    return (prefactor(pp, m) * cp + prefactor(pm, m) * cm).canonical()


# ---------------------------------------------------------------- quadrature


@dataclass(frozen=True)
class QuadratureConfig:
    x0_ladder: tuple[float, ...] = (0.4, 0.3, 0.2, 0.1, 0.05)
    radial_nodes: int = 24
    angular: str = "auto"
    richardson_order: int = 4
    circle_nodes: int = 64
    lebedev_order: int = 17

    def __post_init__(self) -> None:
        lad = tuple(float(x) for x in self.x0_ladder)
        object.__setattr__(self, "x0_ladder", lad)
        if len(lad) < 1 or any(x <= 0 for x in lad):
            raise ValueError("x0 ladder must be non-empty and positive")
        if any(a <= b for a, b in zip(lad, lad[1:])):
            raise ValueError(f"x0 ladder must be strictly decreasing, got {lad}")
        if self.radial_nodes < MIN_RADIAL_NODES:
            raise ValueError(f"radial_nodes must be >= {MIN_RADIAL_NODES}")
        if self.circle_nodes < MIN_CIRCLE_NODES:
            raise ValueError(f"circle_nodes must be >= {MIN_CIRCLE_NODES}")
        if not 0 <= self.richardson_order < len(lad):
            raise ValueError("richardson_order must be below the ladder length")
        if self.angular not in ("auto", "trapezoid", "lebedev"):
            raise ValueError(f"unknown angular scheme {self.angular!r}")

    def to_dict(self) -> dict:
        return {
            "x0_ladder": list(self.x0_ladder),
            "radial_nodes": self.radial_nodes,
            "angular": self.angular,
            "richardson_order": self.richardson_order,
        }


@lru_cache(maxsize=None)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _radial_rule(scale: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre on [0, R_MAX], panels graded geometrically around ``scale``."""
    edges = [0.0]
    b = scale / 16.0
    while b < R_MAX:
        edges.append(b)
        b *= 2.0
    edges.append(R_MAX)
    t, w = _gauss(n)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        nodes.append(lo + half * (t + 1.0))
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


@lru_cache(maxsize=None)
def _sphere_rule(m: int, scheme: str, circle_nodes: int, lebedev_order: int) -> tuple[np.ndarray, np.ndarray]:
    if m == 2:
        if scheme not in ("auto", "trapezoid"):
            raise ValueError("m = 2 uses the trapezoid rule on the circle")
        th = 2.0 * np.pi * np.arange(circle_nodes) / circle_nodes
        return np.stack([np.cos(th), np.sin(th)], axis=1), np.full(circle_nodes, 2.0 * np.pi / circle_nodes)
    if m == 3:
        if scheme not in ("auto", "lebedev"):
            raise ValueError("m = 3 uses a Lebedev rule on the sphere")
        from scipy.integrate import lebedev_rule

        x, w = lebedev_rule(lebedev_order)
        return x.T.copy(), w
    raise ValueError(f"quadrature-backed pairing supports m in {{2, 3}}, got m={m}")


def pair_interior(
    pid: PotentialId, x0: float, phi: GaussPolyTestFunction, cfg: QuadratureConfig | None = None
) -> Multivector:
    """Integral over R^m of F(x0, x) phi(x), the potential multiplying from the left."""
    cfg = cfg or QuadratureConfig()
    if x0 == 0:
        raise ValueError("interior pairing needs x0 != 0")
    m = phi.context.m
    dirs, wdir = _sphere_rule(m, cfg.angular, cfg.circle_nodes, cfg.lebedev_order)
    r, wr = _radial_rule(abs(x0), cfg.radial_nodes)
    xs = (r[:, None, None] * dirs[None, :, :]).reshape(-1, m)
    w = (wr[:, None] * r[:, None] ** (m - 1) * wdir[None, :]).reshape(-1)
    pts = np.concatenate([np.full((xs.shape[0], 1), float(x0)), xs], axis=1)
    F = eval_batch(pid, pts, m)
    P = phi.evaluate(xs)
    out = np.zeros(phi.context.blade_count, dtype=np.result_type(F, P))
    for a in range(phi.context.blade_count):
        col = F[:, a] * w
        if not np.any(col):
            continue
        # blade a times phi values, summed with weights
        out += left_multiply(phi.context.basis(a), np.tensordot(col, P, axes=(0, 0)))
    return Multivector(phi.context, out)


def richardson(ladder, values, order: int) -> np.ndarray:
    """Extrapolate values(x0) to x0 = 0 with a polynomial of the given degree."""
    x = np.asarray(ladder, dtype=float)
    y = np.asarray(values)
    if order == 0:
        return y[-1]
    V = np.vander(x, order + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(V, y.reshape(len(x), -1), rcond=None)
    return coef[0].reshape(y.shape[1:])


# ---------------------------------------------------------------- jumps


def jump_battery(m: int) -> list[tuple[str, GaussPolyTestFunction]]:
    """Test functions of mixed parity and Clifford type."""
    ctx = AlgebraContext(m)
    G = GaussPolyTestFunction
    z = (0,) * m

    def mono(alpha, coeff=1.0):
        return G.monomial(ctx, tuple(alpha) + (0,) * (m - len(alpha)), coeff)

    return [
        ("gauss", G.gaussian(ctx)),
        ("xvec_gauss", G.xvec_gaussian(ctx)),
        ("x1sq_gauss+e0", mono((2,)) + G.monomial(ctx, z, ctx.basis(1))),
        ("x1x2_e1e2+x2", mono((1, 1), ctx.basis(2 | 4)) + mono((0, 1))),
        ("r2_gauss-0.5x1", mono((2,)) + mono((0, 2)) + mono((1,)) * -0.5),
    ]


@dataclass
class JumpRow:
    n: int
    m: int
    phi_id: str
    kind: str
    relation: str
    jump_value: dict
    target_value: dict
    rel_err: float
    applicable: bool
    ladder: list
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _mv(v: np.ndarray, m: int) -> Multivector:
    v = np.asarray(v)
    if np.iscomplexobj(v) and np.allclose(v.imag, 0):
        v = v.real
    return Multivector(AlgebraContext(m), v)


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1.0))


def jump_check(
    n: int,
    m: int,
    cfg: QuadratureConfig | None = None,
    tol: float = 5e-3,
    battery: list[tuple[str, GaussPolyTestFunction]] | None = None,
    kinds: tuple[str, ...] = ("delta", "H"),
    relations: tuple[str, ...] = ("jump", "sum"),
) -> dict:
    """Measure jumps (and sums) of the registry pairs and compare with the tables.

    For an inapplicable entry (m even, n <= -1) the raw jump of C_{-n-1} is
    measured and compared with zero, the value the tables predict.
    """
    cfg = cfg or QuadratureConfig()
    if not -3 <= n <= 3:
        raise ValueError(f"numerical jump checks cover -3 <= n <= 3, got {n}")
    if m not in (2, 3):
        raise ValueError(f"numerical jump checks need m in {{2, 3}}, got {m}")
    entry = representation(n, m)
    if not entry.checkable:
        raise ValueError(f"C_{entry.potential.k} has no interior evaluator for m={m}")
    battery = battery if battery is not None else jump_battery(m)
    pid = entry.potential.evaluator()
    rows: list[JumpRow] = []
    cache: dict = {}

    def side_pairs(name, phi):
        if name not in cache:
            plus = [pair_interior(pid, x0, phi, cfg).coeffs for x0 in cfg.x0_ladder]
            minus = [pair_interior(pid, -x0, phi, cfg).coeffs for x0 in cfg.x0_ladder]
            cache[name] = (np.array(plus), np.array(minus))
        return cache[name]

    use_kinds = kinds if entry.applicable else ("raw",)
    for kind in use_kinds:
        pp, pm = ("1", "1") if kind == "raw" else entry.pairs()[kind]
        Pp, Pm = prefactor(pp, m), prefactor(pm, m)
        for relation in relations:
            if kind == "raw" and relation == "sum":
                continue
            sgn = -1.0 if relation == "jump" else 1.0
            if kind == "raw":
                target_dist = (boundary_value("c", pid.k, "+", m) - boundary_value("c", pid.k, "-", m)).canonical()
            elif relation == "jump":
                target_dist = entry.target_delta if kind == "delta" else entry.target_H
            else:
                target_dist = boundary_sum(entry, kind)
            for name, phi in battery:
                plus, minus = side_pairs(name, phi)
                vals = left_multiply(Pp, plus) + sgn * left_multiply(Pm, minus)
                J = richardson(cfg.x0_ladder, vals, cfg.richardson_order)
                T = pair(target_dist, phi).coeffs
                err = _relative(J, T)
                rows.append(
                    JumpRow(
                        n=n,
                        m=m,
                        phi_id=name,
                        kind=kind,
                        relation=relation,
                        jump_value=_mv(J, m).to_dict(tol=1e-15),
                        target_value=_mv(T, m).to_dict(tol=1e-15),
                        rel_err=err,
                        applicable=entry.applicable,
                        ladder=list(cfg.x0_ladder),
                        passed=err <= tol,
                    )
                )
    return {
        "n": n,
        "m": m,
        "applicable": entry.applicable,
        "potential": str(pid),
        "config": cfg.to_dict(),
        "tolerance": tol,
        "passed": all(r.passed for r in rows),
        "rows": [r.to_dict() for r in rows],
    }


# ---------------------------------------------------------------- finite differences


def _field(f, m: int):
    if isinstance(f, PotentialId):
        return lambda pts: eval_batch(f, pts, m)
    if callable(f):
        return f
    raise TypeError("expected a PotentialId or a callable on (N, m+1) point arrays")


def _label(f) -> str:
    return str(f) if isinstance(f, PotentialId) else getattr(f, "__name__", "field")


def fd_dirac(pid, points: np.ndarray, m: int, h: float = 1e-4, conjugated: bool = False) -> np.ndarray:
    """Fourth-order central-difference D f (or conj(D) f) at an (N, m+1) batch.

    ``pid`` is a PotentialId or any callable mapping (N, m+1) points to
    (N, blades) values.
    """
    F = _field(pid, m)
    ctx = AlgebraContext(m)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    grads = []
    for i in range(m + 1):
        e = np.zeros(m + 1)
        e[i] = h

        def f(s: int) -> np.ndarray:
            return F(pts + s * e)

        grads.append((8.0 * (f(1) - f(-1)) - (f(2) - f(-2))) / (12.0 * h))
    dv = sum(left_multiply(ctx.basis(1 << j), grads[j]) for j in range(1, m + 1))
    e0dv = left_multiply(ctx.basis(1), dv)
    # D = (d0 + ebar0 dvec)/2, conj(D) = (d0 + e0 dvec)/2
    return 0.5 * (grads[0] + e0dv) if conjugated else 0.5 * (grads[0] - e0dv)


def local_scale(pid, points: np.ndarray, m: int) -> np.ndarray:
    """|f(p)| / |p|, the natural size of a first derivative of f at p."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    f = _field(pid, m)(pts)
    return np.linalg.norm(f, axis=1) / np.linalg.norm(pts, axis=1)


def fd_dirac_residual(pid, points, m: int, h: float = 1e-4) -> dict:
    """Max and mean of |D f| / local scale, split by half-space."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        return {"id": _label(pid), "m": m, "h": h, "halves": {}, "max": 0.0}
    if np.any(np.abs(pts[:, 0]) < 2 * h) or np.any(np.linalg.norm(pts, axis=1) < 0.1):
        raise ValueError("points must satisfy |x| >= 0.1 and |x0| >= 2h")
    res = np.linalg.norm(fd_dirac(pid, pts, m, h), axis=1)
    scale = local_scale(pid, pts, m)
    rel = np.where(scale > 0, res / np.where(scale > 0, scale, 1.0), res)
    halves = {}
    for label, mask in (("upper", pts[:, 0] > 0), ("lower", pts[:, 0] < 0)):
        if np.any(mask):
            halves[label] = {
                "count": int(mask.sum()),
                "max": float(rel[mask].max()),
                "mean": float(rel[mask].mean()),
                "max_abs": float(res[mask].max()),
            }
    return {"id": _label(pid), "m": m, "h": h, "halves": halves, "max": float(rel.max())}


def point_battery(m: int, count: int, seed: int = 0, side: int = 1) -> np.ndarray:
    """Random points with 0.5 < |x| < 2 and |x0| > 0.1 in one half-space."""
    rng = np.random.default_rng(seed)
    out = np.empty((0, m + 1))
    while out.shape[0] < count:
        p = rng.normal(size=(4 * count, m + 1))
        p /= np.linalg.norm(p, axis=1)[:, None]
        p *= rng.uniform(0.5, 2.0, size=(p.shape[0], 1))
        p[:, 0] = side * np.abs(p[:, 0])
        p = p[np.abs(p[:, 0]) > 0.1]
        out = np.concatenate([out, p])
    return out[:count]
