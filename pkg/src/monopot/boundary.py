"""Distributional boundary values a_k, b_k, c_k of the potential chain.

Downstream indices (k <= -1) are expressed through powers of the Dirac and
Hilbert-Dirac kernels; upstream indices (k >= 0) through the normalized
T*/U* families, with the parity-dependent exceptional slots routed to the
logarithmic fundamental solutions E_{m+n} (m even) and F_{m+n} (m odd).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .clifford import AlgebraContext
from .distributions import (
    BoundaryDistribution,
    delta,
    dirac_power_kernel,
    hilbert_kernel,
    hilbert_power_kernel,
    log_kernel,
    make_normalized,
    pair,
    pair_dirac,
)
from .testfunctions import GaussPolyTestFunction

__all__ = [
    "boundary_value",
    "exceptional_slots",
    "lemma_check",
    "LemmaReport",
    "lemma_test_functions",
]

SIDES = ("+", "-")


def _side_sign(side: str) -> int:
    if side not in SIDES:
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    return 1 if side == "+" else -1


@lru_cache(maxsize=None)
def exceptional_slots(m: int, kmax: int = 64) -> dict[tuple[str, int], tuple[int, int]]:
    """(series, k) -> (sign, n) meaning the boundary value is sign * log_kernel(m, n)."""
    slots = {}
    if m % 2 == 0:
        for j in range(kmax):
            slots[("a", m + 2 * j - 1)] = (1, 2 * j)  # E_{m+2j}
            slots[("b", m + 2 * j)] = (-1, 2 * j + 1)  # -E_{m+2j+1}
    else:
        for j in range(kmax):
            slots[("a", m + 2 * j - 1)] = (-1, 2 * j)  # -F_{m+2j}
            slots[("b", m + 2 * j)] = (1, 2 * j + 1)  # F_{m+2j+1}
    return slots


def _downstream(series: str, k: int, side: str, m: int) -> BoundaryDistribution:
    s = _side_sign(side)
    if k == -1:
        return delta(m, 0, s) if series == "a" else hilbert_kernel(m)
    if k % 2 == 0:
        n = -k - 1  # k = -2l, n = 2l - 1
        if series == "a":
            return hilbert_power_kernel(n, m) * -1.0
        return dirac_power_kernel(n, m) * (-s)
    n = -k - 1  # k = -2l - 1, n = 2l
    if series == "a":
        return dirac_power_kernel(n, m) * s
    return hilbert_power_kernel(n, m)


def _upstream(series: str, k: int, side: str, m: int) -> BoundaryDistribution:
    s = _side_sign(side)
    parity = (-1) ** m
    slot = exceptional_slots(m, k // 2 + 2).get((series, k))
    if slot is not None:
        sign, n = slot
        return log_kernel(m, n) * float(sign)
    if series == "a":
        if k % 2 == 0:
            h = k // 2
            c = -math.gamma((m - 2 * h - 1) / 2) / (2 ** (2 * h + 1) * math.pi ** ((m + 2 * h + 1) / 2))
            return make_normalized("T", -m + 2 * h + 1, m) * c
        h = (k + 1) // 2
        c = math.gamma((m - 2 * h) / 2) / (2 ** (2 * h) * math.pi ** ((m + 2 * h) / 2))
        return make_normalized("T", -m + 2 * h, m) * (c * (parity if s < 0 else 1))
    if k % 2 == 0:
        h = k // 2
        c = math.gamma((m - 2 * h) / 2) / (2 ** (2 * h + 1) * math.pi ** ((m + 2 * h + 2) / 2))
        return make_normalized("U", -m + 2 * h + 1, m) * (c * (parity if s < 0 else 1))
    h = (k + 1) // 2
    c = -math.gamma((m - 2 * h + 1) / 2) / (2 ** (2 * h) * math.pi ** ((m + 2 * h + 1) / 2))
    return make_normalized("U", -m + 2 * h, m) * c


def boundary_value(series: str, k: int, side: str, m: int) -> BoundaryDistribution:
    """Boundary value of A_k ('a'), B_k ('b') or C_k ('c') from the given side."""
    if m < 2:
        raise ValueError(f"boundary dimension must be >= 2, got {m}")
    _side_sign(side)
    if series == "c":
        e0bar = -AlgebraContext(m).basis(1)
        a = boundary_value("a", k, side, m)
        b = boundary_value("b", k, side, m)
        return (a * 0.5 + e0bar * (b * 0.5)).canonical()
    if series not in ("a", "b"):
        raise ValueError(f"series must be 'a', 'b' or 'c', got {series!r}")
    if k <= -1:
        return _downstream(series, k, side, m).canonical()
    return _upstream(series, k, side, m).canonical()


# ---------------------------------------------------------------- lemma


def lemma_test_functions(m: int) -> list[tuple[str, GaussPolyTestFunction]]:
    ctx = AlgebraContext(m)
    G = GaussPolyTestFunction
    g = G.gaussian(ctx)
    x1 = G.monomial(ctx, (1,) + (0,) * (m - 1))
    x1x2 = G.monomial(ctx, (1, 1) + (0,) * (m - 2))
    x1sq = G.monomial(ctx, (2,) + (0,) * (m - 1), ctx.basis(1))
    return [
        ("gauss", g),
        ("xvec_gauss", G.xvec_gaussian(ctx)),
        ("x1_gauss+e0", x1 + g.left(ctx.basis(1))),
        ("x1x2_e2+e0x1^2", x1x2.left(ctx.basis(4)) + x1sq),
    ]


@dataclass
class LemmaReport:
    m: int
    k: int
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.rows)

    def to_dict(self) -> dict:
        return {"m": self.m, "k": self.k, "passed": self.passed, "rows": self.rows}


def _table_match(T: BoundaryDistribution, m: int, nu: int):
    """Find (kind, sign) with T == sign * dirac^nu kind."""
    for kind, fn in (("delta", dirac_power_kernel), ("H", hilbert_power_kernel)):
        K = fn(nu, m)
        for sign in (1.0, -1.0):
            if T.allclose(K * sign):
                return kind, sign
    return None


def lemma_check(k: int, m: int, tol: float = 1e-10) -> LemmaReport:
    """Parts (i)-(ii) by exact pairing; parts (iii)-(iv) at table level.

    For (i)-(ii) the identities -dirac a_k = b_{k-1} and -dirac b_k = a_{k-1}
    are tested on both sides by moving the Dirac operator onto the test
    function. For (iii)-(iv) each a_k^+ is identified in the kernel table as
    +-dirac^{-k-1} delta or +-dirac^{-k-1} H; applying H swaps delta and H
    (H * H = delta), and the prediction is compared with the tabulated b_k.
    """
    if k < 1:
        raise ValueError("the lemma is stated for k >= 1")
    rep = LemmaReport(m, k)
    for side, part in (("+", "i"), ("-", "ii")):
        for src, dst in (("a", "b"), ("b", "a")):
            T = boundary_value(src, k, side, m)
            target = boundary_value(dst, k - 1, side, m)
            for name, phi in lemma_test_functions(m):
                lhs = -pair_dirac(T, phi)
                rhs = pair(target, phi)
                err = (lhs - rhs).norm()
                scale = max(rhs.norm(), 1.0)
                rep.rows.append(
                    {
                        "part": part,
                        "identity": f"-D {src}_{k}^{side} = {dst}_{k - 1}^{side}",
                        "phi": name,
                        "error": err / scale,
                        "passed": err <= tol * scale,
                        "check": "exact-pairing",
                    }
                )
    nu = -k - 1
    a_p, b_p = boundary_value("a", k, "+", m), boundary_value("b", k, "+", m)
    a_m, b_m = boundary_value("a", k, "-", m), boundary_value("b", k, "-", m)
    found_a = _table_match(a_p, m, nu)
    found_b = _table_match(b_p, m, nu)
    ok3 = (
        found_a is not None
        and found_b is not None
        and found_a[0] != found_b[0]
        and found_a[1] == found_b[1]
    )
    rep.rows.append(
        {
            "part": "iii",
            "identity": f"H[a_{k}^+] = b_{k}^+, H[b_{k}^+] = a_{k}^+",
            "a_kernel": found_a,
            "b_kernel": found_b,
            "passed": ok3,
            "check": "table-consistent",
        }
    )
    # a^- = sa a^+, b^- = sb b^+; H[a^-] = sa b^+ must equal (-1)^m b^-
    parity = (-1.0) ** m
    sa = 1.0 if a_m.allclose(a_p) else (-1.0 if a_m.allclose(-a_p) else None)
    sb = 1.0 if b_m.allclose(b_p) else (-1.0 if b_m.allclose(-b_p) else None)
    ok4 = ok3 and sa is not None and sb is not None and sa == parity * sb
    rep.rows.append(
        {
            "part": "iv",
            "identity": f"H[a_{k}^-] = (-1)^m b_{k}^-, H[b_{k}^-] = (-1)^m a_{k}^-",
            "side_signs": [sa, sb],
            "passed": ok4,
            "check": "table-consistent",
        }
    )
    return rep
