"""Shared oracles for the test suite."""

import numpy as np

from monopot.clifford import AlgebraContext
from monopot.distributions import pair
from monopot.testfunctions import GaussPolyTestFunction


def dirac_power_pair(T, phi, k):
    """<dirac^k T, phi> by moving each derivative onto phi."""
    if k == 0:
        return pair(T, phi)
    ctx = phi.context
    out = ctx.zero()
    for i in range(1, ctx.m + 1):
        out = out - ctx.basis(1 << i) * dirac_power_pair(T, phi.partial(i), k - 1)
    return out


def sample_phis(m):
    ctx = AlgebraContext(m)
    G = GaussPolyTestFunction
    pad = (0,) * (m - 2)
    return [
        G.gaussian(ctx) + G.monomial(ctx, (2, 0) + pad),
        G.xvec_gaussian(ctx) + G.monomial(ctx, (1, 1) + pad, ctx.basis(1)),
        G.monomial(ctx, (0, 3) + pad, ctx.basis(0b110)) + G.monomial(ctx, (1, 0) + pad, 2.0),
    ]


def polar_integral(m, f, n_r=400, n_ang=64, rmax=7.0):
    """Integral over R^m (m = 2 or 3) of f(xs) -> (N, blades), Gauss-Legendre in r."""
    t, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * rmax * (t + 1)
    wr = 0.5 * rmax * w
    if m == 2:
        th = 2 * np.pi * np.arange(n_ang) / n_ang
        dirs = np.stack([np.cos(th), np.sin(th)], axis=1)
        wd = np.full(n_ang, 2 * np.pi / n_ang)
    else:
        from scipy.integrate import lebedev_rule

        x, wd = lebedev_rule(25)
        dirs = x.T
    xs = (r[:, None, None] * dirs[None]).reshape(-1, m)
    ww = (wr[:, None] * r[:, None] ** (m - 1) * wd[None]).reshape(-1)
    return np.tensordot(ww, f(xs), axes=(0, 0))
