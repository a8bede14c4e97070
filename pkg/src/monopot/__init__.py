"""Monogenic potentials in a half-space and their distributional boundary values.

The package is organised in layers:

* :mod:`monopot.clifford`: the Clifford algebra R_{0,m+1}
* :mod:`monopot.terms`: exact symbolic chain C_{-1}, D C_{-1}, ...
* :mod:`monopot.special`: sphere areas, the profile F_m, finite-part moments
* :mod:`monopot.distributions` and :mod:`monopot.boundary`: kernels on R^m
* :mod:`monopot.potentials`: pointwise evaluation in both half-spaces
* :mod:`monopot.hyperfunctions`: representations and jump measurements
"""

from .boundary import boundary_value, lemma_check
from .clifford import AlgebraContext, Multivector, Point, conjugate, embed_point, geometric_product
from .distributions import (
    BoundaryDistribution,
    dirac_power_kernel,
    hilbert_power_kernel,
    make_normalized,
    pair,
    pq_constants,
)
from .hyperfunctions import QuadratureConfig, fd_dirac_residual, jump_check, pair_interior, representation
from .potentials import PotentialId, eval_batch, eval_potential, parse_potential, pointwise_limit
from .special import F_profile, fp_gamma, radial_moment, sigma, sphere_moment
from .terms import TermSum, apply_CR, cauchy_kernel, downstream
from .testfunctions import GaussPolyTestFunction

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "BoundaryDistribution",
    "F_profile",
    "fd_dirac_residual",
    "GaussPolyTestFunction",
    "Multivector",
    "Point",
    "PotentialId",
    "QuadratureConfig",
    "TermSum",
    "apply_CR",
    "boundary_value",
    "cauchy_kernel",
    "conjugate",
    "dirac_power_kernel",
    "downstream",
    "embed_point",
    "eval_batch",
    "eval_potential",
    "fp_gamma",
    "geometric_product",
    "hilbert_power_kernel",
    "jump_check",
    "lemma_check",
    "make_normalized",
    "pair",
    "pair_interior",
    "parse_potential",
    "pointwise_limit",
    "pq_constants",
    "radial_moment",
    "representation",
    "sigma",
    "sphere_moment",
]
