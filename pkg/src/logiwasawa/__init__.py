"""Desk-scale logarithmic Iwasawa theory.

l-adic integers, the Iwasawa algebras Z_l[[T]] and Z_l[[T_1, ..., T_d]],
Weierstrass preparation, elementary modules and their growth law, exact
recovery of (mu, lambda, nu), logarithmic ramification bookkeeping, and the
Greenberg / Kleine / log-Kleine neighborhoods on the space of
Z_l-extensions.
"""

from .errors import *  # noqa: F401,F403
from .extensions import (
    ExtensionPoint,
    TowerConfig,
    cyclotomic_isolation,
    greenberg_ball,
    intersection_level,
    invariant_map,
    kleine_neighborhood,
    primitive_classes,
    ramified_primes,
)
from .fitting import ExponentSequence, FitResult, fit, fit_from_orders
from .padic import Infinite, PadicInt, binomial_power, unit_inverse, val
from .ramification import (
    LocalStep,
    LogIndices,
    compose,
    log_indices,
    log_unramified_implies_unramified,
    validate_away_from_ell,
)
from .series import (
    CharacterMap,
    DistinguishedPoly,
    LambdaDSeries,
    LambdaSeries,
    in_maximal_ideal,
    is_distinguished,
    omega,
    specialize,
    weierstrass_divide,
    weierstrass_prepare,
)
from .structure import (
    ElementaryModule,
    ModulePresentation2,
    StructuralInvariants,
    growth_sequence,
    invariants,
    is_pseudo_null_pair,
    quotient_order_exponent,
    specialize_module,
)

__version__ = "0.1.0"
