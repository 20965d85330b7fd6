"""Verification lab for coefficient bounds of S*_e and C_e.

S*_e and C_e are the starlike and convex functions whose defining ratios
``z f'/f`` and ``1 + z f''/f'`` are subordinate to ``e^z``.
"""

from .bounds import PiecewiseBound, SimThomasArgs, YArgs, theorem_bound, y_bruteforce, y_closed_form
from .caratheodory import CaratheodoryCoeffs, SchwarzSpec, TauParams, tau_to_c
from .class_maps import CATALOG, ClassMember, ClassTag, ExtremalSpec, coeffs_via_ode, extremal_member
from .estimators import CoefficientMap, ExtremalSearch, FunctionalTransformer
from .functionals import Functional, parse_functional
from .series import PowerSeries
from .verify import BoundReport, RunConfig, empirical_extrema, run_report

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CATALOG",
    "CaratheodoryCoeffs",
    "ClassMember",
    "ClassTag",
    "CoefficientMap",
    "ExtremalSearch",
    "ExtremalSpec",
    "Functional",
    "FunctionalTransformer",
    "PiecewiseBound",
    "PowerSeries",
    "RunConfig",
    "SchwarzSpec",
    "SimThomasArgs",
    "TauParams",
    "YArgs",
    "coeffs_via_ode",
    "empirical_extrema",
    "extremal_member",
    "parse_functional",
    "run_report",
    "tau_to_c",
    "theorem_bound",
    "y_bruteforce",
    "y_closed_form",
]
