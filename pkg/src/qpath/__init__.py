"""Exact and numeric tools for height-restricted path diagrams and q-Euler numbers."""

from .qalg import QLaurent, QPoly, TSeries, q_integer
from .pathcount import DyckPath, Policy, brute_coeff, dp_series, gen_dyck_paths
from .contfrac import cf_eval_exact, cf_series, convergents, level_weight
from .closedform import euler_number, euler_poly, q_secant_poly, q_tangent_poly

__version__ = "0.1.0"

__all__ = [
    "QLaurent", "QPoly", "TSeries", "q_integer",
    "DyckPath", "Policy", "brute_coeff", "dp_series", "gen_dyck_paths",
    "cf_eval_exact", "cf_series", "convergents", "level_weight",
    "euler_number", "euler_poly", "q_secant_poly", "q_tangent_poly",
]
