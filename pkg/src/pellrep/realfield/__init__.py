"""Certified reals, exact quadratic arithmetic, heights and continued fractions."""

from .cf import ContinuedFraction, expand_cf, expand_cf_until, nearest_int_distance
from .heights import eval_log, height_bound_combination, log_height, matveev_A
from .precreal import DEFAULT_PREC, PrecReal, decimal_string, round_down, round_up
from .quad import ALPHA, BETA, SQRT2, QuadElement, squarefree_split
from .quantities import Quantity

__all__ = [
    "ALPHA",
    "BETA",
    "ContinuedFraction",
    "DEFAULT_PREC",
    "PrecReal",
    "QuadElement",
    "Quantity",
    "SQRT2",
    "decimal_string",
    "eval_log",
    "expand_cf",
    "expand_cf_until",
    "height_bound_combination",
    "log_height",
    "matveev_A",
    "nearest_int_distance",
    "round_down",
    "round_up",
    "squarefree_split",
]
