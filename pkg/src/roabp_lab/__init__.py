"""Exact roABP widths, minimal roABP synthesis and the constructions around them."""

from .field import Field, Q, make_field, primitive_root_of_unity
from .kernels import BACKEND
from .nisan import cut_rank, eval_dim_lower_bound, min_width_over_orders, nisan_matrix, width_profile
from .poly import Polynomial, format_poly, parse_poly
from .roabp import ROABP, synthesize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Field",
    "Polynomial",
    "Q",
    "ROABP",
    "cut_rank",
    "eval_dim_lower_bound",
    "format_poly",
    "make_field",
    "min_width_over_orders",
    "nisan_matrix",
    "parse_poly",
    "primitive_root_of_unity",
    "synthesize",
    "width_profile",
]
