"""Exact total-symbol calculus for WKB operators, simple modules along
involutive submanifolds, and descent data for algebroid stacks."""
from .descent import (
    Cochain,
    Cohomology,
    DescentError,
    MatrixGluingData,
    Nerve,
    NotACocycle,
    coboundary,
    coboundary_gluing,
    cohomology,
    fractional_power_class,
    is_cocycle,
    verify_gluing,
)
from .involutive import (
    InvolutiveModel,
    LinearVariety,
    ModuleElement,
    is_involutive,
    left_action,
    module_unit,
    normal_form,
    right_action_transverse,
    simplicity_check,
    wv_generate_oracle,
    wv_member_fast,
)
from .kernels import BACKEND
from .parse import ParseError, format_symbol, parse_poly, parse_symbol
from .poly import Poly, poisson_bracket
from .snf import smith_normal_form
from .symbol import (
    BELOW_WINDOW,
    EXACT,
    NO_NEGATIVE_ORDERS,
    CentralSeries,
    TruncationWindow,
    WkbSymbol,
    adjoint_star,
    commutator,
    estimate_fit,
    is_central_form,
    order_of,
    principal_symbol,
    star_compose,
    symbol,
)

__version__ = "0.1.0"
