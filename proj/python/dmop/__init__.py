"""Discrete analogue of d^2m/dx^2m: exact construction and verification."""

from dmop._core import (
    ConvergenceFailure,
    NonConvergent,
    Operator,
    StructureViolation,
    WindowTooSmall,
    bernoulli,
    check_symbol,
    euler_coefficients,
    euler_eval,
    g_value,
    inner_roots,
    stencil,
    symbol_closed,
    verify,
    zeta,
)

__all__ = [
    "ConvergenceFailure",
    "NonConvergent",
    "Operator",
    "StructureViolation",
    "WindowTooSmall",
    "bernoulli",
    "check_symbol",
    "euler_coefficients",
    "euler_eval",
    "g_value",
    "inner_roots",
    "stencil",
    "symbol_closed",
    "verify",
    "zeta",
]

__version__ = "0.1.0"
