"""Inverse problem of the calculus of variations, symbolic and on a grid.

Submodules
----------
jetcore
    Exact polynomial expressions over jet coordinates.
varcalc
    Total derivatives, Euler-Lagrange operator, Helmholtz test, Tonti Lagrangian.
parser
    Problem-file reader and renderer.
mech
    Symbolic forms on phase space; Lagrangians for first- and second-order systems.
fieldsim
    Periodic-grid Maxwell dynamics and the thickened symplectic space.
cli
    Command-line front end.
"""

from .jetcore import Expr, JetError, JetSpace, JetVar, format_expr
from .parser import ParseError, ProblemFile, parse_problem, render
from .varcalc import (
    HelmholtzReport,
    Lagrangian,
    SourceForm,
    euler_lagrange,
    helmholtz,
    tonti_lagrangian,
    total_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "Expr",
    "JetError",
    "JetSpace",
    "JetVar",
    "format_expr",
    "ParseError",
    "ProblemFile",
    "parse_problem",
    "render",
    "HelmholtzReport",
    "Lagrangian",
    "SourceForm",
    "euler_lagrange",
    "helmholtz",
    "tonti_lagrangian",
    "total_derivative",
]
