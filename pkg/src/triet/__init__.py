"""Exact toolkit for symmetric three-interval exchanges, their induced maps,
ternary codings and the substitutions that fix them."""

from .errors import TrietError
from .iet import Interval, ThreeIET, code_prefix, cylinder
from .qfield import QuadraticNumber, parse_exact, sqrt

__all__ = [
    "TrietError",
    "Interval",
    "ThreeIET",
    "code_prefix",
    "cylinder",
    "QuadraticNumber",
    "parse_exact",
    "sqrt",
]

__version__ = "0.1.0"
