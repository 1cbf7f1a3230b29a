"""Exact computations with one-dimensional groups over valued fields k((t)).

The package provides truncated Laurent/Puiseux arithmetic with honest
precision tracking, one-variable definable-set (Swiss cheese) algebra,
Weierstrass-curve reduction theory with its filtration, Tate uniformization
with self-verifying q-series, twisted multiplicative groups, and a
classification driver exposed through the ``valgroups`` CLI.
"""

from .errors import (
    BadParameter,
    CharNotSupported,
    DivisionByZero,
    DomainError,
    NoConvergence,
    NormViolation,
    NotDivisible,
    NotElliptic,
    NotInDomain,
    NotInE0,
    NotInKernel,
    NotIntegral,
    NotSmooth,
    ParseError,
    PrecisionLoss,
    Unsupported,
    ValGroupsError,
    WrongShape,
    ZeroArgument,
)
from .gamma import INF, GammaValue, gamma
from .laurent import FieldContext, LaurentElement, RVElement, parse_laurent, rv_section
from .residues import PrimeField, Rationals

__all__ = [
    "FieldContext",
    "GammaValue",
    "INF",
    "LaurentElement",
    "ParseError",
    "PrecisionLoss",
    "PrimeField",
    "RVElement",
    "Rationals",
    "ValGroupsError",
    "gamma",
    "parse_laurent",
    "rv_section",
    "BadParameter",
    "CharNotSupported",
    "DivisionByZero",
    "DomainError",
    "NoConvergence",
    "NormViolation",
    "NotDivisible",
    "NotElliptic",
    "NotInDomain",
    "NotInE0",
    "NotInKernel",
    "NotIntegral",
    "NotSmooth",
    "Unsupported",
    "WrongShape",
    "ZeroArgument",
]
