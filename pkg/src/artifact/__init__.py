"""Planar polynomial systems, their disk-swapping partner systems, and a
two-disk atlas of trajectories."""

from .poly import (
    BiPoly,
    BothZero,
    NotDivisible,
    circle_valuation,
    divide_exact_by_circle,
    is_coprime,
)
from .conjugate import (
    ConjugationResult,
    DiffSystem,
    OriginSingularity,
    ZeroField,
    conjugate,
    pushforward_residual,
    raw_conjugate,
    rebuild_from_quotients,
    reduction_quotients,
    wn_divisibility,
)
from .parse import (
    BothRhsZero,
    ParseError,
    parse_polynomial,
    parse_system,
    system_from_json,
    system_from_text,
)

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "BothRhsZero",
    "BothZero",
    "ConjugationResult",
    "DiffSystem",
    "NotDivisible",
    "OriginSingularity",
    "ParseError",
    "ZeroField",
    "circle_valuation",
    "conjugate",
    "divide_exact_by_circle",
    "is_coprime",
    "parse_polynomial",
    "parse_system",
    "pushforward_residual",
    "raw_conjugate",
    "rebuild_from_quotients",
    "reduction_quotients",
    "system_from_json",
    "system_from_text",
    "wn_divisibility",
]
