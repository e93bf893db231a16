"""Exact metric trees, orders on them, and similarities of the universal tree.

Rational quantities are returned as ``fractions.Fraction``; arguments accept
int, Fraction, or "p/q" strings.
"""

from ._core import (
    DomainError,
    EndId,
    FourPointError,
    Group,
    LimitRefused,
    Location,
    ParseError,
    Point,
    RayTree,
    Similarity,
    TreeOrder,
    UniversalOrder,
    UniversalTree,
    UpwardEnd,
    audit_semilattice,
    check_four_point,
    classify_component,
    complete_limit,
    dist,
    fiber_map,
    fiber_nearest,
    join,
    join_height,
    l1_grid,
    median,
    realize,
    segment_point,
)

__all__ = [
    "DomainError",
    "EndId",
    "FourPointError",
    "Group",
    "LimitRefused",
    "Location",
    "ParseError",
    "Point",
    "RayTree",
    "Similarity",
    "TreeOrder",
    "UniversalOrder",
    "UniversalTree",
    "UpwardEnd",
    "audit_semilattice",
    "check_four_point",
    "classify_component",
    "complete_limit",
    "dist",
    "fiber_map",
    "fiber_nearest",
    "join",
    "join_height",
    "l1_grid",
    "median",
    "realize",
    "segment_point",
]
