"""Moduli algebras, Yau algebras and morphism groupoids of the simple elliptic
singularities E6, E7, E8 in exact arithmetic."""
from __future__ import annotations

from .scalar import I, ONE, RHO, ZERO, ZETA, Cyclo, MoebiusMap, RatFunc
from .wpoly import E6, E7, E8, FamilyDef, WPoly, family, parse_wpoly

__all__ = [
    "Cyclo",
    "RatFunc",
    "MoebiusMap",
    "WPoly",
    "FamilyDef",
    "E6",
    "E7",
    "E8",
    "family",
    "parse_wpoly",
    "ZERO",
    "ONE",
    "ZETA",
    "RHO",
    "I",
]

__version__ = "0.1.0"
