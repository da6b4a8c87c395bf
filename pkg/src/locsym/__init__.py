"""Exact workbench for 9-dimensional local symmetric algebras over GF(3^k)."""

from .field import FieldElement, FieldSpec, GF
from .algebra import AlgebraTable, StructuralReport, analyze, build
from .families import FamilySpec, build_B, build_F2, build_F3

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "GF",
    "AlgebraTable",
    "StructuralReport",
    "analyze",
    "build",
    "FamilySpec",
    "build_B",
    "build_F2",
    "build_F3",
]
