"""Exact computations for edge ideals of graphs.

Covers the LSS ideal (x_i x_j + y_i y_j), the parity binomial edge ideal
(x_i x_j - y_i y_j), the permanental edge ideal (x_i y_j + x_j y_i) and
the binomial edge ideal (x_i y_j - x_j y_i).
"""
from __future__ import annotations

from .graph import Graph, parse_graph
from .poly import FieldSpec, Polynomial, PolyRing

__all__ = ["Graph", "parse_graph", "FieldSpec", "Polynomial", "PolyRing"]
__version__ = "0.1.0"
