"""Exact topological, motivic and Cartier-divisor series of plumbing graphs."""
from __future__ import annotations

from .graph import GraphClass, ResolutionGraph, Vertex, classify, load_graph, parse_graph
from .lattice import LatticeContext, build_context
from .motivic import L, MotivicPoly
from .series import TruncatedSeries
from .zeta import SLOTS, SeriesBundle, build_bundle

__version__ = "0.1.0"

__all__ = [
    "GraphClass",
    "L",
    "LatticeContext",
    "MotivicPoly",
    "ResolutionGraph",
    "SLOTS",
    "SeriesBundle",
    "TruncatedSeries",
    "Vertex",
    "build_bundle",
    "build_context",
    "classify",
    "load_graph",
    "parse_graph",
]
