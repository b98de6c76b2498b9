"""Minimal forts of trees and forests: enumeration, oracles, surveys and formula checks."""

from .graph import Graph, VertexSet, from_edge_list
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "Graph", "VertexSet", "from_edge_list", "__version__"]
