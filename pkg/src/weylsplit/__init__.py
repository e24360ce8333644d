"""Exact combinatorics of Weyl symmetric functions and splitting posets."""

from .cartan import DynkinDiagram, build_diagram

__all__ = ["DynkinDiagram", "build_diagram"]
__version__ = "0.1.0"
