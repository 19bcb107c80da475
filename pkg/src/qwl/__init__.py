"""Quantum walks on graphs, discrete-to-continuous limits, and the
Lie algebra of Hamiltonians reachable through them."""

from . import graphs, liealg, limits, linalg, walks
from .errors import QwlError

__all__ = ["graphs", "liealg", "limits", "linalg", "walks", "QwlError"]

__version__ = "0.1.0"
