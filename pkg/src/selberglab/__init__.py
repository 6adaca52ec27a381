"""Invariants of degree-2, conductor-1 functional equations."""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
