"""Exact Schubert calculus on fibered coadjoint orbits over the 2-sphere."""

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
