"""Exact filtration calculus for homological systems over path algebras of quivers."""
from .gfmat import GF, Subspace

__version__ = "0.1.0"
