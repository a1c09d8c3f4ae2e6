"""Chow rings of matroids: nested bases, Gröbner bases, colon ideals and
Koszul certificates."""

from .chow import ChowRing, augmented_chow_ring, chow_ring
from .lattice import Lattice, LatticeOfFlats
from .matroid import Matroid, boolean, from_spec, linear, uniform

__version__ = "0.1.0"

__all__ = ["ChowRing", "chow_ring", "augmented_chow_ring", "Lattice", "LatticeOfFlats",
           "Matroid", "boolean", "uniform", "linear", "from_spec"]
