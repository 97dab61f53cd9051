"""Lattices in PGL_2 over F_q(t) acting simply transitively on a product of two trees.

The package builds the VH-structure (A, B) of the arithmetic lattice Γ_τ,
its one-vertex square complex, finite presentations, the word problem, local
permutation groups, the isomorphism classification and a mass formula for
one-vertex VH complexes.
"""

from .gf import field_of_order, make_field
from .quaternion import make_config

__version__ = "0.1.0"

__all__ = ["field_of_order", "make_config", "make_field"]
