"""Exact lattice polytope computations for root systems: diagonal splitting,
Ehrhart quasipolynomials, normality and Koszulness of polytopal semigroups."""

from .lattices import Lattice
from .polytope import Polytope, cayley_sum, from_inequalities, from_vertices, minkowski_sum
from .roots import RootSystem, make_root_system, parse_root_system

__version__ = "0.1.0"

__all__ = [
    "Lattice", "Polytope", "RootSystem", "cayley_sum", "from_inequalities", "from_vertices",
    "make_root_system", "minkowski_sum", "parse_root_system",
]
