"""The concrete polytopes used throughout, plus random polytopes cut out by a root system."""

from __future__ import annotations

import random

from .lattices import Lattice
from .polytope import (
    Polytope, PolytopeError, from_inequalities, from_vertices, is_cut_out,
)
from .roots import RootSystem, make_root_system
from .splitting import splitting_polytope


def non_normal_simplex() -> Polytope:
    """conv{0, (1,0,0), (0,0,1), (1,2,1)} in Z^3: misses (1,1,1) in 2P."""
    return from_vertices([(0, 0, 0), (1, 0, 0), (0, 0, 1), (1, 2, 1)], Lattice.standard(3))


def non_normal_edges() -> tuple[Polytope, Polytope]:
    """The fibers of the non-normal simplex over heights 0 and 1, as edges in Z^2."""
    Z2 = Lattice.standard(2)
    return (from_vertices([(0, 0), (1, 0)], Z2, reduce_span=True),
            from_vertices([(0, 0), (1, 2)], Z2, reduce_span=True))


def g2_triangle() -> Polytope:
    """Hull of the images of e1, e2, e3 in Z^3/diagonal, via the G2 section."""
    rs = make_root_system("G2")
    return from_vertices([(1, 0, 0), (0, 1, 0), (-1, -1, 0)], rs.M, rs.N)


def g2_triangle_from_roots() -> Polytope:
    """The same triangle cut out by ``<u, v> <= 1`` over the roots ``e_i + e_j - 2e_k``."""
    rs = make_root_system("G2")
    ineqs = []
    for k in range(3):
        v = [1, 1, 1]
        v[k] = -2
        ineqs.append((tuple(-x for x in v), 1))
    return from_inequalities(ineqs, rs.M, rs.N)


def unit_square() -> Polytope:
    return from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)], Lattice.standard(2))


def unimodular_triangle() -> Polytope:
    return from_vertices([(0, 0), (1, 0), (0, 1)], Lattice.standard(2))


def f4_splitting() -> Polytope:
    rs = make_root_system("F4")
    return splitting_polytope(rs.roots, rs.M, rs.N).F


def random_cut_out_polytope(rs: RootSystem, rng: random.Random, max_offset: int = 2,
                            tries: int = 500) -> Polytope:
    """A random full-dimensional lattice polytope whose facet normals are roots.

    Each positive root ``v`` contributes ``-b <= <u, v> <= a`` with small random
    ``a, b >= 0`` (or is skipped); the draw is repeated until the result is a
    bounded, full-dimensional lattice polytope.
    """
    pos = list(rs.positive_roots)
    for _ in range(tries):
        ineqs = []
        for v in pos:
            if rng.random() < 0.3:
                continue
            a, b = rng.randint(0, max_offset), rng.randint(0, max_offset)
            neg = tuple(-x for x in v)
            ineqs += [(neg, a), (v, b)]
        try:
            P = from_inequalities(ineqs, rs.M, rs.N)
        except PolytopeError:
            continue
        if P.is_full_dimensional and P.is_lattice and is_cut_out(P, rs).cut_out:
            return P
    raise RuntimeError(f"no random polytope cut out by {rs.name} after {tries} draws")
