"""Exact rational polytopes in ``M_R`` with facet normals in ``N``.

A :class:`Polytope` always computes in the integer coordinates of a *frame*:
a saturated sublattice of ``M`` spanning the polytope's affine hull, placed at
a lattice-point ``origin``.  Full-dimensional polytopes use ``frame = M`` and
``origin = 0``.  Lower-dimensional ones (faces, Cayley sums) get a smaller
frame, so everything downstream sees a full-dimensional polytope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .exact import (
    add, determinant, dot, inverse, nullspace, normalize_integer, rank, rat,
    row_echelon, saturation_basis, scale, solve_rational, sub, vec, vec_gcd, vec_strs,
)
from .lattices import Lattice


class PolytopeError(ValueError):
    pass


class UnboundedError(PolytopeError):
    pass


class EmptyPolytopeError(PolytopeError):
    pass


class LowerDimensionalError(PolytopeError):
    pass


@dataclass(frozen=True)
class Inequality:
    """``<u - origin, normal> + offset >= 0``; ``origin`` is the owning polytope's."""

    normal: tuple
    offset: Fraction

    def to_json(self) -> dict:
        return {"normal": vec_strs(self.normal), "offset": vec_strs([self.offset])[0]}


def _affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def _hyperplane_normal(points: Sequence[Sequence], d: int) -> Optional[tuple[int, ...]]:
    """Primitive integer normal of the hyperplane through ``d`` points in ``Q^d``."""
    rows = [sub(p, points[0]) for p in points[1:]]
    w = []
    for k in range(d):
        minor = [r[:k] + r[k + 1:] for r in rows]
        w.append((-1) ** k * determinant(minor))
    if all(x == 0 for x in w):
        return None
    return normalize_integer(w)


def _hull_facets(points: Sequence[tuple], d: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facets ``w.c + a >= 0`` of a full-dimensional point set, by exhaustive d-subsets."""
    if d == 0:
        return []
    if d == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return [((1,), -lo), ((-1,), hi)]
    found = set()
    for combo in combinations(points, d):
        w = _hyperplane_normal(combo, d)
        if w is None:
            continue
        a = -dot(w, combo[0])
        vals = [dot(w, p) + a for p in points]
        if all(v >= 0 for v in vals):
            found.add((w, Fraction(a)))
        elif all(v <= 0 for v in vals):
            found.add((tuple(-x for x in w), Fraction(-a)))
    return sorted(found)


def _extreme_points(points: Sequence[tuple], facets, d: int) -> list[tuple]:
    out = []
    for p in points:
        tight = [w for w, a in facets if dot(w, p) + a == 0]
        if d == 0 or (tight and rank(tight) == d):
            out.append(p)
    return out


def _feasible(W, a, c, strict=False) -> bool:
    if strict:
        return all(dot(w, c) + b > 0 for w, b in zip(W, a))
    return all(dot(w, c) + b >= 0 for w, b in zip(W, a))


def vertices_exhaustive(W, a, d: int) -> list[tuple]:
    """Vertices of ``{c : W c + a >= 0}`` from every rank-sized subset of rows.

    Reference method: slow but obviously correct.  Boundedness is not checked.
    """
    out = set()
    for S in combinations(range(len(W)), d):
        c = solve_rational([W[i] for i in S], [-a[i] for i in S])
        if c is not None and _feasible(W, a, c):
            out.add(c)
    return sorted(out)


def recession_rays(W, d: int) -> list[tuple[int, ...]]:
    """Extreme rays of the cone ``{r : W r >= 0}`` (empty iff the region is bounded)."""
    rays = set()
    for S in combinations(range(len(W)), d - 1):
        ns = nullspace([W[i] for i in S], d) if S else nullspace([], d)
        if len(ns) != 1:
            continue
        r = normalize_integer(ns[0])
        for sgn in (1, -1):
            rr = tuple(sgn * x for x in r)
            if all(dot(w, rr) >= 0 for w in W):
                rays.add(rr)
    return sorted(rays)


def _first_vertex(W, a, d: int) -> Optional[tuple]:
    for S in combinations(range(len(W)), d):
        c = solve_rational([W[i] for i in S], [-a[i] for i in S])
        if c is not None and _feasible(W, a, c):
            return c
    return None


def vertices_by_edge_walk(W, a, d: int) -> list[tuple]:
    """Vertices of a pointed region ``{c : W c + a >= 0}`` by walking its edge graph.

    From each vertex every feasible direction cut out by ``d - 1`` tight rows is
    an edge; the ratio test finds the next vertex.  Raises
    :class:`UnboundedError` on an unbounded edge and
    :class:`EmptyPolytopeError` if there is no vertex at all.
    """
    start = _first_vertex(W, a, d)
    if start is None:
        raise EmptyPolytopeError("inequalities have no common solution")
    seen = {start}
    stack = [start]
    m = len(W)
    while stack:
        v = stack.pop()
        slack = [dot(W[i], v) + a[i] for i in range(m)]
        tight = [i for i in range(m) if slack[i] == 0]
        directions = set()
        for S in combinations(tight, d - 1):
            ns = nullspace([W[i] for i in S], d) if S else nullspace([], d)
            if len(ns) != 1:
                continue
            r = normalize_integer(ns[0])
            for sgn in (1, -1):
                rr = tuple(sgn * x for x in r)
                if rr in directions:
                    continue
                if all(dot(W[i], rr) >= 0 for i in tight):
                    directions.add(rr)
        for rr in sorted(directions):
            step = None
            for i in range(m):
                wr = dot(W[i], rr)
                if wr < 0:
                    t = Fraction(slack[i]) / -wr
                    if step is None or t < step:
                        step = t
            if step is None:
                raise UnboundedError("region is unbounded")
            u = tuple(x + step * y for x, y in zip(v, rr))
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return sorted(seen)


class Polytope:
    """A bounded polytope with irredundant H- and V-representations.

    Use :func:`from_vertices` or :func:`from_inequalities` to build one.
    """

    def __init__(self, M: Lattice, N: Lattice, frame: Lattice, frame_dual: Lattice,
                 origin: tuple, vcoords: Sequence[tuple], facets):
        self.M = M
        self.N = N
        self.frame = frame
        self.frame_dual = frame_dual
        self.origin = tuple(origin)
        self.dim = frame.rank
        pts = [(self._ambient(c), c) for c in vcoords]
        pts.sort()
        self.vertices = tuple(p for p, _ in pts)
        self._V = tuple(c for _, c in pts)
        self._W = tuple(w for w, _ in facets)
        self._a = tuple(Fraction(x) for _, x in facets)
        G = frame.pairing_matrix(frame_dual) if self.dim else []
        self._Ginv = inverse(G) if self.dim else []

    # -- coordinates --------------------------------------------------------

    def _ambient(self, c: Sequence) -> tuple:
        return add(self.origin, self.frame.point(c)) if self.dim else self.origin

    def _coords(self, u: Sequence) -> Optional[tuple]:
        return self.frame.coords(sub(vec(u), self.origin))

    def _normal_ambient(self, w: Sequence[int]) -> tuple:
        c = [sum((row[j] * w[j] for j in range(self.dim)), Fraction(0)) for row in self._Ginv]
        return self.frame_dual.point(c)

    def dual_coords(self, v: Sequence) -> tuple:
        """Coordinates ``<b_k, v>`` of a dual vector against the frame basis."""
        return tuple(dot(b, vec(v)) for b in self.frame.basis)

    # -- basic properties -----------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return self.M.ambient_dim

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.M.rank

    @property
    def inequalities(self) -> tuple[Inequality, ...]:
        return tuple(Inequality(self._normal_ambient(w), a) for w, a in zip(self._W, self._a))

    @property
    def is_lattice(self) -> bool:
        return all(self.M.contains(v) for v in self.vertices)

    def contains(self, u: Sequence, strict: bool = False) -> bool:
        c = self._coords(u)
        return c is not None and _feasible(self._W, self._a, c, strict)

    def facet_vertex_indices(self) -> list[frozenset[int]]:
        return [frozenset(i for i, c in enumerate(self._V) if dot(w, c) + a == 0)
                for w, a in zip(self._W, self._a)]

    def vertex_denominators(self) -> int:
        """Least common denominator of all vertex coordinates in the frame basis."""
        return math.lcm(*(x.denominator for c in self._V for x in c)) if self._V else 1

    def __repr__(self) -> str:
        kind = "lattice" if self.is_lattice else "rational"
        return (f"<{self.dim}-dimensional {kind} polytope with {len(self.vertices)} vertices "
                f"and {len(self._W)} facets in Q^{self.ambient_dim}>")

    def same_vertices(self, other: "Polytope") -> bool:
        return self.vertices == other.vertices

    # -- lattice points -----------------------------------------------------------

    def lattice_coords(self, strict: bool = False) -> list[tuple[int, ...]]:
        """Integer frame coordinates of all lattice points (``strict``: interior only)."""
        if self.dim == 0:
            return [()] if not strict else []
        return _scan_box(self._W, self._a, self._V, strict)

    def lattice_points(self, strict: bool = False) -> list[tuple]:
        return sorted(self._ambient(c) for c in self.lattice_coords(strict))

    def count_lattice_points(self, strict: bool = False) -> int:
        return len(self.lattice_coords(strict))

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "lattice": self.M.to_json(),
            "dual": self.N.to_json(),
            "dim": self.dim,
            "vertices": [vec_strs(v) for v in self.vertices],
            "origin": vec_strs(self.origin),
            "inequalities": [i.to_json() for i in self.inequalities],
        }


def _scan_box(W, a, V, strict: bool) -> list[tuple[int, ...]]:
    """Integer points of ``{W c + a >= 0}`` inside the bounding box of ``V``.

    Coordinates are fixed one at a time; a prefix is abandoned as soon as some
    inequality cannot be satisfied anywhere in the rest of the box, and the
    last coordinate's range is solved for directly.
    """
    d = len(V[0])
    lo = [math.floor(min(c[k] for c in V)) for k in range(d)]
    hi = [math.ceil(max(c[k] for c in V)) for k in range(d)]
    rows = []
    for w, b in zip(W, a):
        den = Fraction(b).denominator
        rows.append(([x * den for x in w], Fraction(b).numerator))
    # best[i][k]: largest possible value of sum_{j >= k} w_ij c_j over the box
    best = []
    for w, _ in rows:
        acc = [0] * (d + 1)
        for k in range(d - 1, -1, -1):
            acc[k] = acc[k + 1] + max(w[k] * lo[k], w[k] * hi[k])
        best.append(acc)
    need = 1 if strict else 0
    out: list[tuple[int, ...]] = []
    prefix = [0] * d

    def rec(k: int, partial: list[int]) -> None:
        if k == d - 1:
            low, high = lo[k], hi[k]
            for (w, _), p in zip(rows, partial):
                c = w[k]
                if c > 0:
                    # c*x + p >= need
                    low = max(low, -((p - need) // c))
                elif c < 0:
                    high = min(high, (p - need) // (-c))
                elif p < need:
                    return
            for x in range(low, high + 1):
                prefix[k] = x
                out.append(tuple(prefix))
            return
        for x in range(lo[k], hi[k] + 1):
            nxt = [p + w[k] * x for (w, _), p in zip(rows, partial)]
            if any(p + b[k + 1] < need for p, b in zip(nxt, best)):
                continue
            prefix[k] = x
            rec(k + 1, nxt)

    rec(0, [b for _, b in rows])
    return out


# -- constructors ---------------------------------------------------------------

def _default_dual(M: Lattice, N: Optional[Lattice]) -> Lattice:
    if N is None:
        return M.dual()
    if not M.is_dual_to(N):
        raise PolytopeError("N is not the dual lattice of M")
    return N


def _sort_key(p):
    return tuple(p)


def from_vertices(points: Iterable[Sequence], M: Lattice, N: Optional[Lattice] = None,
                  reduce_span: bool = False) -> Polytope:
    """Convex hull of finitely many rational points of ``M_R``.

    A point set that does not span ``M_R`` raises :class:`LowerDimensionalError`
    unless ``reduce_span`` is set, in which case the hull is expressed in the
    lattice ``M`` intersected with its affine span, based at the
    lexicographically smallest vertex (which must then be a lattice point).
    """
    pts = sorted({vec(p) for p in points}, key=_sort_key)
    if not pts:
        raise PolytopeError("empty point set")
    N = _default_dual(M, N)
    coords = []
    for p in pts:
        if len(p) != M.ambient_dim:
            raise PolytopeError(f"point {vec_strs(p)} has wrong dimension")
        c = M.coords(p)
        if c is None:
            raise PolytopeError(f"point {vec_strs(p)} is not in the span of M")
        coords.append(c)
    k = _affine_rank(coords)
    if k == M.rank:
        frame, frame_dual, origin = M, N, (Fraction(0),) * M.ambient_dim
        local = coords
    else:
        if not reduce_span:
            raise LowerDimensionalError(
                f"points span a {k}-dimensional affine space inside rank {M.rank}")
        base = pts[0]
        if not M.contains(base):
            raise PolytopeError("cannot reduce a lower-dimensional polytope whose "
                                "base vertex is not a lattice point")
        diffs = [normalize_integer(sub(c, coords[0])) for c in coords[1:]
                 if any(x != y for x, y in zip(c, coords[0]))]
        sat = saturation_basis(diffs, M.rank)
        if sat:
            frame = Lattice(tuple(M.point(s) for s in sat), M.ambient_dim)
        else:
            frame = Lattice((), M.ambient_dim)
        frame_dual = frame.dual()
        origin = base
        local = [frame.coords(sub(p, base)) for p in pts]
    d = frame.rank
    facets = _hull_facets(local, d)
    verts = _extreme_points(local, facets, d)
    return Polytope(M, N, frame, frame_dual, origin, verts, facets)


def from_inequalities(ineqs: Iterable, M: Lattice, N: Optional[Lattice] = None,
                      method: str = "walk") -> Polytope:
    """Polytope ``{u : <u, v> + a >= 0}`` for pairs ``(v, a)`` with ``v`` in ``N``.

    ``method`` selects the vertex enumeration: ``"walk"`` (edge graph
    traversal) or ``"exhaustive"`` (all rank-sized subsets of inequalities).
    """
    N = _default_dual(M, N)
    d = M.rank
    W, a = [], []
    for item in ineqs:
        if isinstance(item, Inequality):
            v, off = item.normal, item.offset
        else:
            v, off = item
        v, off = vec(v), rat(off)
        w = [dot(b, v) for b in M.basis]
        if any(x.denominator != 1 for x in w):
            raise PolytopeError(f"normal {vec_strs(v)} is not in N")
        w = [int(x) for x in w]
        g = vec_gcd(w)
        if g == 0:
            raise PolytopeError("zero normal vector")
        W.append(tuple(x // g for x in w))
        a.append(off / g)
    pairs = sorted(set(zip(W, a)))
    W = [w for w, _ in pairs]
    a = [x for _, x in pairs]
    if not W or rank(W) < d:
        _raise_unbounded_or_empty(W, a, d)
    if method == "walk":
        verts = vertices_by_edge_walk(W, a, d)
    elif method == "exhaustive":
        verts = vertices_exhaustive(W, a, d)
        if not verts:
            raise EmptyPolytopeError("inequalities have no common solution")
        if recession_rays(W, d):
            raise UnboundedError("region is unbounded")
    else:
        raise ValueError(f"unknown vertex enumeration method {method!r}")
    if _affine_rank(verts) < d:
        return from_vertices([M.point(c) for c in verts], M, N, reduce_span=True)
    facets = []
    for w, off in pairs:
        tight = [c for c in verts if dot(w, c) + off == 0]
        if _affine_rank(tight) == d - 1:
            facets.append((w, off))
    return Polytope(M, N, M, N, (Fraction(0),) * M.ambient_dim, verts, facets)


def _raise_unbounded_or_empty(W, a, d: int):
    """Normals do not span: decide emptiness on the span of the normals."""
    if not W:
        raise UnboundedError("no inequalities: the whole space")
    basis = [normalize_integer(r) for r in _row_space_basis(W)]
    k = len(basis)
    reduced = [tuple(dot(w, r) for r in basis) for w in W]
    if _first_vertex(reduced, a, k) is None:
        raise EmptyPolytopeError("inequalities have no common solution")
    raise UnboundedError(f"normals span only a rank {k} subspace of rank {d}")


def _row_space_basis(W):
    R, piv = row_echelon(W)
    return [tuple(R[i]) for i in range(len(piv))]


def dilate(P: Polytope, m: int) -> Polytope:
    """``m * P`` for a positive integer ``m``."""
    if not isinstance(m, int) or m <= 0:
        raise ValueError("dilation factor must be a positive integer")
    return Polytope(P.M, P.N, P.frame, P.frame_dual, scale(m, P.origin),
                    [scale(m, c) for c in P._V],
                    [(w, m * off) for w, off in zip(P._W, P._a)])


def lattice_points(P: Polytope) -> list[tuple]:
    return P.lattice_points()


def _check_same_lattice(polys: Sequence[Polytope]) -> None:
    if not polys:
        raise PolytopeError("need at least one polytope")
    M = polys[0].M
    for Q in polys[1:]:
        if not (Q.M is M or Q.M.same_lattice(M)):
            raise PolytopeError("polytopes live in different lattices")


def minkowski_sum(*polys: Polytope) -> Polytope:
    """Hull of all sums of one vertex from each summand."""
    _check_same_lattice(polys)
    sums = {tuple(Fraction(0) for _ in range(polys[0].ambient_dim))}
    for Q in polys:
        sums = {add(s, v) for s in sums for v in Q.vertices}
    P0 = polys[0]
    return from_vertices(sums, P0.M, P0.N, reduce_span=True)


def cayley_sum(*polys: Polytope) -> Polytope:
    """Hull of ``P_i x {e_i}`` in ``M x Z^r``, in its own affine-span lattice."""
    _check_same_lattice(polys)
    r = len(polys)
    n = polys[0].ambient_dim
    pts = []
    for i, Q in enumerate(polys):
        e = tuple(Fraction(int(j == i)) for j in range(r))
        pts += [tuple(v) + e for v in Q.vertices]
    M = polys[0].M.direct_sum(Lattice.standard(r))
    N = polys[0].N.direct_sum(Lattice.standard(r))
    C = from_vertices(pts, M, N, reduce_span=True)
    for i, Q in enumerate(polys):
        fiber = sorted(v[:n] for v in C.vertices if v[n + i] == 1)
        if fiber != sorted(Q.vertices):
            raise AssertionError("Cayley sum fiber does not match its summand")
    return C


def cayley_projection_fibers(C: Polytope, r: int) -> list[list[tuple]]:
    """Vertices of a Cayley sum grouped by which unit vector they project to."""
    n = C.ambient_dim - r
    return [sorted(v[:n] for v in C.vertices if v[n + i] == 1) for i in range(r)]


@dataclass(frozen=True)
class CutOutReport:
    cut_out: bool
    witnesses: tuple  # per facet: (ambient normal, root or None)


def is_cut_out(P: Polytope, rs) -> CutOutReport:
    """Whether every facet normal ray of ``P`` contains a root of ``rs``."""
    if not P.is_full_dimensional:
        raise PolytopeError("cut-out test needs a full-dimensional polytope")
    if P.ambient_dim != rs.M.ambient_dim or not P.M.same_lattice(rs.M):
        raise PolytopeError("polytope does not live in the root system's M")
    root_rays = {}
    for r in rs.roots:
        w = normalize_integer(P.dual_coords(r))
        root_rays.setdefault(w, r)
    witnesses = []
    ok = True
    for w, ineq in zip(P._W, P.inequalities):
        root = root_rays.get(tuple(w))
        ok &= root is not None
        witnesses.append((ineq.normal, root))
    return CutOutReport(ok, tuple(witnesses))


def face(P: Polytope, tight_facets: Iterable[int]) -> Polytope:
    """The face where the given facet inequalities are tight, in its own lattice."""
    idx = set(range(len(P._V)))
    fv = P.facet_vertex_indices()
    for i in tight_facets:
        idx &= fv[i]
    if not idx:
        raise EmptyPolytopeError("the chosen facets have no common vertex")
    return from_vertices([P.vertices[i] for i in sorted(idx)], P.M, P.N, reduce_span=True)


def faces(P: Polytope, include_self: bool = False) -> list[frozenset[int]]:
    """Vertex-index sets of all nonempty proper faces (optionally ``P`` itself)."""
    full = frozenset(range(len(P._V)))
    fv = P.facet_vertex_indices()
    found = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for F in frontier:
            for f in fv:
                G = F & f
                if G and G not in found:
                    found.add(G)
                    nxt.append(G)
        frontier = nxt
    if not include_self:
        found.discard(full)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def face_from_vertex_indices(P: Polytope, idx: Iterable[int]) -> Polytope:
    return from_vertices([P.vertices[i] for i in sorted(idx)], P.M, P.N, reduce_span=True)


def lattice_isomorphic(P: Polytope, Q: Polytope) -> bool:
    """Whether an affine automorphism of the frames maps ``P`` onto ``Q``."""
    if P.dim != Q.dim or len(P._V) != len(Q._V):
        return False
    d = P.dim
    if d == 0:
        return True
    VP, VQ = list(P._V), list(Q._V)
    # an affine basis among the vertices of P
    basis_idx = None
    for combo in combinations(range(len(VP)), d + 1):
        if _affine_rank([VP[i] for i in combo]) == d:
            basis_idx = combo
            break
    p0 = VP[basis_idx[0]]
    Pd = [sub(VP[i], p0) for i in basis_idx[1:]]  # rows
    Pinv = inverse(Pd)
    target = set(VQ)
    for combo in permutations(range(len(VQ)), d + 1):
        q0 = VQ[combo[0]]
        Qd = [sub(VQ[j], q0) for j in combo[1:]]
        # rows: A p_k = q_k  ->  A^T = Pd^{-1} Qd
        At = [[sum((Pinv[i][k] * Qd[k][j] for k in range(d)), Fraction(0))
               for j in range(d)] for i in range(d)]
        if any(x.denominator != 1 for row in At for x in row):
            continue
        if abs(determinant(At)) != 1:
            continue
        t = sub(q0, [sum((At[k][j] * p0[k] for k in range(d)), Fraction(0)) for j in range(d)])
        if any(x.denominator != 1 for x in t):
            continue
        image = {tuple(sum((At[k][j] * v[k] for k in range(d)), Fraction(0)) + t[j]
                       for j in range(d)) for v in VP}
        if image == target:
            return True
    return False
