from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import assume, given, settings, strategies as st

from rootpoly.exact import vec_gcd
from rootpoly.fixtures import (
    g2_triangle, g2_triangle_from_roots, non_normal_edges, non_normal_simplex,
    unimodular_triangle, unit_square,
)
from rootpoly.lattices import Lattice
from rootpoly.polytope import (
    EmptyPolytopeError, LowerDimensionalError, PolytopeError, UnboundedError,
    cayley_projection_fibers, cayley_sum, dilate, face, faces, from_inequalities,
    from_vertices, is_cut_out, lattice_isomorphic, minkowski_sum,
)
from rootpoly.roots import make_root_system
from rootpoly.splitting import splitting_polytope

Z1, Z2, Z3 = (Lattice.standard(n) for n in (1, 2, 3))
H = Fraction(1, 2)


def monotone_chain(points):
    """Counter-clockwise hull vertices of a planar point set (reference method)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def in_polygon(hull, p):
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < 0:
            return False
    return True


planar_points = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                         min_size=3, max_size=9)


@settings(max_examples=120, deadline=None)
@given(planar_points)
def test_hull_matches_monotone_chain(points):
    hull = monotone_chain(points)
    assume(len(hull) >= 3)
    P = from_vertices(points, Z2)
    assert sorted(P.vertices) == sorted(hull)
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    brute = [p for p in cartesian(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1))
             if in_polygon(hull, p)]
    assert P.lattice_points() == sorted(brute)
    # round trip through the H-representation, with both vertex enumerations
    ineqs = [(i.normal, i.offset) for i in P.inequalities]
    for method in ("walk", "exhaustive"):
        assert from_inequalities(ineqs, Z2, method=method).vertices == P.vertices


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)),
                min_size=4, max_size=8))
def test_walk_agrees_with_exhaustive_in_3d(points):
    try:
        P = from_vertices(points, Z3)
    except LowerDimensionalError:
        assume(False)
    ineqs = [(i.normal, i.offset) for i in P.inequalities]
    walk = from_inequalities(ineqs, Z3, method="walk")
    exh = from_inequalities(ineqs, Z3, method="exhaustive")
    assert walk.vertices == exh.vertices == P.vertices
    # every input point satisfies every facet inequality, every facet has >= 3 vertices
    for p in points:
        assert P.contains(p)
    assert all(len(f) >= 3 for f in P.facet_vertex_indices())


def test_unit_square():
    P = unit_square()
    assert len(P.vertices) == 4
    normals = sorted(tuple(i.normal) for i in P.inequalities)
    assert normals == sorted([(1, 0), (-1, 0), (0, 1), (0, -1)])
    Q = from_inequalities([((1, 0), 0), ((0, 1), 0), ((-1, 0), 1), ((0, -1), 1)], Z2)
    assert Q.vertices == P.vertices
    assert P.count_lattice_points() == 4


def test_non_normal_simplex_shape():
    P = non_normal_simplex()
    assert len(P.vertices) == 4 and len(P.inequalities) == 4
    assert (1, 1, 1) in dilate(P, 2).lattice_points()
    assert P.count_lattice_points() == 4


def test_g2_triangle():
    P = g2_triangle()
    pts = P.lattice_points()
    assert len(pts) == 4
    assert (0, 0, 0) in pts and (0, 0, 0) not in P.vertices
    assert g2_triangle_from_roots().vertices == P.vertices


def test_inequality_normals_are_primitive_in_N():
    rs = make_root_system("C", 2)
    P = from_vertices([(0, 0), (1, 0), (H, H)], rs.M, rs.N)
    for ineq in P.inequalities:
        assert rs.N.contains(ineq.normal)
        c = rs.N.coords(ineq.normal)
        assert vec_gcd(int(x) for x in c) == 1


def test_unbounded_and_empty():
    with pytest.raises(UnboundedError):
        from_inequalities([((1,), 0)], Z1)
    with pytest.raises(UnboundedError):
        from_inequalities([((1,), 0)], Z1, method="exhaustive")
    with pytest.raises(EmptyPolytopeError):
        from_inequalities([((1,), -2), ((-1,), 1)], Z1)
    with pytest.raises(EmptyPolytopeError):
        from_inequalities([((1, 0), -2), ((-1, 0), 1)], Z2)
    with pytest.raises(LowerDimensionalError):
        from_vertices([(0, 0), (1, 1)], Z2)
    with pytest.raises(PolytopeError):
        from_inequalities([((H, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)], Z2)


def test_dilate():
    I = from_vertices([(0,), (1,)], Z1)
    assert dilate(I, 3).vertices == ((0,), (3,))
    S = unimodular_triangle()
    assert dilate(S, 1).vertices == S.vertices
    with pytest.raises(ValueError):
        dilate(S, 0)
    rs = make_root_system("F4")
    F = splitting_polytope(rs.roots, rs.M, rs.N).F
    assert not F.is_lattice and dilate(F, 2).is_lattice


def test_minkowski_sums():
    e1 = from_vertices([(0, 0), (1, 0)], Z2, reduce_span=True)
    e2 = from_vertices([(0, 0), (0, 1)], Z2, reduce_span=True)
    assert minkowski_sum(e1, e2).vertices == unit_square().vertices
    pt = from_vertices([(2, 3)], Z2, reduce_span=True)
    S = unimodular_triangle()
    assert minkowski_sum(S, pt).vertices == tuple(sorted((x + 2, y + 3) for x, y in S.vertices))
    E0, E1 = non_normal_edges()
    par = minkowski_sum(E0, E1)
    assert set(par.vertices) == {(0, 0), (1, 0), (1, 2), (2, 2)}
    assert minkowski_sum(E1, E0).vertices == par.vertices


def test_cayley_sums():
    E0, E1 = non_normal_edges()
    C = cayley_sum(E0, E1)
    assert C.dim == 3
    assert cayley_projection_fibers(C, 2) == [sorted(E0.vertices), sorted(E1.vertices)]
    assert lattice_isomorphic(C, non_normal_simplex())
    S = unimodular_triangle()
    assert lattice_isomorphic(cayley_sum(S), S)
    pt = from_vertices([(0,)], Z1, reduce_span=True)
    seg = cayley_sum(pt, pt)
    assert seg.dim == 1 and seg.count_lattice_points() == 2


def test_lattice_isomorphism_negative():
    wide = from_vertices([(0, 0), (2, 0), (0, 1)], Z2)
    assert not lattice_isomorphic(wide, unimodular_triangle())
    assert lattice_isomorphic(from_vertices([(0, 0), (1, 0), (1, 1)], Z2), unimodular_triangle())


def test_cut_out():
    A2 = make_root_system("A", 2)
    assert is_cut_out(unit_square(), A2).cut_out
    rep = is_cut_out(unimodular_triangle(), A2)
    assert not rep.cut_out
    assert [r for _, r in rep.witnesses].count(None) == 1
    assert is_cut_out(g2_triangle(), make_root_system("G2")).cut_out
    with pytest.raises(PolytopeError):
        is_cut_out(unit_square(), make_root_system("A", 3))


def test_faces():
    P = unit_square()
    fs = faces(P)
    assert sorted(len(f) for f in fs) == [1, 1, 1, 1, 2, 2, 2, 2]
    fv = P.facet_vertex_indices()
    edge = face(P, [0])
    assert edge.dim == 1 and edge.count_lattice_points() == 2
    adjacent = next(k for k in range(1, 4) if fv[0] & fv[k])
    opposite = next(k for k in range(1, 4) if not fv[0] & fv[k])
    assert face(P, [0, adjacent]).dim == 0
    with pytest.raises(EmptyPolytopeError):
        face(P, [0, opposite])


def test_height_zero_face_of_simplex():
    P = non_normal_simplex()
    E0, _ = non_normal_edges()
    fv = P.facet_vertex_indices()
    idx = next(f for f in faces(P)
               if len(f) == 2 and all(P.vertices[i][2] == 0 for i in f))
    Fc = face(P, [k for k, f in enumerate(fv) if idx <= f])
    flat = from_vertices([p[:2] for p in Fc.vertices], Z2, reduce_span=True)
    assert Fc.dim == 1 and flat.vertices == E0.vertices


def test_polytope_json_fields():
    data = unit_square().to_json()
    assert data["vertices"] == [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]
    assert {tuple(i["normal"]) for i in data["inequalities"]} == {
        ("1", "0"), ("-1", "0"), ("0", "1"), ("0", "-1")}
