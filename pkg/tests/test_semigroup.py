from itertools import combinations_with_replacement

import networkx as nx
import pytest

from rootpoly.fixtures import (
    f4_splitting, g2_triangle, non_normal_edges, non_normal_simplex, unimodular_triangle, unit_square,
)
from rootpoly.homology import boundary_squared_is_zero, reduced_homology
from rootpoly.lattices import Lattice
from rootpoly.polytope import PolytopeError, dilate, from_vertices
from rootpoly.semigroup import (
    FiberCapExceeded, GradedSemigroup, build_semigroup, check_CM_over_Z, check_cm_complex,
    check_face_heredity, check_koszul_up_to, check_normality, check_quadratic_generation,
    fiber, interval, interval_homology, order_complex, sumset_brute_force,
)

Z1 = Lattice.standard(1)


def test_levels_against_brute_force_sumsets():
    for P in (unit_square(), non_normal_simplex(), g2_triangle(), unimodular_triangle()):
        S = build_semigroup(P, 3)
        for m in (1, 2, 3):
            assert S.levels[m] == sumset_brute_force(S.generators, m)
            assert S.levels[m] <= S.saturation(m)


def test_level_sizes():
    S = build_semigroup(unit_square(), 2)
    assert len(S.levels[2]) == len(S.saturation(2)) == 9
    S = build_semigroup(non_normal_simplex(), 2)
    assert (len(S.levels[2]), len(S.saturation(2))) == (10, 11)
    missing = [S.ambient(x, 2) for x in S.saturation(2) - S.levels[2]]
    assert missing == [(1, 1, 1)]
    S = build_semigroup(g2_triangle(), 3)
    assert S.levels[3] == S.saturation(3)


def test_normality_verdicts():
    v = check_normality(non_normal_simplex(), 2)
    assert not v.normal and v.degree == 2 and v.witness == (1, 1, 1)
    assert "(1,1,1)" in v.verdict
    assert check_normality(unit_square(), 4).normal
    v = check_normality(g2_triangle(), 4)
    assert v.normal and v.verdict == "normal up to degree 4"
    with pytest.raises(ValueError):
        check_normality(unit_square(), 1)


def test_rational_polytope_rejected():
    with pytest.raises(PolytopeError):
        GradedSemigroup(f4_splitting())


def brute_fiber_graph(gens, x, m):
    """Fiber graph built from all multisets directly (reference method)."""
    nodes = [c for c in combinations_with_replacement(range(len(gens)), m)
             if tuple(map(sum, zip(*(gens[i] for i in c)))) == x]
    G = nx.Graph()
    G.add_nodes_from(nodes)
    for a in nodes:
        for b in nodes:
            # a and b share all but two elements
            ra, rb = list(a), list(b)
            for t in a:
                if t in rb:
                    rb.remove(t)
                    ra.remove(t)
            if len(ra) == 2:
                G.add_edge(a, b)
    return G


@pytest.mark.parametrize("P", [unit_square(), g2_triangle(), dilate(unimodular_triangle(), 2)],
                         ids=["square", "g2", "2simplex"])
def test_fiber_connectivity_against_graph_oracle(P):
    S = build_semigroup(P, 3)
    v = check_quadratic_generation(P, 3, S=S)
    connected = all(nx.is_connected(brute_fiber_graph(S.generators, x, 3))
                    for x in S.levels[3])
    assert v.quadratic == connected
    for x in S.levels[3]:
        assert len(fiber(S, x, 3)) == brute_fiber_graph(S.generators, x, 3).number_of_nodes()


def test_quadratic_generation():
    v = check_quadratic_generation(g2_triangle(), 3)
    assert not v.quadratic and v.degree == 3 and v.witness == (0, 0, 0)
    assert len(v.components) == 2
    assert sorted(len(c) for c in v.components) == [1, 1]
    assert check_quadratic_generation(unimodular_triangle(), 4).quadratic
    assert check_quadratic_generation(unit_square(), 4).quadratic


def test_fiber_cap():
    P = dilate(unit_square(), 2)
    S = build_semigroup(P, 3)
    x = max(S.levels[3], key=lambda y: len(fiber(S, y, 3)))
    with pytest.raises(FiberCapExceeded):
        fiber(S, x, 3, cap=2)


def test_intervals_small():
    seg = from_vertices([(0,), (1,)], Z1)
    S = build_semigroup(seg, 2)
    g = (1,)
    I = interval(S, g, 1)
    assert len(I.elements) == 2 and I.open_part() == []
    H = interval_homology(I)
    assert H.betti(-1) == 1 and H.nonzero_degrees() == [-1]
    chain = interval(S, (2,), 2)
    assert [S.ambient(y, k) for y, k in chain.elements] == [(0,), (1,), (2,)]
    assert interval_homology(chain).nonzero_degrees() == []
    # x = 0 + 1 in degree 2: two incomparable atoms
    atoms = interval(S, (1,), 2)
    assert len(atoms.open_part()) == 2
    H2 = interval_homology(atoms)
    assert H2.nonzero_degrees() == [0] and H2.describe(0) == "Z"
    assert check_CM_over_Z(atoms).cm
    with pytest.raises(ValueError):
        interval(S, (3,), 2)


def test_barycenter_interval_is_disconnected():
    P = g2_triangle()
    S = build_semigroup(P, 3)
    I = interval(S, (0, 0), 3)
    H = interval_homology(I)
    # a hexagon v1 < v1+v2 > v2 < ... and the separate chain c < 2c
    assert H.face_counts == {-1: 1, 0: 8, 1: 7}
    assert H.nonzero_degrees() == [0, 1]
    assert H.describe(0) == "Z" and H.describe(1) == "Z"
    assert H.euler_from_faces() == H.euler_from_homology()


def test_koszul():
    v = check_koszul_up_to(g2_triangle(), 4)
    assert not v.koszul and (v.i, v.j) == (2, 3)
    assert v.witness == (0, 0, 0, 3) and v.group == "Z"
    assert check_koszul_up_to(unimodular_triangle(), 4).koszul
    assert check_koszul_up_to(unit_square(), 4).koszul


def test_koszul_implies_quadratic_on_fixtures():
    for P in (unit_square(), unimodular_triangle(), g2_triangle(), dilate(unimodular_triangle(), 2)):
        if check_koszul_up_to(P, 3).koszul:
            assert check_quadratic_generation(P, 3).quadratic


def test_homology_of_small_complexes():
    circle = [(0, 1), (1, 2), (0, 2), (0,), (1,), (2,)]
    H = reduced_homology(circle)
    assert H.nonzero_degrees() == [1] and H.betti(1) == 1
    assert boundary_squared_is_zero(circle)
    two_points = reduced_homology([(0,), (1,)])
    assert two_points.describe(0) == "Z"
    # projective plane, 6-vertex triangulation: H1 = Z/2
    rp2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (2, 3, 5),
           (1, 3, 4), (1, 3, 5), (2, 4, 5)]
    faces = {tuple(sorted(s)) for f in rp2 for k in (1, 2, 3)
             for s in combinations_with_replacement(f, k) if len(set(s)) == k}
    H = reduced_homology(faces)
    assert H.torsion(1) == (2,) and H.betti(1) == 0 and H.is_zero(2)
    assert H.euler_from_faces() == H.euler_from_homology()


def test_cm_checks():
    assert check_cm_complex([(0, 1), (1, 2), (0,), (1,), (2,)]).cm
    assert check_cm_complex([(0,), (1,)]).cm
    v = check_cm_complex([(0, 1), (2,), (0,), (1,)])
    assert not v.cm and not v.pure and v.face == (2,)
    # pure but not CM: two triangles sharing a vertex
    bowtie = [(0, 1, 2), (0, 3, 4)]
    faces = {s for f in bowtie for k in (1, 2, 3) for s in combinations_with_replacement(f, k)
             if len(set(s)) == k}
    v = check_cm_complex(faces)
    assert not v.cm and v.pure and v.face == (0,)
    S = build_semigroup(unit_square(), 2)
    I = interval(S, max(S.levels[2]), 2)
    assert check_CM_over_Z(I).cm


def test_order_complex_full_interval_is_a_cone():
    S = build_semigroup(g2_triangle(), 3)
    I = interval(S, (0, 0), 3)
    full = interval_homology(I, proper=False)
    assert full.nonzero_degrees() == []
    assert len(order_complex(I, proper=False)) > len(order_complex(I))


def test_face_heredity():
    rep = check_face_heredity(unit_square(), "normality", 3)
    assert rep.ok and rep.polytope_passes and all(ok for _, _, ok in rep.face_results)
    rep = check_face_heredity(non_normal_simplex(), "normality", 2)
    assert rep.ok and not rep.polytope_passes
    edges = [ok for idx, dim, ok in rep.face_results if dim == 1]
    assert all(edges)
    rep = check_face_heredity(g2_triangle(), "koszul", 3)
    assert rep.ok and not rep.polytope_passes and all(ok for _, _, ok in rep.face_results)
    with pytest.raises(ValueError):
        check_face_heredity(unit_square(), "gorenstein")


def test_edges_of_example_are_normal():
    for E in non_normal_edges():
        assert check_normality(E, 3).normal
