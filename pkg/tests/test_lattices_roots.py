from fractions import Fraction

import pytest

from rootpoly.exact import primitive, smith_normal_form, solve_rational
from rootpoly.lattices import (
    Lattice, ResidueClassIndex, class_of, dual_pairing, residue_classes,
)
from rootpoly.roots import make_root_system, parse_root_system, product

H = Fraction(1, 2)


def test_spec_style_small_cases():
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == (1, 1)
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[0, 0]] * 3).invariant_factors == ()
    assert solve_rational([[2, 0], [0, 3]], [1, 1]) == (H, Fraction(1, 3))
    assert primitive((2, 4), Lattice.standard(2)) == (1, 2)
    even = Lattice.from_basis([[2, 0], [1, 1]])
    assert primitive((2, 2), even) == (1, 1)
    sum_zero = Lattice.from_basis([[1, -1, 0], [0, 1, -1]])
    assert primitive((3, 3, -6), sum_zero) == (1, 1, -2)
    for k in (1, 2, 5):
        assert primitive((3 * k, 3 * k, -6 * k), sum_zero) == (1, 1, -2)


@pytest.mark.parametrize("spec,count", [
    ("A1", 2), ("A2", 6), ("A3", 12), ("B2", 8), ("B3", 18), ("C2", 8), ("C3", 18),
    ("D2", 4), ("D3", 12), ("F4", 48), ("G2", 12), ("A2xB2", 14), ("A1xA1", 4),
])
def test_root_counts(spec, count):
    rs = parse_root_system(spec)
    assert len(rs.roots) == count
    assert rs.M.is_dual_to(rs.N)
    assert all(rs.N.contains(v) for v in rs.roots)


def test_a2_roots_explicit():
    rs = make_root_system("A", 2)
    assert set(rs.roots) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}


def test_f4_root_shapes():
    rs = make_root_system("F4")
    kinds = {"unit": 0, "pair": 0, "half": 0}
    for v in rs.roots:
        if any(x.denominator == 2 for x in v):
            kinds["half"] += 1
        elif sum(1 for x in v if x) == 1:
            kinds["unit"] += 1
        else:
            kinds["pair"] += 1
    assert kinds == {"unit": 8, "pair": 24, "half": 16}
    # M is the even-sum sublattice of Z^4
    assert rs.M.contains((1, 1, 0, 0)) and not rs.M.contains((1, 0, 0, 0))
    assert rs.N.contains((H, H, H, H))


def test_g2_model():
    rs = make_root_system("G2")
    assert all(sum(v) == 0 for v in rs.roots)
    assert (1, 1, -2) in rs.roots and (1, -1, 0) in rs.roots
    # the section is well defined: roots pair equally with u and u + (1,1,1)
    for v in rs.roots:
        assert dual_pairing((1, 0, 0), v) == dual_pairing((2, 1, 1), v)


def test_c_and_d_lattices():
    for fam in ("C", "D"):
        rs = make_root_system(fam, 3)
        assert rs.M.contains((H, H, H))
        assert rs.N.contains((1, 1, 0)) and not rs.N.contains((1, 0, 0))
    assert (2, 0, 0) in make_root_system("C", 3).roots
    assert (1, 0, 0) not in make_root_system("D", 3).roots


def test_product_blocks():
    a1 = make_root_system("A", 1)
    assert product([a1]) is a1
    rs = product([make_root_system("A", 2), make_root_system("B", 2)])
    assert rs.rank == 4 and len(rs.roots) == 14
    assert rs.factors == ("A2", "B2")


@pytest.mark.parametrize("bad", ["Q9", "A", "F4x", "G3", "D1", "A0", ""])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_root_system(bad)


def test_dual_pairing_examples():
    assert dual_pairing((1, 0), (1, 0)) == 1
    assert dual_pairing((H, H), (1, -1)) == 0
    assert dual_pairing((1, 1, 0, 0), (H, H, H, H)) == 1


def test_residue_classes():
    Z2 = Lattice.standard(2)
    assert len(list(residue_classes(Z2, 2))) == 4
    C2 = make_root_system("C", 2)
    assert len(list(residue_classes(C2.M, 3))) == 9
    assert class_of((Fraction(1, 3), Fraction(2, 3)), Z2, 3) == ResidueClassIndex(3, (1, 2))
    with pytest.raises(ValueError):
        list(residue_classes(Z2, 1))
    with pytest.raises(ValueError):
        class_of((Fraction(1, 2), 0), Z2, 3)


def test_lattice_json_round_trip_and_dual():
    rs = make_root_system("C", 3)
    for L in (rs.M, rs.N):
        again = Lattice.from_json(L.to_json())
        assert again.same_lattice(L)
        assert L.dual().dual().same_lattice(L)
    assert rs.M.dual().same_lattice(rs.N)


def test_lattice_rejects_dependent_basis():
    with pytest.raises(ValueError):
        Lattice.from_basis([[1, 2], [2, 4]])
    L = Lattice.from_basis([[1, 1, 0]])
    assert L.coords((2, 2, 0)) == (2,)
    assert L.coords((1, 0, 0)) is None
