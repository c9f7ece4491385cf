from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from rootpoly.exact import (
    determinant, inverse, is_smith_form, mat_mul, nullspace, normalize_integer, primitive,
    rank, rat, rat_str, saturation_basis, smith_normal_form, solve_rational,
)
from rootpoly.lattices import Lattice


def determinantal_divisors(A):
    """d_k = gcd of all k x k minors; the invariant factors are d_k / d_{k-1}."""
    m, n = len(A), len(A[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(determinant([[A[i][j] for j in cols] for i in rows])))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


small_int = st.integers(min_value=-6, max_value=6)
matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_invariants(A):
    s = smith_normal_form(A)
    assert [list(r) for r in mat_mul(mat_mul(s.U, A), s.V)] == [list(r) for r in s.D]
    assert abs(determinant(s.U)) == 1 and abs(determinant(s.V)) == 1
    assert is_smith_form(s.D)
    assert s.invariant_factors == determinantal_divisors(A)


def test_smith_known_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)
    assert smith_normal_form([[0, 0], [0, 0]]).invariant_factors == ()
    assert smith_normal_form([[6]]).diagonal == (6,)
    # the boundary of a triangle edge complex has all invariant factors 1
    assert smith_normal_form([[-1, -1, 0], [1, 0, -1], [0, 1, 1]]).invariant_factors == (1, 1)


def test_rational_strings_round_trip():
    for s in ("0", "3", "-7/2", "1/3"):
        assert rat_str(rat(s)) == s
    assert rat_str(Fraction(4, 2)) == "2"
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        rat(True)


def test_solve_and_nullspace():
    A = [[1, 2], [3, 4]]
    x = solve_rational(A, [5, 6])
    assert x == (Fraction(-4), Fraction(9, 2))
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None
    assert solve_rational([[1, 1]], [1]) is None
    N = nullspace([[1, 1, 1]])
    assert len(N) == 2 and all(sum(v) == 0 for v in N)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(small_int, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_matches_determinant(A):
    if determinant(A) == 0:
        assert rank(A) < 3
        return
    Ainv = inverse(A)
    assert mat_mul(A, Ainv) == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert determinant(Ainv) == Fraction(1, 1) / determinant(A)


def test_bareiss_against_cofactor_expansion():
    def cofactor(A):
        if len(A) == 1:
            return A[0][0]
        return sum((-1) ** j * A[0][j] * cofactor([r[:j] + r[j + 1:] for r in A[1:]])
                   for j in range(len(A)))

    A = [[2, -1, 0, 3], [1, 4, 2, -2], [0, 5, -3, 1], [7, 0, 1, 1]]
    assert determinant(A) == cofactor(A)
    B = [[Fraction(1, 2), 1], [Fraction(1, 3), 2]]
    assert determinant(B) == Fraction(2, 3)


def test_primitive_vectors():
    assert normalize_integer([Fraction(1, 2), Fraction(-1, 3)]) == (3, -2)
    assert normalize_integer([4, 6]) == (2, 3)
    Z2 = Lattice.standard(2)
    assert primitive((4, 6), Z2) == (2, 3)
    even = Lattice.from_basis([[2, 0], [1, 1]])
    assert primitive((4, 0), even) == (2, 0)
    with pytest.raises(ValueError):
        primitive((1, 0), even)


def test_saturation_basis():
    sat = saturation_basis([[2, 4, 0]], 3)
    assert len(sat) == 1 and tuple(abs(x) for x in sat[0]) == (1, 2, 0)
    sat = saturation_basis([[1, 1, 0], [1, -1, 0]], 3)
    L = Lattice.from_basis(sat)
    assert L.contains((1, 0, 0)) and L.contains((0, 1, 0)) and not L.in_span((0, 0, 1))
