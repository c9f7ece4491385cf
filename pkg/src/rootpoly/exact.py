"""Exact integer and rational linear algebra.

Scalars are Python ``int`` and :class:`fractions.Fraction`.  Vectors are tuples,
matrices are sequences of row tuples.  Nothing in this package touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

Rat = Fraction
Vec = tuple
Mat = Sequence[Sequence]


def rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x) -> str:
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> tuple:
    return tuple(rat(x) for x in xs)


def vec_strs(v: Iterable) -> list[str]:
    return [rat_str(x) for x in v]


def as_int(x) -> int:
    x = rat(x)
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def denominator_lcm(xs: Iterable) -> int:
    return reduce(lcm, (rat(x).denominator for x in xs), 1)


def vec_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def normalize_integer(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of a rational vector that is a primitive integer vector."""
    d = denominator_lcm(v)
    w = [int(x * d) for x in v]
    g = vec_gcd(w)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in w)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Mat, B: Mat) -> list[list]:
    if not A:
        return []
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise ValueError("incompatible shapes")
    cols = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), 0) for j in range(cols)]
            for i in range(len(A))]


def transpose(A: Mat, ncols: Optional[int] = None) -> list[list]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def rank(A: Mat) -> int:
    return len(row_echelon(A)[1])


def row_echelon(A: Mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, and the pivot columns."""
    R = [[rat(x) for x in row] for row in A]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def solve_rational(A: Mat, b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Exact solution of ``A x = b``, or ``None``.

    ``None`` is returned when ``A`` does not have full column rank (no unique
    solution) or when the system is inconsistent.
    """
    if len(A) != len(b):
        raise ValueError("row count of A and length of b differ")
    if not A:
        return None
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_echelon(aug)
    if n in pivots:
        return None
    if len(pivots) < n:
        return None
    return tuple(R[i][n] for i in range(n))


def nullspace(A: Mat, ncols: Optional[int] = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of ``A`` over Q."""
    n = len(A[0]) if A else ncols
    if n is None:
        raise ValueError("ncols required for an empty matrix")
    R, pivots = row_echelon(A) if A else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(tuple(x))
    return basis


def determinant(A: Mat):
    """Bareiss fraction-free determinant (exact for int or Fraction entries)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num / prev if isinstance(num, Fraction) else num // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse(A: Mat) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(map(rat, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


# -- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    D: tuple
    U: tuple
    V: tuple

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.V))))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(A: Mat, ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form of an integer matrix by elementary row/column moves.

    The pivot is always the entry of least nonzero absolute value in the
    remaining block.  ``ncols`` is only needed for a matrix with zero rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    return SmithForm(tuple(map(tuple, D)), tuple(map(tuple, U)), tuple(map(tuple, V)))


def is_smith_form(D: Mat) -> bool:
    diag = []
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j and x:
                return False
            if i == j:
                diag.append(x)
    nz = [d for d in diag if d]
    if any(d < 0 for d in diag) or diag[:len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def invariant_factors(A: Mat, ncols: Optional[int] = None) -> tuple[int, ...]:
    return smith_normal_form(A, ncols).invariant_factors


# -- lattice helpers ---------------------------------------------------------

def primitive(v: Sequence, lattice) -> tuple[Fraction, ...]:
    """Shortest lattice point on the ray through a nonzero lattice vector ``v``."""
    v = vec(v)
    if all(x == 0 for x in v):
        raise ValueError("the zero vector spans no ray")
    c = lattice.coords(v)
    if c is None or any(x.denominator != 1 for x in c):
        raise ValueError(f"{vec_strs(v)} is not in the lattice")
    g = vec_gcd(int(x) for x in c)
    return lattice.point([x / g for x in c])


def saturation_basis(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of ``Z^n`` intersected with the rational row span of ``rows``.

    If ``U A V = D`` then the first ``r`` rows of ``V^{-1}`` span the
    saturation, and they extend to a unimodular matrix.
    """
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not rows:
        return []
    snf = smith_normal_form(rows)
    r = len(snf.invariant_factors)
    Vinv = inverse(snf.V)
    return [tuple(int(x) for x in Vinv[i]) for i in range(r)]
