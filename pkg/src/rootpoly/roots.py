"""Root systems of types A, B, C, D, F4, G2 and their products.

Every system is built in one fixed coordinate model: roots are explicit
ambient vectors, ``N`` is the lattice they span and ``M`` its dual under the
ambient dot product.  For G2 the dual is the quotient of ``Z^3`` by the
diagonal, represented by the section ``{(a, b, 0)}``; this is well defined
because every element of ``N`` has coordinate sum zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Sequence

from .exact import dot, vec, vec_strs
from .lattices import Lattice

FAMILIES = ("A", "B", "C", "D", "F4", "G2")

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RootSystem:
    name: str
    rank: int
    roots: tuple
    N: Lattice
    M: Lattice
    factors: tuple = ()

    @property
    def ambient_dim(self) -> int:
        return self.N.ambient_dim

    def pairing(self, u: Sequence, v: Sequence) -> Fraction:
        return Fraction(dot(vec(u), vec(v)))

    @property
    def positive_roots(self) -> tuple:
        """One root from each pair ``{v, -v}`` (the lexicographically larger)."""
        return tuple(v for v in self.roots if v > tuple(-x for x in v))

    def summary(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "root_count": len(self.roots),
            "roots": [vec_strs(v) for v in self.roots],
            "N": self.N.to_json(),
            "M": self.M.to_json(),
        }


def _e(n: int, i: int, c=1) -> list:
    v = [0] * n
    v[i] = c
    return v


def _signed_pairs(n: int, pm_second: bool) -> list[tuple]:
    """Vectors ``+-e_j +- e_k`` (j < k); only ``e_j - e_k`` forms if not pm_second."""
    out = []
    for j, k in combinations(range(n), 2):
        signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)] if pm_second else [(1, -1), (-1, 1)]
        for s, t in signs:
            v = [0] * n
            v[j], v[k] = s, t
            out.append(tuple(v))
    return out


def _even_sum(n: int) -> Lattice:
    rows = [_e(n, 0, 2)] + [[1] + _e(n, i)[1:] for i in range(1, n)]
    return Lattice.from_basis(rows)


def _roots_tuple(vs) -> tuple:
    return tuple(sorted({vec(v) for v in vs}))


def make_root_system(family: str, n: int | None = None) -> RootSystem:
    """Root system of the given family and rank in the fixed coordinate model.

    ``family`` is one of ``A B C D F4 G2``; ``F4`` and ``G2`` fix their own rank.
    """
    family = family.upper()
    if family in ("F4", "G2"):
        fixed = int(family[1])
        if n is not None and n != fixed:
            raise ValueError(f"{family} has rank {fixed}, not {n}")
        n = fixed
    if family not in FAMILIES:
        raise ValueError(f"unknown root system family {family!r}")
    if n is None or n < 1:
        raise ValueError(f"invalid rank {n!r} for type {family}")

    if family == "A":
        roots = [tuple(_e(n, i, s)) for i in range(n) for s in (1, -1)]
        roots += _signed_pairs(n, pm_second=False)
        N = M = Lattice.standard(n)
    elif family == "B":
        roots = [tuple(_e(n, i, s)) for i in range(n) for s in (1, -1)]
        roots += _signed_pairs(n, pm_second=True)
        N = M = Lattice.standard(n)
    elif family in ("C", "D"):
        if family == "D" and n < 2:
            raise ValueError("type D needs rank at least 2")
        roots = _signed_pairs(n, pm_second=True)
        if family == "C":
            roots += [tuple(_e(n, i, s)) for i in range(n) for s in (2, -2)]
        N = _even_sum(n)
        M = Lattice.from_basis([[_HALF] * n] + [_e(n, i) for i in range(1, n)])
    elif family == "F4":
        roots = [tuple(_e(4, i, s)) for i in range(4) for s in (1, -1)]
        roots += _signed_pairs(4, pm_second=True)
        roots += [tuple(s * _HALF for s in signs) for signs in cartesian((1, -1), repeat=4)]
        N = Lattice.from_basis([[_HALF] * 4] + [_e(4, i) for i in range(1, 4)])
        M = _even_sum(4)
    else:  # G2
        roots = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            for a, b in ((i, j), (j, i)):
                v = [0, 0, 0]
                v[a], v[b] = 1, -1
                roots.append(tuple(v))
        for k in range(3):
            v = [1, 1, 1]
            v[k] = -2
            roots += [tuple(v), tuple(-x for x in v)]
        N = Lattice.from_basis([[1, -1, 0], [0, 1, -1]])
        M = Lattice.from_basis([[1, 0, 0], [0, 1, 0]])

    name = family if family in ("F4", "G2") else f"{family}{n}"
    rs = RootSystem(name, n, _roots_tuple(roots), N, M, (name,))
    _check(rs)
    return rs


def _check(rs: RootSystem) -> None:
    neg = {tuple(-x for x in v) for v in rs.roots}
    if neg != set(rs.roots):
        raise AssertionError(f"{rs.name}: roots not closed under negation")
    for v in rs.roots:
        if not rs.N.contains(v):
            raise AssertionError(f"{rs.name}: root {v} not in N")
        if any(dot(b, v).denominator != 1 for b in rs.M.basis):
            raise AssertionError(f"{rs.name}: root {v} not integral on M")
    if not rs.M.is_dual_to(rs.N):
        raise AssertionError(f"{rs.name}: M is not dual to N")


def product(systems: Sequence[RootSystem]) -> RootSystem:
    """Orthogonal direct sum of root systems, each in its own coordinate block."""
    systems = list(systems)
    if not systems:
        raise ValueError("product of an empty list")
    if len(systems) == 1:
        return systems[0]
    roots = []
    offset = 0
    total = sum(s.ambient_dim for s in systems)
    for s in systems:
        for v in s.roots:
            w = [Fraction(0)] * total
            w[offset:offset + s.ambient_dim] = v
            roots.append(tuple(w))
        offset += s.ambient_dim
    N, M = systems[0].N, systems[0].M
    for s in systems[1:]:
        N, M = N.direct_sum(s.N), M.direct_sum(s.M)
    factors = tuple(f for s in systems for f in s.factors)
    rs = RootSystem("x".join(factors), sum(s.rank for s in systems),
                    _roots_tuple(roots), N, M, factors)
    _check(rs)
    return rs


_TOKEN = re.compile(r"^(F4|G2|[ABCD])(\d+)?$")


def parse_root_system(spec: str) -> RootSystem:
    """Parse ``"A3"``, ``"F4"``, ``"G2"`` or products such as ``"A2xB2"``."""
    parts = [p.strip() for p in spec.strip().split("x")]
    systems = []
    for part in parts:
        m = _TOKEN.match(part.upper())
        if not m:
            raise ValueError(f"cannot parse root system {part!r} in {spec!r}")
        family, n = m.group(1), m.group(2)
        if family in ("F4", "G2"):
            if n is not None:
                raise ValueError(f"cannot parse root system {part!r}")
            systems.append(make_root_system(family))
        else:
            if n is None:
                raise ValueError(f"type {family} needs a rank, e.g. {family}2")
            systems.append(make_root_system(family, int(n)))
    return product(systems)


def factor_systems(rs: RootSystem) -> list[RootSystem]:
    return [parse_root_system(f) for f in rs.factors]
