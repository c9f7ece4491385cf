"""Lattices in a rational ambient space, and residue classes of ``(1/q)M / M``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .exact import (
    determinant, dot, inverse, mat_mul, rank, rat, transpose, vec, vec_strs,
)


@dataclass(frozen=True)
class Lattice:
    """A lattice given by a basis (rows) in ``Q^ambient_dim``.

    A lattice of rank zero is allowed; it is the origin of its ambient space.
    """

    basis: tuple
    ambient_dim: int
    _gram_inv: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(vec(r) for r in self.basis)
        if any(len(r) != self.ambient_dim for r in rows):
            raise ValueError("basis vectors must have length ambient_dim")
        if rank(rows) != len(rows):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", rows)
        if rows:
            gram = mat_mul(rows, transpose(rows))
            object.__setattr__(self, "_gram_inv", tuple(map(tuple, inverse(gram))))

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_basis(cls, basis: Sequence[Sequence]) -> "Lattice":
        basis = [vec(b) for b in basis]
        if not basis:
            raise ValueError("use Lattice((), n) for a rank zero lattice")
        return cls(tuple(basis), len(basis[0]))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def point(self, coords: Sequence) -> tuple:
        """Ambient point with the given basis coordinates."""
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        out = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coords, self.basis):
            if c:
                for k, x in enumerate(b):
                    out[k] += c * x
        return tuple(out)

    def coords(self, u: Sequence) -> Optional[tuple]:
        """Basis coordinates of an ambient point, or ``None`` off the span."""
        u = vec(u)
        if len(u) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if not self.basis:
            return () if all(x == 0 for x in u) else None
        # least squares via the Gram matrix, then an exact consistency check
        g = [dot(b, u) for b in self.basis]
        c = tuple(sum((row[j] * g[j] for j in range(self.rank)), Fraction(0))
                  for row in self._gram_inv)
        return c if self.point(c) == u else None

    def contains(self, u: Sequence) -> bool:
        c = self.coords(u)
        return c is not None and all(x.denominator == 1 for x in c)

    def in_span(self, u: Sequence) -> bool:
        return self.coords(u) is not None

    def dual(self) -> "Lattice":
        """Dual lattice inside the linear span of this one."""
        if not self.basis:
            return self
        rows = mat_mul(self._gram_inv, self.basis)
        return Lattice(tuple(map(tuple, rows)), self.ambient_dim)

    def pairing_matrix(self, other: "Lattice") -> list[list[Fraction]]:
        return [[dot(b, c) for c in other.basis] for b in self.basis]

    def is_dual_to(self, other: "Lattice") -> bool:
        """True when the pairing of the two bases is an integral unimodular matrix."""
        if self.rank != other.rank or self.ambient_dim != other.ambient_dim:
            return False
        G = self.pairing_matrix(other)
        if any(x.denominator != 1 for row in G for x in row):
            return False
        return abs(determinant(G)) == 1

    def same_lattice(self, other: "Lattice") -> bool:
        if self.rank != other.rank or self.ambient_dim != other.ambient_dim:
            return False
        return all(other.contains(b) for b in self.basis) and all(
            self.contains(b) for b in other.basis)

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n1, n2 = self.ambient_dim, other.ambient_dim
        rows = [tuple(b) + (Fraction(0),) * n2 for b in self.basis]
        rows += [(Fraction(0),) * n1 + tuple(b) for b in other.basis]
        return Lattice(tuple(rows), n1 + n2)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [vec_strs(b) for b in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        try:
            n = int(data["ambient_dim"])
            basis = tuple(tuple(rat(x) for x in row) for row in data["basis"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed lattice: {exc}") from exc
        return cls(basis, n)


def dual_pairing(u: Sequence, v: Sequence) -> Fraction:
    """Ambient dot product of a point of ``M_R`` with a point of ``N``."""
    return Fraction(dot(vec(u), vec(v)))


@dataclass(frozen=True, order=True)
class ResidueClassIndex:
    q: int
    coordinates: tuple


def residue_classes(M: Lattice, q: int) -> Iterator[ResidueClassIndex]:
    """All ``q**rank`` classes of ``(1/q)M / M`` in M-basis coordinates."""
    if q < 2:
        raise ValueError("q must be at least 2")
    for c in product(range(q), repeat=M.rank):
        yield ResidueClassIndex(q, c)


def class_of(u: Sequence, M: Lattice, q: int) -> ResidueClassIndex:
    if q < 2:
        raise ValueError("q must be at least 2")
    c = M.coords([q * x for x in vec(u)])
    if c is None or any(x.denominator != 1 for x in c):
        raise ValueError(f"{vec_strs(u)} is not in (1/{q})M")
    return ResidueClassIndex(q, tuple(int(x) % q for x in c))
