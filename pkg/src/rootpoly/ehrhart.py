"""Counting points of ``F ∩ (1/q)M`` and fitting Ehrhart quasipolynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Mapping, Optional, Sequence

from .exact import denominator_lcm, rat_str, solve_rational
from .polytope import Polytope, PolytopeError, dilate
from .roots import make_root_system
from .splitting import is_diagonally_split, splitting_polytope


class InterpolationError(ValueError):
    pass


def count(F: Polytope, q: int) -> int:
    """``#(F ∩ (1/q)M)``, i.e. the number of lattice points of ``qF``."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    return dilate(F, q).count_lattice_points()


def count_interior(F: Polytope, q: int) -> int:
    """Number of points of ``(1/q)M`` strictly inside ``F``."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    return dilate(F, q).count_lattice_points(strict=True)


def count_grid_scan(F: Polytope, q: int, strict: bool = False) -> int:
    """Reference count by scanning a fine ambient grid.

    ``M`` sits inside ``(1/D)Z^n``; every point of ``(1/(qD))Z^n`` in the
    ambient bounding box of ``F`` is tested for membership in ``(1/q)M`` and in
    ``F``.  Shares nothing with :func:`count` beyond the H-representation.
    """
    M = F.M
    D = denominator_lcm(x for b in M.basis for x in b)
    step = q * D
    n = F.ambient_dim
    ranges = []
    for k in range(n):
        lo = min(v[k] for v in F.vertices)
        hi = max(v[k] for v in F.vertices)
        ranges.append(range(math.floor(lo * step), math.ceil(hi * step) + 1))
    total = 0
    for ks in cartesian(*ranges):
        u = tuple(Fraction(k, step) for k in ks)
        if M.contains(tuple(q * x for x in u)) and F.contains(u, strict=strict):
            total += 1
    return total


@dataclass
class CountFunction:
    """Computed values of ``q -> #(F ∩ (1/q)M)``; ``f(0) = 1`` is a convention."""

    values: dict = field(default_factory=dict)
    conventions: tuple = (0,)

    def __getitem__(self, q: int) -> int:
        return self.values[q]


def count_function(F: Polytope, qs: Iterable[int]) -> CountFunction:
    values = {0: 1}
    for q in qs:
        if q > 0:
            values[q] = count(F, q)
    return CountFunction(dict(sorted(values.items())))


@dataclass(frozen=True)
class Quasipolynomial:
    """One polynomial per residue class mod ``period``; coefficients ascending."""

    period: int
    components: tuple

    @property
    def degree(self) -> int:
        return max(len(c) for c in self.components) - 1

    def component(self, q: int) -> tuple:
        return self.components[q % self.period]

    def __call__(self, q: int):
        return evaluate(self, q)

    def descending(self) -> list[list[Fraction]]:
        return [list(reversed(c)) for c in self.components]

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "components": [[rat_str(x) for x in reversed(c)] for c in self.components],
            "order": "descending powers; component r applies to q ≡ r (mod period)",
        }

    def __str__(self) -> str:
        parts = []
        for r, c in enumerate(self.components):
            terms = []
            for k in range(len(c) - 1, -1, -1):
                if c[k]:
                    terms.append(f"{rat_str(c[k])}*q^{k}" if k else rat_str(c[k]))
            parts.append(f"q≡{r}: " + (" + ".join(terms) or "0"))
        return "; ".join(parts)


def evaluate(Q: Quasipolynomial, q: int):
    """Value at any integer ``q`` (negative ``q`` uses the residue ``q mod period``)."""
    coeffs = Q.components[q % Q.period]
    val = Fraction(0)
    for c in reversed(coeffs):
        val = val * q + c
    return int(val) if val.denominator == 1 else val


def _interpolate(points: Sequence[tuple[int, int]], degree: int) -> tuple[Fraction, ...]:
    A = [[Fraction(x) ** k for k in range(degree + 1)] for x, _ in points]
    b = [Fraction(y) for _, y in points]
    c = solve_rational(A, b)
    if c is None:
        raise InterpolationError("sample points do not determine the polynomial")
    return c


def _fit_classes(data: Mapping[int, int], period: int, degree: int,
                 min_checks: int) -> Quasipolynomial:
    comps = []
    for r in range(period):
        pts = sorted(((q, v) for q, v in data.items() if q % period == r),
                     key=lambda t: (abs(t[0]), t[0]))
        if len(pts) < degree + 1 + min_checks:
            raise InterpolationError(
                f"residue class {r}: {len(pts)} samples, need {degree + 1 + min_checks}")
        fit_pts, check = pts[:degree + 1], pts[degree + 1:]
        coeffs = _interpolate(fit_pts, degree)
        for q, v in check:
            got = sum((c * Fraction(q) ** k for k, c in enumerate(coeffs)), Fraction(0))
            if got != v:
                raise InterpolationError(
                    f"held-out count at q={q} is {v} but the fit predicts {got}; "
                    "period or degree is wrong")
        comps.append(coeffs)
    return Quasipolynomial(period, tuple(comps))


def fit_quasipolynomial(F: Polytope, period_bound: Optional[int] = None,
                        degree: Optional[int] = None, held_out: int = 2,
                        counts: Optional[Mapping[int, int]] = None) -> Quasipolynomial:
    """Fit the Ehrhart quasipolynomial of ``F`` from counts at positive ``q``.

    Each residue class is interpolated through ``degree + 1`` samples and then
    checked against ``held_out`` further samples.  ``period_bound`` defaults to
    the least common denominator of the vertex coordinates in the M basis.
    """
    if not F.is_full_dimensional:
        raise PolytopeError("Ehrhart fitting needs a full-dimensional polytope")
    period = period_bound or F.vertex_denominators()
    degree = F.dim if degree is None else degree
    per_class = degree + 1 + held_out
    data = dict(counts or {})
    for r in range(period):
        start = r if r > 0 else period
        for j in range(per_class):
            q = start + j * period
            if q not in data:
                data[q] = count(F, q)
    data = {q: v for q, v in data.items() if q > 0}
    return _fit_classes(data, period, degree, held_out)


def has_unit_offsets(F: Polytope) -> bool:
    """Whether ``F`` is cut out by inequalities ``<u, v> <= 1`` alone."""
    return all(x == 0 for x in F.origin) and all(a == 1 for a in F._a)


def fit_with_reciprocity(values: Mapping[int, int], period: int, degree: int,
                         F: Optional[Polytope] = None) -> Quasipolynomial:
    """Fit from ``f(0), ..., f(K)`` together with ``f(-q) = f(q - 1)``.

    This replays the derivation for polytopes cut out by ``<u, v> <= 1``,
    where interior points of ``qF`` are exactly the points of ``(q-1)F``.
    When ``F`` is given that premise is checked.  ``values[0]`` is the
    ``f(0) = 1`` convention.
    """
    if F is not None and not has_unit_offsets(F):
        raise PolytopeError("reciprocity identity needs inequalities of the form <u,v> <= 1")
    data = dict(values)
    for q, v in values.items():
        if -(q + 1) not in data:
            data[-(q + 1)] = v
    # every residue class must be determined; surplus points act as checks
    per_class = min(sum(1 for q in data if q % period == r) for r in range(period))
    return _fit_classes(data, period, degree, max(0, per_class - degree - 1))


def check_reciprocity(F: Polytope, Q: Quasipolynomial, qs: Iterable[int]):
    """Compare ``(-1)^dim Q(-q)`` with the interior count of ``F`` at each ``q``.

    The sign is trivial in even dimension (the F4 case).  Returns
    ``(ok, failures)`` with failures as ``(q, (-1)^dim Q(-q), interior count)``.
    """
    sign = -1 if F.dim % 2 else 1
    failures = []
    for q in qs:
        lhs = sign * evaluate(Q, -q)
        rhs = count_interior(F, q)
        if lhs != rhs:
            failures.append((q, lhs, rhs))
    return not failures, failures


def f4_splitting_polytope() -> Polytope:
    rs = make_root_system("F4")
    return splitting_polytope(rs.roots, rs.M, rs.N).F


@dataclass
class NotSplitRow:
    q: int
    interior_by_quasipolynomial: int
    bound: int
    missing_classes: int

    @property
    def ok(self) -> bool:
        return self.interior_by_quasipolynomial < self.bound and self.missing_classes > 0


def verify_F4_not_split(qs: Iterable[int], Q: Optional[Quasipolynomial] = None):
    """For each ``q``: ``Q(-q) < q^4`` and a direct class scan finds gaps.

    Returns ``(ok, rows)``.
    """
    F = f4_splitting_polytope()
    if Q is None:
        Q = fit_quasipolynomial(F)
    rows = []
    for q in qs:
        if q < 2:
            raise ValueError("q must be at least 2")
        report = is_diagonally_split(F, q)
        rows.append(NotSplitRow(q, evaluate(Q, -q), q ** 4, len(report.missing)))
    return all(r.ok for r in rows), rows
