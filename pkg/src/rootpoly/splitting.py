"""Diagonal splitting polytopes and per-q splitting decisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

from .exact import dot, normalize_integer, rank, solve_rational, vec, vec_strs
from .lattices import Lattice, ResidueClassIndex, class_of
from .polytope import Polytope, PolytopeError, UnboundedError, dilate, from_inequalities
from .roots import RootSystem, factor_systems, make_root_system


@dataclass(frozen=True)
class SplittingPolytope:
    normals: tuple          # ambient N vectors, one per normal line
    F: Polytope
    M: Lattice
    N: Lattice


@dataclass
class SplitReport:
    q: int
    covered: int
    total: int
    missing: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def split(self) -> bool:
        return self.covered == self.total

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "split": self.split,
            "covered": self.covered,
            "total": self.total,
            "missing": [list(c.coordinates) for c in self.missing],
            "witnesses": {",".join(map(str, k.coordinates)): vec_strs(u)
                          for k, u in sorted(self.witnesses.items())},
        }


def _line_key(w: Sequence[int]) -> tuple[int, ...]:
    w = normalize_integer(w)
    neg = tuple(-x for x in w)
    return max(w, neg)


def splitting_polytope(source, M: Optional[Lattice] = None,
                       N: Optional[Lattice] = None) -> SplittingPolytope:
    """``{u : -1 <= <u, v> <= 1}`` over the primitive facet normals ``v``.

    ``source`` is a full-dimensional :class:`Polytope` or an iterable of
    normal vectors in ``N``; normals are made primitive and deduplicated up
    to sign.
    """
    if isinstance(source, Polytope):
        if not source.is_full_dimensional:
            raise PolytopeError("splitting polytope needs a full-dimensional polytope")
        M, N = source.M, source.N
        normals = [i.normal for i in source.inequalities]
    else:
        if M is None:
            raise ValueError("lattice M required when passing bare normals")
        N = N if N is not None else M.dual()
        normals = [vec(v) for v in source]
    G = M.pairing_matrix(N)
    lines = {}
    for v in normals:
        w = [dot(b, v) for b in M.basis]
        if any(x.denominator != 1 for x in w) or not any(w):
            raise PolytopeError(f"normal {vec_strs(v)} is not a nonzero element of N")
        key = _line_key([int(x) for x in w])
        if key not in lines:
            c = solve_rational(G, list(key))
            lines[key] = N.point(c)
    if not lines:
        raise UnboundedError("no normals: splitting polytope is the whole space")
    prims = tuple(lines[k] for k in sorted(lines))
    ineqs = []
    for v in prims:
        ineqs.append((v, 1))
        ineqs.append((tuple(-x for x in v), 1))
    try:
        F = from_inequalities(ineqs, M, N)
    except UnboundedError as exc:
        raise UnboundedError("facet normals do not span; splitting polytope is unbounded") from exc
    return SplittingPolytope(prims, F, M, N)


def interior_points(F: Polytope, q: int) -> list[tuple]:
    """Points of ``(1/q)M`` strictly inside ``F`` (ambient coordinates, sorted)."""
    pts = dilate(F, q).lattice_points(strict=True)
    return [tuple(x / q for x in p) for p in pts]


def is_diagonally_split(SP: SplittingPolytope | Polytope, q: int) -> SplitReport:
    """Exhaustively decide whether ``int F`` meets every class of ``(1/q)M / M``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    F = SP.F if isinstance(SP, SplittingPolytope) else SP
    M = F.M
    if not F.is_full_dimensional:
        raise PolytopeError("splitting polytope must be full-dimensional")
    # interior points of qF in M-basis coordinates; the class is the residue mod q
    coords = dilate(F, q).lattice_coords(strict=True)
    witnesses: dict[ResidueClassIndex, tuple] = {}
    for c in coords:
        u = tuple(x / q for x in M.point(c))
        key = ResidueClassIndex(q, tuple(x % q for x in c))
        if key not in witnesses or u < witnesses[key]:
            witnesses[key] = u
    total = q ** M.rank
    missing = [ResidueClassIndex(q, c) for c in cartesian(range(q), repeat=M.rank)
               if ResidueClassIndex(q, c) not in witnesses]
    return SplitReport(q, len(witnesses), total, missing, witnesses)


def _interior(F: Polytope, u) -> bool:
    return F.contains(u, strict=True)


def _covers(points: Iterable[tuple], M: Lattice, q: int) -> bool:
    classes = {class_of(u, M, q) for u in points}
    return len(classes) == q ** M.rank


def _spanning(normals, M: Lattice) -> bool:
    return rank([[dot(b, v) for b in M.basis] for v in normals]) == M.rank


def verify_type_A(n: int, q: int, normals: Optional[Sequence] = None) -> bool:
    """Splitting of an A_n polytope, plus the half-open unit cube mechanism.

    ``normals`` defaults to all roots; it must be a spanning subset of them.
    """
    rs = make_root_system("A", n)
    normals = list(rs.roots) if normals is None else [vec(v) for v in normals]
    if not set(normals) <= set(rs.roots) or not _spanning(normals, rs.M):
        raise ValueError("normals must be a spanning subset of the A_n roots")
    SP = splitting_polytope(normals, rs.M, rs.N)
    report = is_diagonally_split(SP, q)
    cube = [tuple(Fraction(k, q) for k in ks) for ks in cartesian(range(q), repeat=n)]
    mechanism = all(_interior(SP.F, u) for u in cube) and _covers(cube, rs.M, q)
    return report.split and mechanism


def verify_type_BCD(family: str, n: int, q: int, normals: Optional[Sequence] = None) -> bool:
    """Splitting of a B/C/D polytope for odd ``q``, with the small-cube representatives.

    The representatives are the points of ``(1/q)Z^n`` whose coordinates have
    absolute value below one half; they must lie in the interior and meet
    every class of ``(1/q)M / M``.
    """
    family = family.upper()
    if family not in ("B", "C", "D"):
        raise ValueError("family must be B, C or D")
    if q < 3 or q % 2 == 0:
        raise ValueError("this verifier only covers odd q >= 3")
    rs = make_root_system(family, n)
    normals = list(rs.roots) if normals is None else [vec(v) for v in normals]
    if not set(normals) <= set(rs.roots) or not _spanning(normals, rs.M):
        raise ValueError("normals must be a spanning subset of the roots")
    SP = splitting_polytope(normals, rs.M, rs.N)
    report = is_diagonally_split(SP, q)
    h = (q - 1) // 2
    reps = [tuple(Fraction(k, q) for k in ks) for ks in cartesian(range(-h, h + 1), repeat=n)]
    mechanism = all(_interior(SP.F, u) for u in reps) and _covers(reps, rs.M, q)
    if family == "B":
        # the closed cube [-1/2, 1/2]^n lies in F
        corners = [tuple(Fraction(s, 2) for s in signs) for signs in cartesian((1, -1), repeat=n)]
        mechanism &= all(SP.F.contains(c) for c in corners)
    return report.split and mechanism


def verify_mixed(rs: RootSystem, q: int) -> bool:
    """Splitting for a product of classical systems, with the product containment.

    Checks that every vertex of ``F_1 x ... x F_s`` (per-factor splitting
    polytopes) satisfies the inequalities of the splitting polytope of the
    whole system, and that the whole system is split for ``q``.
    """
    factors = factor_systems(rs)
    for f in factors:
        if f.name[0] not in "ABCD" or f.name in ("F4", "G2"):
            raise ValueError(f"factor {f.name} is not of classical type")
    all_a = all(f.name[0] == "A" for f in factors)
    if q < 2 or (not all_a and q % 2 == 0):
        raise ValueError("q must be odd unless every factor has type A")
    SP = splitting_polytope(rs.roots, rs.M, rs.N)
    blocks = [splitting_polytope(f.roots, f.M, f.N).F.vertices for f in factors]
    contained = all(SP.F.contains(sum(combo, ())) for combo in cartesian(*blocks))
    return contained and is_diagonally_split(SP, q).split


def product_contained(rs: RootSystem, normals: Sequence) -> bool:
    """Whether ``F_1 x ... x F_s`` lies in ``F_P`` for a normal set of ``rs``."""
    factors = factor_systems(rs)
    normals = [vec(v) for v in normals]
    SP = splitting_polytope(normals, rs.M, rs.N)
    blocks = []
    offset = 0
    for f in factors:
        k = f.ambient_dim
        local = [v[offset:offset + k] for v in normals
                 if all(x == 0 for i, x in enumerate(v) if not offset <= i < offset + k)]
        blocks.append(splitting_polytope(local, f.M, f.N).F.vertices)
        offset += k
    return all(SP.F.contains(sum(combo, ())) for combo in cartesian(*blocks))
