"""The graded semigroup ``S_P``: normality, quadratic generation, interval homology.

Elements of ``S_P`` are handled as ``(coords, degree)`` where ``coords`` are the
integer frame coordinates of the polytope (see :mod:`rootpoly.polytope`).  The
map ``(u, k) -> (u - k*origin, k)`` is a lattice automorphism of ``M x Z``, so
nothing is lost by working in these coordinates; witnesses are converted back
to ambient points.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence

from .exact import add, scale, vec_strs
from .homology import HomologyProfile, reduced_homology
from .polytope import Polytope, PolytopeError, dilate, face_from_vertex_indices, faces


class FiberCapExceeded(RuntimeError):
    pass


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _point(u) -> str:
    return "(" + ",".join(vec_strs(u)) + ")"


class GradedSemigroup:
    """Degree-by-degree point sets of ``S_P`` up to a maximal degree."""

    def __init__(self, P: Polytope):
        if not P.is_lattice:
            raise PolytopeError("S_P is only defined for lattice polytopes")
        self.polytope = P
        self.generators = sorted(P.lattice_coords(), key=self._key1)
        zero = (0,) * P.dim
        self.levels: list[set] = [{zero}, set(self.generators)]
        self._saturation: dict[int, set] = {}
        self._sorted: dict[int, list] = {}

    @property
    def m_max(self) -> int:
        return len(self.levels) - 1

    def extend(self, m: int) -> "GradedSemigroup":
        while len(self.levels) <= m:
            prev = self.levels[-1]
            self.levels.append({_add(y, g) for y in prev for g in self.generators})
        return self

    def contains(self, x: tuple, m: int) -> bool:
        if m < 0:
            return False
        self.extend(m)
        return x in self.levels[m]

    def saturation(self, m: int) -> set:
        """Lattice points of ``mP`` (frame coordinates)."""
        if m not in self._saturation:
            self._saturation[m] = set(dilate(self.polytope, m).lattice_coords()) if m else {
                (0,) * self.polytope.dim}
        return self._saturation[m]

    def ambient(self, x: tuple, m: int) -> tuple:
        P = self.polytope
        base = scale(m, P.origin)
        return add(base, P.frame.point(x)) if P.dim else base

    def _key(self, x: tuple, m: int):
        return self.ambient(x, m)

    def _key1(self, x: tuple):
        return self.ambient(x, 1)

    def sorted_level(self, m: int) -> list[tuple]:
        if m not in self._sorted:
            self.extend(m)
            self._sorted[m] = sorted(self.levels[m], key=lambda x: self._key(x, m))
        return self._sorted[m]


def build_semigroup(P: Polytope, m_max: int) -> GradedSemigroup:
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    return GradedSemigroup(P).extend(m_max)


def sumset_brute_force(generators: Sequence[tuple], m: int) -> set:
    """All sums of ``m`` generators, by listing every multiset (reference method)."""
    d = len(generators[0]) if generators else 0
    out = set()
    for combo in combinations_with_replacement(range(len(generators)), m):
        s = (0,) * d
        for i in combo:
            s = _add(s, generators[i])
        out.add(s)
    return out


# -- normality ----------------------------------------------------------------------

@dataclass
class NormalityVerdict:
    normal: bool
    m_max: int
    degree: Optional[int] = None
    witness: Optional[tuple] = None
    holes: int = 0

    @property
    def verdict(self) -> str:
        if self.normal:
            return f"normal up to degree {self.m_max}"
        return f"not normal: hole in degree {self.degree} at {_point(self.witness)}"

    def to_json(self) -> dict:
        return {"normal": self.normal, "m_max": self.m_max, "verdict": self.verdict,
                "degree": self.degree, "holes": self.holes,
                "witness": vec_strs(self.witness) if self.witness is not None else None}


def default_normality_bound(P: Polytope) -> int:
    return max(2, P.dim - 1)


def check_normality(P: Polytope, m_max: Optional[int] = None,
                    S: Optional[GradedSemigroup] = None) -> NormalityVerdict:
    """Compare ``S_P`` in each degree ``m <= m_max`` with the lattice points of ``mP``."""
    m_max = default_normality_bound(P) if m_max is None else m_max
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    S = S or GradedSemigroup(P)
    S.extend(m_max)
    for m in range(2, m_max + 1):
        holes = S.saturation(m) - S.levels[m]
        if holes:
            w = min(S.ambient(x, m) for x in holes)
            return NormalityVerdict(False, m_max, m, w, len(holes))
    return NormalityVerdict(True, m_max)


# -- fibers and quadratic generation ------------------------------------------------

def fiber(S: GradedSemigroup, x: tuple, m: int, cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """Multisets (nondecreasing index tuples) of ``m`` generators summing to ``x``."""
    S.extend(m)
    gens = S.generators
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(target, left, start):
        if left == 0:
            out.append(tuple(chosen))
            if cap is not None and len(out) > cap:
                raise FiberCapExceeded(f"fiber over degree-{m} point exceeds {cap} multisets")
            return
        for i in range(start, len(gens)):
            rest = _sub(target, gens[i])
            if rest in S.levels[left - 1]:
                chosen.append(i)
                rec(rest, left - 1, i)
                chosen.pop()

    if x in S.levels[m]:
        rec(x, m, 0)
    return out


def fiber_components(S: GradedSemigroup, multisets: Sequence[tuple[int, ...]],
                     pair_sums: dict) -> list[list[tuple[int, ...]]]:
    """Connected components of the fiber graph under degree-two exchanges."""
    nodes = set(multisets)
    parent = {u: u for u in nodes}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for mu in multisets:
        seen_pairs = set()
        for i, j in combinations(range(len(mu)), 2):
            a, b = mu[i], mu[j]
            if (a, b) in seen_pairs:
                continue
            seen_pairs.add((a, b))
            rest = list(mu[:i] + mu[i + 1:j] + mu[j + 1:])
            s = _add(S.generators[a], S.generators[b])
            for c, d in pair_sums[s]:
                if (c, d) == (a, b):
                    continue
                nu = tuple(sorted(rest + [c, d]))
                ru, rv = find(mu), find(nu)
                if ru != rv:
                    parent[ru] = rv
    comps = defaultdict(list)
    for u in sorted(nodes):
        comps[find(u)].append(u)
    return sorted(comps.values())


@dataclass
class QuadraticVerdict:
    quadratic: bool
    m_max: int
    degree: Optional[int] = None
    witness: Optional[tuple] = None
    components: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "quadratic": self.quadratic, "m_max": self.m_max, "degree": self.degree,
            "witness": vec_strs(self.witness) if self.witness is not None else None,
            "components": [[[vec_strs(g) for g in mu] for mu in comp] for comp in self.components],
        }


def check_quadratic_generation(P: Polytope, m_max: int = 3, cap: int = 10 ** 5,
                               S: Optional[GradedSemigroup] = None) -> QuadraticVerdict:
    """Every fiber in degrees ``3..m_max`` must be connected by degree-two moves."""
    if m_max < 3:
        raise ValueError("m_max must be at least 3")
    S = S or GradedSemigroup(P)
    S.extend(m_max)
    gens = S.generators
    pair_sums = defaultdict(list)
    for a, b in combinations_with_replacement(range(len(gens)), 2):
        pair_sums[_add(gens[a], gens[b])].append((a, b))
    for m in range(3, m_max + 1):
        for x in S.sorted_level(m):
            mults = fiber(S, x, m, cap)
            if len(mults) < 2:
                continue
            comps = fiber_components(S, mults, pair_sums)
            if len(comps) > 1:
                named = [[tuple(S.ambient(gens[i], 1) for i in mu) for mu in comp]
                         for comp in comps]
                return QuadraticVerdict(False, m_max, m, S.ambient(x, m), named)
    return QuadraticVerdict(True, m_max)


# -- intervals -----------------------------------------------------------------------

@dataclass
class IntervalPoset:
    """The interval ``[0, x]`` of ``S_P`` with ``y <= z`` iff ``z - y`` lies in ``S_P``."""

    semigroup: GradedSemigroup
    x: tuple
    degree: int
    elements: list          # (coords, degree), sorted by degree then ambient point
    up: list                # up[i]: indices j with elements[i] < elements[j]

    def less(self, i: int, j: int) -> bool:
        return j in self.up[i]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def ambient(self, i: int) -> tuple:
        y, k = self.elements[i]
        return self.semigroup.ambient(y, k) + (k,)

    def open_part(self) -> list[int]:
        return list(range(1, len(self.elements) - 1)) if self.degree > 0 else []


def interval(S: GradedSemigroup, x: tuple, m: int) -> IntervalPoset:
    if not S.contains(x, m):
        raise ValueError("x is not an element of S_P")
    elems = []
    for k in range(m + 1):
        for y in S.sorted_level(k):
            if _sub(x, y) in S.levels[m - k]:
                elems.append((y, k))
    up = [set() for _ in elems]
    for i, (y, k) in enumerate(elems):
        for j, (z, l) in enumerate(elems):
            if l > k and _sub(z, y) in S.levels[l - k]:
                up[i].add(j)
    return IntervalPoset(S, x, m, elems, up)


def order_complex(I: IntervalPoset, proper: bool = True) -> list[tuple[int, ...]]:
    """All nonempty chains of the open interval ``(0, x)`` (or of ``[0, x]``)."""
    keep = set(I.open_part()) if proper else set(range(len(I.elements)))
    chains: list[tuple[int, ...]] = []

    def rec(chain):
        chains.append(tuple(chain))
        for j in sorted(I.up[chain[-1]] & keep):
            chain.append(j)
            rec(chain)
            chain.pop()

    for i in sorted(keep):
        rec([i])
    return chains


def interval_homology(I: IntervalPoset, proper: bool = True) -> HomologyProfile:
    """Reduced integral homology of the order complex of ``(0, x)``."""
    return reduced_homology(order_complex(I, proper))


@dataclass
class KoszulVerdict:
    koszul: bool
    j_max: int
    witness: Optional[tuple] = None   # ambient point of x, with its degree appended
    i: Optional[int] = None
    j: Optional[int] = None
    group: Optional[str] = None

    @property
    def verdict(self) -> str:
        if self.koszul:
            return f"Koszul up to degree {self.j_max}"
        return (f"not Koszul: Tor_{self.i}(Z,Z)_{self.j} != 0 via "
                f"H~_{self.i - 2}(0,x) = {self.group} at x = {_point(self.witness)}")

    def to_json(self) -> dict:
        return {"koszul": self.koszul, "j_max": self.j_max, "verdict": self.verdict,
                "witness": vec_strs(self.witness) if self.witness is not None else None,
                "i": self.i, "j": self.j, "group": self.group}


def check_koszul_up_to(P: Polytope, j_max: int = 4,
                       S: Optional[GradedSemigroup] = None) -> KoszulVerdict:
    """``H~_{i-2}(0, x; Z) = 0`` for every ``x`` of degree ``j <= j_max`` and ``i != j``."""
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    S = S or GradedSemigroup(P)
    S.extend(j_max)
    for j in range(2, j_max + 1):
        for x in S.sorted_level(j):
            H = interval_homology(interval(S, x, j))
            for k in H.nonzero_degrees():
                if k + 2 != j:
                    return KoszulVerdict(False, j_max, S.ambient(x, j) + (j,), k + 2, j,
                                         H.describe(k))
    return KoszulVerdict(True, j_max)


# -- Cohen-Macaulay test ---------------------------------------------------------------

@dataclass
class CMVerdict:
    cm: bool
    pure: bool = True
    face: Optional[tuple] = None
    degree: Optional[int] = None
    group: Optional[str] = None


def check_cm_complex(faces_: Sequence[Sequence]) -> CMVerdict:
    """Purity plus vanishing of ``H~_i(link σ; Z)`` below ``dim link σ`` for every face."""
    fs = {frozenset(f) for f in faces_ if f}
    if not fs:
        return CMVerdict(True)
    maximal = [f for f in fs if not any(f < g for g in fs)]
    dims = {len(f) - 1 for f in maximal}
    if len(dims) > 1:
        small = min(maximal, key=lambda f: (len(f), sorted(f)))
        return CMVerdict(False, False, tuple(sorted(small)), len(small) - 1)
    top = dims.pop()
    for sigma in [frozenset()] + sorted(fs, key=lambda f: (len(f), sorted(f))):
        link = [tuple(sorted(g - sigma)) for g in fs if sigma <= g and g != sigma]
        H = reduced_homology(link)
        link_dim = top - len(sigma)
        for k in H.nonzero_degrees():
            if k < link_dim:
                return CMVerdict(False, True, tuple(sorted(sigma)), k, H.describe(k))
    return CMVerdict(True)


def check_CM_over_Z(I: IntervalPoset) -> CMVerdict:
    """Cohen-Macaulayness over Z of the order complex of the open interval."""
    v = check_cm_complex(order_complex(I))
    if v.face is not None:
        v.face = tuple(I.ambient(i) for i in v.face)
    return v


# -- faces ------------------------------------------------------------------------------

@dataclass
class HeredityReport:
    property: str
    bound: int
    polytope_passes: bool
    face_results: list = field(default_factory=list)   # (vertex indices, dim, passes)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_face_heredity(P: Polytope, prop: str = "normality", bound: int = 3) -> HeredityReport:
    """Run a property on ``P`` and on each face; a passing ``P`` must have passing faces."""
    if prop == "normality":
        def run(Q):
            return Q.dim < 1 or check_normality(Q, max(2, bound)).normal
    elif prop == "koszul":
        def run(Q):
            return Q.dim < 1 or check_koszul_up_to(Q, max(2, bound)).koszul
    else:
        raise ValueError("property must be 'normality' or 'koszul'")
    whole = run(P)
    report = HeredityReport(prop, bound, whole)
    for idx in faces(P):
        Q = face_from_vertex_indices(P, idx)
        ok = run(Q)
        report.face_results.append((tuple(sorted(idx)), Q.dim, ok))
        if whole and not ok:
            report.violations.append(tuple(sorted(idx)))
    return report
