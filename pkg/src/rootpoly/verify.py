"""Replay of every published computation as a table of line items.

Each item returns rows ``(claim, expected, computed, ok)``.  Counting goes
through ``ehrhart.count`` looked up at call time, so a patched counter is
seen by every item that depends on it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import ehrhart, fixtures
from .exact import dot, rank, vec_strs
from .lattices import Lattice
from .polytope import (
    cayley_sum, face_from_vertex_indices, faces, from_vertices, is_cut_out,
    lattice_isomorphic, minkowski_sum,
)
from .roots import make_root_system, parse_root_system
from .semigroup import (
    GradedSemigroup, check_koszul_up_to, check_normality, check_quadratic_generation,
    sumset_brute_force,
)
from .splitting import (
    is_diagonally_split, splitting_polytope, verify_mixed, verify_type_A, verify_type_BCD,
)

RANDOM_SEED = 20240601


@dataclass
class Row:
    claim: str
    expected: str
    computed: str
    ok: bool

    def to_json(self) -> dict:
        return {"claim": self.claim, "expected": self.expected,
                "computed": self.computed, "pass": self.ok}


@dataclass
class ItemResult:
    number: int
    name: str
    rows: list = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and bool(self.rows) and all(r.ok for r in self.rows)

    def add(self, claim: str, expected, computed, ok: Optional[bool] = None) -> None:
        expected, computed = str(expected), str(computed)
        self.rows.append(Row(claim, expected, computed, expected == computed if ok is None else ok))

    def to_json(self) -> dict:
        return {"item": self.number, "name": self.name, "pass": self.ok, "error": self.error,
                "rows": [r.to_json() for r in self.rows]}


class _Context:
    """Values shared between items within one run (the F4 polytope and its fit)."""

    def __init__(self):
        self._F = None
        self._Q = None

    @property
    def F(self):
        if self._F is None:
            self._F = fixtures.f4_splitting()
        return self._F

    @property
    def Q(self):
        if self._Q is None:
            self._Q = ehrhart.fit_quasipolynomial(self.F, period_bound=2, held_out=2)
        return self._Q


def _pts(points) -> str:
    return "[" + ", ".join("(" + ",".join(vec_strs(p)) + ")" for p in points) + "]"


def _poly(coeffs_desc) -> str:
    return " ".join(str(c) for c in coeffs_desc)


# -- items ---------------------------------------------------------------------------

def item_f4_vertices(ctx: _Context, res: ItemResult) -> None:
    half = Fraction(1, 2)
    expected = {tuple(s * (i == k) for k in range(4)) for i in range(4) for s in (1, -1)}
    expected |= {(a, b, c, d) for a in (half, -half) for b in (half, -half)
                 for c in (half, -half) for d in (half, -half)}
    rs = make_root_system("F4")
    F = splitting_polytope(rs.roots, rs.M, rs.N).F
    res.add("roots of F4", 48, len(rs.roots))
    res.add("vertex count of F", 24, len(F.vertices))
    res.add("vertices are {±e_i} ∪ {(±1/2)^4}", "True", set(F.vertices) == expected)


def item_f4_counts(ctx: _Context, res: ItemResult) -> None:
    for q, want in zip((1, 2, 3, 4), (1, 49, 145, 433)):
        res.add(f"count(F, {q})", want, ehrhart.count(ctx.F, q))


def item_f4_quasipolynomial(ctx: _Context, res: ItemResult) -> None:
    # fit from f(0..4) and f(-q) = f(q-1), so q = 5, 6 are genuinely held out
    values = {q: ehrhart.count(ctx.F, q) for q in range(1, 5)}
    values[0] = 1
    Q = ehrhart.fit_with_reciprocity(values, 2, 4, ctx.F)
    res.add("period", 2, Q.period)
    res.add("even component (q^4 .. q^0)", "1 2 2 4 1", _poly(Q.descending()[0]))
    res.add("odd component (q^4 .. q^0)", "1 2 2 -2 -2", _poly(Q.descending()[1]))
    for q in (5, 6):
        res.add(f"held-out Q({q}) = count(F, {q})", ehrhart.count(ctx.F, q), ehrhart.evaluate(Q, q))
    res.add("agrees with the fit from positive q alone", "True", Q.components == ctx.Q.components)


def item_f4_reciprocity(ctx: _Context, res: ItemResult) -> None:
    for q in range(2, 7):
        res.add(f"Q(-{q}) = interior count at {q}", ehrhart.count_interior(ctx.F, q),
                ehrhart.evaluate(ctx.Q, -q))


def item_f4_not_split(ctx: _Context, res: ItemResult) -> None:
    for q in range(2, 6):
        lhs = ehrhart.evaluate(ctx.Q, -q)
        res.add(f"Q(-{q}) < {q}^4", f"< {q ** 4}", lhs, lhs < q ** 4)
        rep = is_diagonally_split(ctx.F, q)
        res.add(f"missing classes at q={q}", "> 0", len(rep.missing), len(rep.missing) > 0)


def item_type_a(ctx: _Context, res: ItemResult) -> None:
    rng = random.Random(RANDOM_SEED)
    for n in (1, 2, 3):
        rs = make_root_system("A", n)
        subsets = []
        while len(subsets) < 10:
            k = rng.randint(1, len(rs.roots))
            pick = sorted(rng.sample(rs.roots, k))
            if n == 1 or _spans(pick, rs):
                subsets.append(pick)
        for q in (2, 3, 4, 5):
            full = verify_type_A(n, q)
            sub_ok = sum(verify_type_A(n, q, s) for s in subsets)
            res.add(f"A{n}, q={q}: full root set split", "True", full)
            res.add(f"A{n}, q={q}: random spanning subsets split", "10/10", f"{sub_ok}/10")


def _spans(normals, rs) -> bool:
    return rank([[dot(b, v) for b in rs.M.basis] for v in normals]) == rs.M.rank


def item_type_bcd(ctx: _Context, res: ItemResult) -> None:
    for family, n in (("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3)):
        for q in (3, 5):
            res.add(f"{family}{n}, q={q}: split with representatives confirmed", "True",
                    verify_type_BCD(family, n, q))


def item_mixed(ctx: _Context, res: ItemResult) -> None:
    for spec in ("A1xB2", "A2xC2"):
        rs = parse_root_system(spec)
        res.add(f"{spec}, q=3: split and F_1 x ... x F_s ⊆ F_P", "True", verify_mixed(rs, 3))


def item_non_normal(ctx: _Context, res: ItemResult) -> None:
    P = fixtures.non_normal_simplex()
    v = check_normality(P, 2)
    res.add("normal up to m = 2", "False", v.normal)
    res.add("hole degree", 2, v.degree)
    res.add("hole witness", "(1,1,1)", _pts([v.witness])[1:-1] if v.witness else None)
    Z2 = Lattice.standard(2)
    heights = {}
    for idx in faces(P):
        Fc = face_from_vertex_indices(P, idx)
        zs = {p[2] for p in Fc.vertices}
        if Fc.dim == 1 and len(zs) == 1:
            h = zs.pop()
            base = Fc.vertices[0]
            heights[h] = from_vertices([(p[0] - base[0], p[1] - base[1]) for p in Fc.vertices],
                                       Z2, reduce_span=True)
    E0, E1 = fixtures.non_normal_edges()
    res.add("height-0 face", _pts(E0.vertices), _pts(heights[0].vertices) if 0 in heights else None)
    res.add("height-1 face (translated)", _pts(E1.vertices),
            _pts(heights[1].vertices) if 1 in heights else None)
    edges_normal = all(check_normality(E, 3).normal for E in (E0, E1))
    res.add("both edges normal up to m = 3", "True", edges_normal)
    C = cayley_sum(E0, E1)
    res.add("Cayley sum of the edges ≅ P", "True", lattice_isomorphic(C, P))


def item_non_koszul(ctx: _Context, res: ItemResult) -> None:
    rs = make_root_system("G2")
    P = fixtures.g2_triangle()
    res.add("lattice points", 4, P.count_lattice_points())
    res.add("same triangle from root inequalities", _pts(P.vertices),
            _pts(fixtures.g2_triangle_from_roots().vertices))
    res.add("cut out by G2", "True", is_cut_out(P, rs).cut_out)
    S = GradedSemigroup(P)
    res.add("normal up to m = 4", "True", check_normality(P, 4, S).normal)
    qv = check_quadratic_generation(P, 3, S=S)
    res.add("quadratic generation fails in degree", 3, qv.degree)
    res.add("quadratic witness", "(0,0,0)", _pts([qv.witness])[1:-1] if qv.witness else None)
    kv = check_koszul_up_to(P, 4, S)
    res.add("Koszul up to j = 4", "False", kv.koszul)
    res.add("first failure (i, j)", "(2, 3)", (kv.i, kv.j))
    res.add("witness (point, degree)", "(0,0,0,3)", _pts([kv.witness])[1:-1] if kv.witness else None)


def _theorem_row(res: ItemResult, label: str, P, split_qs) -> None:
    S = GradedSemigroup(P)
    normal = check_normality(P, 3, S).normal
    quad = check_quadratic_generation(P, 3, S=S).quadratic
    kosz = check_koszul_up_to(P, 4, S).koszul
    computed = f"split q={split_qs} normal={normal} quadratic={quad} koszul={kosz}"
    ok = bool(split_qs) and normal and kosz and (quad or not kosz)
    res.add(label, "split, normal(m<=3), Koszul(j<=4)", computed, ok)


def item_splitting_theorem(ctx: _Context, res: ItemResult) -> None:
    rng = random.Random(RANDOM_SEED)
    plan = [("A", 9), ("B", 8), ("C", 8)]
    for family, k in plan:
        rs = make_root_system(family, 2)
        for t in range(k):
            P = fixtures.random_cut_out_polytope(rs, rng)
            SP = splitting_polytope(P)
            qs = [q for q in (2, 3) if is_diagonally_split(SP, q).split]
            _theorem_row(res, f"{rs.name} #{t + 1} {_pts(P.vertices)}", P, qs)
    rs = make_root_system("A", 2)
    pairs = 0
    while pairs < 10:
        P1 = fixtures.random_cut_out_polytope(rs, rng, max_offset=1)
        P2 = fixtures.random_cut_out_polytope(rs, rng, max_offset=1)
        Msum = minkowski_sum(P1, P2)
        if not (Msum.is_full_dimensional and is_cut_out(Msum, rs).cut_out):
            continue
        pairs += 1
        SP = splitting_polytope(Msum)
        qs = [q for q in (2, 3) if is_diagonally_split(SP, q).split]
        _theorem_row(res, f"Cayley pair #{pairs} {_pts(P1.vertices)} * {_pts(P2.vertices)}",
                     cayley_sum(P1, P2), qs)


def _oracle_fixtures():
    out = [("unit square", fixtures.unit_square(), 4),
           ("unimodular triangle", fixtures.unimodular_triangle(), 4),
           ("non-normal simplex", fixtures.non_normal_simplex(), 3),
           ("G2 triangle", fixtures.g2_triangle(), 4)]
    for spec in ("A2", "B2", "C2", "G2"):
        rs = parse_root_system(spec)
        out.append((f"{spec} splitting polytope", splitting_polytope(rs.roots, rs.M, rs.N).F, 4))
    return out


def item_oracles(ctx: _Context, res: ItemResult) -> None:
    for name, P, qmax in _oracle_fixtures() + [("F4 splitting polytope", ctx.F, 4)]:
        for q in range(1, qmax + 1):
            res.add(f"{name}: count vs grid scan, q={q}", ehrhart.count_grid_scan(P, q),
                    ehrhart.count(P, q))
        if P.is_lattice:
            S = GradedSemigroup(P).extend(3)
            for m in (2, 3):
                brute = sumset_brute_force(S.generators, m)
                res.add(f"{name}: DP level {m} vs brute-force sumset", len(brute),
                        len(S.levels[m]), brute == S.levels[m])


ITEMS: list[tuple[int, str, Callable]] = [
    (1, "F4-vertices", item_f4_vertices),
    (2, "F4-counts", item_f4_counts),
    (3, "F4-quasipolynomial", item_f4_quasipolynomial),
    (4, "F4-reciprocity", item_f4_reciprocity),
    (5, "F4-not-split", item_f4_not_split),
    (6, "typeA-split", item_type_a),
    (7, "typeBCD-split", item_type_bcd),
    (8, "mixed-split", item_mixed),
    (9, "non-normal-example", item_non_normal),
    (10, "non-Koszul-example", item_non_koszul),
    (11, "splitting-theorem-suite", item_splitting_theorem),
    (12, "oracle-equivalence", item_oracles),
]


def select(only: Optional[str]) -> list[tuple[int, str, Callable]]:
    """Items whose number equals ``only`` or whose name contains it (case-insensitive)."""
    if not only:
        return list(ITEMS)
    keys = [k.strip().lower() for k in only.split(",") if k.strip()]
    return [it for it in ITEMS
            if any(k == str(it[0]) or k in it[1].lower() for k in keys)]


def run_item(number: int, name: str, fn: Callable, ctx: Optional[_Context] = None) -> ItemResult:
    res = ItemResult(number, name)
    try:
        fn(ctx or _Context(), res)
    except Exception as exc:  # an item that crashes is a failed item, not a crash of the run
        res.error = f"{type(exc).__name__}: {exc}"
    return res


def run(only: Optional[str] = None) -> list[ItemResult]:
    ctx = _Context()
    return [run_item(n, name, fn, ctx) for n, name, fn in select(only)]


def format_table(results: list[ItemResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.ok else 'FAIL'}] {r.number:>2}. {r.name}")
        if r.error:
            lines.append(f"       error: {r.error}")
        for row in r.rows:
            mark = "ok " if row.ok else "BAD"
            lines.append(f"       {mark} {row.claim}: expected {row.expected}, got {row.computed}")
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} items pass")
    return "\n".join(lines)
