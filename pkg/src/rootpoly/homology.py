"""Reduced integral homology of finite simplicial complexes."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import invariant_factors


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology ``H~_k = Z^betti ⊕ torsion`` for ``k = -1 .. top``."""

    groups: dict
    face_counts: dict

    def betti(self, k: int) -> int:
        return self.groups.get(k, (0, ()))[0]

    def torsion(self, k: int) -> tuple:
        return self.groups.get(k, (0, ()))[1]

    def is_zero(self, k: int) -> bool:
        return self.betti(k) == 0 and not self.torsion(k)

    def nonzero_degrees(self) -> list[int]:
        return sorted(k for k in self.groups if not self.is_zero(k))

    @property
    def dim(self) -> int:
        return max(self.face_counts)

    def euler_from_faces(self) -> int:
        return sum((-1) ** k * n for k, n in self.face_counts.items())

    def euler_from_homology(self) -> int:
        return sum((-1) ** k * b for k, (b, _) in self.groups.items())

    def describe(self, k: int) -> str:
        parts = []
        b = self.betti(k)
        if b:
            parts.append("Z" if b == 1 else f"Z^{b}")
        parts += [f"Z/{t}" for t in self.torsion(k)]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {str(k): self.describe(k) for k in sorted(self.groups)}


def sparse_elementary_divisors(columns: Sequence[dict], nrows: int) -> tuple[int, tuple[int, ...]]:
    """Rank and non-unit elementary divisors of an integer matrix given by columns.

    Unit pivots are eliminated sparsely; whatever block survives goes through a
    dense Smith normal form.
    """
    rows: dict[int, dict[int, int]] = defaultdict(dict)
    col_rows: dict[int, set] = defaultdict(set)
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows[i][j] = v
                col_rows[j].add(i)
    rk = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(col_rows, key=lambda c: len(col_rows[c])):
            if j not in col_rows or not col_rows[j]:
                continue
            units = [i for i in col_rows[j] if abs(rows[i][j]) == 1]
            if not units:
                continue
            p = min(units, key=lambda i: (len(rows[i]), i))
            prow = rows.pop(p)
            for c in prow:
                col_rows[c].discard(p)
            s = prow[j]
            for i in list(col_rows[j]):
                f = rows[i][j] * s
                r = rows[i]
                for c, v in prow.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        if c not in r:
                            col_rows[c].add(i)
                        r[c] = nv
                    elif c in r:
                        del r[c]
                        col_rows[c].discard(i)
                if not r:
                    del rows[i]
            del col_rows[j]
            rk += 1
            progress = True
    rows = {i: r for i, r in rows.items() if r}
    if not rows:
        return rk, ()
    cols = sorted({c for r in rows.values() for c in r})
    cidx = {c: k for k, c in enumerate(cols)}
    dense = []
    for i in sorted(rows):
        row = [0] * len(cols)
        for c, v in rows[i].items():
            row[cidx[c]] = v
        dense.append(row)
    facs = invariant_factors(dense)
    return rk + len(facs), tuple(f for f in facs if f != 1)


def reduced_homology(faces: Iterable[Sequence]) -> HomologyProfile:
    """Reduced homology of the complex generated by the given faces.

    ``faces`` must be closed under taking nonempty subsets (chains of a poset
    are); vertices are any sortable labels.  The empty face is added, so the
    empty complex has ``H~_{-1} = Z``.
    """
    by_dim: dict[int, list[tuple]] = defaultdict(list)
    by_dim[-1] = [()]
    for f in {tuple(sorted(f)) for f in faces}:
        if f:
            by_dim[len(f) - 1].append(f)
    top = max(by_dim)
    index = {k: {f: i for i, f in enumerate(sorted(by_dim[k]))} for k in by_dim}
    ranks = {}
    torsion = {}
    for k in range(0, top + 1):
        cols = []
        lower = index[k - 1]
        for f in sorted(by_dim[k]):
            col = {}
            for i in range(len(f)):
                col[lower[f[:i] + f[i + 1:]]] = (-1) ** i
            cols.append(col)
        ranks[k], torsion[k - 1] = sparse_elementary_divisors(cols, len(lower))
    groups = {}
    for k in range(-1, top + 1):
        b = len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        groups[k] = (b, torsion.get(k, ()))
    counts = {k: len(v) for k, v in by_dim.items()}
    return HomologyProfile(groups, counts)


def boundary_squared_is_zero(faces: Iterable[Sequence]) -> bool:
    """Check ``d∘d = 0`` on every face (a sanity check of the sign convention)."""
    fs = {tuple(sorted(f)) for f in faces if f}
    for f in fs:
        acc: dict[tuple, int] = defaultdict(int)
        for i in range(len(f)):
            g = f[:i] + f[i + 1:]
            for j in range(len(g)):
                acc[g[:j] + g[j + 1:]] += (-1) ** i * (-1) ** j
        if any(acc.values()):
            return False
    return True
