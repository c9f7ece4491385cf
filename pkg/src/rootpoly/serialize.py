"""Reading polytopes from JSON and writing deterministic reports."""

from __future__ import annotations

import json
from typing import Any, Optional

from .exact import rat, vec
from .lattices import Lattice
from .polytope import Polytope, from_inequalities, from_vertices
from .roots import RootSystem


class InputError(ValueError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


def _lattice(obj: Any, what: str) -> Lattice:
    if not isinstance(obj, dict) or "basis" not in obj:
        raise InputError(f"{what}: expected an object with 'ambient_dim' and 'basis'")
    try:
        L = Lattice.from_json(obj)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from exc
    if L.rank == 0:
        raise InputError(f"{what}: basis is empty")
    return L


def polytope_from_json(data: Any, rs: Optional[RootSystem] = None) -> Polytope:
    """Build a polytope from ``{"lattice", "vertices"}`` or ``{"lattice", "inequalities"}``.

    Missing ``lattice`` falls back to the root system's ``M``; the optional
    ``dual`` key (else the root system's ``N``, else the dual of ``M``) gives ``N``.
    Inequalities read ``<u, normal> + offset >= 0``.
    """
    if not isinstance(data, dict):
        raise InputError("polytope JSON must be an object")
    if "lattice" in data:
        M = _lattice(data["lattice"], "lattice")
    elif rs is not None:
        M = rs.M
    else:
        raise InputError("polytope JSON needs a 'lattice' (or pass --root-system)")
    if "dual" in data:
        N = _lattice(data["dual"], "dual")
    elif rs is not None and M.same_lattice(rs.M):
        N = rs.N
    else:
        N = None
    try:
        if "vertices" in data:
            pts = [vec(p) for p in data["vertices"]]
            if any(len(p) != M.ambient_dim for p in pts):
                raise InputError("vertex of the wrong dimension")
            return from_vertices(pts, M, N)
        if "inequalities" in data:
            ineqs = []
            for item in data["inequalities"]:
                normal = vec(item["normal"])
                if len(normal) != M.ambient_dim:
                    raise InputError("normal of the wrong dimension")
                ineqs.append((normal, rat(item.get("offset", 0))))
            return from_inequalities(ineqs, M, N)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid polytope: {exc}") from exc
    raise InputError("polytope JSON needs 'vertices' or 'inequalities'")


def load_polytope(path: str, rs: Optional[RootSystem] = None) -> Polytope:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return polytope_from_json(data, rs)


def dumps(report: Any) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
