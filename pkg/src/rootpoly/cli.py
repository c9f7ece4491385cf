"""Command-line front end.

Exit codes: 0 when the checked property holds, 1 when it fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import ehrhart, verify
from .polytope import (
    PolytopeError, cayley_sum, face_from_vertex_indices, faces, is_cut_out, minkowski_sum,
)
from .roots import RootSystem, parse_root_system
from .semigroup import (
    FiberCapExceeded, check_koszul_up_to, check_normality, check_quadratic_generation,
)
from .serialize import InputError, dumps, load_polytope
from .splitting import is_diagonally_split, splitting_polytope
from .exact import vec_strs


class PropertyFailed(Exception):
    """Carries a report whose checked property does not hold."""

    def __init__(self, report):
        super().__init__("property failed")
        self.report = report


def _root_system(args) -> Optional[RootSystem]:
    if not getattr(args, "root_system", None):
        return None
    try:
        return parse_root_system(args.root_system)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _one_polytope(args):
    if not args.polytope:
        raise InputError("--polytope is required")
    if len(args.polytope) > 1:
        raise InputError("this command takes a single --polytope")
    return load_polytope(args.polytope[0], _root_system(args))


def _at_least(value: Optional[int], low: int, flag: str) -> None:
    if value is not None and value < low:
        raise InputError(f"{flag} must be at least {low}")


# -- subcommands ---------------------------------------------------------------------

def cmd_rootsys(args) -> dict:
    spec = args.spec or args.root_system
    if not spec:
        raise InputError("give a root system, e.g. 'rootsys F4'")
    args.root_system = spec
    return _root_system(args).summary()


def cmd_polytope(args) -> dict:
    rs = _root_system(args)
    paths = args.polytope or []
    if not paths:
        raise InputError("--polytope is required")
    polys = [load_polytope(p, rs) for p in paths]
    op = args.op
    if op in ("hull", "ineq", "convert"):
        if len(polys) != 1:
            raise InputError(f"'{op}' takes a single --polytope")
        return polys[0].to_json()
    if op == "minkowski":
        return minkowski_sum(*polys).to_json()
    if op == "cayley":
        return cayley_sum(*polys).to_json()
    if op == "faces":
        P = polys[0]
        out = []
        for idx in faces(P, include_self=True):
            Q = face_from_vertex_indices(P, idx)
            out.append({"dim": Q.dim, "vertices": [vec_strs(v) for v in Q.vertices]})
        out.sort(key=lambda f: (f["dim"], f["vertices"]))
        return {"faces": out, "count": len(out)}
    if op == "cut-out":
        if rs is None:
            raise InputError("cut-out test needs --root-system")
        rep = is_cut_out(polys[0], rs)
        report = {
            "root_system": rs.name,
            "cut_out": rep.cut_out,
            "facets": [{"normal": vec_strs(n), "root": vec_strs(r) if r is not None else None}
                       for n, r in rep.witnesses],
        }
        if not rep.cut_out:
            raise PropertyFailed(report)
        return report
    raise InputError(f"unknown polytope operation {op!r}")


def _splitting_source(args):
    rs = _root_system(args)
    if args.normals_from_roots:
        if args.normals_from_roots != "all":
            raise InputError("--normals-from-roots only accepts 'all'")
        if rs is None:
            raise InputError("--normals-from-roots needs --root-system")
        if args.polytope:
            raise InputError("give either --polytope or --normals-from-roots, not both")
        return splitting_polytope(rs.roots, rs.M, rs.N)
    return splitting_polytope(_one_polytope(args))


def cmd_check_split(args) -> dict:
    if args.q is None:
        raise InputError("--q is required")
    _at_least(args.q, 2, "--q")
    SP = _splitting_source(args)
    report = is_diagonally_split(SP, args.q).to_json()
    report["normals"] = [vec_strs(v) for v in SP.normals]
    if not report["split"]:
        raise PropertyFailed(report)
    return report


def cmd_ehrhart(args) -> dict:
    _at_least(args.qmax, 1, "--qmax")
    if args.normals_from_roots:
        F = _splitting_source(args).F
    else:
        F = _one_polytope(args)
    counts = {q: ehrhart.count(F, q) for q in range(1, args.qmax + 1)}
    report = {"counts": {str(q): v for q, v in counts.items()}}
    if args.fit or args.reciprocity:
        try:
            Q = ehrhart.fit_quasipolynomial(F, period_bound=args.period, counts=counts)
        except ehrhart.InterpolationError as exc:
            report["fit_error"] = str(exc)
            raise PropertyFailed(report) from exc
        qj = Q.to_json()
        report.update(period=qj["period"], components=qj["components"])
        if args.reciprocity:
            ok, failures = ehrhart.check_reciprocity(F, Q, range(1, args.qmax + 1))
            report["reciprocity"] = "pass" if ok else "fail"
            report["reciprocity_failures"] = [
                {"q": q, "quasipolynomial": str(lhs), "interior": rhs} for q, lhs, rhs in failures]
            if not ok:
                raise PropertyFailed(report)
    return report


def cmd_normality(args) -> dict:
    _at_least(args.max_degree, 2, "--max-degree")
    v = check_normality(_one_polytope(args), args.max_degree)
    if not v.normal:
        raise PropertyFailed(v.to_json())
    return v.to_json()


def cmd_quadratic(args) -> dict:
    _at_least(args.max_degree, 3, "--max-degree")
    v = check_quadratic_generation(_one_polytope(args), args.max_degree or 3)
    if not v.quadratic:
        raise PropertyFailed(v.to_json())
    return v.to_json()


def cmd_koszul(args) -> dict:
    _at_least(args.max_degree, 2, "--max-degree")
    v = check_koszul_up_to(_one_polytope(args), args.max_degree or 4)
    if not v.koszul:
        raise PropertyFailed(v.to_json())
    return v.to_json()


def cmd_verify_paper(args) -> dict:
    items = verify.select(args.only)
    if not items:
        raise InputError(f"--only {args.only!r} matches no item")
    ctx = verify._Context()
    results = [verify.run_item(n, name, fn, ctx) for n, name, fn in items]
    print(verify.format_table(results))
    report = {"items": [r.to_json() for r in results],
              "pass": all(r.ok for r in results)}
    if not report["pass"]:
        raise PropertyFailed(report)
    return report


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, polytope=True, rs=True):
        if polytope:
            sp.add_argument("--polytope", action="append", metavar="FILE",
                            help="polytope JSON file (repeat for minkowski/cayley)")
        if rs:
            sp.add_argument("--root-system", metavar="SPEC", help='e.g. "B2", "F4", "A2xB2"')
        sp.add_argument("--json", metavar="OUT", help="also write the report to this file")

    sp = sub.add_parser("rootsys", help="print roots, N and M of a root system")
    sp.add_argument("spec", nargs="?")
    common(sp, polytope=False)
    sp.set_defaults(func=cmd_rootsys)

    sp = sub.add_parser("polytope", help="hull/inequality conversion, sums, faces, cut-out test")
    sp.add_argument("op", choices=["convert", "hull", "ineq", "minkowski", "cayley", "faces",
                                   "cut-out"])
    common(sp)
    sp.set_defaults(func=cmd_polytope)

    sp = sub.add_parser("check-split", help="decide diagonal splitting for one q")
    common(sp)
    sp.add_argument("--q", type=int)
    sp.add_argument("--normals-from-roots", metavar="all")
    sp.set_defaults(func=cmd_check_split)

    sp = sub.add_parser("ehrhart", help="lattice point counts and quasipolynomial fit")
    common(sp)
    sp.add_argument("--qmax", type=int, default=8)
    sp.add_argument("--period", type=int, help="period to fit (default: vertex denominator)")
    sp.add_argument("--fit", action="store_true")
    sp.add_argument("--reciprocity", action="store_true")
    sp.add_argument("--normals-from-roots", metavar="all")
    sp.set_defaults(func=cmd_ehrhart)

    for name, func, helptext in (
            ("normality", cmd_normality, "compare S_P with saturation up to a degree"),
            ("quadratic", cmd_quadratic, "fiber-graph test for quadratic generation"),
            ("koszul", cmd_koszul, "interval homology test up to a degree")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--max-degree", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify-paper", help="replay every published computation")
    sp.add_argument("--only", metavar="NAME", help="item number or name fragment, comma separated")
    sp.add_argument("--json", metavar="OUT")
    sp.set_defaults(func=cmd_verify_paper)
    return p


def _emit(report: dict, args, to_stdout: bool) -> None:
    text = dumps(report)
    if to_stdout:
        sys.stdout.write(text)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    table_only = args.command == "verify-paper"
    try:
        report = args.func(args)
    except PropertyFailed as exc:
        _emit(exc.report, args, not table_only)
        return 1
    except (InputError, PolytopeError, FiberCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args, not table_only)
    return 0


if __name__ == "__main__":
    sys.exit(main())
