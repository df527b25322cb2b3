"""Command line entry point.

Every command prints a JSON report (or a short text summary with
``--format text``).  Exit status: 0 when all checks pass, 1 when a
certification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import families, intervals, vrtiles
from .complexes import diagram_homology
from .exactalg import DEFAULT_PRIME
from .quiver import (
    DEFAULT_BUDGET,
    Representation,
    are_isomorphic,
    end_basis,
    fitting_check,
    is_local_exhaustive,
    ladder_split,
    linear_quiver,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("INDECOMP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"INDECOMP_SEED must be an integer, got {env!r}") from exc


def _load_rep(path: str) -> tuple[Representation, str]:
    try:
        raw = Path(path).read_bytes()
        return Representation.from_json(json.loads(raw)), hashlib.sha256(raw).hexdigest()
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read representation from {path}: {exc}") from exc


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required here")


# ---------------------------------------------------------------- commands


def cmd_construct(args) -> tuple[dict, bool]:
    p, fam = args.p, args.family
    if fam == "M":
        _need(args, "d")
        rep = families.build_M_cl5(args.d, args.lam, p)
    elif fam == "phi":
        _need(args, "d")
        rep = families.phi_as_ladder(args.d, args.lam, p)
    elif fam == "kronecker":
        _need(args, "n")
        rep = families.build_kronecker(args.n, args.lam, p)
    elif fam == "theta":
        _need(args, "n")
        rep = families.kronecker_to_cube(families.build_kronecker(args.n, args.lam, p))
    elif fam == "grid33":
        _need(args, "d", "variant")
        rep = families.build_grid33(args.variant, args.d, args.lam, p)
    elif fam == "grid33-recipe":
        _need(args, "d")
        rep = families.recipe_grid33(args.d, args.lam, p)
    else:
        raise UsageError(f"unknown family {fam!r}")
    data = rep.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=1, sort_keys=True))
    violation = rep.validate()
    report = {"family": fam, "dims": rep.dims, "valid": violation is None}
    if not args.out:
        report["representation"] = data
    return report, violation is None


def cmd_check(args) -> tuple[dict, bool]:
    targets = args.targets
    seed = _seed(args)
    if targets[0] == "iso":
        if len(targets) != 3:
            raise UsageError("usage: check iso REP_A REP_B")
        (a, ha), (b, hb) = _load_rep(targets[1]), _load_rep(targets[2])
        try:
            res = are_isomorphic(a, b, budget=args.budget, seed=seed, trials=args.trials)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report = {"inputs": {targets[1]: ha, targets[2]: hb}, "verdict": res.verdict, "reason": res.reason,
                  "field": a.p, "seed": seed,
                  "witness": res.witness.to_json() if res.witness is not None else None}
        return report, res.verdict != "probably_not_iso"
    if len(targets) != 1:
        raise UsageError("usage: check REP [--method ...] or check iso REP_A REP_B")
    rep, digest = _load_rep(targets[0])
    violation = rep.validate()
    report = {"inputs": {targets[0]: digest}, "field": rep.p, "seed": seed, "valid": violation is None}
    if violation is not None:
        report["violation"] = {"relation": [list(x) for x in violation.relation],
                               "difference": violation.difference.to_json()}
        return report, False
    report["end_dim"] = end_basis(rep).dim
    method = args.method
    if method == "auto":
        method = "exhaustive" if rep.p ** report["end_dim"] <= args.budget else "fitting"
    report["method"] = method
    if method == "exhaustive":
        res = is_local_exhaustive(rep, budget=args.budget)
        report.update(verdict=res.verdict, elements_checked=res.elements_checked)
        if res.witness is not None:
            report["witness"] = res.witness.to_json()
        return report, res.is_local
    res = fitting_check(rep, trials=args.trials, seed=seed)
    report.update(verdict=res.verdict, trials=res.trials)
    if res.idempotent is not None:
        report["idempotent"] = res.idempotent.to_json()
    return report, res.verdict != "decomposable"


def _summands(dec: dict) -> list[list[int]]:
    return [[iv.a, iv.b, m] for iv, m in sorted(dec.items())]


def cmd_decompose(args) -> tuple[dict, bool]:
    rep, digest = _load_rep(args.rep)
    n = len(rep.quiver.vertices)
    try:
        if rep.quiver == linear_quiver(n, "f" * (n - 1)):
            return {"inputs": {args.rep: digest}, "summands": _summands(intervals.decompose_forward(rep))}, True
        bottom, top, _ = ladder_split(rep)
        return {"inputs": {args.rep: digest},
                "bottom": _summands(intervals.decompose_forward(bottom)),
                "top": _summands(intervals.decompose_forward(top))}, True
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _tau(args) -> str:
    tau = args.tau if args.tau is not None else "f" * (args.n - 1)
    if len(tau) != args.n - 1 or set(tau) - {"f", "b"}:
        raise UsageError(f"orientation must have length {args.n - 1} over f/b, got {tau!r}")
    return tau


def cmd_hom_table(args) -> tuple[dict, bool]:
    tau = _tau(args)
    table = intervals.hom_table(args.n, tau, args.p)
    rows = [[x.a, x.b, y.a, y.b, v] for (x, y), v in sorted(table.items())]
    ok = all(v in (0, 1) for v in table.values())
    report = {"n": args.n, "tau": tau, "field": args.p, "entries": rows, "all_at_most_one": ok}
    if tau == "f" * (args.n - 1):
        report["matches_closed_form"] = all(bool(v) == intervals.forward_hom_nonzero(x, y) for (x, y), v in table.items())
        ok = ok and report["matches_closed_form"]
    return report, ok


def cmd_find_k22(args) -> tuple[dict, bool]:
    tau = _tau(args)
    found = intervals.find_k22(args.n, tau, args.p, ordered=args.ordered)
    return {"n": args.n, "tau": tau, "field": args.p,
            "configurations": [[[iv.a, iv.b] for iv in k.as_tuple()] for k in found]}, bool(found)


def _vr_report(d: int, p: int, maxdim: int, schedule) -> tuple[dict, bool, "vrtiles.VRRealization"]:
    real = vrtiles.build_cl5_vr_diagram(d, schedule, maxdim)
    h1 = diagram_homology(real.diagram, 1, p)
    iso = are_isomorphic(h1, families.build_M_cl5(d, 0, p))
    inclusions = vrtiles.vertical_maps_are_inclusions(real)
    expected = (0, d, 2 * d, 2 * d, d, d, 2 * d, 2 * d, d, 0)
    report = {
        "d": d, "field": p, "schedule": schedule.to_json(),
        "points": {"upper": len(real.upper), "lower": len(real.lower)},
        "h1_dims": {"bottom": list(h1.dim_vector()[:5]), "top": list(h1.dim_vector()[5:])},
        "vertical_inclusions": inclusions,
        "iso_to_M": iso.verdict,
    }
    return report, inclusions and iso.is_iso and h1.dim_vector() == expected, real


def _schedule(args):
    sched = vrtiles.default_schedule()
    if getattr(args, "refined", False):
        sched = vrtiles.refined_schedule(args.d, sched)
    return sched


def cmd_vr(args) -> tuple[dict, bool]:
    sched = _schedule(args)
    if args.action == "build":
        real = vrtiles.build_cl5_vr_diagram(args.d, sched, args.maxdim)
        data = {"upper": real.upper.to_json(), "lower": real.lower.to_json(),
                "vertex_map": {str(k): v for k, v in real.fmap.items()},
                "complexes": {v: X.to_json() for v, X in real.diagram.spaces.items()}}
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / "upper.csv").write_text(real.upper.to_csv())
            (out / "lower.csv").write_text(real.lower.to_csv())
            (out / "realization.json").write_text(json.dumps(data, sort_keys=True))
        counts = {v: {str(k): len(s) for k, s in X.simplices.items()} for v, X in real.diagram.spaces.items()}
        return {"d": args.d, "schedule": sched.to_json(), "simplex_counts": counts}, True
    if args.action == "verify":
        report, ok, _ = _vr_report(args.d, args.p, args.maxdim, sched)
        consts = {}
        for row in ("upper", "lower"):
            res = vrtiles.interval_constancy_check(vrtiles.assemble(row, args.d), sched, 5, args.maxdim)
            consts[row] = [{"interval": c.interval, "constant": c.constant,
                            "critical_radii": [float(x) ** 0.5 for x in c.critical_squared_radii]} for c in res]
        report["interval_constancy"] = consts
        return report, ok
    seed = _seed(args)
    rep = vrtiles.stability_harness(args.d, sched, args.trials, seed, args.maxdim)
    ok = rep.gap_certified and all(rep.unchanged) and rep.adversarial_changed
    return rep.to_json(), ok


def cmd_sandal(args) -> tuple[dict, bool]:
    diagram = vrtiles.sandal_diagram(args.d)
    h1 = diagram_homology(diagram, 1, args.p)
    iso = are_isomorphic(h1, families.build_M_cl5(args.d, 0, args.p), seed=_seed(args))
    ok = iso.is_iso
    return {"d": args.d, "field": args.p,
            "h1_dims": {"bottom": list(h1.dim_vector()[:5]), "top": list(h1.dim_vector()[5:])},
            "iso_to_M": iso.verdict, "witness": iso.witness.to_json() if iso.witness else None}, ok


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=DEFAULT_PRIME, help="field characteristic (prime)")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $INDECOMP_SEED or 0)")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="indecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a representation and write it as JSON")
    c.add_argument("--family", required=True, choices=("M", "phi", "kronecker", "theta", "grid33", "grid33-recipe"))
    c.add_argument("--d", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--lambda", dest="lam", type=int, default=0)
    c.add_argument("--variant", choices=families.GRID_VARIANTS)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", parents=[common], help="certify indecomposability, or compare two representations")
    c.add_argument("targets", nargs="+", metavar="REP", help="REP, or: iso REP_A REP_B")
    c.add_argument("--method", choices=("auto", "exhaustive", "fitting"), default="auto")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--trials", type=int, default=64)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("decompose", parents=[common], help="interval multiplicities of rows")
    c.add_argument("rep")
    c.set_defaults(func=cmd_decompose)

    for name, fn in (("hom-table", cmd_hom_table), ("find-k22", cmd_find_k22)):
        c = sub.add_parser(name, parents=[common])
        c.add_argument("--n", type=int, default=5)
        c.add_argument("--tau")
        if name == "find-k22":
            c.add_argument("--ordered", action="store_true", help="list every ordering within each side")
        c.set_defaults(func=fn)

    c = sub.add_parser("vr", parents=[common], help="tile-based Vietoris-Rips realization")
    c.add_argument("action", choices=("build", "verify", "stability"))
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--maxdim", type=int, default=2)
    c.add_argument("--trials", type=int, default=20)
    c.add_argument("--refined", action="store_true", help="use the widest critical-free sub-intervals")
    c.add_argument("--out")
    c.set_defaults(func=cmd_vr)

    c = sub.add_parser("sandal", parents=[common], help="simplicial sandal realization")
    c.add_argument("action", choices=("verify",))
    c.add_argument("--d", type=int, default=1)
    c.set_defaults(func=cmd_sandal)
    return parser


def _text(report: dict, indent: str = "") -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if getattr(args, "d", None) is not None and args.d < 1:
            raise UsageError("--d must be at least 1")
        report, ok = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = {"command": args.command, "passed": ok, "report": report}
    out["timings"] = {"seconds": round(time.perf_counter() - start, 3)}
    if args.format == "text":
        print(_text({"command": args.command, "passed": ok, **report}))
    else:
        print(json.dumps(out, indent=1, sort_keys=True, default=str))
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
