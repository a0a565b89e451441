"""Command-line front end.

Subcommands mirror the library modules: ``quandle validate|iso|enumerate``,
``topo enumerate|check``, ``affine decide|check-cert``, ``poly classify``,
``geom check``, ``color count``, and ``report`` for the batch artifacts.

Exit codes: 0 success (including negative verdicts), 2 malformed input,
3 guard refusal (work beyond a configured bound), 4 a numeric margin too
thin to trust.  ``--json`` prints the machine payload instead of text;
payload key sets are stable per subcommand.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .affine import (decide_iso_circle, decide_iso_diag,
                     decide_iso_line, validate_certificate)
from .coloring import (alexander_coloring_count, braid_text,
                       closure_components, count_colorings, parse_braid)
from .errors import GuardExceeded, IndeterminatePrecision, InputError
from .geometry import run_named_check
from .polynomials import (classify_distributive, degree_stats,
                          interval_quandle_verdict, parse_poly)
from .quandles import enumerate_quandles, is_isomorphic, validate_quandle
from .report import run_report
from .serialization import (certificate_from_obj, certificate_to_obj,
                            load_json, load_quandle, load_topology,
                            topology_to_obj)
from .topology import enumerate_top_quandles, is_topological_quandle

Payload = Dict[str, Any]
Result = Tuple[Payload, List[str]]


def _fraction_or_none(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else str(x)


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def _raw_table(spec: str) -> list:
    """A table to validate: builtins are built, files are read unchecked."""
    if ":" in spec and not spec.lower().endswith(".json"):
        return [list(row) for row in load_quandle(spec).table]
    obj = load_json(spec)
    if not isinstance(obj, dict) or "table" not in obj:
        raise InputError("quandle object needs a 'table' key")
    return obj["table"]


def cmd_quandle_validate(args: argparse.Namespace) -> Result:
    table = _raw_table(args.quandle)
    report = validate_quandle(table)
    payload = {"valid": report.ok, "axiom": report.axiom,
               "witness": list(report.witness) if report.witness else None,
               "n": len(table)}
    if report.ok:
        lines = [f"valid quandle on {len(table)} elements"]
    else:
        lines = [f"not a quandle: {report.axiom} fails at "
                 f"{tuple(report.witness)}"]
    return payload, lines


def cmd_quandle_iso(args: argparse.Namespace) -> Result:
    q1 = load_quandle(args.first)
    q2 = load_quandle(args.second)
    witness = is_isomorphic(q1, q2)
    payload = {"isomorphic": witness is not None,
               "witness": list(witness) if witness else None}
    lines = ([f"isomorphic via {list(witness)}"] if witness
             else ["not isomorphic"])
    return payload, lines


def cmd_quandle_enumerate(args: argparse.Namespace) -> Result:
    reps = enumerate_quandles(args.n, max_n=args.max_n, threads=args.threads)
    payload = {"n": args.n, "count": len(reps),
               "tables": [[list(row) for row in q.table] for q in reps]}
    lines = [f"{len(reps)} isomorphism classes on {args.n} elements"]
    for q in reps:
        lines.append("  " + "; ".join(" ".join(map(str, row))
                                      for row in q.table))
    return payload, lines


def cmd_topo_enumerate(args: argparse.Namespace) -> Result:
    space = load_topology(args.topology)
    reps = enumerate_top_quandles(space, max_n=args.max_n)
    payload = {"topology": topology_to_obj(space), "count": len(reps),
               "tables": [[list(row) for row in t.quandle.table]
                          for t in reps]}
    lines = [f"{len(reps)} compatible operations up to isomorphism "
             f"on the space with {space.n} points"]
    for t in reps:
        lines.append("  " + "; ".join(" ".join(map(str, row))
                                      for row in t.quandle.table))
    return payload, lines


def cmd_topo_check(args: argparse.Namespace) -> Result:
    q = load_quandle(args.quandle)
    space = load_topology(args.topology)
    if q.n != space.n:
        raise InputError(f"sizes differ: quandle {q.n}, topology {space.n}")
    report = is_topological_quandle(q, space)
    payload = {"topological_quandle": report.ok, "axiom": report.axiom,
               "witness": list(report.witness) if report.witness else None}
    if report.ok:
        lines = ["compatible: all translations are homeomorphisms and the "
                 "operation is continuous"]
    else:
        lines = [f"incompatible: {report.axiom} fails at "
                 f"{tuple(report.witness)}"]
    return payload, lines


def _parse_diag(text: str) -> Tuple[List[str], List[str]]:
    left, sep, right = text.partition(":")
    if not sep:
        raise InputError("diagonal form is 't1,t2,...:s1,s2,...'")
    return left.split(","), right.split(",")


def cmd_affine_decide(args: argparse.Namespace) -> Result:
    if args.diag is not None:
        ts, ss = _parse_diag(args.diag)
        witness = decide_iso_diag(ts, ss)
        payload = {"verdict": "Iso" if witness is not None else "NonIso",
                   "witness": list(witness) if witness is not None else None,
                   "certificate": None}
        lines = [f"diagonal families: {payload['verdict']}"]
        return payload, lines
    if args.t1 is None or args.t2 is None:
        raise InputError("need --t1 and --t2 (or --diag)")
    decide = decide_iso_circle if args.circle else decide_iso_line
    decision = decide(args.t1, args.t2)
    cert = decision.certificate
    payload = {"verdict": "Iso" if decision.isomorphic else "NonIso",
               "certificate": certificate_to_obj(cert) if cert else None}
    if decision.isomorphic:
        lines = ["Iso: equal parameters give isomorphic operations"]
    else:
        detail = cert.case
        if cert.m is not None:
            detail += f"({cert.m}, {cert.n})"
        lines = [f"NonIso: {detail}"]
    return payload, lines


def cmd_affine_check_cert(args: argparse.Namespace) -> Result:
    cert = certificate_from_obj(load_json(args.certificate))
    check = validate_certificate(cert)
    payload = {"valid": check.valid, "margin": check.margin}
    lines = [("certificate holds" if check.valid else "certificate REJECTED")
             + (f" (margin {check.margin:.3e})" if check.margin else "")]
    return payload, lines


def cmd_poly_classify(args: argparse.Namespace) -> Result:
    p = parse_poly(args.polynomial)
    cls = classify_distributive(p)
    stats = None if p.is_zero() else degree_stats(p)
    payload: Payload = {
        "polynomial": str(p),
        "kind": cls.kind,
        "parameter": _fraction_or_none(cls.parameter),
        "right_part": str(cls.right_part) if cls.right_part else None,
        "witness": ([str(w) for w in cls.witness] if cls.witness else None),
        "degree_stats": (None if stats is None else
                         {"f_x": stats.f_x, "f_y": stats.f_y,
                          "f_xy": stats.f_xy}),
    }
    lines = [f"{p}: {cls.kind}"]
    if cls.kind == "affine":
        lines.append(f"  a = {cls.parameter}")
    if cls.kind == "right_independent":
        lines.append(f"  x * y = {cls.right_part}")
    if cls.kind == "not_distributive":
        lines.append(f"  sides differ at ({', '.join(map(str, cls.witness))})")
        payload["interval_verdict"] = None
    else:
        verdict = interval_quandle_verdict(p)
        payload["interval_verdict"] = {
            "kind": verdict.kind,
            "parameter": _fraction_or_none(verdict.parameter),
            "witness": _fraction_or_none(verdict.witness),
        }
        lines.append(f"  on [0,1]: {verdict.kind}"
                     + (f" (witness {verdict.witness})"
                        if verdict.witness is not None else "")
                     + (f" (a = {verdict.parameter})"
                        if verdict.parameter is not None else ""))
    if stats is not None:
        lines.append(f"  degrees: f_x={stats.f_x} f_y={stats.f_y} "
                     f"f_xy={stats.f_xy}")
    return payload, lines


def cmd_geom_check(args: argparse.Namespace) -> Result:
    rep = run_named_check(args.op, trials=args.trials, seed=args.seed,
                          tol=args.tol, dim=args.dim, r=args.r,
                          ambient=args.ambient, psi=args.psi)
    payload = {"op": args.op, "trials": rep.trials, "seed": rep.seed,
               "tol": rep.tol,
               "residuals": {"idempotency": rep.idempotency,
                             "right_distributivity": rep.right_distributivity,
                             "right_invertibility": rep.right_invertibility},
               "within_tol": rep.within_tol}
    lines = [f"{args.op}: {rep.trials} trials, seed {rep.seed}",
             f"  idempotency            {rep.idempotency:.3e}",
             f"  right distributivity   {rep.right_distributivity:.3e}",
             f"  right invertibility    {rep.right_invertibility:.3e}",
             f"  within tol {rep.tol:.0e}: {rep.within_tol}"]
    return payload, lines


def cmd_color_count(args: argparse.Namespace) -> Result:
    braid = parse_braid(args.braid)
    if args.linear:
        parts = args.quandle.split(":")
        if len(parts) != 3 or parts[0] != "alexander":
            raise InputError("--linear needs an alexander:N:T quandle")
        count = alexander_coloring_count(int(parts[1]), int(parts[2]), braid)
        method = "linear"
    else:
        q = load_quandle(args.quandle)
        count = count_colorings(q, braid, threads=args.threads)
        method = "enumeration"
    payload = {"braid": braid_text(braid), "strands": braid.strands,
               "components": closure_components(braid), "count": count,
               "method": method}
    lines = [f"{braid_text(braid)} over {args.quandle}: {count} colorings "
             f"({payload['components']} closure components)"]
    return payload, lines


def cmd_report(args: argparse.Namespace) -> Result:
    written = run_report(args.outdir, max_n=args.max_n, trials=args.trials,
                         seed=args.seed, threads=args.threads)
    payload = {"written": [str(p) for p in written]}
    lines = ["wrote:"] + [f"  {p}" for p in written]
    return payload, lines


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit the machine-readable payload")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker processes for enumeration/counting")
    common.add_argument("--seed", type=int, default=0, metavar="S",
                        help="seed for sampled checks")

    parser = argparse.ArgumentParser(
        prog="quandlelab",
        description="finite and parametric self-distributive structures")
    sub = parser.add_subparsers(dest="command", metavar="command")

    quandle = sub.add_parser("quandle", help="finite operation tables")
    qsub = quandle.add_subparsers(dest="subcommand", metavar="subcommand")
    p = qsub.add_parser("validate", parents=[common],
                        help="check the three axioms on a table")
    p.add_argument("quandle", help="builtin specifier or JSON file")
    p.set_defaults(func=cmd_quandle_validate)
    p = qsub.add_parser("iso", parents=[common],
                        help="decide isomorphism of two tables")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_quandle_iso)
    p = qsub.add_parser("enumerate", parents=[common],
                        help="isomorphism classes of a given size")
    p.add_argument("n", type=int)
    p.add_argument("--max-n", type=int, default=6,
                   help="guard bound for the search")
    p.set_defaults(func=cmd_quandle_enumerate)

    topo = sub.add_parser("topo", help="operations carried by finite spaces")
    tsub = topo.add_subparsers(dest="subcommand", metavar="subcommand")
    p = tsub.add_parser("enumerate", parents=[common],
                        help="compatible operations on a space")
    p.add_argument("--topology", required=True,
                   help="chain:N, discrete:N, indiscrete:N, or JSON file")
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(func=cmd_topo_enumerate)
    p = tsub.add_parser("check", parents=[common],
                        help="is the operation compatible with the space?")
    p.add_argument("--quandle", required=True)
    p.add_argument("--topology", required=True)
    p.set_defaults(func=cmd_topo_check)

    affine = sub.add_parser("affine", help="one-parameter families")
    asub = affine.add_subparsers(dest="subcommand", metavar="subcommand")
    p = asub.add_parser("decide", parents=[common],
                        help="isomorphism decision with certificate")
    p.add_argument("--t1", help="rational parameter, e.g. 7/2")
    p.add_argument("--t2")
    p.add_argument("--circle", action="store_true",
                   help="circle family over (0,1] instead of the line")
    p.add_argument("--diag", metavar="TS:SS",
                   help="diagonal families, e.g. 2,3:3,2")
    p.set_defaults(func=cmd_affine_decide)
    p = asub.add_parser("check-cert", parents=[common],
                        help="re-validate a stored certificate")
    p.add_argument("certificate", help="JSON file")
    p.set_defaults(func=cmd_affine_check_cert)

    poly = sub.add_parser("poly", help="polynomial operations")
    psub = poly.add_subparsers(dest="subcommand", metavar="subcommand")
    p = psub.add_parser("classify", parents=[common],
                        help="distributivity, taxonomy, degree data")
    p.add_argument("polynomial", help="e.g. 'x^4*y^5 + 2*x^3 - x'")
    p.set_defaults(func=cmd_poly_classify)

    geom = sub.add_parser("geom", help="smooth examples, sampled checks")
    gsub = geom.add_subparsers(dest="subcommand", metavar="subcommand")
    p = gsub.add_parser("check", parents=[common],
                        help="sampled axiom residuals")
    p.add_argument("--op", required=True,
                   choices=["sphere", "rotation", "grassmann"])
    p.add_argument("--dim", type=int, default=2,
                   help="sphere dimension (ambient dim+1)")
    p.add_argument("--r", type=int, default=2,
                   help="subspace dimension (grassmann)")
    p.add_argument("--ambient", type=int, default=4,
                   help="ambient dimension (grassmann)")
    p.add_argument("--psi", type=float, default=2 * math.pi / 3,
                   help="rotation angle in (0, 2pi)")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--tol", type=float, default=None,
                   help="residual tolerance (default per op)")
    p.set_defaults(func=cmd_geom_check)

    color = sub.add_parser("color", help="braid closure colorings")
    csub = color.add_subparsers(dest="subcommand", metavar="subcommand")
    p = csub.add_parser("count", parents=[common],
                        help="colorings fixed by a braid word")
    p.add_argument("--braid", required=True, help="e.g. 'B2: s1 s1 s1'")
    p.add_argument("--quandle", required=True,
                   help="builtin specifier or JSON file")
    p.add_argument("--linear", action="store_true",
                   help="matrix-kernel count (alexander:N:T only)")
    p.set_defaults(func=cmd_color_count)

    p = sub.add_parser("report", parents=[common],
                       help="write CSV tables and figures")
    p.add_argument("--outdir", default="reports")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = getattr(args, "func", None)
    if func is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        payload, lines = func(args)
    except InputError as exc:
        return _emit_error(args, f"input error: {exc}", 2)
    except GuardExceeded as exc:
        return _emit_error(args, f"guard refusal: {exc}", 3)
    except IndeterminatePrecision as exc:
        return _emit_error(args, f"indeterminate precision: {exc}", 4)
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


def _emit_error(args: argparse.Namespace, message: str, code: int) -> int:
    if getattr(args, "json", False):
        print(json.dumps({"error": message, "exit": code}), file=sys.stderr)
    else:
        print(message, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
