"""Command line front end.

Subcommands: field, classify, decompose, census, verify, exceptions, quality.
All output is deterministic for a fixed invocation: fixed orderings, no
timestamps, machine-readable JSON lines or CSV.  Exit codes: 0 success,
1 usage or input error, 2 a verification invariant failed, 3 the factoring
budget ran out where completeness was required.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .ideals import BudgetExhausted, primes_above
from .intfactor import FactorBudget
from .places import (
    InvariantViolation,
    census,
    place_report,
    scan_wieferich_places,
    squarefree_powerful_split,
    STRATEGY_ALL_LEVELS,
    STRATEGY_PRIME_LEVELS,
)
from .qfield import FieldSpec, classify_base
from .verify import abc_quality, exception_set_union, run_full_verification

ENV_TRIAL_LIMIT = "WIEFERICH_TRIAL_LIMIT"
ENV_RHO_ITERATIONS = "WIEFERICH_RHO_ITERATIONS"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3


def _add_common(sub: argparse.ArgumentParser, base_required: bool = True) -> None:
    sub.add_argument("-d", type=int, required=True, metavar="D",
                     help="field parameter: squarefree d >= 1 for Q(sqrt(-d)), 0 for plain integers")
    if base_required:
        sub.add_argument("-a", required=True, metavar="X[,Y]",
                         help="base element coordinates in the integral basis")
    sub.add_argument("--trial-limit", type=int, default=None,
                     help="trial division bound (default 10^6, env " + ENV_TRIAL_LIMIT + ")")
    sub.add_argument("--rho-iterations", type=int, default=None,
                     help="rho iteration cap per cofactor (default 10^6, env " + ENV_RHO_ITERATIONS + ")")
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", default=None, help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wieferich",
        description="Wieferich and non-Wieferich places of imaginary quadratic rings",
    )
    commands = parser.add_subparsers(dest="command")

    p_field = commands.add_parser("field", help="describe the ring of integers")
    p_field.add_argument("-d", type=int, required=True)
    p_field.add_argument("--format", choices=("json", "csv"), default="json")
    p_field.add_argument("--output", default=None)

    p_classify = commands.add_parser(
        "classify", help="classify the base, one place, or all places up to a bound"
    )
    _add_common(p_classify)
    p_classify.add_argument("--prime", type=int, default=None,
                            help="classify every place above this rational prime")
    p_classify.add_argument("--p-max", type=int, default=None,
                            help="scan all places of residue characteristic up to this bound")

    p_decompose = commands.add_parser(
        "decompose", help="squarefree/powerful split of (a^n - 1) and its level slice"
    )
    _add_common(p_decompose)
    p_decompose.add_argument("-n", type=int, required=True, help="level n >= 1")

    p_census = commands.add_parser(
        "census", help="count non-Wieferich places with norm 1 mod k across levels"
    )
    _add_common(p_census)
    p_census.add_argument("-k", type=int, default=1, help="progression modulus (default 1)")
    p_census.add_argument("--n-max", type=int, required=True, help="largest level multiplier")
    p_census.add_argument("--x-max", type=int, default=None,
                          help="also report the record count up to this norm bound")
    p_census.add_argument("--strategy", choices=(STRATEGY_ALL_LEVELS, STRATEGY_PRIME_LEVELS),
                          default=STRATEGY_ALL_LEVELS)

    p_verify = commands.add_parser(
        "verify", help="run every exact inequality and identity check at one base"
    )
    _add_common(p_verify)
    p_verify.add_argument("--n-max", type=int, required=True)

    p_exc = commands.add_parser(
        "exceptions", help="enumerate all elements of norm <= 3 across fields"
    )
    p_exc.add_argument("--d-max", type=int, required=True)
    p_exc.add_argument("--format", choices=("json", "csv"), default="json")
    p_exc.add_argument("--output", default=None)

    p_quality = commands.add_parser(
        "quality", help="quality statistic of a pair summing to a root of unity"
    )
    p_quality.add_argument("-d", type=int, required=True)
    p_quality.add_argument("--alpha", required=True, metavar="X[,Y]")
    p_quality.add_argument("--beta", required=True, metavar="X[,Y]")
    p_quality.add_argument("--trial-limit", type=int, default=None)
    p_quality.add_argument("--rho-iterations", type=int, default=None)
    p_quality.add_argument("--format", choices=("json", "csv"), default="json")
    p_quality.add_argument("--output", default=None)

    return parser


def _budget_from(args) -> FactorBudget:
    trial = getattr(args, "trial_limit", None)
    rho = getattr(args, "rho_iterations", None)
    if trial is None:
        trial = int(os.environ.get(ENV_TRIAL_LIMIT, 10**6))
    if rho is None:
        rho = int(os.environ.get(ENV_RHO_ITERATIONS, 10**6))
    return FactorBudget(trial_limit=trial, rho_iterations=rho)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_lines(objects) -> str:
    return "".join(json.dumps(obj) + "\n" for obj in objects)


def _cmd_field(args) -> tuple[str, int]:
    spec = FieldSpec.from_d(args.d)
    info = spec.describe()
    if args.format == "csv":
        keys = sorted(info)
        return _csv_text(keys, [[json.dumps(info[k]) if isinstance(info[k], list) else info[k] for k in keys]]), EXIT_OK
    return json.dumps(info) + "\n", EXIT_OK


def _cmd_classify(args) -> tuple[str, int]:
    spec = FieldSpec.from_d(args.d)
    base = spec.parse_element(args.a)
    budget = _budget_from(args)
    header = ["p", "kind", "t", "norm", "order", "wieferich"]
    if args.prime is not None and args.p_max is not None:
        raise ValueError("choose either --prime or --p-max, not both")
    if args.prime is not None:
        rows, lines = [], []
        for P in primes_above(spec, args.prime):
            t_cell = "" if P.t is None else P.t
            try:
                r = place_report(P, base, budget)
            except ValueError:
                # the base lies in this place, so the Fermat quotient is degenerate
                rows.append([P.p, P.kind, t_cell, P.norm, "", ""])
                lines.append({"place": P.label(), "p": P.p, "kind": P.kind, "t": P.t,
                              "norm": P.norm, "order": None, "wieferich": None,
                              "note": "base lies in this place"})
                continue
            rows.append([P.p, P.kind, t_cell, r.norm,
                         "" if r.order is None else r.order, r.wieferich])
            lines.append(r.as_dict())
        if args.format == "csv":
            return _csv_text(header, rows), EXIT_OK
        return _json_lines(lines), EXIT_OK
    if args.p_max is not None:
        hits, tested = scan_wieferich_places(base, args.p_max, budget)
        if args.format == "csv":
            rows = [[r.place.p, r.place.kind, "" if r.place.t is None else r.place.t,
                     r.norm, "" if r.order is None else r.order, r.wieferich]
                    for r in hits]
            return _csv_text(header, rows), EXIT_OK
        lines = [r.as_dict() for r in hits]
        lines.append({"summary": {"tested": tested, "wieferich_count": len(hits)}})
        return _json_lines(lines), EXIT_OK
    info = {
        "base": base.coords(),
        "field": str(spec),
        "classification": classify_base(base).value,
        "norm": base.norm(),
    }
    if args.format == "csv":
        keys = ["base", "field", "classification", "norm"]
        return _csv_text(keys, [[info[k] for k in keys]]), EXIT_OK
    return json.dumps(info) + "\n", EXIT_OK


def _ideal_rows(part: str, factorization) -> list[list]:
    rows = []
    for P, e in factorization.items_sorted():
        rows.append([part, P.p, P.kind, "" if P.t is None else P.t, P.norm, e])
    return rows


def _cmd_decompose(args) -> tuple[str, int]:
    spec = FieldSpec.from_d(args.d)
    base = spec.parse_element(args.a)
    dec = squarefree_powerful_split(args.n, base, _budget_from(args))
    parts = {
        "squarefree": dec.squarefree,
        "powerful": dec.powerful,
        "level_squarefree": dec.level_squarefree,
        "level_powerful": dec.level_powerful,
    }
    if args.format == "csv":
        rows = []
        for name, factorization in parts.items():
            rows.extend(_ideal_rows(name, factorization))
        return _csv_text(["part", "p", "kind", "t", "norm", "exponent"], rows), EXIT_OK
    payload = dec.norm_summary()
    payload["base"] = base.coords()
    payload["field"] = str(spec)
    for name, factorization in parts.items():
        payload[name] = [
            {"p": P.p, "kind": P.kind, "t": P.t, "norm": P.norm, "exponent": e}
            for P, e in factorization.items_sorted()
        ]
    return json.dumps(payload) + "\n", EXIT_OK


def _cmd_census(args) -> tuple[str, int]:
    spec = FieldSpec.from_d(args.d)
    base = spec.parse_element(args.a)
    result = census(base, args.k, args.n_max, _budget_from(args), strategy=args.strategy)
    if args.format == "csv":
        rows = [
            [r.place.p, r.place.kind, "" if r.place.t is None else r.place.t,
             r.norm, r.discovered_at_level, r.residue_class]
            for r in result.records
        ]
        return _csv_text(["p", "kind", "t", "norm", "level", "residue_class"], rows), EXIT_OK
    summary = result.summary()
    if args.x_max is not None:
        summary["x_max"] = args.x_max
        summary["count_at_x_max"] = result.count_upto(args.x_max)
    lines = [r.as_dict() for r in result.records]
    lines.append({"summary": summary})
    return _json_lines(lines), EXIT_OK


def _cmd_verify(args) -> tuple[str, int]:
    spec = FieldSpec.from_d(args.d)
    base = spec.parse_element(args.a)
    outcome = run_full_verification(base, args.n_max, _budget_from(args))
    payload = outcome.as_dict()
    if args.format == "csv":
        rows = [
            [r["tag"], r["checked"], len(r["skipped"]), len(r["violations"]), r["passed"]]
            for r in payload["reports"]
        ]
        text = _csv_text(["tag", "checked", "skipped", "violations", "passed"], rows)
    else:
        text = json.dumps(payload) + "\n"
    return text, EXIT_OK if outcome.passed else EXIT_VIOLATION


def _cmd_exceptions(args) -> tuple[str, int]:
    union = exception_set_union(args.d_max)
    entries = [
        {"d": d, "x": e.x, "y": e.y, "norm": e.norm(), "element": str(e)}
        for d, e in union
    ]
    if args.format == "csv":
        rows = [[entry["d"], entry["x"], entry["y"], entry["norm"], entry["element"]]
                for entry in entries]
        return _csv_text(["d", "x", "y", "norm", "element"], rows), EXIT_OK
    lines = list(entries)
    lines.append({"summary": {"count": len(entries), "d_max": args.d_max}})
    return _json_lines(lines), EXIT_OK


def _cmd_quality(args) -> tuple[str, int]:
    spec = FieldSpec.from_d(args.d)
    alpha = spec.parse_element(args.alpha)
    beta = spec.parse_element(args.beta)
    report = abc_quality(alpha, beta, _budget_from(args))
    payload = report.as_dict()
    if args.format == "csv":
        keys = ["alpha", "beta", "max_norm", "radical_product", "height", "conductor", "quality"]
        return _csv_text(keys, [[payload[k] for k in keys]]), EXIT_OK
    return json.dumps(payload) + "\n", EXIT_OK


_HANDLERS = {
    "field": _cmd_field,
    "classify": _cmd_classify,
    "decompose": _cmd_decompose,
    "census": _cmd_census,
    "verify": _cmd_verify,
    "exceptions": _cmd_exceptions,
    "quality": _cmd_quality,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        text, code = _HANDLERS[args.command](args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
