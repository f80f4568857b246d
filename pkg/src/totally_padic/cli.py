"""Command-line interface.

Subcommands: check, height, bounds, diameter, search, report, audit.
Exit codes: 0 success, 2 an undecided splitting was encountered (count on
stderr), 3 internal assertion failure (a record undercut a proved bound).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .bounds import (
    BOUND_KINDS,
    AdelicSetSpec,
    BoundSpec,
    all_bounds,
    bound_value,
    check_adelic_set,
    transfinite_diameter,
)
from .heights import discriminant_valuations, weil_height
from .intpoly import IntPolynomial
from .places import LocalFieldSpec
from .records import load_snapshot, records_paths
from .reporting import report_csv, report_json, report_plot, report_text
from .search import (
    BakerMahlerViolation,
    LowerBoundViolation,
    ResumeError,
    SearchConfig,
    audit_records,
    run_search,
)
from .splitting import is_totally_LS

EXIT_OK = 0
EXIT_UNDECIDED = 2
EXIT_ASSERTION = 3


def parse_coeffs(text: str) -> IntPolynomial:
    """Comma-separated integer coefficients, constant term first."""
    try:
        return IntPolynomial([int(t.strip()) for t in text.split(",") if t.strip()])
    except (TypeError, ValueError) as exc:
        raise SystemExit(f"bad coefficient list {text!r}: {exc}")


def parse_place_pf(text: str) -> LocalFieldSpec:
    """p[,f] — an unramified place over Q, the decidable kind."""
    parts = [t.strip() for t in text.split(",")]
    try:
        p = int(parts[0])
        f = int(parts[1]) if len(parts) > 1 else 1
        return LocalFieldSpec(p=p, e=1, f=f)
    except (ValueError, IndexError) as exc:
        raise SystemExit(f"bad place {text!r} (want p[,f]): {exc}")


def parse_place_full(text: str) -> LocalFieldSpec:
    """p[,e[,f[,q0[,N]]]] — anything the calculators accept."""
    parts = [t.strip() for t in text.split(",")]
    try:
        p = int(parts[0])
        e = int(parts[1]) if len(parts) > 1 else 1
        f = int(parts[2]) if len(parts) > 2 else 1
        q0 = int(parts[3]) if len(parts) > 3 else None
        N = Fraction(parts[4]) if len(parts) > 4 else Fraction(1)
        return LocalFieldSpec(p=p, e=e, f=f, q0=q0, N=N)
    except (ValueError, IndexError) as exc:
        raise SystemExit(f"bad place {text!r} (want p[,e[,f[,q0[,N]]]]): {exc}")


def parse_degrees(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    d = int(text)
    return d, d


def _convert_log(value: float, base: str) -> float:
    import math

    if base == "2":
        return value / math.log(2)
    if base == "10":
        return value / math.log(10)
    return value


def cmd_check(args) -> int:
    f = parse_coeffs(args.coeffs)
    places = [parse_place_pf(t) for t in args.place]
    verdict, reports = is_totally_LS(
        f, places, start_prec=args.start_prec, prec_cap=args.prec_cap
    )
    for rep in reports:
        print(json.dumps(rep.to_json(), sort_keys=True))
    print(json.dumps({"totally_LS": verdict}, sort_keys=True))
    if verdict is None:
        print("undecided splittings: 1 or more places", file=sys.stderr)
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_height(args) -> int:
    f = parse_coeffs(args.coeffs)
    rep = weil_height(f, eps=args.eps, tol=args.tol)
    out = rep.to_json()
    if args.log_base != "e":
        out["display_log_base"] = args.log_base
        out["h_display"] = _convert_log(rep.h, args.log_base)
    if args.place:
        places = [parse_place_pf(t) for t in args.place]
        out["place_pairwise_log_distance"] = [
            pv.to_json() for pv in discriminant_valuations(f, places)
        ]
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def cmd_bounds(args) -> int:
    places = tuple(parse_place_full(t) for t in args.place)
    if args.kind == "all":
        data = {k: (None if b is None else b.to_json()) for k, b in all_bounds(places).items()}
    else:
        data = {args.kind: bound_value(BoundSpec(places=places, kind=args.kind)).to_json()}
    if args.adelic_check:
        spec = AdelicSetSpec(places=places, epsilon=args.epsilon)
        data["adelic_set"] = check_adelic_set(spec).to_json()
    if args.table:
        for kind, b in data.items():
            if kind == "adelic_set":
                continue
            val = "n/a" if b is None else f"{b['value']:.10f} ({b['decimal']})"
            print(f"{kind:<16} {val}")
        if args.adelic_check:
            print(f"adelic_set       {json.dumps(data['adelic_set'], sort_keys=True)}")
    else:
        print(json.dumps(data, sort_keys=True))
    return EXIT_OK


def cmd_diameter(args) -> int:
    place = parse_place_full(args.place)
    res = transfinite_diameter(place, args.n, method=args.method, depth=args.depth)
    print(json.dumps(res.to_json(), sort_keys=True))
    return EXIT_OK


def cmd_search(args) -> int:
    places = tuple(parse_place_pf(t) for t in args.place)
    d_min, d_max = parse_degrees(args.degrees)
    if args.fresh and args.records:
        for path in records_paths(args.records):
            if os.path.exists(path):
                os.remove(path)
    cfg = SearchConfig(
        places=places,
        d_min=d_min,
        d_max=d_max,
        coeff_bound=args.coeff_bound,
        jobs=args.jobs,
        records_path=args.records,
        start_prec=args.start_prec,
        prec_cap=args.prec_cap,
    )

    def progress(cid, done, total):
        if args.verbose:
            print(f"chunk {cid} done ({done}/{total})", file=sys.stderr)

    try:
        outcome = run_search(
            cfg, stop_after_chunks=args.max_chunks, progress=progress
        )
    except (LowerBoundViolation, BakerMahlerViolation) as exc:
        print(f"internal assertion failure: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except ResumeError as exc:
        raise SystemExit(str(exc))
    print(
        json.dumps(
            {
                "complete": outcome.complete,
                "chunks": [outcome.completed_chunks, outcome.total_chunks],
                "undecided": outcome.undecided,
                "records": {
                    str(d): (e.to_json() if e else None)
                    for d, e in sorted(outcome.table.records.items())
                },
            },
            sort_keys=True,
        )
    )
    if outcome.undecided:
        print(f"undecided splittings: {outcome.undecided}", file=sys.stderr)
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_report(args) -> int:
    _, snapshot_file, _ = records_paths(args.records)
    table = load_snapshot(snapshot_file)
    if args.format == "json":
        sys.stdout.write(report_json(table))
    elif args.format == "csv":
        sys.stdout.write(report_csv(table))
    elif args.format == "text":
        sys.stdout.write(report_text(table))
    elif args.format == "plot":
        out = args.out or (args.records + ".png")
        report_plot(table, out)
        print(f"wrote {out}")
    return EXIT_OK


def cmd_audit(args) -> int:
    problems = audit_records(args.records)
    if not problems:
        print("audit clean")
        return EXIT_OK
    for p in problems:
        print(f"AUDIT: {p}", file=sys.stderr)
    if any("lower bound" in p for p in problems):
        return EXIT_ASSERTION
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="totally-padic",
        description="Splitting tests, certified heights, capacity bound "
        "constants and small-height searches for totally p-adic numbers.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    # let coefficient lists like -17,0,1 pass as positionals
    coeff_arg = re.compile(r"^-\d+(,|$)")

    pc = sub.add_parser("check", help="decide whether all roots lie in the chosen local fields")
    pc._negative_number_matcher = coeff_arg
    pc.add_argument("coeffs", help="comma-separated integer coefficients, constant first")
    pc.add_argument("--place", action="append", required=True, metavar="p[,f]")
    pc.add_argument("--start-prec", type=int, default=32)
    pc.add_argument("--prec-cap", type=int, default=None)
    pc.set_defaults(func=cmd_check)

    ph = sub.add_parser("height", help="certified Weil height from a minimal polynomial")
    ph._negative_number_matcher = coeff_arg
    ph.add_argument("coeffs")
    ph.add_argument("--place", action="append", default=[], metavar="p[,f]",
                    help="also emit per-place pairwise log-distance sums")
    ph.add_argument("--eps", type=float, default=1e-12)
    ph.add_argument("--tol", type=float, default=1e-10)
    ph.add_argument("--log-base", choices=("e", "2", "10"), default="e")
    ph.set_defaults(func=cmd_height)

    pb = sub.add_parser("bounds", help="closed-form bound constants")
    pb.add_argument("--place", action="append", required=True, metavar="p[,e[,f[,q0[,N]]]]")
    pb.add_argument("--kind", choices=BOUND_KINDS + ("all",), default="all")
    pb.add_argument("--table", action="store_true", help="plain-text table instead of JSON")
    pb.add_argument("--json", dest="table", action="store_false")
    pb.add_argument("--adelic-check", action="store_true",
                    help="verify the upper-bound construction's capacity product")
    pb.add_argument("--epsilon", type=float, default=0.0)
    pb.set_defaults(func=cmd_bounds)

    pd = sub.add_parser("diameter", help="n-point transfinite diameter of the local integers")
    pd.add_argument("--place", required=True, metavar="p[,e[,f[,q0[,N]]]]")
    pd.add_argument("-n", type=int, required=True)
    pd.add_argument("--method", choices=("equidistribution_formula", "brute_force"),
                    default="equidistribution_formula")
    pd.add_argument("--depth", type=int, default=3)
    pd.set_defaults(func=cmd_diameter)

    ps = sub.add_parser("search", help="exhaustive small-height search over a coefficient box")
    ps.add_argument("--place", action="append", required=True, metavar="p[,f]")
    ps.add_argument("--degrees", required=True, metavar="LO..HI")
    ps.add_argument("--coeff-bound", type=int, required=True)
    ps.add_argument("--jobs", type=int, default=1)
    ps.add_argument("--records", default=None, metavar="PATH.jsonl")
    ps.add_argument("--start-prec", type=int, default=32)
    ps.add_argument("--prec-cap", type=int, default=None)
    ps.add_argument("--fresh", action="store_true", help="discard existing records files first")
    ps.add_argument("--max-chunks", type=int, default=None, help=argparse.SUPPRESS)
    ps.add_argument("--verbose", action="store_true")
    ps.set_defaults(func=cmd_search)

    pr = sub.add_parser("report", help="bounds vs records comparison document")
    pr.add_argument("--records", required=True)
    pr.add_argument("--format", choices=("json", "csv", "text", "plot"), default="text")
    pr.add_argument("--out", default=None, help="output file for --format plot")
    pr.set_defaults(func=cmd_report)

    pa = sub.add_parser("audit", help="re-verify every stored record from a cold start")
    pa.add_argument("--records", required=True)
    pa.set_defaults(func=cmd_audit)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
