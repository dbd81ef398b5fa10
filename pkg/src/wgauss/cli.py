"""Command-line front end.

Exit codes: 0 success (or all checks passed), 1 a check failed, 2 the curve
spec could not be parsed, 3 regular-sequence certification failed, 4 a
precondition was violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .cring import CompleteIntersection, curve_invariants, h0_line, hilbert_function
from .errors import CertificationError, InvalidInputError, SpecParseError
from .gaussmaps import gauss_ci, gauss_pn, mu_h
from .specs import PRESETS, load_curve_spec, preset
from .verify import build_jobs, format_table, results_to_json, run_jobs

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CERT, EXIT_PRECONDITION = 0, 1, 2, 3, 4


def _load_curve(args) -> CompleteIntersection:
    if getattr(args, "preset", None):
        return preset(args.preset)
    if getattr(args, "spec", None):
        spec = load_curve_spec(args.spec)
        if args.seed is not None and spec.forms == "random":
            spec = type(spec)(spec.n, spec.degrees, spec.forms, args.seed, spec.label)
        return spec.build()
    raise InvalidInputError("give --spec FILE or --preset NAME")


def cmd_hilbert(args) -> int:
    ci = _load_curve(args)
    rows = []
    for m in range(args.m_from, args.m_to + 1):
        series = ci.series_coefficient(m)
        computed = hilbert_function(ci, m)
        rows.append({"m": m, "hilbert": computed, "series": series, "match": computed == series})
    if args.json:
        print(json.dumps({"instance": ci.label, "rows": rows}, sort_keys=True, indent=2))
    elif args.csv:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["m", "hilbert", "series", "match"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(f"# {ci.label}")
        print(f"{'m':>4} {'HF(m)':>8} {'series':>8}  match")
        for row in rows:
            print(f"{row['m']:>4} {row['hilbert']:>8} {row['series']:>8}  {'yes' if row['match'] else 'NO'}")
    return EXIT_OK


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
        return
    d = report.to_dict()
    d.pop("matrix", None)
    width = max(len(k) for k in d)
    for k in sorted(d):
        if d[k] is not None:
            print(f"{k:<{width}}  {d[k]}")
    if report.matrix is not None:
        print("matrix (row, col, value):")
        for i, j, v in report.matrix:
            print(f"  {i} {j} {v}")


def cmd_gauss(args) -> int:
    if args.pn is not None:
        report = gauss_pn(args.pn, args.e, args.a, args.b, dump_matrix=args.dump_matrix)
    else:
        ci = _load_curve(args)
        report = gauss_ci(ci, args.e, args.a, args.b, dump_matrix=args.dump_matrix)
        if report.obstructed and not args.allow_lower_bound:
            # the codomain comes from adjunction, so the report stays exact
            print(
                f"note: h^1(N*_X({report.t})) != 0; the Euler presentation has dimension "
                f"{report.euler_quotient_dim}, true codomain {report.codomain_dim}",
                file=sys.stderr,
            )
    _print_report(report, args.json)
    return EXIT_OK


def cmd_tangent(args) -> int:
    from .verify import check_tangent_ci

    ci = _load_curve(args)
    check = check_tangent_ci(ci, args.h)
    if args.json:
        print(json.dumps(check.to_dict(), sort_keys=True, indent=2))
    else:
        c = check.computed
        print(f"# {ci.label}, h = {args.h}")
        for key in ("genus", "xi", "zeta", "r", "rank_mu", "rank_upper_bound", "coker_mu", "h0_normal", "oracle"):
            print(f"{key:<18}{c[key]}")
        print(f"{'tangent_dim':<18}{c['coker_mu']}")
        print(f"{'verdict':<18}{check.verdict}")
    return EXIT_OK if check.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    curves = {name: preset(name) for name in sorted(PRESETS)}
    if args.spec:
        ci = _load_curve(argparse.Namespace(preset=None, spec=args.spec, seed=args.seed))
        curves = {ci.label: ci} if args.only_spec else {**curves, ci.label: ci}
    opts = {"n": args.n, "e": args.e, "max_t": args.max_t, "g": args.g, "h": args.h, "window": args.window, "t0": args.t0}
    jobs = build_jobs(args.suite, curves, opts)
    results = run_jobs(jobs)
    if args.json:
        print(results_to_json(results))
    else:
        print(format_table(results))
        fails = sum(1 for r in results if not r.ok)
        print(f"\n{len(results)} checks, {fails} failed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wgauss", description="Weighted Gaussian maps on projective spaces and complete intersection curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def curve_args(p):
        p.add_argument("--spec", metavar="FILE", help="curve-spec JSON file")
        p.add_argument("--preset", choices=sorted(PRESETS), help="shipped preset instance")
        p.add_argument("--seed", type=int, default=None, help="override the seed of a random spec")

    p = sub.add_parser("hilbert", help="Hilbert function table with the closed-form series")
    curve_args(p)
    p.add_argument("--from", dest="m_from", type=int, default=0)
    p.add_argument("--to", dest="m_to", type=int, default=8)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("gauss", help="rank report of a weighted Gaussian map")
    curve_args(p)
    p.add_argument("--pn", type=int, metavar="N", help="work on P^N instead of a curve")
    p.add_argument("-e", type=int, default=1)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--dump-matrix", action="store_true")
    p.add_argument("--allow-lower-bound", action="store_true", help="silence the note on obstructed twists")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("tangent", help="tangent dimension from the cokernel of mu_h")
    curve_args(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("all",) + ("lemma1", "proposition", "theorem25", "kernel-bound", "tangent", "theorem34"))
    p.add_argument("--spec", metavar="FILE", help="add a curve-spec instance to the curve suites")
    p.add_argument("--only-spec", action="store_true", help="run curve suites on --spec only")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("-e", "--e", type=int)
    p.add_argument("--max-t", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--t0", type=int)
    p.add_argument("--window", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERT
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
