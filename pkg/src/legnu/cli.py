"""Command-line surface: evaluate, tabulate, verify, truncation-study.

All data goes to stdout, diagnostics to stderr.  Output is deterministic:
identical invocations produce byte-identical output.  Numbers are printed
in shortest round-trip form (full binary64 fidelity, locale-independent).

Exit codes: 0 success; 1 verification failure; 2 usage or domain error;
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .core import DomainError
from .legendre import d2p_dnu2_0, d3p_dnu3_0, dp_dnu0, legendre_p, maclaurin_p
from .verify import GridSpec, report_lines, reports_to_json, run_all

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3

TARGETS = ("p", "d1", "d2", "d3", "maclaurin")
FORMATS = ("csv", "json", "pretty")


def _fmt(x: float) -> str:
    return repr(float(x))


def _print_csv(header: list[str], rows: list[list[str]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _print_pretty(header: list[str], rows: list[list[str]]) -> None:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _print_table(fmt: str, header: list[str], rows: list[list[str]],
                 records: list[dict]) -> None:
    if fmt == "csv":
        _print_csv(header, rows)
    elif fmt == "json":
        print(json.dumps({"records": records}, indent=2))
    else:
        _print_pretty(header, rows)


def _shifted_z_start(z_start: float) -> float:
    """The grid start is exclusive at -1; forgive and shift instead of erroring."""
    if z_start <= -1.0:
        shifted = -1.0 + 1e-9
        print(f"warning: z-start {z_start!r} is outside (-1, 1]; shifted to {shifted!r}",
              file=sys.stderr)
        return shifted
    return z_start


def _parse_targets(raw: list[str] | None) -> list[str]:
    names = []
    for item in raw or ["p"]:
        names.extend(s for s in item.split(",") if s)
    for name in names:
        if name not in TARGETS:
            raise DomainError(f"unknown target {name!r}; expected one of {', '.join(TARGETS)}")
    return [t for t in TARGETS if t in set(names)]


def _row_values(z: float, targets: list[str], nu: float, order: int) -> tuple[dict, bool]:
    """Values for one grid point; the flag reports row-level convergence."""
    values: dict = {}
    ok = True
    for t in targets:
        if t == "p":
            r = legendre_p(nu, z)
            values[t] = r.value
            ok = ok and r.converged
        elif t == "d1":
            values[t] = dp_dnu0(z)
        elif t == "d2":
            values[t] = d2p_dnu2_0(z)
        elif t == "d3":
            values[t] = d3p_dnu3_0(z)
        else:
            values[t] = maclaurin_p(nu, z, order)
    return values, ok


def _cmd_eval(args: argparse.Namespace) -> int:
    what = args.what
    if what == "p":
        r = legendre_p(args.nu, args.z)
        if not r.converged:
            print(f"error: series did not converge at nu={args.nu!r} z={args.z!r} "
                  f"(error estimate {r.abs_err_est!r})", file=sys.stderr)
            return EXIT_NONCONVERGED
        value = r.value
    elif what == "d1":
        value = dp_dnu0(args.z)
    elif what == "d2":
        value = d2p_dnu2_0(args.z)
    elif what == "d3":
        value = d3p_dnu3_0(args.z)
    else:
        value = maclaurin_p(args.nu, args.z, args.order)

    order = args.order if what == "maclaurin" else None
    if args.format == "csv":
        _print_csv(["what", "nu", "z", "order", "value"],
                   [[what, _fmt(args.nu), _fmt(args.z),
                     "" if order is None else str(order), _fmt(value)]])
    elif args.format == "json":
        print(json.dumps({"what": what, "nu": args.nu, "z": args.z,
                          "order": order, "value": value}, indent=2))
    else:
        print(_fmt(value))
    return EXIT_OK


def _cmd_tabulate(args: argparse.Namespace) -> int:
    targets = _parse_targets(args.what)
    grid = GridSpec(_shifted_z_start(args.z_start), args.z_end, args.count, args.spacing)
    header = ["z", "status"] + targets
    rows, records = [], []
    n_failed = 0
    for z in grid.points():
        z = float(z)
        values, ok = _row_values(z, targets, args.nu, args.order)
        if not ok:
            n_failed += 1
        status = "ok" if ok else "nonconverged"
        rows.append([_fmt(z), status] + [_fmt(values[t]) for t in targets])
        records.append({"z": z, "status": status, **{t: float(values[t]) for t in targets}})
    _print_table(args.format, header, rows, records)
    return EXIT_NONCONVERGED if n_failed == len(rows) else EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    overrides = {}
    for item in args.tol or []:
        name, sep, raw = item.partition("=")
        if not sep or not name:
            print(f"error: --tol expects IDENTITY=VALUE, got {item!r}", file=sys.stderr)
            return EXIT_USAGE
        try:
            overrides[name] = float(raw)
        except ValueError:
            print(f"error: bad tolerance value in {item!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        reports = run_all(overrides)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "json":
        print(reports_to_json(reports))
    elif args.format == "csv":
        header = ["identity_id", "samples", "max_residual", "mean_residual",
                  "argmax_location", "tolerance", "passed"]
        rows = [[r.identity_id, str(r.samples), _fmt(r.max_residual), _fmt(r.mean_residual),
                 _fmt(r.argmax_location), _fmt(r.tolerance), str(r.passed).lower()]
                for r in reports]
        _print_csv(header, rows)
    else:
        for line in report_lines(reports):
            print(line)
        n_pass = sum(r.passed for r in reports)
        print(f"{n_pass}/{len(reports)} identities passed")

    for r in reports:
        if not r.passed:
            print(f"identity failed: {r.identity_id} "
                  f"(max residual {r.max_residual!r} > tolerance {r.tolerance!r})",
                  file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def _cmd_truncation_study(args: argparse.Namespace) -> int:
    if args.nu_start < -0.5 or args.nu_end > 0.5:
        raise DomainError(
            f"degree grid must lie within [-0.5, 0.5], got [{args.nu_start}, {args.nu_end}]"
        )
    nu_grid = GridSpec(args.nu_start, args.nu_end, args.nu_count)
    z_grid = GridSpec(_shifted_z_start(args.z_start), args.z_end, args.count, args.spacing)
    zs = [float(z) for z in z_grid.points()]

    header = ["nu", "order", "status", "max_abs_err"]
    rows, records = [], []
    n_failed = 0
    for nu in nu_grid.points():
        nu = float(nu)
        ref, ref_ok = [], True
        for z in zs:
            r = legendre_p(nu, z)
            ref.append(r.value)
            ref_ok = ref_ok and r.converged
        status = "ok" if ref_ok else "nonconverged"
        if not ref_ok:
            n_failed += 1
        for order in range(4):
            err = max(abs(maclaurin_p(nu, z, order) - p) for z, p in zip(zs, ref))
            rows.append([_fmt(nu), str(order), status, _fmt(err)])
            records.append({"nu": nu, "order": order, "status": status, "max_abs_err": err})
    _print_table(args.format, header, rows, records)
    return EXIT_NONCONVERGED if n_failed == args.nu_count else EXIT_OK


def _add_format_flag(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--format", choices=FORMATS, default=default,
                   help=f"output format (default {default})")


def _add_z_grid_flags(p: argparse.ArgumentParser, default_count: int) -> None:
    p.add_argument("--z-start", type=float, default=-0.9, help="grid start (default -0.9)")
    p.add_argument("--z-end", type=float, default=1.0, help="grid end (default 1.0)")
    p.add_argument("--count", type=int, default=default_count,
                   help=f"number of grid points (default {default_count})")
    p.add_argument("--spacing", choices=("uniform", "chebyshev"), default="uniform",
                   help="grid spacing (default uniform)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legnu",
        description="Legendre function of real degree, its degree-derivatives at zero, "
                    "and numerical verification of the identities behind them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one quantity at one point")
    p.add_argument("--what", choices=TARGETS, required=True,
                   help="p, d1/d2/d3 (degree-derivatives at 0), or maclaurin")
    p.add_argument("--nu", type=float, default=0.0, help="degree (default 0)")
    p.add_argument("--z", type=float, required=True, help="argument in (-1, 1]")
    p.add_argument("--order", type=int, choices=(0, 1, 2, 3), default=3,
                   help="truncation order for maclaurin (default 3)")
    _add_format_flag(p, "pretty")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("tabulate", help="tabulate quantities over a z grid")
    p.add_argument("--what", action="append", metavar="TARGET",
                   help="column to emit (repeatable or comma-separated; default p)")
    p.add_argument("--nu", type=float, default=0.0, help="degree for p/maclaurin (default 0)")
    p.add_argument("--order", type=int, choices=(0, 1, 2, 3), default=3,
                   help="truncation order for maclaurin (default 3)")
    _add_z_grid_flags(p, 101)
    _add_format_flag(p, "csv")
    p.set_defaults(func=_cmd_tabulate)

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--tol", action="append", metavar="IDENTITY=VALUE",
                   help="per-identity tolerance override (repeatable; unique prefixes ok)")
    _add_format_flag(p, "pretty")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("truncation-study",
                       help="max truncation error of the degree expansion per order")
    p.add_argument("--nu-start", type=float, default=0.05, help="degree grid start (default 0.05)")
    p.add_argument("--nu-end", type=float, default=0.2, help="degree grid end (default 0.2)")
    p.add_argument("--nu-count", type=int, default=4, help="degree grid points (default 4)")
    _add_z_grid_flags(p, 50)
    _add_format_flag(p, "csv")
    p.set_defaults(func=_cmd_truncation_study)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
