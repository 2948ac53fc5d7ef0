"""casq command-line front end.

    casq run <scenario.json> [--out FILE --format csv|json|svg-plotdata]
    casq sweep <scenario.json> --param KEY (--from A --to B --points N [--log]
               | --values v1,v2,...) [--jobs N] [--out FILE --format ...]
    casq species list | show NAME
    casq selftest

Exit codes: 0 success, 2 parse/validation errors, 3 numerical
non-convergence, 4 I/O errors. The species database resolves from
--species-db, then $CASQ_SPECIES_DB, then the bundled demo database.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import NumericalError, ParseError, ValidationError
from .scenarios import emit, format_float, parse_scenario_dict, run_scenario, sweep
from .species import (
    alpha_static,
    equivalent_radius,
    mean_square_dipole,
    resolve_species_db,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _load_scenario_data(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc


def _cmd_run(args) -> int:
    data = _load_scenario_data(args.scenario)
    db = resolve_species_db(args.species_db)
    sc = parse_scenario_dict(data, db, source=args.scenario)
    report = run_scenario(sc)
    text = emit(report, args.format, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    return EXIT_OK


def _sweep_values(args) -> list[float]:
    try:
        if args.values:
            return [float(v) for v in args.values.split(",") if v.strip()]
        missing = [
            name
            for name, val in (("--from", args.start), ("--to", args.stop), ("--points", args.points))
            if val is None
        ]
        if missing:
            raise ValidationError(
                f"sweep needs either --values or all of --from/--to/--points (missing {missing})"
            )
        n = int(args.points)
        a, b = float(args.start), float(args.stop)
    except ValueError as exc:
        raise ValidationError(f"sweep range arguments must be numeric: {exc}") from exc
    if n < 2:
        raise ValidationError("--points must be >= 2")
    if args.log:
        if not (a > 0 and b > 0):
            raise ValidationError("--log sweeps need positive endpoints")
        la, lb = math.log10(a), math.log10(b)
        return [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _cmd_sweep(args) -> int:
    data = _load_scenario_data(args.scenario)
    values = _sweep_values(args)
    rows = sweep(data, args.param, values, jobs=args.jobs, species_db_path=args.species_db)
    text = emit(rows, args.format, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_species(args) -> int:
    db = resolve_species_db(args.species_db)
    if args.species_cmd == "list":
        for s in db:
            print(f"{s.name}  ({len(s.transitions)} transition"
                  f"{'s' if len(s.transitions) != 1 else ''})")
        return EXIT_OK
    by_name = {s.name: s for s in db}
    if args.name not in by_name:
        raise ValidationError(f"unknown species {args.name!r} (known: {sorted(by_name)})")
    s = by_name[args.name]
    print(f"name: {s.name}")
    print(f"alpha_static_F_m2: {format_float(alpha_static(s))}")
    print(f"equivalent_radius_m: {format_float(equivalent_radius(s))}")
    print(f"mean_square_dipole_C2m2: {format_float(mean_square_dipole(s))}")
    print("transitions:")
    for t in s.transitions:
        print(
            f"  omega_eg_rad_per_s: {format_float(t.omega_eg)}  "
            f"d2_C2m2: {format_float(t.d2)}"
        )
    return EXIT_OK


def _cmd_selftest(_args) -> int:
    from .selftest import run_selftest

    return EXIT_OK if run_selftest() else EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="casq",
        description="Numerical toolkit for motion-induced vacuum phases and photon emission.",
    )
    ap.add_argument("--species-db", default=None, help="Path to a species database JSON.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    run_p = sub.add_parser("run", help="Run one scenario file.")
    run_p.add_argument("scenario")
    run_p.add_argument("--out", default=None, help="Output file ('-' for stdout).")
    run_p.add_argument(
        "--format", default="json", choices=["csv", "json", "svg-plotdata"]
    )
    run_p.set_defaults(func=_cmd_run)

    sw = sub.add_parser("sweep", help="Sweep one scenario parameter.")
    sw.add_argument("scenario")
    sw.add_argument("--param", required=True, help="Dotted path into the scenario JSON.")
    sw.add_argument("--from", dest="start", default=None, help="Range start.")
    sw.add_argument("--to", dest="stop", default=None, help="Range end.")
    sw.add_argument("--points", default=None, help="Number of range points (>= 2).")
    sw.add_argument("--log", action="store_true", help="Log-spaced range.")
    sw.add_argument("--values", default=None, help="Explicit comma-separated values.")
    sw.add_argument("--jobs", type=int, default=1, help="Parallel workers.")
    sw.add_argument("--out", default=None)
    sw.add_argument("--format", default="csv", choices=["csv", "json", "svg-plotdata"])
    sw.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("species", help="Inspect the species database.")
    spsub = sp.add_subparsers(dest="species_cmd", required=True)
    spsub.add_parser("list").set_defaults(func=_cmd_species)
    show = spsub.add_parser("show")
    show.add_argument("name")
    show.set_defaults(func=_cmd_species)

    st = sub.add_parser("selftest", help="Run the acceptance criteria suite.")
    st.set_defaults(func=_cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
