"""Command-line front end.

Subcommands: count, ground, orbits, series, verify, export.  All big integers
are printed as decimal strings (also inside JSON, so nothing downstream can
round them); CSV output is comma-separated with a header row, UTF-8, LF line
endings.  Every invocation that writes an output file also writes a
``<file>.manifest.json`` with the tool version, arguments, wall time, cache
hits and a checksum of the written bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from hashlib import sha256
from pathlib import Path

from . import __version__, fplgrid, groundstate, series, verify
from .errors import GuardLimitError, StructuralFailureError
from .linkpat import LinkPattern, orbit_index, orbits


def _rows_to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[str(cell) for cell in row] for row in rows])
    return buf.getvalue()


def _rows_to_json(header: list[str], rows: list[list]) -> str:
    return json.dumps(
        [{key: str(cell) for key, cell in zip(header, row)} for row in rows], indent=2
    ) + "\n"


def _emit(args, header: list[str], rows: list[list], footer: str | None = None) -> None:
    if args.json:
        text = _rows_to_json(header, rows)
    else:
        text = _rows_to_csv(header, rows)
        if footer and not args.output:
            text += footer + "\n"
    if args.output:
        _write_output(args, text)
    else:
        sys.stdout.write(text)


def _write_output(args, text: str) -> None:
    started = getattr(args, "_start_time", time.monotonic())
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    out.write_bytes(data)
    manifest = {
        "tool": f"fploops {__version__}",
        "command": [args.command] + getattr(args, "_raw_args", []),
        "wall_time_s": round(time.monotonic() - started, 3),
        "cache_hits": groundstate.cache_hits,
        "output_sha256": sha256(data).hexdigest(),
    }
    Path(str(out) + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {out} ({len(data)} bytes) and its manifest", file=sys.stderr)


def _pattern_rows(n: int, parity: int, guard_override: bool) -> list[list]:
    counts = fplgrid.count_by_pattern(n, parity=parity, force=guard_override)
    orbs = orbits(n)
    rows = []
    for p in sorted(counts, key=lambda q: q.match):
        rep = orbs[orbit_index(p)].representative
        rows.append([p.to_text(), rep.to_text(), counts[p]])
    return rows


def cmd_count(args) -> int:
    if args.total:
        print(fplgrid.a_total(args.n))
        return 0
    if args.asm:
        matrices = {
            fplgrid.fpl_to_asm(c).entries
            for c in fplgrid.enumerate_fpl(args.n, args.parity)
        }
        print(len(matrices))
        return 0
    rows = _pattern_rows(args.n, args.parity, args.force)
    total = sum(int(r[2]) for r in rows)
    _emit(args, ["pattern_dyck_word", "orbit_representative", "count"], rows,
          footer=f"# total {total}")
    return 0


def cmd_ground(args) -> int:
    if args.n > args.guard and not args.force:
        raise GuardLimitError(
            f"n={args.n} exceeds the ground-state guard {args.guard}; use --force"
        )
    state = groundstate.ground_vector(args.n, basis="full" if args.full else "reduced")
    rows = [
        [LinkPattern(m).to_text(), size, comp]
        for m, size, comp in zip(state.reps, state.sizes, state.components)
    ]
    weighted = state.weighted_sum()
    footer = f"# weighted sum {weighted} vs total count {fplgrid.a_total(args.n)}"
    _emit(args, ["orbit_representative", "orbit_size", "component"], rows, footer=footer)
    return 0


def cmd_orbits(args) -> int:
    orbs = orbits(args.n)
    rows = [[o.representative.to_text(), o.size] for o in orbs]
    _emit(args, ["orbit_representative", "orbit_size"], rows,
          footer=f"# {len(orbs)} orbits, {sum(o.size for o in orbs)} patterns")
    return 0


def cmd_series(args) -> int:
    coeffs = series.orbit_count_series(args.order)
    print(json.dumps([str(c) for c in coeffs]))
    return 0


def cmd_verify(args) -> int:
    only = None
    if args.only:
        only = [token for chunk in args.only for token in chunk.split(",") if token]
    try:
        reports = verify.verify_all(args.n_max, only=only)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    all_pass = all(r.passed for r in reports)
    if args.json:
        text = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
        if args.output:
            _write_output(args, text)
        else:
            sys.stdout.write(text)
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.conjecture:10} [{r.parameter_range}]")
            for c in r.cases:
                if c.status == "mismatch":
                    print(f"      mismatch at {c.params}:")
                    print(f"        formula: {c.formula_value}")
                    print(f"        data:    {c.data_value}")
        print(f"{'all checks passed' if all_pass else 'SOME CHECKS FAILED'}")
    return 0 if all_pass else 1


def cmd_export(args) -> int:
    if not args.output:
        print("export requires --output", file=sys.stderr)
        return 2
    if args.what == "counts":
        rows = _pattern_rows(args.n, args.parity, args.force)
        _emit(args, ["pattern_dyck_word", "orbit_representative", "count"], rows)
    else:
        state = groundstate.ground_vector(args.n, basis="full" if args.full else "reduced")
        rows = [
            [LinkPattern(m).to_text(), size, comp]
            for m, size, comp in zip(state.reps, state.sizes, state.components)
        ]
        _emit(args, ["orbit_representative", "orbit_size", "component"], rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fploops",
        description="Exact fully-packed-loop counting, the loop-model ground state, "
        "and closed-form verification.",
    )
    parser.add_argument("--version", action="version", version=f"fploops {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    common.add_argument("--csv", action="store_true", help="emit CSV (the default)")
    common.add_argument("--cache-dir", help="override the ground-state cache directory")
    common.add_argument("--force", action="store_true", help="override guard limits")
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; results are deterministic and independent of this value",
    )
    common.add_argument("--output", help="write the result to a file (plus manifest)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", parents=[common], help="configuration counts")
    p_count.add_argument("--n", type=int, required=True)
    group = p_count.add_mutually_exclusive_group()
    group.add_argument("--total", action="store_true", help="print the total count")
    group.add_argument("--by-pattern", action="store_true", help="per-pattern table (default)")
    group.add_argument("--asm", action="store_true", help="count distinct sign matrices")
    p_count.add_argument("--parity", type=int, choices=(0, 1), default=0)
    p_count.set_defaults(func=cmd_count)

    p_ground = sub.add_parser("ground", parents=[common], help="exact ground-state table")
    p_ground.add_argument("--n", type=int, required=True)
    p_ground.add_argument("--full", action="store_true", help="per-pattern instead of per-orbit")
    p_ground.add_argument("--guard", type=int, default=12, help="size guard (default 12)")
    p_ground.set_defaults(func=cmd_ground)

    p_orbits = sub.add_parser("orbits", parents=[common], help="dihedral orbit table")
    p_orbits.add_argument("--n", type=int, required=True)
    p_orbits.set_defaults(func=cmd_orbits)

    p_series = sub.add_parser("series", parents=[common], help="orbit-count series")
    p_series.add_argument("--order", type=int, required=True)
    p_series.set_defaults(func=cmd_series)

    p_verify = sub.add_parser("verify", parents=[common], help="run the formula checks")
    p_verify.add_argument("--n-max", type=int, default=6)
    p_verify.add_argument(
        "--only", action="append", default=[],
        help=f"comma-separated check ids ({', '.join(verify.REPORT_IDS)})",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_export = sub.add_parser("export", parents=[common], help="write tables to files")
    p_export.add_argument("--what", choices=("counts", "ground"), required=True)
    p_export.add_argument("--n", type=int, required=True)
    p_export.add_argument("--parity", type=int, choices=(0, 1), default=0)
    p_export.add_argument("--full", action="store_true")
    p_export.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    args._raw_args = list(argv)
    args._start_time = time.monotonic()
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    if getattr(args, "cache_dir", None):
        groundstate.set_cache_dir(args.cache_dir)
    try:
        return args.func(args)
    except GuardLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except StructuralFailureError as exc:
        print(f"structural failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
