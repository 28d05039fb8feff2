"""Command-line interface.

    flagvar describe   --type G --rank 2 --crossed 1
    flagvar submodules --type A --rank 3 --crossed 1,2 --format json
    flagvar classify   --max-rank 4 --crossing maximal --format json
    flagvar verify
    flagvar drops      --type B --rank 2 --crossed all --rational 2
    flagvar growth     --type G --rank 2 --crossed 1 --root 1,0 --root 1,1

Product flags use repeated ``--factor SERIES:RANK:CROSSED`` (e.g.
``--factor G:2:1 --factor C:3:2``).  Crossed nodes are Bourbaki numbers;
``all`` crosses every node.  Exit status: 0 ok, 1 failed expectations,
2 usage error, 3 enumeration guard overflow.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import catalog
from .drops import circle_drop, drop_lattice, parabolics_containing
from .parabolic import ParabolicFlag, flag_from_dict
from .rootsys import RootSystemType, SpecError
from .submodule import EnumerationOverflow, growth_vector

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3


class UsageError(Exception):
    def __init__(self, arg: str, message: str):
        super().__init__(f"{arg}: {message}")


def _parse_nodes(text: str, arg: str):
    text = text.strip()
    if text.lower() == "all":
        return "all"
    if not text or text == "-":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(arg, f"expected comma-separated node numbers or 'all', got {text!r}") from None


def _type(series: str, rank, arg: str) -> RootSystemType:
    try:
        return RootSystemType(series.upper(), int(rank))
    except (SpecError, ValueError) as exc:
        raise UsageError(arg, str(exc)) from None


def flag_from_args(args) -> ParabolicFlag:
    if args.spec:
        try:
            d = json.loads(args.spec)
        except json.JSONDecodeError as exc:
            raise UsageError("--spec", f"invalid JSON: {exc}") from None
        try:
            return flag_from_dict(d)
        except SpecError as exc:
            raise UsageError("--spec", str(exc)) from None
    if args.factor:
        factors, crossed = [], []
        for text in args.factor:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError("--factor", f"expected SERIES:RANK:CROSSED, got {text!r}")
            if not parts[1].isdigit():
                raise UsageError("--factor", f"rank must be an integer in {text!r}")
            t = _type(parts[0], parts[1], "--factor")
            factors.append(t.to_dict())
            crossed.append(_parse_nodes(parts[2], "--factor"))
        try:
            return flag_from_dict({"factors": factors, "crossed": crossed})
        except SpecError as exc:
            raise UsageError("--factor", str(exc)) from None
    if args.type is None or args.rank is None:
        raise UsageError("--type/--rank", "give --type and --rank, --factor, or --spec")
    t = _type(args.type, args.rank, "--rank" if args.type.upper() in "ABCDEFG" else "--type")
    if args.crossed is None:
        raise UsageError("--crossed", "required")
    nodes = _parse_nodes(args.crossed, "--crossed")
    try:
        return flag_from_dict({"factors": [t.to_dict()], "crossed": [nodes]})
    except SpecError as exc:
        raise UsageError("--crossed", str(exc)) from None


def _roots(rs) -> str:
    return " ".join("(" + ",".join(map(str, r)) + ")" for r in rs)


def cmd_describe(args, out) -> int:
    flag = flag_from_args(args)
    if args.format == "json":
        d = {
            "flag": flag.to_dict(),
            "label": flag.label,
            "dimension": flag.dimension,
            "omega": list(flag.omega),
            "compact": [list(r) for r in flag.compact],
            "noncompact": [list(r) for r in flag.noncompact],
            "levels": [flag.level(r) for r in flag.noncompact],
        }
        out.write(json.dumps(d, separators=(",", ":")) + "\n")
        return EXIT_OK
    out.write(f"flag {flag.label}\n")
    out.write(f"dim {flag.dimension}\n")
    out.write(f"omega {','.join(map(str, flag.omega))}\n")
    out.write(f"compact {len(flag.compact)}: {_roots(flag.compact)}\n")
    out.write(f"noncompact {len(flag.noncompact)}:\n")
    for r in flag.noncompact:
        out.write(f"  level {flag.level(r)}  ({','.join(map(str, r))})\n")
    return EXIT_OK


def _emit_records(records, fmt, out):
    if fmt == "json":
        out.write(catalog.records_to_jsonl(records))
    elif fmt == "csv":
        out.write(catalog.records_to_csv(records))
    else:
        out.write(catalog.records_to_table(records))


def cmd_submodules(args, out) -> int:
    flag = flag_from_args(args)
    rec = catalog.classify_flag(flag)
    if rec.error:
        raise EnumerationOverflow(catalog.default_cap())
    if args.format in ("json", "csv"):
        _emit_records([rec], args.format, out)
        return EXIT_OK
    out.write(f"{flag.label}: {rec.submodule_count} submodules\n")
    header = f"{'size':>4}  {'weight':<20} {'ratio':<6} nontriv frob contact fond  roots"
    out.write(header + "\n")
    for s in rec.submodules:
        roots = flag.roots_of(sum(1 << flag.bit(flag.system.positive[i]) for i in s["members"]))
        out.write(
            f"{s['size']:>4}  {','.join(map(str, s['weight'])):<20} {s['ratio'] or '-':<6} "
            f"{'y' if s['nontrivial'] else 'n':<7} {'y' if s['frobenius'] else 'n':<4} "
            f"{'y' if s['contact'] else 'n':<7} {'y' if s['first_order_nondegenerate'] else 'n':<4}  {_roots(roots)}\n"
        )
    return EXIT_OK


def cmd_classify(args, out) -> int:
    series = args.series.upper()
    for s in series:
        if s not in "ABCDEFG":
            raise UsageError("--series", f"unknown series {s!r}")
    records = catalog.classify_sweep(args.max_rank, args.crossing, series, workers=args.workers)
    _emit_records(records, args.format, out)
    return EXIT_OVERFLOW if any(r.error for r in records) else EXIT_OK


def cmd_verify(args, out) -> int:
    report = catalog.verify_corpus()
    if args.format == "json":
        rows = [
            {"example": r.example, "label": r.label, "provenance": r.provenance,
             "passed": r.passed, "expected": repr(r.expected), "computed": repr(r.computed)}
            for r in report.results
        ]
        out.write(json.dumps({"ok": report.ok, "results": rows}, separators=(",", ":")) + "\n")
    else:
        out.write(report.render() + "\n")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_drops(args, out) -> int:
    flag = flag_from_args(args)
    rational = None
    if args.rational is not None:
        rational = _parse_nodes(args.rational, "--rational")
        if rational == "all":
            rational = sorted(flag.crossed)
        bad = [r for r in rational if r not in flag.crossed]
        if bad:
            raise UsageError("--rational", f"nodes {bad} are not crossed in {flag.label}")
    q = circle_drop(flag, rational) if rational is not None else None
    if args.format == "json":
        d = drop_lattice(flag)
        if q is not None:
            d["circle"] = {
                "rational": sorted(rational),
                "crossed": sorted(q.crossed),
                "drops_to": [sorted(t.crossed) for t in parabolics_containing(flag) if q.drops_to(t.crossed)],
            }
        out.write(json.dumps(d, separators=(",", ":")) + "\n")
        return EXIT_OK
    out.write(f"drop targets of {flag.label}:\n")
    for t in parabolics_containing(flag):
        name = "G (point)" if t.is_point else t.flag.label
        line = f"  crossed {{{','.join(map(str, sorted(t.crossed)))}}}  {name}  [{t.equivalence}]"
        if q is not None:
            line += "  drops" if q.drops_to(t.crossed) else ""
        out.write(line + "\n")
    if q is not None:
        out.write(f"circle rule: Q has crossed {{{','.join(map(str, sorted(q.crossed)))}}}\n")
    return EXIT_OK


def cmd_growth(args, out) -> int:
    flag = flag_from_args(args)
    roots = []
    for text in args.root or []:
        try:
            roots.append(tuple(int(x) for x in text.split(",")))
        except ValueError:
            raise UsageError("--root", f"expected comma-separated integers, got {text!r}") from None
    if args.level is not None:
        roots.extend(r for r in flag.noncompact if flag.level(r) == args.level)
    for r in roots:
        if len(r) != flag.system.rank or not flag.is_noncompact(r):
            raise UsageError("--root", f"{r} is not a noncompact positive root of {flag.label}")
    sizes = growth_vector(flag, roots)
    if args.format == "json":
        out.write(json.dumps({"flag": flag.to_dict(), "roots": [list(r) for r in roots],
                              "growth": list(sizes)}, separators=(",", ":")) + "\n")
    else:
        out.write("(" + ",".join(map(str, sizes)) + ")\n")
    return EXIT_OK


def _add_flag_args(p):
    p.add_argument("--type", help="series letter A-G")
    p.add_argument("--rank", help="rank of the simple factor")
    p.add_argument("--crossed", help="comma-separated crossed nodes, or 'all' for the Borel")
    p.add_argument("--factor", action="append", help="SERIES:RANK:CROSSED, repeatable")
    p.add_argument("--spec", help="JSON flag descriptor")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagvar", description="Root-system combinatorics of flag varieties.")
    sub = parser.add_subparsers(dest="verb", required=True)
    fmt = dict(choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("describe", help="dimension, roots, omega, grading")
    _add_flag_args(p)
    p.add_argument("--format", **fmt)

    p = sub.add_parser("submodules", help="enumerate and classify submodules")
    _add_flag_args(p)
    p.add_argument("--format", **fmt)

    p = sub.add_parser("classify", help="classification sweep")
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--series", default="ABCDEFG")
    p.add_argument("--crossing", choices=("all", "maximal", "borel", "adjoint"), default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", **fmt)

    p = sub.add_parser("verify", help="check every worked example")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("drops", help="drop lattice and circle rule")
    _add_flag_args(p)
    p.add_argument("--rational", help="crossed nodes whose circles are rational")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("growth", help="growth vector of a plane field")
    _add_flag_args(p)
    p.add_argument("--root", action="append", help="noncompact root as comma-separated coefficients")
    p.add_argument("--level", type=int, help="add every noncompact root of this level")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


COMMANDS = {
    "describe": cmd_describe,
    "submodules": cmd_submodules,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "drops": cmd_drops,
    "growth": cmd_growth,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"flagvar {args.verb}: error: {exc}\n")
        return EXIT_USAGE
    except EnumerationOverflow as exc:
        err.write(f"flagvar {args.verb}: {exc}\n")
        return EXIT_OVERFLOW


def main():
    sys.exit(run())
