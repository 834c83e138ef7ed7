"""Command-line front end.

Exit status: 0 tg-hyperbolic, 1 not tg-hyperbolic, 2 criterion not applicable,
3 undecided (search budget exceeded), 4 parse or usage error.  For
``search-staking``: 0 when a placement is found, 1 when none is.
"""

from __future__ import annotations

import argparse
import glob as globlib
import json
import re
import sys
import time
from pathlib import Path

from .conditions import DEFAULT_BUDGET
from .diagram import Corner, Diagram, DiagramError, parse_diagram, serialize_diagram, trace_link_components
from .families import FAMILIES, generate
from .regions import trace_regions
from .verdict import (
    AmbientAssertions,
    Status,
    Verdict,
    iter_hyperbolic_stakings,
    stake,
    theorem_ambient_verdict,
    theorem_thickened_verdict,
)

EXIT_CODES = {
    Status.TG_HYPERBOLIC: 0,
    Status.NOT_TG_HYPERBOLIC: 1,
    Status.NOT_APPLICABLE: 2,
    Status.UNDECIDED: 3,
}
EXIT_USAGE = 4

_POLE = re.compile(r"^\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_diagram(path: str) -> Diagram:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_diagram(text)
    except DiagramError as exc:
        raise UsageError(f"{path}: {exc}") from None


def parse_poles(text: str) -> list[Corner]:
    poles = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        m = _POLE.match(item)
        if not m:
            raise UsageError(f"bad pole {item!r}, expected (c,j)")
        poles.append(Corner(int(m.group(1)), int(m.group(2))))
    return poles


def run_verdict(d: Diagram, theorem: str, assertions: AmbientAssertions, budget: int) -> Verdict:
    if theorem == "ambient":
        return theorem_ambient_verdict(d, assertions)
    return theorem_thickened_verdict(d, budget)


def build_report(d: Diagram, v: Verdict, source: str | None = None) -> dict:
    val = v.validation
    rm = trace_regions(d) if val.connected else None
    witnesses = []
    if v.reduced_witness is not None:
        witnesses.append({"condition": "reduced", "witness": v.reduced_witness.to_json()})
    for name, res in v.conditions.items():
        if res.passed is False:
            w = res.witness.to_json() if hasattr(res.witness, "to_json") else res.witness
            witnesses.append({"condition": name, "witness": w})
    return {
        "input": {
            "source": source,
            "crossings": d.n_crossings,
            "capped_genus": val.capped_genus,
            "punctures": [list(p) for p in d.punctures],
            "components": len(trace_link_components(d)),
            "regions": None if rm is None else len(rm),
        },
        "validation": {
            "connected": val.connected,
            "alternating": val.alternating,
            "has_crossing": val.has_crossing,
            "surface_is_disk": val.surface_is_disk,
            "capped_genus": val.capped_genus,
            "n_boundary": val.n_boundary,
            "messages": list(val.messages),
        },
        "verdict": v.to_json(),
        "witnesses": witnesses,
        "timings": {k: round(t, 6) for k, t in v.timings.items()},
    }


def _witness_line(name: str, w) -> str:
    if name == "ii":
        return f"region {w} has two or more punctures"
    if name == "iii":
        return f"edge {w.edge} has annuli {w.region_a} and {w.region_b} on its sides"
    if name == "iv":
        seq = " ".join(f"{p.crossing}/{p.axis}" for p in w.passages)
        return f"curve through crossing/axis {seq}"
    side = w.disk_side
    inside = sorted(side.crossings_inside)
    if name == "reduced":
        return f"circle through crossing {w.crossing} bounds a disk holding crossings {inside}"
    return f"circle across edges {list(w.circle.cut_edges)} bounds a disk holding crossings {inside}"


def format_text(report: dict, v: Verdict) -> str:
    inp = report["input"]
    lines = []
    if inp["source"]:
        lines.append(f"file: {inp['source']}")
    lines.append(f"crossings: {inp['crossings']}  genus: {inp['capped_genus']}  "
                 f"punctures: {len(inp['punctures'])}  components: {inp['components']}")
    lines.append(f"theorem: {v.theorem.value}")
    for name, ok in v.preconditions.items():
        lines.append(f"  precondition {name}: {'ok' if ok else 'FAILED'}")
    if v.reduced_witness is not None:
        lines.append(f"    {_witness_line('reduced', v.reduced_witness)}")
    for name, res in v.conditions.items():
        mark = {True: "pass", False: "FAIL", None: "undecided"}[res.passed]
        lines.append(f"  condition ({name}): {mark}")
        if res.passed is False:
            lines.append(f"    {_witness_line(name, res.witness)}")
        if res.note:
            lines.append(f"    note: {res.note}")
    for msg in v.diagnostics:
        lines.append(f"  note: {msg}")
    lines.append(f"status: {v.status.value}")
    return "\n".join(lines)


def emit(report: dict, v: Verdict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        print(format_text(report, v))


def _assertions(args) -> AmbientAssertions:
    try:
        return AmbientAssertions.parse(args.assert_ambient or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check(args) -> int:
    paths = [args.path] if args.path else []
    if args.glob:
        paths += sorted(globlib.glob(args.glob))
    if not paths:
        raise UsageError("give a diagram file or --glob pattern")
    assertions = _assertions(args)
    worst = 0
    for path in paths:
        d = read_diagram(path)
        v = run_verdict(d, args.theorem, assertions, args.budget)
        emit(build_report(d, v, path), v, args.format)
        worst = max(worst, EXIT_CODES[v.status])
    return worst


def cmd_stake(args) -> int:
    d = read_diagram(args.path)
    if d.punctures:
        raise UsageError(f"{args.path}: input already has punctures")
    poles = parse_poles(args.poles)
    try:
        staked = stake(d, poles)
    except DiagramError as exc:
        raise UsageError(str(exc)) from None
    v = run_verdict(staked, args.theorem, _assertions(args), args.budget)
    emit(build_report(staked, v, args.path), v, args.format)
    return EXIT_CODES[v.status]


def cmd_search_staking(args) -> int:
    d = read_diagram(args.path)
    if d.punctures:
        raise UsageError(f"{args.path}: input already has punctures")
    if args.max_poles < 1:
        raise UsageError("--max-poles must be positive")
    t0 = time.perf_counter()
    found = 0
    for s in iter_hyperbolic_stakings(d, args.max_poles, args.budget):
        found += 1
        poles = ";".join(f"({c},{j})" for c, j in s.poles)
        if args.format == "json":
            print(json.dumps({"regions": list(s.regions), "poles": [list(p) for p in s.poles],
                              "status": s.verdict.status.value}))
        else:
            print(f"regions {list(s.regions)}  poles {poles}")
        sys.stdout.flush()
        if not args.all:
            break
    if not found:
        msg = f"no hyperbolic staking with at most {args.max_poles} poles"
        if args.format == "json":
            print(json.dumps({"regions": None, "message": msg}))
        else:
            print(msg)
    print(f"searched in {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0 if found else 1


def _parse_params(items) -> dict[str, str]:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise UsageError(f"bad parameter {item!r}, expected key=value")
        out[key] = val
    return out


def cmd_generate(args) -> int:
    try:
        d = generate(args.family, _parse_params(args.params))
    except (ValueError, DiagramError) as exc:
        raise UsageError(str(exc)) from None
    text = serialize_diagram(d)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tgcheck",
        description="Decide tg-hyperbolicity of alternating link diagrams on punctured surfaces.",
        epilog="exit status: 0 TG_HYPERBOLIC, 1 NOT_TG_HYPERBOLIC, 2 NOT_APPLICABLE, "
               "3 UNDECIDED, 4 parse or usage error",
    )
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def verdict_flags(p):
        p.add_argument("--theorem", choices=["thickened", "ambient"], default="thickened")
        p.add_argument("--assert-ambient", metavar="FLAGS",
                       help="'all' or a comma list of: " + ", ".join(AmbientAssertions.names()))
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="node budget for the curve search (default %(default)s)")

    p = sub.add_parser("check", help="run the criterion on a diagram file")
    p.add_argument("path", nargs="?")
    p.add_argument("--glob", help="also check every file matching this pattern")
    verdict_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stake", help="add poles to a closed diagram and check it")
    p.add_argument("path")
    p.add_argument("--poles", required=True, help='corners, e.g. "(0,0);(0,2)"')
    verdict_flags(p)
    p.set_defaults(func=cmd_stake)

    p = sub.add_parser("search-staking", help="look for pole placements that make the link tg-hyperbolic")
    p.add_argument("path")
    p.add_argument("--max-poles", type=int, default=2)
    p.add_argument("--all", action="store_true", help="stream every passing placement")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_search_staking)

    p = sub.add_parser("generate", help="write a diagram from a built-in family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--params", nargs="*", metavar="KEY=VAL",
                   help="twist: k=, closure=clasp|torus; grid: p=, q=; sum: left=, right= (e.g. twist:3, grid:2x2)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tgcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
