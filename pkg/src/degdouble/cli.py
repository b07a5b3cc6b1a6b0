"""Command-line entry point: ``degdouble <subcommand> ...``.

Exit codes: 0 success, 2 failed assertion, 3 budget exhausted, 4 usage error.
Data goes to ``--output`` (default stdout); wall-clock timings go to a
separate metadata record (``--meta`` file, default stderr) so that data
output is byte-identical across runs and ``--threads`` settings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, checks, distinguish, enumeration, families
from .graph_core import (
    DEFAULT_PREDICATE,
    cycle_graph,
    from_edge_list_text,
    parse_predicate,
    to_edge_list_text,
    to_json_obj,
)

EXIT_OK, EXIT_ASSERT, EXIT_BUDGET, EXIT_USAGE = 0, 2, 3, 4

# beyond these, --force is required
SAFE_N = {
    "hamilton-cycles": 8,
    "hamilton-paths": 7,
    "two-regular": 8,
    "perfect-matchings": 10,
    "near-matchings": 9,
    "triangle-factors": 9,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(v):
    if isinstance(v, Fraction):
        return bounds.format_number(v)
    return v


def _emit_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps({k: _jsonable(v) for k, v in r.items()}) + "\n" for r in rows)
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k, "")) for k in cols})
        return buf.getvalue()
    cells = [[_cell(r.get(k, "")) for k in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return bounds.format_number(v)
    if v is None:
        return ""
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


def _write(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _meta(args, record: dict) -> None:
    line = json.dumps({"metadata": record}, sort_keys=True) + "\n"
    if getattr(args, "meta", None):
        Path(args.meta).write_text(line)
    else:
        sys.stderr.write(line)


def _failure(record: dict) -> None:
    sys.stderr.write(json.dumps({"failure": {k: _jsonable(v) for k, v in record.items()}}, sort_keys=True) + "\n")


def _check_range(args, kind: str, n: int) -> None:
    limit = SAFE_N.get(kind.partition(":")[0])
    if limit is not None and n > limit and not args.force:
        raise UsageError(f"n = {n} is beyond the safe range for {kind} (n <= {limit}); pass --force to run anyway")


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        a, b = text.split(":", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid range {text!r}")
    return list(range(lo, hi + 1))


def _predicate(args):
    try:
        return parse_predicate(args.predicate)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _budget(args) -> float:
    if args.budget <= 0:
        raise UsageError("budget must be positive")
    return args.budget


# ---------------------------------------------------------------- subcommands

def cmd_enumerate(args) -> int:
    _check_range(args, args.universe, args.n)
    graphs = enumeration.canonical_order(enumeration.universe(args.universe, args.n))
    if args.format == "edgelist":
        text = "".join(to_edge_list_text(G) + "\n" for G in graphs)
    else:
        text = "".join(json.dumps(to_json_obj(G)) + "\n" for G in graphs)
    _write(args, text)
    return EXIT_OK


def cmd_greedy(args) -> int:
    _check_range(args, args.universe, args.n)
    pred = _predicate(args)
    stream = enumeration.canonical_order(enumeration.universe(args.universe, args.n))
    fam = families.greedy_family(stream, pred, universe_tag=args.universe)
    _write(args, fam.to_jsonl())
    return EXIT_OK


def cmd_exact(args) -> int:
    _check_range(args, args.universe, args.n)
    pred = _predicate(args)
    rep = families.solve_universe(args.universe, args.n, pred, _budget(args), args.threads)
    _write(args, json.dumps(rep.data(), sort_keys=True) + "\n")
    _meta(args, {"subcommand": "exact", "elapsed_ms": round(rep.elapsed * 1000, 3)})
    return EXIT_OK if rep.status == "exact" else EXIT_BUDGET


def cmd_bounds(args) -> int:
    ns = _parse_range(args.n_range) if args.n_range else [args.n]
    if min(ns) < 3:
        raise UsageError("bounds need n >= 3")
    rows = [bounds.bounds_row(n, args.precision) for n in ns]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=bounds.BOUNDS_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _write(args, buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    names = checks.CHECKS if args.check == "all" else [args.check]
    rows = []
    for name in names:
        try:
            rows += checks.run_check(name, args.n, args.budget)
        except ValueError as exc:
            raise UsageError(f"check {name} at n = {args.n}: {exc}") from exc
    _write(args, _emit_rows(rows, args.format))
    failed = [r for r in rows if r.get("pass") is False]
    for r in failed:
        _failure(r)
    return EXIT_ASSERT if failed else EXIT_OK


def cmd_nu(args) -> int:
    if args.remark_check:
        recs = distinguish.remark_check(args.remark_check, _budget(args))
        rows = [{"n": r.n, "edges": [list(e) for e in r.edges], "copies": r.copies, "nu": r.nu,
                 "disjoint_pair_strict": r.disjoint_pair_strict,
                 "disjoint_pair_with_isolated": r.disjoint_pair_with_isolated,
                 "counterexample_strict": r.counterexample_strict,
                 "counterexample_with_isolated": r.counterexample_with_isolated} for r in recs]
        _write(args, _emit_rows(rows, args.format))
        return EXIT_OK
    if args.hamilton_cycle:
        G = cycle_graph(args.hamilton_cycle, list(range(1, args.hamilton_cycle + 1)))
    elif args.graph:
        G = from_edge_list_text(Path(args.graph).read_text())
    elif args.digraph:
        obj = json.loads(Path(args.digraph).read_text())
        G = distinguish.make_digraph(obj["n"], obj["arcs"])
    else:
        raise UsageError("nu needs --hamilton-cycle, --graph, --digraph or --remark-check")
    if G.n > 7 and not args.force:
        raise UsageError("copy universes beyond n = 7 need --force")
    rep = distinguish.nu(G, _budget(args))
    data = rep.data()
    data["isolated_vertices_flag"] = distinguish.has_isolated_vertex(G)
    _write(args, json.dumps(data, sort_keys=True) + "\n")
    _meta(args, {"subcommand": "nu", "elapsed_ms": round(rep.elapsed * 1000, 3)})
    return EXIT_OK if rep.status == "exact" else EXIT_BUDGET


def cmd_capacity(args) -> int:
    try:
        ch = distinguish.parse_channel_csv(Path(args.channel).read_text())
        counts = tuple(int(x) for x in args.composition.split(","))
        comp = distinguish.Composition(args.m, counts)
        rep = distinguish.composition_class_nu(ch, args.m, comp, _budget(args), args.max_m)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    data = rep.data()
    data["digraph"] = distinguish.channel_digraph(ch).to_json_obj()
    _write(args, json.dumps(data, sort_keys=True) + "\n")
    return EXIT_OK if rep.status == "exact" else EXIT_BUDGET


def cmd_thm3(args) -> int:
    _check_range(args, "hamilton-paths", args.n)
    rep = families.theorem3_sandwich(args.n, _budget(args), args.threads)
    data = rep.data()
    _write(args, json.dumps(data, sort_keys=True) + "\n")
    _meta(args, {"subcommand": "thm3",
                 "elapsed_ms": round((rep.cycles.elapsed + rep.paths.elapsed) * 1000, 3)})
    if rep.cycles.status != "exact" or rep.paths.status != "exact":
        return EXIT_BUDGET
    if not rep.lower_holds:
        _failure({"check": "thm3", "n": args.n, "expected": "M_paths >= ceil(2 M_cycles / (n-1))",
                  "M_paths": rep.paths.value, "required": rep.required})
        return EXIT_ASSERT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="degdouble", description="Degree-doubling graph families: enumeration, bounds, exact search.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, n_required=True):
        if n_required:
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--output", "-o")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--force", action="store_true", help="allow n beyond the safe default range")

    universes = "hamilton-cycles | hamilton-paths | two-regular[:shape] | perfect-matchings | near-matchings | triangle-factors"

    sp = sub.add_parser("enumerate", help="dump a universe")
    common(sp)
    sp.add_argument("--universe", default="hamilton-cycles", help=universes)
    sp.add_argument("--format", choices=("jsonl", "edgelist"), default="jsonl")
    sp.set_defaults(func=cmd_enumerate)

    for name, func in (("greedy", cmd_greedy), ("exact", cmd_exact)):
        sp = sub.add_parser(name, help=f"{name} degree-doubling family over a universe")
        common(sp)
        sp.add_argument("--universe", default="hamilton-cycles", help=universes)
        sp.add_argument("--predicate", default=str(DEFAULT_PREDICATE), help="maxdeg:D or avgdeg:ALPHA")
        sp.add_argument("--budget", type=float, default=300.0, help="seconds")
        sp.add_argument("--meta", help="file for the timing metadata record (default stderr)")
        sp.set_defaults(func=func)

    sp = sub.add_parser("bounds", help="CSV table of every closed-form count and bound")
    common(sp, n_required=False)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--n-range", help="LO:HI inclusive")
    sp.add_argument("--precision", type=int, default=bounds.DEFAULT_PREC, help="working precision in bits")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify", help="formula-versus-oracle checks")
    common(sp)
    sp.add_argument("--check", required=True, choices=checks.CHECKS + ("all",))
    sp.add_argument("--format", choices=("table", "jsonl", "csv"), default="table")
    sp.add_argument("--budget", type=float, default=60.0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("nu", help="maximum number of pairwise Shannon-distinguishable copies")
    common(sp, n_required=False)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--hamilton-cycle", type=int, metavar="N")
    g.add_argument("--graph", help="edge-list text file")
    g.add_argument("--digraph", help='JSON file {"n": .., "arcs": [[u, v], ...]}')
    g.add_argument("--remark-check", type=int, metavar="MAX_N",
                   help="nu for every graph class up to MAX_N vertices vs. the disjoint-neighbourhood hypothesis")
    sp.add_argument("--format", choices=("table", "jsonl", "csv"), default="jsonl")
    sp.add_argument("--budget", type=float, default=300.0)
    sp.add_argument("--meta")
    sp.set_defaults(func=cmd_nu)

    sp = sub.add_parser("capacity-demo", help="constant-composition code for a small channel")
    common(sp, n_required=False)
    sp.add_argument("--channel", required=True, help="CSV: header of outputs, rows of input + probabilities")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--composition", required=True, help="counts per input symbol, e.g. 1,1")
    sp.add_argument("--max-m", type=int, default=2)
    sp.add_argument("--budget", type=float, default=60.0)
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("thm3", help="cycles-versus-paths sandwich")
    common(sp)
    sp.add_argument("--budget", type=float, default=300.0)
    sp.add_argument("--meta")
    sp.set_defaults(func=cmd_thm3)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"degdouble {args.command}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
