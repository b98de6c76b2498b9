"""``forts`` command line: enumerate, survey, tables, verify, gen-trees."""

from __future__ import annotations

import argparse
import json
import sys

from .formulas import crossover_check, forest_max_table, recursion_bound_check, theorem1_check, verify_inequality_lemmas
from .fort_enum import enumerate_minimal_forts
from .graph import GraphError, is_tree, parse_edge_list
from .oracle import ORACLE_MAX_VERTICES, TooLargeForOracle, brute_force_minimal_forts
from .survey import (
    DEFAULT_N_CEILING,
    TABLE1_HEADER,
    TABLE2_HEADER,
    TABLE3_HEADER,
    MissingSurveyData,
    OracleMismatch,
    RunConfig,
    read_survey_csv,
    rows_to_csv,
    run_survey,
    survey_rows_for,
    table1,
    table2,
    table3,
    table_to_csv,
    tree_maxima,
    write_survey_csv,
)
from .treegen import MalformedGraph6, decode_graph6, encode_graph6, generate_free_trees, write_graph6_file


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    if args.edges:
        with open(args.edges, encoding="utf-8") as fh:
            g = parse_edge_list(fh.read())
    else:
        g = decode_graph6(args.g6)
    if is_tree(g):
        forts, method = enumerate_minimal_forts(g), "tree-enumerator"
    else:
        if g.n > ORACLE_MAX_VERTICES:
            raise TooLargeForOracle(f"non-tree with {g.n} vertices exceeds the oracle cap of {ORACLE_MAX_VERTICES}")
        forts, method = brute_force_minimal_forts(g), "brute-force"
    if args.json:
        print(json.dumps({"n": g.n, "method": method, "count": len(forts), "forts": [f.to_list() for f in forts]}))
    else:
        for f in forts:
            print(f.to_list())
        print(f"count: {len(forts)}")
    return 0


def cmd_survey(args) -> int:
    cfg = RunConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        workers=args.workers if args.workers else RunConfig().workers,
        oracle_sample=args.oracle_sample,
        seed=args.seed,
        allow_long=args.allow_long,
        timing=not args.no_timing,
        input_path=args.input,
        output_format=args.format,
    )
    rows = run_survey(cfg)
    if args.format == "json":
        text = json.dumps([r.as_record() for r in rows], indent=1) + "\n"
        _emit(text, args.out)
    elif args.out:
        write_survey_csv(args.out, rows)
    else:
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _survey_data(args, n_max: int):
    cached = read_survey_csv(args.survey) if args.survey else []
    missing_long = [n for n in range(DEFAULT_N_CEILING + 1, n_max + 1) if n not in {r.n for r in cached}]
    if missing_long and not args.allow_long:
        raise MissingSurveyData(f"n = {missing_long} need --survey data or --allow-long")
    return survey_rows_for(n_max, RunConfig(workers=args.workers or RunConfig().workers, timing=True), cached)


def cmd_tables(args) -> int:
    if args.table == 2:
        rows = _survey_data(args, args.n_max) if (args.survey or args.from_survey) else None
        body = table2(rows, args.n_max)
        header = TABLE2_HEADER
    elif args.table == 1:
        body = table1(_survey_data(args, args.n_max), args.n_max)
        header = TABLE1_HEADER
    else:
        rows = _survey_data(args, args.n_max)
        body = table3([r for r in rows if r.n >= args.n_min])
        header = TABLE3_HEADER
    _emit(table_to_csv(header, body), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.target == "lemmas":
        rep = verify_inequality_lemmas()
        first = rep.values["remainder_first_negative"]
        rep.notes.append("remainder thresholds checked: " + ", ".join(
            f"d={d}: n>={n}" for d, n in rep.values["remainder_thresholds"].items()))
        rep.notes.append("first negative run: " + ", ".join(f"d={d}: n>={n}" for d, n in first.items()))
    elif args.target == "crossover":
        rep = crossover_check(args.n_max or 73)
    else:
        n_max = args.n_max or 14
        ft = tree_maxima(_survey_data(args, n_max), n_max)
        if args.target == "theorem1":
            rep = theorem1_check(ft, forest_max_table(n_max, ft).fr, n_max)
        else:
            rep = recursion_bound_check(forest_max_table(n_max, ft).fr, n_max)
    print(rep.render())
    return 0 if rep.ok else 1


def cmd_gen_trees(args) -> int:
    trees = generate_free_trees(args.n)
    if args.out:
        count = write_graph6_file(args.out, trees)
        print(f"wrote {count} trees to {args.out}", file=sys.stderr)
    else:
        for t in trees:
            print(encode_graph6(t))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forts", description="Minimal forts of trees and forests.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list the minimal forts of one graph")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--edges", metavar="FILE", help="edge-list file: 'n m' header then one 'u v' per line")
    src.add_argument("--g6", metavar="STRING", help="graph6 string")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("survey", help="count minimal forts over every tree of each order")
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--workers", type=int, default=0, help="worker processes (default: FORTS_WORKERS or CPU count)")
    s.add_argument("--oracle-sample", type=float, default=0.0, metavar="R",
                   help="re-check this fraction of trees with brute force")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--allow-long", action="store_true", help=f"permit n > {DEFAULT_N_CEILING}")
    s.add_argument("--input", metavar="FILE.g6", help="survey the trees in a graph6 file instead")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--no-timing", action="store_true", help="leave timing columns empty")
    s.add_argument("--out", metavar="CSV")
    s.set_defaults(func=cmd_survey)

    t = sub.add_parser("tables", help="emit one of the three summary tables as CSV")
    t.add_argument("--table", type=int, choices=[1, 2, 3], required=True)
    t.add_argument("--n-max", type=int, default=None)
    t.add_argument("--n-min", type=int, default=10, help="first row of table 3")
    t.add_argument("--survey", metavar="CSV", help="survey output to build from")
    t.add_argument("--from-survey", action="store_true", help="table 2: use survey maxima, not known values")
    t.add_argument("--allow-long", action="store_true")
    t.add_argument("--workers", type=int, default=0)
    t.add_argument("--out", metavar="CSV")
    t.set_defaults(func=cmd_tables)

    v = sub.add_parser("verify", help="run a verifier; exit status 0 iff every check passes")
    v.add_argument("--target", choices=["lemmas", "crossover", "recursion", "theorem1"], required=True)
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--survey", metavar="CSV")
    v.add_argument("--allow-long", action="store_true")
    v.add_argument("--workers", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen-trees", help="write every free tree on N vertices as graph6")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", metavar="FILE.g6")
    g.set_defaults(func=cmd_gen_trees)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "tables" and args.n_max is None:
        args.n_max = {1: 20 if args.allow_long else DEFAULT_N_CEILING, 2: 20, 3: DEFAULT_N_CEILING}[args.table]
    try:
        return args.func(args)
    except (GraphError, MalformedGraph6, TooLargeForOracle, MissingSurveyData, OracleMismatch, ValueError, OSError) as exc:
        print(f"forts: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
