"""Command line entry point: ``vdec <command> ...``.

Exit codes
    0  success
    1  verify: the coloring is not a (requested) vdec
    2  tree outside the coloring hypothesis
    3  unreadable or malformed input (parse errors, not a tree, not connected)
    4  internal case exhaustion in the tree colorer
    5  exact search budget exhausted
    6  structurally uncolorable (isolated edge, fewer than three vertices)
    7  survey found theorem or conjecture violations
    8  equitable rebalancing failed
   64  bad flags or paths

Every flag that takes a value can also be set through an environment
variable ``VDEC_<FLAG>`` (dashes become underscores); an explicit flag wins.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import errors
from .exact_solver import DEFAULT_NODE_BUDGET, SolverConfig, exact_chi_es, exact_chi_s
from .graph_core import (
    DiamFour,
    DoubleStar,
    SimpleGraph,
    Star,
    as_tree,
    classify_tree,
    format_edge_list,
    parse_edge_list,
)
from .verifier import EdgeColoring, format_coloring, parse_coloring, verify

EXIT_OK = 0
EXIT_NOT_VDEC = 1
EXIT_HYPOTHESIS = 2
EXIT_INPUT = 3
EXIT_CASE_EXHAUSTION = 4
EXIT_BUDGET = 5
EXIT_UNCOLORABLE = 6
EXIT_VIOLATIONS = 7
EXIT_REBALANCE = 8
EXIT_USAGE = 64

ENV_PREFIX = "VDEC_"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _env_default(name: str, conv, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return fallback
    if conv is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    try:
        return conv(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{name.upper()}={raw!r} is not a valid {conv.__name__}") from None


# -- file helpers ---------------------------------------------------------------------


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _check_paths(inputs: Sequence[str | None], outputs: Sequence[str | None]) -> None:
    for p in inputs:
        if p and p != "-" and not os.path.isfile(p):
            raise UsageError(f"input file not found: {p}")
    for p in outputs:
        if p and p != "-":
            parent = os.path.dirname(os.path.abspath(p))
            if not os.path.isdir(parent):
                raise UsageError(f"output directory does not exist: {parent}")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_graph(path: str) -> SimpleGraph:
    return parse_edge_list(_read_input(path))


def to_dot(g: SimpleGraph, c: EdgeColoring) -> str:
    lines = ["graph vdec {"]
    for v in range(g.p):
        lines.append(f"  {v};")
    for (u, v) in g.edges:
        lines.append(f'  {u} -- {v} [label="{c[(u, v)]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _structural_check(g: SimpleGraph) -> None:
    if g.p < 3:
        raise errors.StructurallyUncolorable(f"p={g.p}: graphs with fewer than three vertices have no vdec")


# -- commands -------------------------------------------------------------------------


def cmd_color(args) -> int:
    from .tree_colorer import ColoringTrace, color_tree, equitable_finish, predict_chi_s

    _check_paths([args.input], [args.out, args.trace, args.dot])
    t = as_tree(_load_graph(args.input))
    _structural_check(t.graph)
    pred = predict_chi_s(t)
    trace = ColoringTrace()
    c = color_tree(t, trace, budget=args.budget)
    if args.equitable:
        c = equitable_finish(t, c)
    c = c.relabeled()
    if args.trace:
        trace.write_jsonl(args.trace)
    if args.dot:
        _write(args.dot, to_dot(t.graph, c))
    summary = f"chi={c.color_count} regime={pred.regime.value} fallbacks={trace.fallbacks}"
    if args.equitable:
        summary += " equitable=true"
    print(summary)
    _write(args.out, format_coloring(c))
    return EXIT_OK


def cmd_exact(args) -> int:
    _check_paths([args.input], [args.out])
    g = _load_graph(args.input)
    cfg = SolverConfig(max_palette=args.max_palette, node_budget=args.budget)
    res = exact_chi_es(g, cfg) if args.equitable else exact_chi_s(g, cfg)
    key = "chi_es" if args.equitable else "chi_s"
    print(f"{key}={res.chi} nodes={res.nodes_explored}")
    _write(args.out, format_coloring(res.witness.relabeled()))
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_paths([args.input, args.coloring], [])
    g = _load_graph(args.input)
    c = parse_coloring(_read_input(args.coloring))
    r = verify(g, c)
    ok = r.is_vdec and (r.equitable or not args.equitable)

    def b(x):
        return "true" if x else "false"
    line = (f"vdec={b(r.is_vdec)} proper={b(r.proper)} distinguishing={b(r.distinguishing)} "
            f"equitable={b(r.equitable)} colors={c.color_count}")
    if r.violation is not None:
        line += f" violation={r.violation.kind}"
    print(line)
    if r.violation is not None and args.explain:
        print(r.violation.detail, file=sys.stderr)
    return EXIT_OK if ok else EXIT_NOT_VDEC


def cmd_classify(args) -> int:
    from .tree_colorer import predict_chi_s

    _check_paths([args.input], [])
    t = as_tree(_load_graph(args.input))
    shape = classify_tree(t)
    fields = [f"shape={type(shape).__name__}", f"p={t.p}", f"n1={t.n1}", f"n2={t.n2}", f"D={t.diameter}"]
    if isinstance(shape, Star):
        fields.append(f"leaves={shape.leaf_count}")
    elif isinstance(shape, DoubleStar):
        fields += [f"m={shape.m}", f"n={shape.n}"]
    elif isinstance(shape, DiamFour):
        fields += [f"r={shape.r}", f"m={shape.m}", f"legs={','.join(map(str, shape.legs))}"]
    if t.p >= 3:
        try:
            pred = predict_chi_s(t)
            fields += [f"regime={pred.regime.value}", f"chi_predicted={pred.value}"]
        except errors.HypothesisViolated:
            fields.append("regime=outside")
    print(" ".join(fields))
    return EXIT_OK


def cmd_bound(args) -> int:
    from .graph_reducer import best_bounds, cor1_details, cor2_bound, lift_split_coloring
    from .tree_colorer import color_tree

    _check_paths([args.input], [args.json])
    g = _load_graph(args.input)
    _structural_check(g)
    if args.all_spanning_trees:
        best1, report = best_bounds(g, workers=args.workers, budget=args.budget)
        payload = report.to_json()
        payload["best_cor1_bound"] = best1.cor1_bound
        payload["best_cor1_spanning_tree_edges"] = [list(e) for e in best1.spanning_tree_edges]
    else:
        report = cor2_bound(g, budget=args.budget)
        payload = report.to_json()
    if args.lift:
        if g.q == g.p - 1:
            payload["lift"] = "skipped: graph is a tree"
        else:
            split = cor1_details(g, report.spanning_tree_edges).split
            try:
                tc = color_tree(split.tree, budget=args.budget)
            except errors.HypothesisViolated:
                payload["lift"] = "skipped: split tree outside the coloring hypothesis"
            else:
                lift = lift_split_coloring(g, split, tc)
                payload["lift"] = lift.reason
                if lift.coloring is not None:
                    payload["lift_colors"] = lift.coloring.color_count
    c1 = payload["cor1_bound"]
    print(f"cor1_bound={'none' if c1 is None else c1} cor2_bound={report.cor2_bound} "
          f"tree_chi={report.tree_chi} cotree_colors={report.cotree_colors}")
    if args.json:
        _write(args.json, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_survey(args) -> int:
    from .conjecture_lab.survey import MAX_EXACT_N, Flag, append_rows, read_survey, run_survey

    if args.n_max > MAX_EXACT_N:
        raise UsageError(f"--n-max {args.n_max} exceeds {MAX_EXACT_N}")
    if args.n_min > args.n_max:
        raise UsageError("--n-min exceeds --n-max")
    dump = args.violations or args.out + ".violations.jsonl"
    _check_paths([], [args.out, dump])
    if not args.resume and os.path.exists(args.out):
        os.remove(args.out)
    old = read_survey(args.out)
    for row in old:
        if row.flags != row.computed_flags():
            raise UsageError(f"stored flags of {row.canonical_id} disagree with its fields; not resuming")
    new_rows = list(append_rows(args.out, run_survey(
        args.n_min, args.n_max, args.budget, workers=args.workers,
        done=[r.canonical_id for r in old])))
    rows = old + new_rows
    bad = [r for r in rows if r.violations()]
    conj3 = sum(1 for r in rows if r.chi_exact is not None and Flag.CONJ3 not in r.flags)
    timeouts = sum(1 for r in rows if Flag.TIMEOUT in r.flags)
    print(f"rows={len(rows)} new={len(new_rows)} violations={len(bad)} "
          f"conj3_misses={conj3} timeouts={timeouts}")
    if bad:
        with open(dump, "w") as fh:
            for r in bad:
                rec = r.to_csv()
                rec["violations"] = r.violations()
                rec["witness"] = r.witness
                fh.write(json.dumps(rec) + "\n")
        print(f"violations written to {dump}", file=sys.stderr)
        return EXIT_VIOLATIONS
    return EXIT_OK


def _shape_from_args(kind: str, params: list[int]):
    if kind == "star":
        if len(params) != 1:
            raise UsageError("star takes one parameter: leaf count")
        return Star(params[0])
    if kind == "double-star":
        if len(params) != 2:
            raise UsageError("double-star takes two parameters: m n")
        return DoubleStar(*params)
    if len(params) < 2:
        raise UsageError("diam4 takes r m followed by branch leaf counts")
    return DiamFour(params[0], params[1], tuple(params[2:]))


def cmd_build_shape(args) -> int:
    from .conjecture_lab.shapes import shape_builder

    _check_paths([], [args.out])
    t = shape_builder(_shape_from_args(args.kind, args.params))
    _write(args.out, format_edge_list(t.graph))
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    budget = _env_default("budget", int, DEFAULT_NODE_BUDGET)
    ap = _Parser(prog="vdec", description="Vertex-distinguishing edge colorings.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("color", help="color a tree with its predicted number of colors")
    p.add_argument("input", help="edge-list file ('-' for stdin)")
    p.add_argument("--out", default=_env_default("out", str, None), help="coloring file (default stdout)")
    p.add_argument("--trace", default=_env_default("trace", str, None), help="JSON-lines reduction trace")
    p.add_argument("--dot", default=_env_default("dot", str, None), help="DOT export with colors as edge labels")
    p.add_argument("--equitable", action="store_true", default=_env_default("equitable", bool, False))
    p.add_argument("--budget", type=int, default=budget)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("exact", help="exact vdec chromatic number by search")
    p.add_argument("input")
    p.add_argument("--out", default=_env_default("out", str, None), help="witness file (default stdout)")
    p.add_argument("--equitable", action="store_true", default=_env_default("equitable", bool, False))
    p.add_argument("--max-palette", type=int, default=_env_default("max-palette", int, None))
    p.add_argument("--budget", type=int, default=budget)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a coloring file against a graph")
    p.add_argument("input")
    p.add_argument("coloring")
    p.add_argument("--equitable", action="store_true", help="also require balanced classes")
    p.add_argument("--explain", action="store_true", help="describe the first violation on stderr")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="report a tree's shape and predicted value")
    p.add_argument("input")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bound", help="spanning-tree upper bounds for a connected graph")
    p.add_argument("input")
    p.add_argument("--json", default=_env_default("json", str, None), help="write the full report as JSON")
    p.add_argument("--all-spanning-trees", action="store_true", help="try every spanning tree (small graphs)")
    p.add_argument("--lift", action="store_true", help="attempt to lift a split-tree coloring back to the graph")
    p.add_argument("--workers", type=int, default=_env_default("workers", int, 1))
    p.add_argument("--budget", type=int, default=budget)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("survey", help="evaluate every free tree in a size range")
    p.add_argument("--n-min", type=int, default=_env_default("n-min", int, 3))
    p.add_argument("--n-max", type=int, default=_env_default("n-max", int, None), required="VDEC_N_MAX" not in os.environ)
    p.add_argument("--out", default=_env_default("out", str, None), required="VDEC_OUT" not in os.environ)
    p.add_argument("--violations", default=None, help="violation dump (default <out>.violations.jsonl)")
    p.add_argument("--workers", type=int, default=_env_default("workers", int, 1))
    p.add_argument("--resume", action="store_true", default=_env_default("resume", bool, False))
    p.add_argument("--budget", type=int, default=budget)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("build-shape", help="write the edge list of a parametrized tree")
    p.add_argument("kind", choices=["star", "double-star", "diam4"])
    p.add_argument("params", type=int, nargs="*",
                   help="star: leaves; double-star: m n; diam4: r m then one leaf count per branch")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_build_shape)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"vdec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.HypothesisViolated as exc:
        print(f"vdec: outside hypothesis: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (errors.ParseError, errors.GraphError, OSError) as exc:
        print(f"vdec: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except errors.InternalCaseExhaustion as exc:
        print(f"vdec: internal case exhaustion: {exc}", file=sys.stderr)
        return EXIT_CASE_EXHAUSTION
    except errors.BudgetExceeded as exc:
        print(f"vdec: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (errors.StructurallyUncolorable, errors.IndistinguishableByStructure) as exc:
        print(f"vdec: structurally uncolorable: {exc}", file=sys.stderr)
        return EXIT_UNCOLORABLE
    except errors.RebalanceFailed as exc:
        print(f"vdec: rebalance failed: {exc}", file=sys.stderr)
        return EXIT_REBALANCE


if __name__ == "__main__":
    sys.exit(main())
