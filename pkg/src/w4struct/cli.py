"""Command-line entry point: ``w4struct <command> ...``.

Exit codes: 0 success, 1 property failure or mismatch, 2 usage or input
error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .campaigns import CAMPAIGNS, DEFAULT_MAX_N, dump_failures, run_campaign
from .edgesum import decompose_forest, forest_from_json, forest_to_json, recompose_forest
from .flows import enumerate_internal_cuts
from .formats import format_graph, read_graph, write_graph
from .generators import (complete, cycle, doubled_cycle, grid, path, random_multigraph,
                         subdivided_wall, wall, wheel)
from .immersion import DEFAULT_NODE_BUDGET, BudgetExhausted, ImmersionModel, check_model, find_immersion, find_w4
from .invariance import search_t4_witness
from .multigraph import GraphError, is_isomorphic
from .separators import enumerate_important_separators
from .treewidth import StructureViolation, verify_structure_theorem

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- output helpers ------------------------------------------------------


def _header(args: argparse.Namespace) -> dict:
    config = {k: v for k, v in vars(args).items() if k not in ("func", "format", "command")}
    return {"tool": "w4struct", "version": __version__, "command": args.command, "config": config}


def _emit(args: argparse.Namespace, body: dict, text_lines: list[str]) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps({**_header(args), **body}, indent=2, sort_keys=False))
    else:
        cfg = " ".join(f"{k}={v}" for k, v in _header(args)["config"].items())
        print(f"# w4struct {__version__} {args.command} {cfg}")
        for line in text_lines:
            print(line)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: cannot read JSON ({exc})") from None


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"not a vertex list: {text!r}") from None


def _yes_no(x: bool | None) -> str:
    return "unknown" if x is None else ("yes" if x else "no")


# -- commands ------------------------------------------------------------


_GEN_ARITY = {"wheel": 1, "grid": 1, "wall": 1, "subdivided-wall": 2, "doubled-cycle": 1,
              "cycle": 1, "path": 1, "complete": 1, "random": 4}


def cmd_gen(args: argparse.Namespace) -> int:
    fam = args.family
    try:
        params = [int(p) for p in args.params]
    except ValueError:
        raise UsageError("generator parameters must be integers") from None
    if len(params) != _GEN_ARITY[fam]:
        raise UsageError(f"{fam} takes {_GEN_ARITY[fam]} integer parameter(s)")
    builders: dict[str, Callable] = {
        "wheel": wheel, "grid": grid, "wall": wall, "doubled-cycle": doubled_cycle,
        "cycle": cycle, "path": path, "complete": complete,
        "subdivided-wall": lambda r, length: subdivided_wall(r, length),
        "random": lambda n, m, mult, seed: random_multigraph(n, m, mult, seed, connected=args.connected),
    }
    g = builders[fam](*params)
    write_graph(g, args.output)
    return EXIT_OK


def _write_model(path: str | None, model: ImmersionModel | None) -> None:
    if path and model is not None:
        _write_text(path, json.dumps(model.to_json()) + "\n")


def _decision(args: argparse.Namespace, found: bool | None, model: ImmersionModel | None,
              nodes_note: str = "") -> int:
    body = {"result": _yes_no(found), "model": model.to_json() if model else None}
    lines = [f"result: {_yes_no(found)}"]
    if model is not None:
        lines.append(f"model: {json.dumps(model.to_json())}")
    if nodes_note:
        body["note"] = nodes_note
        lines.append(nodes_note)
    code = EXIT_OK
    if found is None:
        code = EXIT_BUDGET
    elif args.expect is not None and found != (args.expect == "yes"):
        code = EXIT_FAIL
    if args.expect is not None:
        body["expect"] = args.expect
        body["matches"] = found is not None and found == (args.expect == "yes")
        lines.append(f"expect: {args.expect} ({'match' if body['matches'] else 'MISMATCH'})")
    _emit(args, body, lines)
    _write_model(args.model_out, model)
    return code


def cmd_check_w4(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    try:
        model = find_w4(g, args.node_budget)
    except BudgetExhausted as exc:
        return _decision(args, None, None, f"budget exhausted after {exc.nodes} nodes")
    return _decision(args, model is not None, model)


def cmd_immerse(args: argparse.Namespace) -> int:
    h = read_graph(args.h_file)
    g = read_graph(args.g_file)
    try:
        model = find_immersion(g, h, args.node_budget)
    except BudgetExhausted as exc:
        return _decision(args, None, None, f"budget exhausted after {exc.nodes} nodes")
    return _decision(args, model is not None, model)


def cmd_certify(args: argparse.Namespace) -> int:
    g = read_graph(args.g_file)
    h = read_graph(args.h_file)
    try:
        model = ImmersionModel.from_json(_read_json(args.model_file))
        problem = check_model(g, h, model)
    except ValueError as exc:
        raise UsageError(f"malformed model: {exc}") from None
    body = {"valid": problem is None, "violation": problem}
    lines = ["valid: yes"] if problem is None else ["valid: no", f"violation: {problem}"]
    _emit(args, body, lines)
    return EXIT_OK if problem is None else EXIT_FAIL


def cmd_cuts(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    if not 0 <= args.max_order <= 3:
        raise UsageError("--max-order must be between 0 and 3")
    cuts = enumerate_internal_cuts(g, args.max_order)
    lines = [f"count: {len(cuts)}"]
    for c in cuts:
        lines.append(c.to_text())
    _emit(args, {"count": len(cuts), "cuts": [c.to_json() for c in cuts]}, lines)
    return EXIT_OK


def cmd_impsep(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    x, y = _vertex_list(args.x), _vertex_list(args.y)
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    seps = enumerate_important_separators(g, x, y, args.k)
    bound = 4 ** args.k
    within = len(seps) <= bound
    lines = [f"count: {len(seps)} (bound 4^{args.k} = {bound}: {'ok' if within else 'EXCEEDED'})"]
    lines.extend(s.to_text() for s in seps)
    _emit(args, {"count": len(seps), "bound": bound, "within_bound": within,
                 "separators": [s.to_json() for s in seps]}, lines)
    return EXIT_OK if within else EXIT_FAIL


def cmd_decompose(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    forest = decompose_forest(g)
    doc = {**_header(args), **forest_to_json(forest)}
    _write_text(args.output, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_recompose(args: argparse.Namespace) -> int:
    data = _read_json(args.tree)
    if not isinstance(data, dict):
        raise UsageError("a decomposition document must be a JSON object")
    g = recompose_forest(forest_from_json(data))
    code = EXIT_OK
    if args.check:
        ref = read_graph(args.check)
        if not is_isomorphic(g, ref):
            print(f"recomposed graph is not isomorphic to {args.check}", file=sys.stderr)
            code = EXIT_FAIL
    write_graph(g, args.output)
    return code


def cmd_classify(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    try:
        report = verify_structure_theorem(g, args.node_budget, args.tw_ceiling, strict=False)
    except StructureViolation as exc:  # pragma: no cover - strict is off
        report = exc.report
    _emit(args, report.to_json(), report.to_text().splitlines())
    if report.violations:
        return EXIT_FAIL
    if report.status == "unknown":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_prop_test(args: argparse.Namespace) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.max_n is None:
        args.max_n = DEFAULT_MAX_N[args.campaign]
    try:
        report = run_campaign(args.campaign, args.trials, args.seed, args.max_n, args.node_budget, args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dumped = dump_failures(report, args.dump_dir) if report.failures else []
    body = report.to_json()
    body["dumped"] = [str(p) for p in dumped]
    lines = [report.summary()]
    lines += [f"counterexample: trial {r.trial} -> {d}" for r, d in zip(report.failures, dumped)]
    _emit(args, body, lines)
    if report.failures:
        return EXIT_FAIL
    if report.results and report.decided / len(report.results) < args.min_decided:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    res = search_t4_witness(args.max_n, args.max_body_m, args.max_compositions, args.node_budget, args.t)
    lines = [f"status: {res.status}", f"compositions: {res.compositions}", f"unknown: {res.unknown}"]
    if res.witness:
        w = res.witness
        lines += ["g1 (hub %d):" % w.left.hub, format_graph(w.left.graph).rstrip(),
                  "g2 (hub %d):" % w.right.hub, format_graph(w.right.graph).rstrip(),
                  f"pi: {[list(p) for p in w.pi]}",
                  "composed:", format_graph(w.report.composed).rstrip()]
    _emit(args, res.to_json(), lines)
    return {"found": EXIT_OK, "complete": EXIT_FAIL}.get(res.status, EXIT_BUDGET)


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="w4struct", description="W4-immersion structure toolkit")
    p.add_argument("--version", action="version", version=f"w4struct {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, fmt: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        if fmt:
            sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    def budget(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    sp = add("gen", cmd_gen, "emit a named graph family", fmt=False)
    sp.add_argument("family", choices=sorted(_GEN_ARITY))
    sp.add_argument("params", nargs="*")
    sp.add_argument("--connected", action="store_true", help="random: start from a random spanning tree")
    sp.add_argument("-o", "--output", default="-")

    for name, func in (("check-w4", cmd_check_w4), ("immerse", cmd_immerse)):
        sp = add(name, func, "test for a W4 immersion" if name == "check-w4" else "test for an immersion of H in G")
        if name == "check-w4":
            sp.add_argument("file")
        else:
            sp.add_argument("h_file")
            sp.add_argument("g_file")
        sp.add_argument("--expect", choices=("yes", "no"))
        sp.add_argument("--model-out")
        budget(sp)

    sp = add("certify", cmd_certify, "verify an immersion model")
    sp.add_argument("g_file")
    sp.add_argument("h_file")
    sp.add_argument("model_file")

    sp = add("cuts", cmd_cuts, "enumerate internal edge cuts")
    sp.add_argument("file")
    sp.add_argument("--max-order", type=int, default=3)

    sp = add("impsep", cmd_impsep, "enumerate important (X,Y)-edge-separators")
    sp.add_argument("file")
    sp.add_argument("--x", required=True, help="comma separated vertex ids")
    sp.add_argument("--y", required=True, help="comma separated vertex ids")
    sp.add_argument("--k", type=int, required=True)

    sp = add("decompose", cmd_decompose, "decompose along internal cuts of order <= 3", fmt=False)
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default="-")

    sp = add("recompose", cmd_recompose, "rebuild a graph from a decomposition", fmt=False)
    sp.add_argument("tree")
    sp.add_argument("-o", "--output", default="-")
    sp.add_argument("--check", help="graph file the result must be isomorphic to")

    sp = add("classify", cmd_classify, "classify the primes of a decomposition")
    sp.add_argument("file")
    sp.add_argument("--tw-ceiling", type=int, default=6)
    budget(sp)

    sp = add("prop-test", cmd_prop_test, "run a seeded randomized campaign")
    sp.add_argument("campaign", choices=CAMPAIGNS)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--dump-dir", default="counterexamples")
    sp.add_argument("--min-decided", type=float, default=0.95)
    budget(sp)

    sp = add("witness", cmd_witness, "search small parts whose edge-sum breaks W4 invariance")
    sp.add_argument("--t", type=int, default=4)
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--max-body-m", type=int, default=6)
    sp.add_argument("--max-compositions", type=int, default=20000)
    sp.add_argument("--node-budget", type=int, default=20000)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GraphError, OSError) as exc:
        print(f"w4struct {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
