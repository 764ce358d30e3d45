"""Command-line front end: merge corpora, search, compare, export, verify.

Exit codes are stable: 0 success, 1 search found no tree, 2 usage or parse
error, 3 verification failure. Diagnostics go to standard error; data goes
to standard output or to `-o` files.
"""

import argparse
import re
import sys

from .core import FoonGraph, Kitchen, ObjectNode, TaskTree, merge, verify_task_tree
from .formats import (
    ParseError,
    export_dot,
    parse_kitchen,
    parse_subgraph,
    serialize_graph,
    serialize_task_tree,
)
from .retrieval import HeuristicKind, retrieve_greedy, retrieve_ids

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_INVALID_TREE = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path, text: str):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot write {path}: {exc.strerror or exc}") from None


def _load_graph(path: str) -> FoonGraph:
    return FoonGraph.from_units(parse_subgraph(_read(path), path))


def _load_kitchen(path: str) -> Kitchen:
    return parse_kitchen(_read(path), path)


def _plural(count: int, noun: str) -> str:
    return f"{count} {noun}" if count == 1 else f"{count} {noun}s"


_GOAL_RE = re.compile(
    r"^(?P<name>[^{}\[\]]+)"
    r"(?:\{(?P<states>[^{}\[\]]*)\})?"
    r"(?:\[(?P<ings>[^{}\[\]]*)\])?$"
)


def _key_name(key: str) -> str:
    return key.split("{", 1)[0].split("[", 1)[0]


def resolve_goal(spec: str, graph: FoonGraph, kitchen: Kitchen) -> str:
    """Turn a goal spec into an identity key.

    `name{s1,s2}[i1,i2]` forms are exact. A bare name must match exactly
    one node across the graph and kitchen; several matches are an error,
    zero matches fall through to the stateless key (search then reports
    no-producer).
    """
    match = _GOAL_RE.match(spec.strip())
    if match is None:
        raise CliError(EXIT_USAGE, f"bad goal spec {spec!r}")
    try:
        name = match["name"]
        states = [s for s in (match["states"] or "").split(",") if s.strip()]
        ings = [i for i in (match["ings"] or "").split(",") if i.strip()]
        key = ObjectNode(name, frozenset(states), frozenset(ings)).key
    except ValueError as exc:
        raise CliError(EXIT_USAGE, f"bad goal spec {spec!r}: {exc}") from None
    if match["states"] is not None or match["ings"] is not None:
        return key
    matches = sorted(
        candidate
        for candidate in set(graph.node_index) | set(kitchen.items)
        if _key_name(candidate) == key
    )
    if len(matches) > 1:
        raise CliError(
            EXIT_USAGE, f"goal name {spec.strip()!r} is ambiguous: " + ", ".join(matches)
        )
    return matches[0] if matches else key


_HEURISTICS = {"h1": HeuristicKind.MAX_SUCCESS_RATE, "h2": HeuristicKind.MIN_INPUT_COUNT}


def _run_algorithm(algo: str, graph, goal: str, kitchen, max_depth=None):
    if algo == "ids":
        return retrieve_ids(graph, goal, kitchen, depth_limit=max_depth)
    return retrieve_greedy(graph, goal, kitchen, _HEURISTICS[algo])


def cmd_merge(args) -> int:
    units = []
    parsed = 0
    for path in args.inputs:
        file_units = parse_subgraph(_read(path), path)
        parsed += len(file_units)
        units.extend(file_units)
    graph = FoonGraph.from_units(units)
    _write(args.output, serialize_graph(graph))
    removed = parsed - len(graph.units)
    print(
        f"{_plural(len(graph.units), 'unit')}, "
        f"{_plural(len(graph.nodes), 'object node')}, "
        f"{_plural(removed, 'duplicate')} removed",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_search(args) -> int:
    graph = _load_graph(args.graph)
    kitchen = _load_kitchen(args.kitchen)
    goal = resolve_goal(args.goal, graph, kitchen)
    result = _run_algorithm(args.algo, graph, goal, kitchen, args.max_depth)
    if not result.found:
        print(
            f"no task tree for {goal}: {result.reason} "
            f"({_plural(result.expansions, 'expansion')})",
            file=sys.stderr,
        )
        return EXIT_NOT_FOUND
    _write(args.output, serialize_task_tree(graph, result.tree, kitchen, algorithm=args.algo))
    print(
        f"task tree for {goal}: {_plural(len(result.tree.unit_ids), 'functional unit')} "
        f"({_plural(result.expansions, 'expansion')})",
        file=sys.stderr,
    )
    return EXIT_OK


_COMPARE_COLUMNS = ("Iterative Deepening Search", "Heuristic 1", "Heuristic 2")


def cmd_compare(args) -> int:
    graph = _load_graph(args.graph)
    kitchen = _load_kitchen(args.kitchen)
    rows = []
    for raw in _read(args.goals).split("\n"):
        spec = raw.split("#", 1)[0].strip()
        if not spec:
            continue
        cells = []
        try:
            goal = resolve_goal(spec, graph, kitchen)
        except CliError as exc:
            print(f"skipping goal {spec!r}: {exc.message}", file=sys.stderr)
            rows.append((spec, [None, None, None]))
            continue
        for algo in ("ids", "h1", "h2"):
            result = _run_algorithm(algo, graph, goal, kitchen)
            cells.append(len(result.tree.unit_ids) if result.found else None)
        rows.append((goal, cells))
    header = ("Goal Nodes",) + _COMPARE_COLUMNS
    table = [header] + [
        (goal,) + tuple("-" if cell is None else str(cell) for cell in cells)
        for goal, cells in rows
    ]
    widths = [max(len(row[col]) for row in table) for col in range(4)]
    out = []
    for row in table:
        first = row[0].ljust(widths[0])
        rest = "  ".join(row[col].rjust(widths[col]) for col in range(1, 4))
        out.append((first + "  " + rest).rstrip())
    print("\n".join(out))
    if args.csv:
        csv_lines = ["goal,ids,h1,h2"]
        for goal, cells in rows:
            csv_lines.append(
                goal + "," + ",".join("" if cell is None else str(cell) for cell in cells)
            )
        _write(args.csv, "\n".join(csv_lines) + "\n")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    _write(args.output, export_dot(_load_graph(args.graph)))
    return EXIT_OK


def cmd_stats(args) -> int:
    graph = _load_graph(args.graph)
    labels = {unit.motion.label for unit in graph.units}
    max_in = max((len(p) for p in graph.producers.values()), default=0)
    max_out = max((len(c) for c in graph.consumers.values()), default=0)
    print(_plural(len(graph.units), "unit"))
    print(_plural(len(graph.nodes), "object node"))
    print(_plural(len(labels), "distinct motion label"))
    print(f"max in-degree {max_in}")
    print(f"max out-degree {max_out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    graph = _load_graph(args.graph)
    kitchen = _load_kitchen(args.kitchen)
    goal = resolve_goal(args.goal, graph, kitchen)
    tree_units = parse_subgraph(_read(args.tree), args.tree)
    unit_ids = []
    for pos, unit in enumerate(tree_units):
        uid = graph.find_unit(unit)
        if uid is None:
            print(f"tree unit at position {pos} is not in the graph", file=sys.stderr)
            return EXIT_INVALID_TREE
        unit_ids.append(uid)
    tree = TaskTree(tuple(unit_ids), goal)
    violation = verify_task_tree(graph, tree, kitchen, goal)
    if violation is not None:
        print(
            f"invalid task tree at unit position {violation.position}: {violation.reason}",
            file=sys.stderr,
        )
        return EXIT_INVALID_TREE
    print(f"valid task tree: {_plural(len(unit_ids), 'functional unit')}", file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foon",
        description="Merge, search, and inspect functional object-oriented networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("merge", help="merge subgraph files into one deduplicated graph")
    p.add_argument("inputs", nargs="+", metavar="subgraph")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("search", help="retrieve a task tree for a goal node")
    p.add_argument("graph")
    p.add_argument("-g", "--goal", required=True, help="goal node, e.g. 'ice{solid}'")
    p.add_argument("-k", "--kitchen", required=True, help="kitchen file")
    p.add_argument("-a", "--algo", choices=("ids", "h1", "h2"), default="ids")
    p.add_argument("--max-depth", type=int, default=None, help="IDS depth limit")
    p.add_argument("-o", "--output", help="write the task tree here (default: stdout)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compare", help="tabulate tree sizes per goal for all algorithms")
    p.add_argument("graph")
    p.add_argument("-k", "--kitchen", required=True)
    p.add_argument("--goals", required=True, help="file with one goal spec per line")
    p.add_argument("--csv", help="also write the table as CSV")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("export-dot", help="render the graph in DOT")
    p.add_argument("graph")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("stats", help="summarize a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check a task tree file against a graph")
    p.add_argument("graph")
    p.add_argument("tree")
    p.add_argument("-k", "--kitchen", required=True)
    p.add_argument("-g", "--goal", required=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
