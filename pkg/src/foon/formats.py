"""Text formats for subgraphs, kitchens, and task trees, plus DOT export.

The subgraph format is tab-separated, one record per line:

    O<TAB>name                        starts an object record
    S<TAB>state[<TAB>{ing1,ing2}]     adds a state (optional ingredient set)
    M<TAB>label[<TAB>rate]            the unit's single motion
    //                                terminates the functional unit

Object records before the M line are the unit's inputs, after it outputs.
`#` starts a comment; comments and blank lines are ignored everywhere.
Kitchen files reuse the O/S grammar without motion lines. Task trees are
ordinary subgraphs plus `# goal:` / `# algorithm:` trailer comments, so a
saved tree can be re-parsed, re-merged, or re-verified like any subgraph.
"""

from .core import (
    FoonGraph,
    FunctionalUnit,
    Kitchen,
    MotionNode,
    ObjectNode,
    TaskTree,
    normalize_label,
    verify_task_tree,
)


class ParseError(Exception):
    """A format error at a specific 1-based line of a named source."""

    def __init__(self, source: str, line: int, reason: str):
        super().__init__(f"{source}:{line}: {reason}")
        self.source = source
        self.line = line
        self.reason = reason


def _parse_ingredients(field: str, source, line_no) -> list:
    if len(field) < 2 or field[0] != "{" or field[-1] != "}":
        raise ParseError(source, line_no, f"ingredient set {field!r} must be {{a,b,...}}")
    inner = field[1:-1]
    if not inner.strip():
        raise ParseError(source, line_no, "empty ingredient set")
    try:
        return [normalize_label(part, "ingredient label") for part in inner.split(",")]
    except ValueError as exc:
        raise ParseError(source, line_no, str(exc)) from None


def _normalized(raw: str, what: str, source, line_no) -> str:
    try:
        return normalize_label(raw, what)
    except ValueError as exc:
        raise ParseError(source, line_no, str(exc)) from None


class _ObjectReader:
    """Shared O/S record handling for subgraph and kitchen parsers."""

    def __init__(self, source: str):
        self.source = source
        self.name = None
        self.states: list = []
        self.ingredients: set = set()

    @property
    def open(self) -> bool:
        return self.name is not None

    def start(self, fields, line_no):
        if len(fields) != 2:
            raise ParseError(self.source, line_no, "O line must be 'O<TAB>name'")
        self.name = _normalized(fields[1], "object name", self.source, line_no)
        self.states = []
        self.ingredients = set()

    def add_state(self, fields, line_no):
        if self.name is None:
            raise ParseError(self.source, line_no, "S line without a preceding O line")
        if len(fields) not in (2, 3):
            raise ParseError(
                self.source, line_no, "S line must be 'S<TAB>state' or 'S<TAB>state<TAB>{ings}'"
            )
        if len(fields) == 3:
            self.ingredients.update(_parse_ingredients(fields[2], self.source, line_no))
        state = fields[1]
        if state.strip():
            self.states.append(_normalized(state, "state label", self.source, line_no))
        elif len(fields) == 2:
            raise ParseError(self.source, line_no, "empty state label")

    def take(self) -> ObjectNode:
        node = ObjectNode(self.name, frozenset(self.states), frozenset(self.ingredients))
        self.name = None
        self.states = []
        self.ingredients = set()
        return node


def _records(text: str):
    """Yield (line number, stripped record text) minus comments and blanks."""
    for line_no, raw in enumerate(text.split("\n"), start=1):
        record = raw.split("#", 1)[0].strip()
        if record:
            yield line_no, record


def parse_subgraph(text: str, source: str = "<string>") -> list:
    """Parse the subgraph format into a list of FunctionalUnit in file order.

    Duplicates are preserved; deduplication is FoonGraph's job.
    """
    units: list = []
    reader = _ObjectReader(source)
    inputs: list = []
    outputs: list = []
    motion = None
    last_record_line = None

    def close_object():
        if reader.open:
            (outputs if motion is not None else inputs).append(reader.take())

    for line_no, record in _records(text):
        if record == "//":
            if last_record_line is None:
                raise ParseError(source, line_no, "empty functional unit")
            close_object()
            if motion is None:
                raise ParseError(source, line_no, "unit has no motion line")
            if not outputs:
                raise ParseError(source, line_no, "unit has no outputs")
            try:
                units.append(FunctionalUnit(tuple(inputs), motion, tuple(outputs)))
            except ValueError as exc:
                raise ParseError(source, line_no, str(exc)) from None
            inputs, outputs, motion, last_record_line = [], [], None, None
            continue
        fields = record.split("\t")
        tag = fields[0]
        if tag == "O":
            close_object()
            reader.start(fields, line_no)
        elif tag == "S":
            reader.add_state(fields, line_no)
        elif tag == "M":
            if motion is not None:
                raise ParseError(source, line_no, "unit has more than one motion line")
            close_object()
            if not inputs:
                raise ParseError(source, line_no, "unit has no inputs")
            if len(fields) not in (2, 3):
                raise ParseError(
                    source, line_no, "M line must be 'M<TAB>label' or 'M<TAB>label<TAB>rate'"
                )
            label = _normalized(fields[1], "motion label", source, line_no)
            rate = 1.0
            if len(fields) == 3:
                try:
                    rate = float(fields[2])
                except ValueError:
                    raise ParseError(
                        source, line_no, f"success rate {fields[2]!r} is not a number"
                    ) from None
            try:
                motion = MotionNode(label, rate)
            except ValueError as exc:
                raise ParseError(source, line_no, str(exc)) from None
        else:
            raise ParseError(source, line_no, f"unrecognized record {tag!r}")
        last_record_line = line_no

    if last_record_line is not None:
        raise ParseError(source, last_record_line, "unterminated unit (missing //)")
    return units


def parse_kitchen(text: str, source: str = "<string>") -> Kitchen:
    """Parse a kitchen file (O/S grammar, no motions) into a Kitchen.

    Duplicate items collapse silently; `//` separators are tolerated but
    not required.
    """
    keys = set()
    reader = _ObjectReader(source)

    def close_object():
        if reader.open:
            keys.add(reader.take().key)

    for line_no, record in _records(text):
        if record == "//":
            close_object()
            continue
        fields = record.split("\t")
        tag = fields[0]
        if tag == "O":
            close_object()
            reader.start(fields, line_no)
        elif tag == "S":
            reader.add_state(fields, line_no)
        elif tag == "M":
            raise ParseError(source, line_no, "motion line not allowed in kitchen file")
        else:
            raise ParseError(source, line_no, f"unrecognized record {tag!r}")
    close_object()
    return Kitchen(frozenset(keys))


def _object_lines(obj: ObjectNode) -> list:
    lines = [f"O\t{obj.name}"]
    ing_field = ""
    if obj.ingredients:
        ing_field = "\t{" + ",".join(sorted(obj.ingredients)) + "}"
    states = sorted(obj.states)
    if states:
        # full ingredient set rides on the first S line
        lines.append(f"S\t{states[0]}{ing_field}")
        lines.extend(f"S\t{state}" for state in states[1:])
    elif ing_field:
        lines.append(f"S\t{ing_field}")
    return lines


def _unit_lines(unit: FunctionalUnit) -> list:
    lines = []
    for obj in unit.inputs:
        lines.extend(_object_lines(obj))
    lines.append(f"M\t{unit.motion.label}\t{unit.motion.success_rate!r}")
    for obj in unit.outputs:
        lines.extend(_object_lines(obj))
    lines.append("//")
    return lines


def serialize_graph(graph: FoonGraph) -> str:
    """Canonical text for a graph; parse_subgraph inverts it exactly."""
    lines = ["# foon subgraph"]
    for unit in graph.units:
        lines.extend(_unit_lines(unit))
    return "\n".join(lines) + "\n"


def serialize_task_tree(graph: FoonGraph, tree: TaskTree, kitchen=None, algorithm=None) -> str:
    """Emit a task tree as a subgraph with goal/algorithm trailer comments.

    With a kitchen the tree is fully verified first; without one only the
    graph-local checks (known ids, no repeats) run. Invalid trees raise
    ValueError carrying the violation.
    """
    if kitchen is not None:
        violation = verify_task_tree(graph, tree, kitchen, tree.goal_key)
        if violation is not None:
            raise ValueError(
                f"invalid task tree at unit position {violation.position}: {violation.reason}"
            )
    else:
        seen = set()
        for pos, uid in enumerate(tree.unit_ids):
            if not isinstance(uid, int) or not 0 <= uid < len(graph.units):
                raise ValueError(f"invalid task tree at unit position {pos}: unknown unit id {uid!r}")
            if uid in seen:
                raise ValueError(f"invalid task tree at unit position {pos}: duplicate unit id {uid}")
            seen.add(uid)
    lines = ["# foon task tree"]
    for uid in tree.unit_ids:
        lines.extend(_unit_lines(graph.units[uid]))
    lines.append(f"# goal: {tree.goal_key}")
    if algorithm is not None:
        lines.append(f"# algorithm: {algorithm}")
    return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(graph: FoonGraph) -> str:
    """Render the bipartite digraph in DOT: green circle objects, red square motions.

    Vertices are named o<node id> and m<unit id>; every motion occurrence
    gets its own vertex even when units share a label.
    """
    lines = ["digraph foon {", "  rankdir=LR;", "  node [style=filled];"]
    for nid, obj in enumerate(graph.nodes):
        parts = [_dot_escape(obj.name)]
        if obj.states:
            parts.append("(" + ", ".join(_dot_escape(s) for s in sorted(obj.states)) + ")")
        if obj.ingredients:
            parts.append("[" + ", ".join(_dot_escape(i) for i in sorted(obj.ingredients)) + "]")
        label = "\\n".join(parts)
        lines.append(f'  o{nid} [shape=circle, fillcolor=green, label="{label}"];')
    for uid, unit in enumerate(graph.units):
        label = f"{_dot_escape(unit.motion.label)}\\n{unit.motion.success_rate!r}"
        lines.append(f'  m{uid} [shape=square, fillcolor=red, label="{label}"];')
    for uid, unit in enumerate(graph.units):
        for key in unit.input_keys:
            lines.append(f"  o{graph.node_index[key]} -> m{uid};")
        for key in unit.output_keys:
            lines.append(f"  m{uid} -> o{graph.node_index[key]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
