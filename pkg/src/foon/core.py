"""Core FOON domain types: object/motion nodes, functional units, graphs.

A FOON is a bipartite digraph. Object nodes (an object name plus state
attributes, optionally containing ingredients) connect to motion nodes and
back; one motion with its surrounding inputs and outputs forms a functional
unit, the atomic action of the network.
"""

from dataclasses import dataclass, field
from functools import cached_property

# Structural characters of the key/goal grammar and the file format.
# Tab and newline are field/record separators; the rest would make the
# canonical key text ambiguous or break comment stripping.
_FORBIDDEN_CHARS = set("\t\n{}[],#")


def normalize_label(text: str, what: str = "label") -> str:
    """Canonicalize a label: trim, lowercase, collapse internal whitespace.

    Raises ValueError for labels that are empty after normalization or that
    contain structural characters.
    """
    if not isinstance(text, str):
        raise ValueError(f"{what} must be a string, got {type(text).__name__}")
    normalized = " ".join(text.split()).lower()
    if not normalized:
        raise ValueError(f"{what} is empty")
    bad = _FORBIDDEN_CHARS.intersection(normalized)
    if bad:
        shown = "".join(sorted(bad))
        raise ValueError(f"{what} {normalized!r} contains forbidden character(s) {shown!r}")
    return normalized


@dataclass(frozen=True)
class ObjectNode:
    """An object in a specific state set, optionally containing ingredients.

    Identity is (name, states, ingredients); two nodes are the same node
    exactly when all three match. States and ingredients are unordered.
    """

    name: str
    states: frozenset = frozenset()
    ingredients: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "name", normalize_label(self.name, "object name"))
        object.__setattr__(
            self,
            "states",
            frozenset(normalize_label(s, "state label") for s in self.states),
        )
        object.__setattr__(
            self,
            "ingredients",
            frozenset(normalize_label(i, "ingredient label") for i in self.ingredients),
        )

    @cached_property
    def key(self) -> str:
        """Canonical identity key, e.g. ``bowl{clean,empty}[salt]``."""
        key = self.name
        if self.states:
            key += "{" + ",".join(sorted(self.states)) + "}"
        if self.ingredients:
            key += "[" + ",".join(sorted(self.ingredients)) + "]"
        return key


def node_key(node: ObjectNode) -> str:
    """Identity key of an object node; equal keys mean the same node."""
    return node.key


@dataclass(frozen=True)
class MotionNode:
    """A manipulation motion label with a success rate in [0, 1]."""

    label: str
    success_rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "label", normalize_label(self.label, "motion label"))
        rate = self.success_rate
        if not isinstance(rate, (int, float)) or isinstance(rate, bool):
            raise ValueError(f"success rate must be a number, got {rate!r}")
        rate = float(rate)
        if not 0.0 <= rate <= 1.0:
            raise ValueError(f"success rate {rate!r} outside [0, 1]")
        object.__setattr__(self, "success_rate", rate)


@dataclass(frozen=True)
class FunctionalUnit:
    """One atomic action: input object nodes -> motion -> output object nodes.

    Inputs and outputs are non-empty and duplicate-free per side. Duplicate
    detection uses :meth:`identity`, which ignores input/output ordering and
    the motion's success rate.
    """

    inputs: tuple
    motion: MotionNode
    outputs: tuple

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not self.inputs:
            raise ValueError("functional unit has no inputs")
        if not self.outputs:
            raise ValueError("functional unit has no outputs")
        for side, objs in (("input", self.inputs), ("output", self.outputs)):
            seen = set()
            for obj in objs:
                if obj.key in seen:
                    raise ValueError(f"duplicate {side} node {obj.key}")
                seen.add(obj.key)

    @cached_property
    def input_keys(self) -> tuple:
        return tuple(obj.key for obj in self.inputs)

    @cached_property
    def output_keys(self) -> tuple:
        return tuple(obj.key for obj in self.outputs)

    def identity(self) -> tuple:
        """Dedup key: (sorted input keys, motion label, sorted output keys)."""
        return (
            tuple(sorted(self.input_keys)),
            self.motion.label,
            tuple(sorted(self.output_keys)),
        )


@dataclass(frozen=True)
class AddResult:
    """Outcome of adding a unit: the unit's id, and whether it was new."""

    unit_id: int
    added: bool


class FoonGraph:
    """Insertion-ordered, deduplicated set of functional units plus indexes.

    Node and unit ids are dense integers in first-appearance order, which
    makes every downstream algorithm deterministic. Construction is
    single-writer; after construction the graph is treated as immutable and
    may be shared by concurrent readers.
    """

    def __init__(self):
        self.units: list[FunctionalUnit] = []
        self.nodes: list[ObjectNode] = []
        self.node_index: dict[str, int] = {}
        self.producers: dict[int, list[int]] = {}
        self.consumers: dict[int, list[int]] = {}
        self._unit_index: dict[tuple, int] = {}

    @classmethod
    def from_units(cls, units) -> "FoonGraph":
        graph = cls()
        for unit in units:
            graph.add_unit(unit)
        return graph

    def _register(self, obj: ObjectNode) -> int:
        nid = self.node_index.get(obj.key)
        if nid is None:
            nid = len(self.nodes)
            self.nodes.append(obj)
            self.node_index[obj.key] = nid
            self.producers[nid] = []
            self.consumers[nid] = []
        return nid

    def add_unit(self, unit: FunctionalUnit) -> AddResult:
        """Append a unit unless an identical one exists (union semantics).

        A duplicate leaves the graph unchanged except that the stored unit
        keeps the maximum of the two success rates; the existing id is
        returned.
        """
        ident = unit.identity()
        existing = self._unit_index.get(ident)
        if existing is not None:
            stored = self.units[existing]
            if unit.motion.success_rate > stored.motion.success_rate:
                # Replace rather than mutate: unit objects may be shared
                # with other graphs after merge().
                self.units[existing] = FunctionalUnit(
                    stored.inputs,
                    MotionNode(stored.motion.label, unit.motion.success_rate),
                    stored.outputs,
                )
            return AddResult(existing, False)
        uid = len(self.units)
        self.units.append(unit)
        self._unit_index[ident] = uid
        for obj in unit.inputs:
            self.consumers[self._register(obj)].append(uid)
        for obj in unit.outputs:
            self.producers[self._register(obj)].append(uid)
        return AddResult(uid, True)

    def producers_of(self, key: str) -> list[int]:
        """Unit ids whose outputs contain the key, in insertion order."""
        nid = self.node_index.get(key)
        if nid is None:
            return []
        return list(self.producers[nid])

    def consumers_of(self, key: str) -> list[int]:
        """Unit ids whose inputs contain the key, in insertion order."""
        nid = self.node_index.get(key)
        if nid is None:
            return []
        return list(self.consumers[nid])

    def find_unit(self, unit: FunctionalUnit):
        """Id of the stored unit with the same identity, or None."""
        return self._unit_index.get(unit.identity())


def merge(graphs) -> FoonGraph:
    """Union of all units across graphs, deduplicated, first-occurrence order."""
    merged = FoonGraph()
    for graph in graphs:
        for unit in graph.units:
            merged.add_unit(unit)
    return merged


@dataclass(frozen=True)
class Kitchen:
    """The set of object-node identity keys available to the robot."""

    items: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "items", frozenset(self.items))

    def __contains__(self, key: str) -> bool:
        return key in self.items

    @classmethod
    def from_nodes(cls, nodes) -> "Kitchen":
        return cls(frozenset(node.key for node in nodes))


def is_available(key: str, kitchen: Kitchen) -> bool:
    """Exact-match availability: the full identity key must be in the kitchen."""
    return key in kitchen


@dataclass(frozen=True)
class TaskTree:
    """An ordered, executable sequence of unit ids achieving a goal key."""

    unit_ids: tuple
    goal_key: str

    def __post_init__(self):
        object.__setattr__(self, "unit_ids", tuple(self.unit_ids))

    def __len__(self) -> int:
        return len(self.unit_ids)


@dataclass(frozen=True)
class TreeViolation:
    """First point where a task tree breaks: unit position plus reason."""

    position: int
    reason: str


def verify_task_tree(graph: FoonGraph, tree: TaskTree, kitchen: Kitchen, goal: str):
    """Check executability and goal coverage; None if valid, else a violation.

    Executability: each unit's inputs must be in the kitchen or produced by
    an earlier unit. Goal coverage: some unit in the tree outputs the goal,
    or the tree is empty and the goal is already in the kitchen. An empty
    tree failing coverage reports position 0; a non-empty tree failing it
    reports the position just past the last unit.
    """
    available = set(kitchen.items)
    seen = set()
    for pos, uid in enumerate(tree.unit_ids):
        if not isinstance(uid, int) or uid < 0 or uid >= len(graph.units):
            return TreeViolation(pos, f"unknown unit id {uid!r}")
        if uid in seen:
            return TreeViolation(pos, f"duplicate unit id {uid}")
        seen.add(uid)
        unit = graph.units[uid]
        for key in unit.input_keys:
            if key not in available:
                return TreeViolation(pos, f"input {key} not available")
        available.update(unit.output_keys)
    if tree.unit_ids:
        if not any(goal in graph.units[uid].output_keys for uid in tree.unit_ids):
            return TreeViolation(len(tree.unit_ids), f"goal {goal} is never produced")
    elif goal not in kitchen:
        return TreeViolation(0, f"goal {goal} not available in kitchen")
    return None
