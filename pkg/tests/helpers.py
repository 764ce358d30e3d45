"""Shared test machinery: random instances and independent depth oracles."""

from foon import FoonGraph, FunctionalUnit, Kitchen, MotionNode, ObjectNode

_NAMES = ["bowl", "salt", "onion", "tomato", "pan", "cup", "dough", "butter", "pot", "lid"]
_STATES = ["clean", "dirty", "empty", "full", "whole", "diced", "hot", "cold", "mixed"]
_MOTIONS = ["mix", "chop", "pour", "heat", "fold", "press", "scoop", "shake"]

INF = float("inf")


def stateless(name: str) -> ObjectNode:
    return ObjectNode(name)


def random_instance(rng):
    """A retrieval problem: (graph, goal key, kitchen).

    At most 12 units over stateless keys, at most 3 producers per key.
    One graph in five may contain cycles; the rest are layered DAGs (a
    unit's inputs always index strictly below its outputs).
    """
    n_keys = rng.randint(3, 14)
    keys = [f"item{i}" for i in range(n_keys)]
    allow_cycles = rng.random() < 0.2
    produced = {key: 0 for key in keys}
    units = []
    for step in range(rng.randint(1, 12)):
        open_keys = [k for k in keys[1:] if produced[k] < 3]
        if not open_keys:
            break
        outs = rng.sample(open_keys, min(len(open_keys), rng.choice([1, 1, 2])))
        if allow_cycles:
            pool = keys
        else:
            pool = keys[: min(keys.index(k) for k in outs)]
        if not pool:
            continue
        ins = rng.sample(pool, min(len(pool), rng.randint(1, 3)))
        units.append(
            FunctionalUnit(
                tuple(stateless(k) for k in ins),
                MotionNode(f"step{step}", round(rng.random(), 3)),
                tuple(stateless(k) for k in outs),
            )
        )
        for k in outs:
            produced[k] += 1
    graph = FoonGraph.from_units(units)
    kitchen = Kitchen(frozenset(k for k in keys if rng.random() < 0.35))
    return graph, rng.choice(keys), kitchen


def random_node(rng) -> ObjectNode:
    states = rng.sample(_STATES, rng.randint(0, 2))
    ings = rng.sample(_NAMES, rng.randint(1, 2)) if rng.random() < 0.25 else []
    return ObjectNode(rng.choice(_NAMES), frozenset(states), frozenset(ings))


def _distinct_nodes(rng, count) -> tuple:
    picked = []
    seen = set()
    for _ in range(count):
        node = random_node(rng)
        if node.key not in seen:
            seen.add(node.key)
            picked.append(node)
    return tuple(picked)


def random_textured_graph(rng) -> FoonGraph:
    """A graph with states, ingredients, and arbitrary float rates; good for
    exercising serialization and merge rather than retrieval."""
    units = []
    for _ in range(rng.randint(1, 10)):
        units.append(
            FunctionalUnit(
                _distinct_nodes(rng, rng.randint(1, 3)),
                MotionNode(rng.choice(_MOTIONS), rng.random()),
                _distinct_nodes(rng, rng.randint(1, 2)),
            )
        )
    return FoonGraph.from_units(units)


def rate_jitter(unit: FunctionalUnit, rng) -> FunctionalUnit:
    """Same identity, different success rate."""
    return FunctionalUnit(unit.inputs, MotionNode(unit.motion.label, rng.random()), unit.outputs)


def distinct_identity_count(units) -> int:
    # quadratic on purpose: an oracle that shares no code with FoonGraph
    seen = []
    for unit in units:
        ident = unit.identity()
        if not any(ident == other for other in seen):
            seen.append(ident)
    return len(seen)


def min_layer_depths(graph: FoonGraph, kitchen: Kitchen) -> dict:
    """Fixpoint oracle: fewest functional-unit layers to reach each key.

    depth(key) = 0 when the kitchen has it, else min over producers of
    1 + max over that unit's inputs. Unreachable keys stay at infinity.
    """
    depth = {key: (0 if key in kitchen else INF) for key in graph.node_index}
    changed = True
    while changed:
        changed = False
        for unit in graph.units:
            worst = 0
            for key in unit.input_keys:
                worst = max(worst, 0 if key in kitchen else depth.get(key, INF))
            if worst == INF:
                continue
            for key in unit.output_keys:
                if key not in kitchen and worst + 1 < depth[key]:
                    depth[key] = worst + 1
                    changed = True
    return depth


def goal_min_depth(graph: FoonGraph, kitchen: Kitchen, goal: str):
    if goal in kitchen:
        return 0
    return min_layer_depths(graph, kitchen).get(goal, INF)


def tree_goal_depth(graph: FoonGraph, tree, kitchen: Kitchen):
    """Layer depth of the tree's goal using only the tree's own units."""
    sub = FoonGraph.from_units(graph.units[uid] for uid in tree.unit_ids)
    return goal_min_depth(sub, kitchen, tree.goal_key)


def uniform_bary_instance(b: int, depth: int):
    """Goal-absent instance for expansion accounting: a full b-ary key tree.

    Every non-leaf key is produced by exactly one unit whose inputs are its
    b children; leaves have no producers and the kitchen is empty, so every
    search iteration fails after expanding all keys within its budget. A
    depth of 0 still builds one layer: without any producer the search
    rejects the goal upfront instead of expanding it.
    """
    levels = max(depth, 1)
    units = []
    for level in range(levels):
        for idx in range(b**level):
            children = tuple(stateless(f"n{level + 1}x{idx * b + j}") for j in range(b))
            units.append(
                FunctionalUnit(children, MotionNode(f"build{level}x{idx}"), (stateless(f"n{level}x{idx}"),))
            )
    return FoonGraph.from_units(units), "n0x0", Kitchen()
