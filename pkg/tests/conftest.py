from pathlib import Path

import pytest

from foon import FoonGraph, parse_kitchen, parse_subgraph

DATA = Path(__file__).parent / "data"


def fixture_text(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


def load_graph(name: str) -> FoonGraph:
    return FoonGraph.from_units(parse_subgraph(fixture_text(name), name))


@pytest.fixture
def f1():
    return load_graph("F1.foon")


@pytest.fixture
def f2():
    return load_graph("F2.foon")


@pytest.fixture
def f3():
    return load_graph("F3.foon")


@pytest.fixture
def cyclic():
    return load_graph("cyclic.foon")


@pytest.fixture
def k1():
    return parse_kitchen(fixture_text("K1.kitchen"), "K1.kitchen")


@pytest.fixture
def k2():
    return parse_kitchen(fixture_text("K2.kitchen"), "K2.kitchen")


@pytest.fixture
def k3():
    return parse_kitchen(fixture_text("K3.kitchen"), "K3.kitchen")


@pytest.fixture
def k_mini():
    return parse_kitchen(fixture_text("K_mini.kitchen"), "K_mini.kitchen")


@pytest.fixture
def empty_kitchen():
    return parse_kitchen(fixture_text("empty.kitchen"), "empty.kitchen")
