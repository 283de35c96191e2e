import random
from pathlib import Path

import pytest

from nbc.graph import OrderedGraph, parse_graph

FIXTURES = Path(__file__).parent / "fixtures"

# the running example: p = 5, tree {e4, e5, e6, e7}
EXAMPLE = OrderedGraph(5, ((1, 2), (1, 3), (2, 5), (1, 4), (2, 3), (3, 4), (4, 5)))

ORACLE_SEED = 20240611
ORACLE_COUNT = 240


def random_connected_graph(rng: random.Random, max_q: int = 10, simple: bool = False) -> OrderedGraph:
    """Random connected loopless multigraph with edges in random order."""
    p = rng.choice((2, 3, 4, 5, 5, 6, 6, 7, 7, 7))
    edges = []
    for v in range(2, p + 1):
        edges.append((rng.randint(1, v - 1), v))
    extra = rng.randint(0, max_q - len(edges))
    attempts = 0
    while extra and attempts < 200:
        attempts += 1
        u, v = sorted(rng.sample(range(1, p + 1), 2))
        if simple and (u, v) in edges:
            continue
        edges.append((u, v))
        extra -= 1
    edges = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in edges]
    rng.shuffle(edges)
    return OrderedGraph(p, tuple(edges))


def oracle_suite(seed: int = ORACLE_SEED, count: int = ORACLE_COUNT, max_q: int = 10) -> list[OrderedGraph]:
    rng = random.Random(seed)
    return [random_connected_graph(rng, max_q) for _ in range(count)]


@pytest.fixture
def example() -> OrderedGraph:
    return EXAMPLE


@pytest.fixture
def example_file() -> Path:
    return FIXTURES / "example.graph"


@pytest.fixture
def example_from_file(example_file) -> OrderedGraph:
    return parse_graph(example_file.read_text())
