from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from consensus_fdi.digraph import Digraph, from_edge_list
from consensus_fdi.graphio import random_digraph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

EX1_G1 = [(3, 1), (1, 2), (3, 2), (1, 3)]
EX1_G2 = [(3, 1), (1, 2), (1, 3)]
EX2_G = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 2), (3, 4)]
EX3_G = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 1), (3, 2), (3, 4)]


@pytest.fixture
def ex1():
    return from_edge_list(3, EX1_G1), from_edge_list(3, EX1_G2)


@pytest.fixture
def ex2():
    """Example 2: the base digraph and the two single-failure variants."""
    g = from_edge_list(4, EX2_G)
    return g, Digraph(4, g.edges - {(3, 4)}), Digraph(4, g.edges - {(2, 4)})


@pytest.fixture
def ex3():
    return from_edge_list(4, EX3_G)


def cycle(n: int) -> Digraph:
    return from_edge_list(n, [(k, k % n + 1) for k in range(1, n + 1)])


def bicycle(n: int) -> Digraph:
    return from_edge_list(n, [(k, k % n + 1) for k in range(1, n + 1)] + [(k % n + 1, k) for k in range(1, n + 1)])


def star_into(n: int, center: int = 1) -> Digraph:
    return from_edge_list(n, [(v, center) for v in range(1, n + 1) if v != center])


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(n, frozenset(p for p, keep in zip(pairs, mask) if keep))


def random_graphs(count: int, n_range: tuple[int, int], seed: int):
    """Seeded stream of random digraphs with edge density drawn per graph."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(*n_range)
        yield random_digraph(n, rng.uniform(0.15, 0.7), rng)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
