"""Unit-weight digraphs and their integer graph matrices.

Vertices are labelled ``1..n``.  An edge ``(tail, head)`` means the head agent
listens to the tail agent, so in the in-degree Laplacian the edge shows up at
row ``head``, column ``tail``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import MissingEdge, OutOfRange, SelfLoop

log = logging.getLogger(__name__)

IntMatrix = tuple[tuple[int, ...], ...]


class Edge(NamedTuple):
    tail: int
    head: int

    def __str__(self) -> str:
        return f"{self.tail}>{self.head}"


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise OutOfRange(f"vertex count must be >= 1, got {self.n}")
        edges = frozenset(Edge(int(t), int(h)) for t, h in self.edges)
        for t, h in edges:
            _check_endpoint(t, self.n)
            _check_endpoint(h, self.n)
            if t == h:
                raise SelfLoop(f"self-loop at vertex {t}")
        object.__setattr__(self, "edges", edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for t, h in self.edges:
            out[t].append(h)
        return {v: tuple(sorted(s)) for v, s in out.items()}

    @cached_property
    def predecessors(self) -> dict[int, tuple[int, ...]]:
        inn: dict[int, list[int]] = {v: [] for v in self.vertices}
        for t, h in self.edges:
            inn[h].append(t)
        return {v: tuple(sorted(p)) for v, p in inn.items()}

    def in_degree(self, v: int) -> int:
        return len(self.predecessors[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self.edges

    def __str__(self) -> str:
        body = ", ".join(str(e) for e in self.sorted_edges())
        return f"Digraph(n={self.n}, edges=[{body}])"


def _check_endpoint(v: int, n: int) -> None:
    if not 1 <= v <= n:
        raise OutOfRange(f"vertex {v} outside [1, {n}]")


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph, silently merging repeated ``(tail, head)`` pairs.

    The number of merged duplicates is logged as a warning.
    """
    pairs = [(int(t), int(h)) for t, h in pairs]
    g = Digraph(n, frozenset(pairs))
    dupes = len(pairs) - len(g.edges)
    if dupes:
        log.warning("merged %d duplicate edge(s)", dupes)
    return g


def laplacian(g: Digraph) -> IntMatrix:
    n = g.n
    rows = [[0] * n for _ in range(n)]
    for t, h in g.edges:
        rows[h - 1][t - 1] -= 1
        rows[h - 1][h - 1] += 1
    return tuple(tuple(r) for r in rows)


def adjacency(g: Digraph) -> IntMatrix:
    n = g.n
    rows = [[0] * n for _ in range(n)]
    for t, h in g.edges:
        rows[h - 1][t - 1] = 1
    return tuple(tuple(r) for r in rows)


def degree_matrix(g: Digraph) -> IntMatrix:
    return tuple(
        tuple(g.in_degree(v) if v == u else 0 for u in g.vertices) for v in g.vertices
    )


def in_cut(g: Digraph, xs: Iterable[int]) -> frozenset[Edge]:
    xs = set(xs)
    return frozenset(e for e in g.edges if e.head in xs and e.tail not in xs)


def out_cut(g: Digraph, xs: Iterable[int]) -> frozenset[Edge]:
    xs = set(xs)
    return frozenset(e for e in g.edges if e.tail in xs and e.head not in xs)


def incident_edges(g: Digraph, v: int) -> frozenset[Edge]:
    _check_endpoint(v, g.n)
    return in_cut(g, {v}) | out_cut(g, {v})


def as_edge_set(edges: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    return frozenset(Edge(int(t), int(h)) for t, h in edges)


def check_subset(g: Digraph, failures: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    """Return ``failures`` as an edge set, raising if any edge is absent from ``g``."""
    fs = as_edge_set(failures)
    missing = sorted(fs - g.edges)
    if missing:
        raise MissingEdge("edge(s) not in digraph: " + ", ".join(map(str, missing)))
    return fs


def remove_edges(g: Digraph, failures: Iterable[tuple[int, int]]) -> Digraph:
    fs = check_subset(g, failures)
    return Digraph(g.n, g.edges - fs)
