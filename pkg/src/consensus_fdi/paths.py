"""Directed distances, path counts, reachability and out-branchings.

Distances and counts are always taken *towards* a target vertex, since the
observer at ``v`` only ever hears about vertices that can reach it.
Unreachable distances are ``math.inf``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import product

from .digraph import Digraph, Edge, out_cut
from .errors import BadLength, NotCoReachable, TooLarge

INF = math.inf

# exhaustive oracles are exponential in n
ORACLE_MAX_N = 8


def distances_to(g: Digraph, target: int) -> dict[int, float]:
    """Length of the shortest directed path from every vertex to ``target``."""
    dist: dict[int, float] = {v: INF for v in g.vertices}
    dist[target] = 0
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u in g.predecessors[v]:
            if dist[u] == INF:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def distances_from(g: Digraph, source: int) -> dict[int, float]:
    dist: dict[int, float] = {v: INF for v in g.vertices}
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.successors[v]:
            if dist[u] == INF:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def reachable_from(g: Digraph, source: int) -> set[int]:
    return {v for v, d in distances_from(g, source).items() if d != INF}


def shortest_path_counts_to(g: Digraph, target: int) -> tuple[dict[int, float], dict[int, int]]:
    """Distances to ``target`` and the number of shortest paths realising them.

    Counts are accumulated layer by layer over the BFS tree of the reversed
    digraph.  Shortest walks never revisit a vertex, so walk counts are path
    counts.  ``count[target] == 1`` and unreachable vertices count 0.
    """
    dist = distances_to(g, target)
    count = {v: 0 for v in g.vertices}
    count[target] = 1
    for v in sorted((v for v in g.vertices if dist[v] != INF), key=dist.__getitem__):
        if v == target:
            continue
        count[v] = sum(count[w] for w in g.successors[v] if dist[w] == dist[v] - 1)
    return dist, count


def shortest_path_count(g: Digraph, source: int, target: int) -> tuple[float, int]:
    """Return ``(d(source, target), number of shortest source->target paths)``.

    ``(0, 1)`` on the diagonal and ``(inf, 0)`` when unreachable.
    """
    dist, count = shortest_path_counts_to(g, target)
    return dist[source], count[source]


def count_paths_of_length(g: Digraph, source: int, target: int, k: int) -> int:
    """Count simple directed ``source -> target`` paths with exactly ``k`` edges.

    Brute-force depth-first enumeration; used as an oracle.
    """
    if not 1 <= k <= g.n - 1:
        raise BadLength(f"path length {k} outside [1, {g.n - 1}]")
    if source == target:
        raise BadLength("source and target must differ")
    succ = g.successors
    visited = {source}

    def walk(v: int, remaining: int) -> int:
        if remaining == 0:
            return int(v == target)
        if v == target:
            return 0
        total = 0
        for w in succ[v]:
            if w not in visited:
                visited.add(w)
                total += walk(w, remaining - 1)
                visited.discard(w)
        return total

    return walk(source, k)


def enumerate_simple_paths(g: Digraph, source: int, target: int) -> list[tuple[int, ...]]:
    """All simple ``source -> target`` paths as vertex tuples (oracle helper)."""
    found = []
    stack = [(source, (source,))]
    while stack:
        v, path = stack.pop()
        if v == target and len(path) > 1:
            found.append(path)
            continue
        for w in g.successors[v]:
            if w not in path:
                stack.append((w, path + (w,)))
    return found


@dataclass(frozen=True)
class ShortestPathsSubgraph:
    base: Digraph
    root: int
    kept_edges: frozenset[Edge]
    distances: dict[int, float]

    def __len__(self) -> int:
        return len(self.kept_edges)


def shortest_paths_subgraph(g: Digraph, root: int, strict: bool = True) -> ShortestPathsSubgraph:
    """Edges lying on some shortest path towards ``root``.

    An edge ``(tau, theta)`` not leaving ``root`` is kept iff
    ``d(tau, root) == d(theta, root) + 1``.  In strict mode every vertex must
    reach ``root``; in relaxed mode edges touching unreachable vertices are
    simply dropped.
    """
    dist = distances_to(g, root)
    if strict:
        stranded = sorted(v for v, d in dist.items() if d == INF)
        if stranded:
            raise NotCoReachable(
                f"vertices {stranded} have no path to {root}"
            )
    leaving = out_cut(g, {root})
    kept = frozenset(
        e
        for e in g.edges
        if e not in leaving
        and dist[e.head] != INF
        and dist[e.tail] == dist[e.head] + 1
    )
    return ShortestPathsSubgraph(g, root, kept, dist)


def out_branching_roots(g: Digraph) -> set[int]:
    return {v for v in g.vertices if len(reachable_from(g, v)) == g.n}


def is_strongly_connected(g: Digraph) -> bool:
    forward = reachable_from(g, 1)
    if len(forward) != g.n:
        return False
    return all(d != INF for d in distances_to(g, 1).values())


def enumerate_outbranchings(g: Digraph, root: int) -> int:
    """Count ``root``-rooted spanning out-branchings by exhaustive search.

    Every non-root vertex picks exactly one in-edge; a choice is a branching
    iff following parents from any vertex ends at ``root`` without a cycle.
    """
    if g.n > ORACLE_MAX_N:
        raise TooLarge(f"out-branching enumeration limited to n <= {ORACLE_MAX_N}")
    others = [v for v in g.vertices if v != root]
    choices = [g.predecessors[v] for v in others]
    if any(not c for c in choices):
        return 0
    total = 0
    for parents in product(*choices):
        parent = dict(zip(others, parents))
        if all(_climbs_to_root(parent, v, root) for v in others):
            total += 1
    return total


def _climbs_to_root(parent: dict[int, int], v: int, root: int) -> bool:
    seen = set()
    while v != root:
        if v in seen:
            return False
        seen.add(v)
        v = parent[v]
    return True
