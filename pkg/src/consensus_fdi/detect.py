"""Detectability of link failures and observer placement.

A failure set ``F`` is detectable from agent ``i`` when ``G`` and ``G - F``
are distinguishable from ``i``.  The graphical checks here are sufficient
conditions only: a positive answer is a proof, a negative one says nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from . import paths
from .digraph import Digraph, Edge, check_subset, incident_edges, remove_edges
from .distinguish import DistinguishVerdict, is_distinguishable
from .errors import NotCoReachable
from .paths import INF, distances_to, shortest_paths_subgraph


class Status(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CriterionResult:
    status: Status
    witness: tuple | None = None
    reason: str = ""

    @property
    def positive(self) -> bool:
        return self.status is Status.POSITIVE

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "reason": self.reason,
        }


def prop1_check(g: Digraph, failures: Iterable[tuple[int, int]], i: int) -> CriterionResult:
    """Positive if some failed edge points strictly closer to the observer.

    Looks for ``(j, k)`` in ``F`` with ``d(j, i) > d(k, i)`` in ``G``.  An
    unreachable tail beats any finite head distance; an unreachable head never
    qualifies.
    """
    fs = check_subset(g, failures)
    dist = distances_to(g, i)
    for e in sorted(fs):
        if dist[e.head] != INF and dist[e.tail] > dist[e.head]:
            return CriterionResult(Status.POSITIVE, e)
    return CriterionResult(Status.NEGATIVE)


def prop2_check(g: Digraph, failures: Iterable[tuple[int, int]], i: int) -> CriterionResult:
    """Common-head failures that leave the head able to reach another root.

    With every failed edge entering the same vertex ``k``, positive iff the
    damaged digraph still has an out-branching root ``o != k`` reachable from
    ``k``.  Witness is ``(k, o)`` with the smallest such ``o``.  The observer
    plays no role in the condition.
    """
    fs = check_subset(g, failures)
    if not fs:
        return CriterionResult(Status.NEGATIVE, reason="empty failure set")
    heads = {e.head for e in fs}
    if len(heads) != 1:
        return CriterionResult(Status.NOT_APPLICABLE, reason="failed edges have distinct heads")
    (k,) = heads
    damaged = remove_edges(g, fs)
    reach = paths.reachable_from(damaged, k)
    for o in sorted(paths.out_branching_roots(damaged)):
        if o != k and o in reach:
            return CriterionResult(Status.POSITIVE, (k, o))
    return CriterionResult(Status.NEGATIVE)


def cor2_check(g: Digraph) -> bool:
    """True iff removing any single edge leaves ``g`` strongly connected."""
    return all(paths.is_strongly_connected(remove_edges(g, [e])) for e in g.edges)


def cor3_check(
    g: Digraph, failures: Iterable[tuple[int, int]], i: int, strict: bool = True
) -> CriterionResult:
    """Positive iff ``F`` meets the shortest-paths subgraph towards ``i``.

    Strict mode requires every vertex to reach ``i`` and reports
    not-applicable otherwise; relaxed mode drops that precondition.
    """
    fs = check_subset(g, failures)
    try:
        sub = shortest_paths_subgraph(g, i, strict=strict)
    except NotCoReachable as exc:
        return CriterionResult(Status.NOT_APPLICABLE, reason=str(exc))
    hit = sorted(fs & sub.kept_edges)
    if hit:
        return CriterionResult(Status.POSITIVE, hit[0])
    return CriterionResult(Status.NEGATIVE)


def exact_detectable(g: Digraph, failures: Iterable[tuple[int, int]], i: int) -> DistinguishVerdict:
    return is_distinguishable(g, remove_edges(g, failures), i)


@dataclass(frozen=True)
class DetectReport:
    failure_set: frozenset[Edge]
    observer: int
    prop1: CriterionResult
    prop2: CriterionResult
    cor3: CriterionResult
    exact: DistinguishVerdict

    @property
    def detectable(self) -> bool:
        return self.exact.distinguishable

    def to_dict(self) -> dict:
        return {
            "failure_set": [list(e) for e in sorted(self.failure_set)],
            "observer": self.observer,
            "prop1": self.prop1.to_dict(),
            "prop2": self.prop2.to_dict(),
            "cor3": self.cor3.to_dict(),
            "exact": self.exact.to_dict(),
            "detectable": self.detectable,
        }


def detect_report(g: Digraph, failures: Iterable[tuple[int, int]], i: int) -> DetectReport:
    fs = check_subset(g, failures)
    return DetectReport(
        failure_set=fs,
        observer=i,
        prop1=prop1_check(g, fs, i),
        prop2=prop2_check(g, fs, i),
        cor3=cor3_check(g, fs, i),
        exact=exact_detectable(g, fs, i),
    )


def node_failure_detectable(g: Digraph, v: int, i: int) -> DetectReport:
    """Agent ``v`` dropping out is the loss of every edge touching it."""
    if v == i:
        raise ValueError("the failing agent cannot be the observer")
    return detect_report(g, incident_edges(g, v), i)


@dataclass(frozen=True)
class ObservationPlan:
    observers: tuple[int, ...]
    covered: tuple[frozenset[Edge], ...]  # newly covered edges, per observer
    residual: frozenset[Edge]
    iterations: int
    literal: bool = False

    def to_dict(self) -> dict:
        return {
            "mode": "literal" if self.literal else "set-cover",
            "observers": list(self.observers),
            "covered": [
                {"observer": o, "edges": [list(e) for e in sorted(c)]}
                for o, c in zip(self.observers, self.covered)
            ],
            "residual": [list(e) for e in sorted(self.residual)],
            "iterations": self.iterations,
        }


def greedy_observation_set(g: Digraph, literal: bool = False) -> ObservationPlan:
    """Greedily pick observers whose shortest-paths subgraphs cover the edges.

    By default the subgraphs are computed once on ``g`` (relaxed mode) and a
    greedy set cover runs over them, so every covered edge is certified on
    the original digraph.  ``literal=True`` instead deletes the covered edges
    from the digraph and recomputes the subgraphs on what is left each round.
    Both stop as soon as no vertex covers anything new; ties go to the
    smallest vertex id.
    """
    uncovered = set(g.edges)
    if not literal:
        cover = {v: shortest_paths_subgraph(g, v, strict=False).kept_edges for v in g.vertices}
    observers, covered = [], []
    iterations = 0
    while uncovered:
        if literal:
            current = Digraph(g.n, frozenset(uncovered))
            cover = {
                v: shortest_paths_subgraph(current, v, strict=False).kept_edges
                for v in g.vertices
            }
        gains = {v: cover[v] & uncovered for v in g.vertices}
        best = max(g.vertices, key=lambda v: (len(gains[v]), -v))
        if not gains[best]:
            break
        iterations += 1
        observers.append(best)
        covered.append(frozenset(gains[best]))
        uncovered -= gains[best]
    return ObservationPlan(tuple(observers), tuple(covered), frozenset(uncovered), iterations, literal)
