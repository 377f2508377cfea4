"""Exact decisions on whether two digraphs look different from one agent.

Agent ``i`` sees ``x_i(t) = e_i^T exp(-L t) x(0)``.  Expanding the exponential,
the two responses coincide for every initial state iff the moment rows
``e_i^T L1^m`` and ``e_i^T L2^m`` agree for every ``m >= 0``.

A finite check suffices.  Stack the rows as ``w_m = [e_i^T L1^m, e_i^T L2^m]
= w_0 diag(L1, L2)^m``.  These live in a Krylov space of dimension at most
``2n``, so by Cayley-Hamilton every ``w_m`` is a linear combination of
``w_0 .. w_{2n-1}``.  The difference ``e_i^T (L1^m - L2^m)`` is a fixed linear
image of ``w_m``, so if it vanishes for ``m <= 2n - 1`` it vanishes for all
``m``.  ``m = 0`` is always equal, leaving ``m`` in ``[1, 2n - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .digraph import Digraph, IntMatrix, laplacian
from .errors import DimensionMismatch, NotDistinguishable
from .paths import INF, shortest_path_counts_to


@dataclass(frozen=True)
class MomentTable:
    observer: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def m_max(self) -> int:
        return len(self.rows) - 1


def _row_times(row: tuple[int, ...], lap: IntMatrix) -> tuple[int, ...]:
    n = len(row)
    out = [0] * n
    for k, a in enumerate(row):
        if a:
            lk = lap[k]
            for c in range(n):
                if lk[c]:
                    out[c] += a * lk[c]
    return tuple(out)


def moment_table(g: Digraph, i: int, m_max: int) -> MomentTable:
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    lap = laplacian(g)
    row = tuple(int(v == i) for v in g.vertices)
    rows = [row]
    for _ in range(m_max):
        row = _row_times(row, lap)
        rows.append(row)
    return MomentTable(i, tuple(rows))


@dataclass(frozen=True)
class Certificate:
    """A vertex whose shortest-path profile to the observer differs between graphs."""

    vertex: int
    kind: str  # "distance-mismatch" | "shortest-count-mismatch"
    first: tuple[float, int]   # (distance, count) in G1
    second: tuple[float, int]  # (distance, count) in G2

    def to_dict(self) -> dict:
        def enc(d):
            return None if d == INF else int(d)

        return {
            "vertex": self.vertex,
            "kind": self.kind,
            "g1": {"distance": enc(self.first[0]), "count": self.first[1]},
            "g2": {"distance": enc(self.second[0]), "count": self.second[1]},
        }


@dataclass(frozen=True)
class DistinguishVerdict:
    observer: int
    distinguishable: bool
    first_divergent_moment: int | None
    certificate: Certificate | None = None
    moments_checked: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "observer": self.observer,
            "distinguishable": self.distinguishable,
            "first_divergent_moment": self.first_divergent_moment,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def _same_size(g1: Digraph, g2: Digraph) -> None:
    if g1.n != g2.n:
        raise DimensionMismatch(f"vertex counts differ: {g1.n} vs {g2.n}")


def moment_bound(n: int) -> int:
    return 2 * n - 1


def first_divergent_moment(g1: Digraph, g2: Digraph, i: int, m_max: int | None = None) -> int | None:
    _same_size(g1, g2)
    if m_max is None:
        m_max = moment_bound(g1.n)
    if g1.edges == g2.edges:
        return None
    l1, l2 = laplacian(g1), laplacian(g2)
    r1 = r2 = tuple(int(v == i) for v in g1.vertices)
    for m in range(1, m_max + 1):
        r1, r2 = _row_times(r1, l1), _row_times(r2, l2)
        if r1 != r2:
            return m
    return None


def is_distinguishable(g1: Digraph, g2: Digraph, i: int, m_max: int | None = None) -> DistinguishVerdict:
    """Exact verdict from the moment rows, with a shortest-path certificate if one exists."""
    _same_size(g1, g2)
    if m_max is None:
        m_max = moment_bound(g1.n)
    m_star = first_divergent_moment(g1, g2, i, m_max)
    return DistinguishVerdict(
        observer=i,
        distinguishable=m_star is not None,
        first_divergent_moment=m_star,
        certificate=theorem3_certificate(g1, g2, i),
        moments_checked=m_max,
    )


def theorem3_certificate(g1: Digraph, g2: Digraph, i: int) -> Certificate | None:
    """First vertex (by id) whose distance or shortest-path count to ``i`` differs.

    Indistinguishable graphs always agree on both, so any hit proves the pair
    distinguishable.  No hit proves nothing.
    """
    _same_size(g1, g2)
    d1, c1 = shortest_path_counts_to(g1, i)
    d2, c2 = shortest_path_counts_to(g2, i)
    for v in g1.vertices:
        if v == i:
            continue
        if d1[v] != d2[v]:
            return Certificate(v, "distance-mismatch", (d1[v], c1[v]), (d2[v], c2[v]))
        if d1[v] != INF and c1[v] != c2[v]:
            return Certificate(v, "shortest-count-mismatch", (d1[v], c1[v]), (d2[v], c2[v]))
    return None


def corollary1_check(g1: Digraph, g2: Digraph, i: int) -> bool:
    """True iff the observer's Laplacian rows agree.  False already proves distinguishability."""
    _same_size(g1, g2)
    return laplacian(g1)[i - 1] == laplacian(g2)[i - 1]


def witness_initial_condition(g1: Digraph, g2: Digraph, i: int) -> list[int]:
    """Indicator initial state separating the two responses at agent ``i``.

    Picks the coordinate of largest magnitude in the first nonzero moment
    difference; that coordinate makes the lowest-order Taylor term of the
    response gap nonzero.
    """
    verdict = first_divergent_moment(g1, g2, i)
    if verdict is None:
        raise NotDistinguishable(f"digraphs look identical from agent {i}")
    r1 = moment_table(g1, i, verdict).rows[-1]
    r2 = moment_table(g2, i, verdict).rows[-1]
    diff = [a - b for a, b in zip(r1, r2)]
    best = max(range(len(diff)), key=lambda k: (abs(diff[k]), -k))
    return [int(k == best) for k in range(len(diff))]


@dataclass(frozen=True)
class PermutationMap:
    """Vertex bijection ``v -> images[v]``."""

    images: Mapping[int, int]

    def __post_init__(self):
        keys = set(self.images)
        if keys != set(self.images.values()):
            raise ValueError("permutation must be a bijection on its vertex set")
        object.__setattr__(self, "images", dict(self.images))

    @classmethod
    def identity(cls, n: int) -> "PermutationMap":
        return cls({v: v for v in range(1, n + 1)})

    def __call__(self, v: int) -> int:
        return self.images[v]

    def matrix(self) -> list[list[int]]:
        """Permutation matrix ``P`` with ``P e_v = e_{psi(v)}``."""
        n = len(self.images)
        p = [[0] * n for _ in range(n)]
        for v, w in self.images.items():
            p[w - 1][v - 1] = 1
        return p


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def symmetry_masks(g1: Digraph, g2: Digraph, psi: PermutationMap, i: int) -> bool:
    """True iff ``P L1 = L2 P`` and ``P`` fixes ``e_i``.

    When it holds, every initial state with ``x_psi(v) = x_v`` produces the same
    response at agent ``i`` in both digraphs.
    """
    _same_size(g1, g2)
    if set(psi.images) != set(g1.vertices):
        raise ValueError("permutation must act on the digraph's vertices")
    p = psi.matrix()
    l1, l2 = laplacian(g1), laplacian(g2)
    return psi(i) == i and _matmul(p, l1) == _matmul(l2, p)
