"""Floating-point trajectories of the agreement dynamics ``x' = -L x``.

Simulation is evidence and visualisation only; every verdict in this package
comes from exact arithmetic.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .digraph import Digraph, laplacian
from .errors import DimensionMismatch, NonSquare

DEFAULT_TMAX = 5.0
DEFAULT_STEPS = 501

# Higham (2005) Pade coefficients and 1-norm thresholds for degrees 3..13
_PADE = {
    3: (1.495585217958292e-2, (120.0, 60.0, 12.0, 1.0)),
    5: (2.539398330063230e-1, (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0)),
    7: (
        9.504178996162932e-1,
        (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    ),
    9: (
        2.097847961257068,
        (
            17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
            2162160.0, 110880.0, 3960.0, 90.0, 1.0,
        ),
    ),
    13: (
        5.371920351148152,
        (
            64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
            1187353796428800.0, 129060195264000.0, 10559470521600.0,
            670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
            960960.0, 16380.0, 182.0, 1.0,
        ),
    ),
}


def _pade_uv(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    b = _PADE[m][1]
    eye = np.broadcast_to(np.eye(a.shape[-1]), a.shape)
    a2 = a @ a
    if m == 13:
        a4 = a2 @ a2
        a6 = a4 @ a2
        u = a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye
        u = a @ u
        v = a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye
        return u, v
    u = b[1] * eye
    v = b[0] * eye
    power = eye
    for k in range(2, m + 1, 2):
        power = power @ a2
        u = u + b[k + 1] * power
        v = v + b[k] * power
    return a @ u, v


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a square matrix or a stack of them.

    Scaling and squaring around diagonal Pade approximants of degree 3-13,
    with the degree and scaling chosen per matrix from its 1-norm.  Accurate
    to a few units of roundoff relative to ``exp(||a||)``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise NonSquare(f"expected square matrices, got shape {a.shape}")
    stack = a.reshape((-1,) + a.shape[-2:])
    norms = np.abs(stack).sum(axis=-2).max(axis=-1) if stack.shape[-1] else np.zeros(len(stack))
    plans = []
    for nrm in norms:
        for m in (3, 5, 7, 9):
            if nrm <= _PADE[m][0]:
                plans.append((m, 0))
                break
        else:
            theta = _PADE[13][0]
            plans.append((13, max(0, math.ceil(math.log2(nrm / theta))) if nrm > theta else 0))
    out = np.empty_like(stack)
    for plan in set(plans):
        idx = [k for k, p in enumerate(plans) if p == plan]
        m, s = plan
        block = stack[idx] / (2.0 ** s)
        u, v = _pade_uv(block, m)
        r = np.linalg.solve(v - u, v + u)
        for _ in range(s):
            r = r @ r
        out[idx] = r
    return out.reshape(a.shape)


def expm_neg_lt(lap, t: float | Sequence[float]) -> np.ndarray:
    """``exp(-L t)`` for one time or a vector of times (stacked on axis 0)."""
    lmat = np.asarray(lap, dtype=float)
    if lmat.ndim != 2 or lmat.shape[0] != lmat.shape[1]:
        raise NonSquare(f"Laplacian must be square, got shape {lmat.shape}")
    ts = np.asarray(t, dtype=float)
    if np.any(ts < 0):
        raise ValueError("time must be non-negative")
    return expm(-ts[..., None, None] * lmat)


def default_grid(tmax: float = DEFAULT_TMAX, steps: int = DEFAULT_STEPS) -> np.ndarray:
    return np.linspace(0.0, tmax, steps)


def _check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("time grid must be strictly increasing")
    if grid[0] < 0:
        raise ValueError("time grid must start at t >= 0")
    return grid


def _check_state(g: Digraph, x0) -> np.ndarray:
    x0 = np.asarray(x0, dtype=float)
    if x0.shape[0] != g.n:
        raise DimensionMismatch(f"initial state has {x0.shape[0]} entries, digraph has {g.n}")
    return x0


@dataclass(frozen=True)
class Trajectory:
    grid: np.ndarray
    states: np.ndarray  # shape (len(grid), n)

    def agent(self, i: int) -> np.ndarray:
        return self.states[:, i - 1]

    def to_csv(self, path) -> None:
        n = self.states.shape[1]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t"] + [f"x{k}" for k in range(1, n + 1)])
            for t, row in zip(self.grid, self.states):
                w.writerow([_fmt(t)] + [_fmt(x) for x in row])


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def simulate(g: Digraph, x0, grid=None) -> Trajectory:
    grid = _check_grid(default_grid() if grid is None else grid)
    x0 = _check_state(g, x0)
    props = expm_neg_lt(laplacian(g), grid)
    # L 1 = 0, so shifting by a constant is exact and a consensus state stays put bit for bit
    c = x0[0] if x0.size else 0.0
    return Trajectory(grid, c + props @ (x0 - c))


def observer_rows(g: Digraph, i: int, grid) -> np.ndarray:
    """Row ``i`` of ``exp(-L t)`` at every grid time, shape ``(T, n)``."""
    grid = _check_grid(grid)
    return expm_neg_lt(laplacian(g), grid)[:, i - 1, :]


@dataclass(frozen=True)
class ResponseGap:
    observer: int
    grid: np.ndarray
    gap: np.ndarray

    @property
    def max_gap(self) -> float:
        return float(self.gap.max())

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "gap"])
            for t, v in zip(self.grid, self.gap):
                w.writerow([_fmt(t), _fmt(v)])


def response_gaps(g1: Digraph, g2: Digraph, i: int, x0s, grid=None) -> np.ndarray:
    """Gaps ``|x_i^G1(t) - x_i^G2(t)|`` for a batch of initial states.

    ``x0s`` has shape ``(n, k)``; the result has shape ``(T, k)``.
    """
    if g1.n != g2.n:
        raise DimensionMismatch(f"vertex counts differ: {g1.n} vs {g2.n}")
    grid = _check_grid(default_grid() if grid is None else grid)
    x0s = _check_state(g1, x0s)
    diff = observer_rows(g1, i, grid) - observer_rows(g2, i, grid)
    # the consensus component produces no gap; drop it before the product
    return np.abs(diff @ (x0s - x0s[:1]))


def response_gap(g1: Digraph, g2: Digraph, i: int, x0, grid=None) -> ResponseGap:
    grid = _check_grid(default_grid() if grid is None else grid)
    x0 = np.asarray(x0, dtype=float)
    if x0.ndim != 1:
        raise DimensionMismatch("response_gap takes a single initial state")
    gap = response_gaps(g1, g2, i, x0[:, None], grid)[:, 0]
    return ResponseGap(i, grid, gap)

