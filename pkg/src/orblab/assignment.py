"""Minimum-weight perfect matching on a square cost matrix.

The solver is the O(n^3) shortest-augmenting-path form of the Hungarian
method with row/column potentials.  Among all optimal matchings the
lexicographically smallest assignment vector is returned, so equal inputs
always yield the same labeling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TIE_RTOL = 1e-9


@dataclass(frozen=True)
class Matching:
    assignment: tuple[int, ...]  # row i -> column assignment[i]
    total_cost: float


def _as_cost_matrix(W) -> np.ndarray:
    a = np.asarray(W, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("cost matrix entries must be finite")
    return a


def _hungarian(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (row->col assignment, row potentials u, column potentials v).

    Potentials satisfy ``u[i] + v[j] <= a[i, j]`` with equality on matched cells.
    """
    n = a.shape[0]
    INF = math.inf
    # 1-based bookkeeping; index 0 is the virtual root column
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=int)  # p[j]: row matched to column j
    way = np.zeros(n + 1, dtype=int)
    cost = np.zeros((n + 1, n + 1))
    cost[1:, 1:] = a
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, INF)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = cost[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            cand = np.where(free, minv, INF)
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign, u[1:], v[1:]


def _lexicographic_smallest(tight: np.ndarray, assign: np.ndarray) -> np.ndarray:
    """Lexicographically smallest perfect matching inside the tight-edge graph.

    ``assign`` is a perfect matching using tight edges only.  Rows are fixed
    in order; row i moves to a smaller tight column j when an alternating
    cycle through (i, j) exists among the not-yet-fixed rows.
    """
    n = len(assign)
    assign = assign.copy()
    owner = np.empty(n, dtype=int)
    owner[assign] = np.arange(n)
    for i in range(n):
        for j in np.flatnonzero(tight[i]):
            if j >= assign[i]:
                break
            if owner[j] < i:
                continue
            # search an alternating path from owner[j] to assign[i] over rows > i
            target = assign[i]
            start = owner[j]
            prev = {start: None}
            stack = [start]
            found_row = None
            while stack and found_row is None:
                r = stack.pop()
                for c in np.flatnonzero(tight[r]):
                    if c == j:
                        continue
                    if c == target:
                        found_row = r
                        prev_col = c
                        break
                    nr = owner[c]
                    if nr > i and nr not in prev:
                        prev[nr] = (r, c)
                        stack.append(nr)
            if found_row is None:
                continue
            # rotate: i takes j; walk back along the path shifting columns
            r, c = found_row, prev_col
            while r is not None:
                old = assign[r]
                assign[r] = c
                owner[c] = r
                back = prev[r]
                if back is None:
                    break
                r, c = back[0], old
            assign[i] = j
            owner[j] = i
            break
    return assign


def min_weight_matching(W) -> Matching:
    """Optimal assignment of rows to columns minimizing the summed cost."""
    a = _as_cost_matrix(W)
    n = a.shape[0]
    if n == 0:
        return Matching((), 0.0)
    assign, u, v = _hungarian(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    tight = np.abs(a - u[:, None] - v[None, :]) <= TIE_RTOL * scale
    tight[np.arange(n), assign] = True
    assign = _lexicographic_smallest(tight, assign)
    total = math.fsum(a[i, assign[i]] for i in range(n))
    return Matching(tuple(int(j) for j in assign), total)
