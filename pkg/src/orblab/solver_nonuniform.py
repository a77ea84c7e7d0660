"""Non-uniform label widths: swap-uncrossing heuristic and exact branch-and-bound.

With an anchored first label a labeling is fully determined by its CCW
label order, so both solvers search over permutations.
"""

from __future__ import annotations

import bisect
import math
import time
from dataclasses import dataclass
from typing import Iterator

from .geometry import (
    TWO_PI,
    LeaderStyle,
    leader_length,
    min_leader_length,
    port_in_open_arc,
    segments_cross,
    Port,
)
from .instance import Instance, validate
from .labeling import (
    Labeling,
    SolveReport,
    count_crossings,
    crossing_pairs,
    place_from_order,
    total_leader_length,
)
from .rng import SplitMix64
from .solver_uniform import uniform_order

__all__ = [
    "HeuristicConfig",
    "HeuristicFailure",
    "Infeasible",
    "TimedOut",
    "count_crossings",
    "iter_feasible_orders",
    "place_from_order",
    "solve_exact",
    "solve_heuristic",
]

DEFAULT_EXACT_CAP = 12


@dataclass
class HeuristicConfig:
    style: LeaderStyle = LeaderStyle.SL
    max_swaps: int | None = None  # None -> 10 * n**2
    pair_selection: str = "lexicographic"  # or "random"
    seed: int = 0

    def __post_init__(self):
        self.style = LeaderStyle(self.style)
        if self.max_swaps is not None and self.max_swaps < 1:
            raise ValueError("max_swaps must be >= 1")
        if self.pair_selection not in ("lexicographic", "random"):
            raise ValueError(f"unknown pair_selection {self.pair_selection!r}")

    def budget(self, n: int) -> int:
        return self.max_swaps if self.max_swaps is not None else 10 * n * n


@dataclass
class HeuristicFailure:
    """Swap budget exhausted; ``best`` is the placement with the fewest crossings seen."""

    best: Labeling
    report: SolveReport


@dataclass
class Infeasible:
    """No anchored label order admits a crossing-free labeling."""

    report: SolveReport


@dataclass
class TimedOut:
    best: Labeling | None
    report: SolveReport


def _require_valid(inst: Instance) -> None:
    problems = validate(inst)
    if problems:
        raise ValueError(f"invalid instance: {problems}")


def solve_heuristic(inst: Instance, cfg: HeuristicConfig | None = None):
    """Seed with the uniform-width matching order, then swap crossing pairs.

    Returns ``(labeling, report)`` on success or a :class:`HeuristicFailure`.
    """
    cfg = cfg or HeuristicConfig()
    _require_valid(inst)
    style = cfg.style
    budget = cfg.budget(inst.n)
    rng = SplitMix64(cfg.seed) if cfg.pair_selection == "random" else None

    t0 = time.perf_counter()
    order = list(uniform_order(inst, style))
    pos = {f: k for k, f in enumerate(order)}
    lab = place_from_order(inst, order, style)
    pairs = crossing_pairs(inst, lab)
    best, best_count = lab, len(pairs)
    swaps = 0
    while pairs and swaps < budget:
        i, j = pairs[0] if rng is None else pairs[rng.randbelow(len(pairs))]
        a, b = pos[i], pos[j]
        order[a], order[b] = j, i
        pos[i], pos[j] = b, a
        swaps += 1
        lab = place_from_order(inst, order, style)
        pairs = crossing_pairs(inst, lab)
        if len(pairs) < best_count:
            best, best_count = lab, len(pairs)
    elapsed = time.perf_counter() - t0

    if pairs:
        report = SolveReport(total_leader_length(inst, best), best_count, elapsed, False, swaps)
        return HeuristicFailure(best, report)
    return lab, SolveReport(total_leader_length(inst, lab), 0, elapsed, False, swaps)


# --------------------------------------------------------------------------- exact


class _Search:
    """Depth-first search over anchored label orders.

    A partial order fixes the ports of its labels.  Children whose new
    leader crosses an already placed one are cut; with ``bound`` enabled,
    children whose placed cost plus an admissible estimate for the remaining
    features cannot beat the incumbent are cut too.
    """

    def __init__(self, inst: Instance, style: LeaderStyle, bound: bool, deadline: float | None):
        self.inst = inst
        self.style = style
        self.bound = bound
        self.deadline = deadline
        self.R = inst.radius
        self.B = inst.circumference
        self.pos = inst.positions
        self.xy = [p.cartesian() for p in self.pos]
        self.w = inst.widths
        self.n = inst.n
        self.best_cost = math.inf
        self.best_order: tuple[int, ...] | None = None
        self.nodes = 0
        self.timed_out = False

    def _crosses(self, i: int, bi: float, j: int, bj: float) -> bool:
        if self.style is LeaderStyle.SL:
            R = self.R
            return segments_cross(
                self.xy[i], (R * math.cos(bi), R * math.sin(bi)),
                self.xy[j], (R * math.cos(bj), R * math.sin(bj)),
            )
        if self.pos[i].r < self.pos[j].r:
            return port_in_open_arc(bi, self.pos[j].theta, bj)
        return port_in_open_arc(bj, self.pos[i].theta, bi)

    def _remaining_bound(self, prefix: float, remaining) -> float:
        total = 0.0
        for u in remaining:
            lo = (prefix + 0.5 * self.w[u]) / self.R
            hi = (self.B - 0.5 * self.w[u]) / self.R
            total += min_leader_length(self.style, self.pos[u], lo, max(lo, hi), self.R)
        return total

    def children(self, order, betas, prefix, cost, remaining):
        """Feasible extensions ``(feature, beta, new_cost)`` in deterministic order."""
        out = []
        for i in remaining:
            beta = (prefix + 0.5 * self.w[i]) / self.R
            if beta >= TWO_PI:
                beta -= TWO_PI
            if any(self._crosses(i, beta, j, bj) for j, bj in zip(order, betas)):
                continue
            c = cost + leader_length(self.style, self.pos[i], Port(beta), self.R)
            out.append((i, beta, c))
        return out

    def run(self, visit_leaf) -> None:
        self._dfs([], [], 0.0, 0.0, list(range(self.n)), visit_leaf)

    def _dfs(self, order, betas, prefix, cost, remaining, visit_leaf):
        if self.timed_out:
            return
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0 and time.perf_counter() > self.deadline:
            self.timed_out = True
            return
        if not remaining:
            visit_leaf(tuple(order), cost)
            return
        kids = self.children(order, betas, prefix, cost, remaining)
        if self.bound:
            scored = []
            for i, beta, c in kids:
                rest = [u for u in remaining if u != i]
                lb = c + self._remaining_bound(prefix + self.w[i], rest)
                if lb < self.best_cost:
                    scored.append((lb, i, beta, c))
            scored.sort()
        else:
            scored = [(0.0, i, beta, c) for i, beta, c in kids]
        for lb, i, beta, c in scored:
            # the incumbent may have improved since this child was scored
            if lb >= self.best_cost:
                continue
            order.append(i)
            betas.append(beta)
            remaining.remove(i)
            self._dfs(order, betas, prefix + self.w[i], c, remaining, visit_leaf)
            bisect.insort(remaining, i)  # sorted keeps sibling order fixed
            order.pop()
            betas.pop()


def iter_feasible_orders(inst: Instance, style: LeaderStyle) -> Iterator[tuple[int, ...]]:
    """All crossing-free anchored orders, found with crossing pruning only."""
    found: list[tuple[int, ...]] = []
    search = _Search(inst, LeaderStyle(style), bound=False, deadline=None)
    search.run(lambda order, cost: found.append(order))
    return iter(found)


def solve_exact(
    inst: Instance,
    style: LeaderStyle,
    time_limit: float | None = 60.0,
    max_n: int = DEFAULT_EXACT_CAP,
    warm_start: bool = True,
):
    """Crossing-free labeling of minimum total leader length over all anchored orders.

    Returns ``(labeling, report)``, :class:`Infeasible` or :class:`TimedOut`.
    """
    style = LeaderStyle(style)
    _require_valid(inst)
    if inst.n > max_n:
        raise ValueError(f"n={inst.n} exceeds the exact-solver cap {max_n}; raise max_n explicitly")

    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit
    search = _Search(inst, style, bound=True, deadline=deadline)
    if warm_start:
        seed = solve_heuristic(inst, HeuristicConfig(style=style))
        if isinstance(seed, tuple):
            search.best_order = seed[0].order
            search.best_cost = _order_cost(search, seed[0].order)

    def visit(order, cost):
        if cost < search.best_cost:
            search.best_cost = cost
            search.best_order = order

    search.run(visit)
    elapsed = time.perf_counter() - t0

    if search.timed_out:
        best = None if search.best_order is None else place_from_order(inst, search.best_order, style)
        tll = math.nan if best is None else total_leader_length(inst, best)
        return TimedOut(best, SolveReport(tll, 0, elapsed, False, search.nodes))
    if search.best_order is None:
        return Infeasible(SolveReport(math.nan, 0, elapsed, True, search.nodes))
    lab = place_from_order(inst, search.best_order, style)
    crossings, _ = count_crossings(inst, lab)
    return lab, SolveReport(total_leader_length(inst, lab), crossings, elapsed, True, search.nodes)


def _order_cost(search: _Search, order) -> float:
    """Leader cost of ``order`` accumulated exactly as the search does."""
    cost, prefix = 0.0, 0.0
    for i in order:
        beta = (prefix + 0.5 * search.w[i]) / search.R
        if beta >= TWO_PI:
            beta -= TWO_PI
        cost += leader_length(search.style, search.pos[i], Port(beta), search.R)
        prefix += search.w[i]
    return cost
