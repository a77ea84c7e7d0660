"""Leader-length-optimal labeling for uniform label widths.

With equal widths the anchor fixes all n candidate ports, so the problem is
a plain assignment of features to ports.  The min-cost assignment is
crossing-free for both leader styles.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .assignment import min_weight_matching
from .geometry import LeaderStyle, Port, leader_length
from .instance import Instance, validate
from .labeling import Labeling, SolveReport, count_crossings, place_from_order, total_leader_length


def uniform_ports(n: int, R: float = 1.0) -> list[Port]:
    """Ports of n equal labels laid from the anchor: angle ``(2k+1)*pi/n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [Port((2 * k + 1) * math.pi / n) for k in range(n)]


def cost_matrix(inst: Instance, ports, style: LeaderStyle) -> np.ndarray:
    """``W[i, j]`` = leader length from feature i to port j."""
    R = inst.radius
    return np.array(
        [[leader_length(style, f.position, p, R) for p in ports] for f in inst.features]
    )


def uniform_order(inst: Instance, style: LeaderStyle) -> tuple[int, ...]:
    """CCW label order induced by the optimal feature-to-slot matching.

    Widths are ignored: every label is treated as ``|B| / n`` long.
    """
    W = cost_matrix(inst, uniform_ports(inst.n, inst.radius), style)
    slot = min_weight_matching(W).assignment
    order = [0] * inst.n
    for i, k in enumerate(slot):
        order[k] = i
    return tuple(order)


def solve_uniform(inst: Instance, style: LeaderStyle) -> tuple[Labeling, SolveReport]:
    style = LeaderStyle(style)
    problems = validate(inst)
    if problems:
        raise ValueError(f"invalid instance: {problems}")
    if not inst.has_uniform_widths():
        raise ValueError("solve_uniform needs equal widths; see Instance.with_uniform_widths")
    t0 = time.perf_counter()
    order = uniform_order(inst, style)
    lab = place_from_order(inst, order, style)
    elapsed = time.perf_counter() - t0
    crossings, _ = count_crossings(inst, lab)
    report = SolveReport(
        tll=total_leader_length(inst, lab),
        crossings=crossings,
        wall_time=elapsed,
        optimal=True,
        iterations=0,
    )
    return lab, report
