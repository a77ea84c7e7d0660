"""Labelings and the operations every solver shares."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .geometry import TWO_PI, LeaderStyle, Port, leader_length, leaders_cross
from .instance import Instance


@dataclass(frozen=True)
class Labeling:
    """Result of a solver.

    ``ports[i]`` and ``label_arcs[i]`` belong to feature ``i``; arcs are
    half-open ``[start, end)`` in arc-length units counted CCW from the
    anchor.  ``order`` lists features in CCW label order starting at the
    anchor.
    """

    style: LeaderStyle
    ports: tuple[Port, ...]
    label_arcs: tuple[tuple[float, float], ...]
    order: tuple[int, ...]


@dataclass
class SolveReport:
    tll: float
    crossings: int
    wall_time: float
    optimal: bool
    iterations: int = 0


def _check_permutation(order, n: int) -> tuple[int, ...]:
    order = tuple(int(k) for k in order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"order must be a permutation of 0..{n - 1}, got {order}")
    return order


def place_from_order(inst: Instance, order, style: LeaderStyle = LeaderStyle.SL) -> Labeling:
    """Lay labels CCW from the anchor in ``order`` with their true widths; ports at midpoints."""
    order = _check_permutation(order, inst.n)
    R = inst.radius
    ports: list[Port | None] = [None] * inst.n
    arcs: list[tuple[float, float] | None] = [None] * inst.n
    start = 0.0
    for i in order:
        w = inst.features[i].width
        end = start + w
        arcs[i] = (start, end)
        beta = (start + 0.5 * w) / R
        ports[i] = Port(beta if beta < TWO_PI else beta - TWO_PI)
        start = end
    return Labeling(LeaderStyle(style), tuple(ports), tuple(arcs), order)


def leader_lengths(inst: Instance, lab: Labeling) -> list[float]:
    return [
        leader_length(lab.style, f.position, p, inst.radius)
        for f, p in zip(inst.features, lab.ports)
    ]


def total_leader_length(inst: Instance, lab: Labeling) -> float:
    return math.fsum(leader_lengths(inst, lab))


def crossing_pairs(inst: Instance, lab: Labeling) -> list[tuple[int, int]]:
    """All crossing leader pairs ``(i, j)``, ``i < j``, in lexicographic order."""
    if len(lab.ports) != inst.n:
        raise ValueError("labeling does not match instance size")
    pos = inst.positions
    R = inst.radius
    out = []
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            if leaders_cross(lab.style, pos[i], lab.ports[i], pos[j], lab.ports[j], R):
                out.append((i, j))
    return out


def count_crossings(inst: Instance, lab: Labeling) -> tuple[int, list[tuple[int, int]]]:
    pairs = crossing_pairs(inst, lab)
    return len(pairs), pairs


def check_consistent(inst: Instance, lab: Labeling, tol: float = 1e-6) -> None:
    """Raise ``ValueError`` if ``lab`` cannot belong to ``inst``."""
    n = inst.n
    if len(lab.ports) != n or len(lab.label_arcs) != n:
        raise ValueError("labeling size does not match instance")
    _check_permutation(lab.order, n)
    R = inst.radius
    for i, ((s, e), p, f) in enumerate(zip(lab.label_arcs, lab.ports, inst.features)):
        if abs((e - s) - f.width) > tol * max(1.0, f.width):
            raise ValueError(f"label {i} arc length differs from its width")
        mid = ((s + e) / 2.0 / R) % TWO_PI
        d = abs(mid - p.beta)
        if min(d, TWO_PI - d) > tol:
            raise ValueError(f"port {i} is not at its label midpoint")


# --------------------------------------------------------------------------- labeling JSON


def labeling_to_dict(lab: Labeling, tll: float) -> dict:
    return {
        "style": lab.style.value,
        "order": list(lab.order),
        "ports": [p.beta for p in lab.ports],
        "tll": tll,
    }


def dumps_labeling(lab: Labeling, tll: float) -> str:
    return json.dumps(labeling_to_dict(lab, tll), indent=2, allow_nan=False) + "\n"


def labeling_from_dict(inst: Instance, d: dict) -> Labeling:
    """Rebuild a labeling from its JSON form; arcs are re-derived from the order."""
    try:
        style = LeaderStyle(d["style"])
        order = d["order"]
        ports = d["ports"]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed labeling: {e}") from e
    lab = place_from_order(inst, order, style)
    if len(ports) != inst.n:
        raise ValueError("labeling has wrong number of ports")
    for i, (stored, p) in enumerate(zip(ports, lab.ports)):
        d_ = abs(float(stored) - p.beta)
        if min(d_, TWO_PI - d_) > 1e-9:
            raise ValueError(f"stored port {i} disagrees with the label order")
    return lab
