"""Independent reference implementations used only by the tests.

Nothing here imports the solver or predicate code it checks: leader
lengths are recomputed from Cartesian coordinates, crossings are decided
by dense point sampling, and optima come from full permutation scans.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.spatial import cKDTree

SAMPLES = 800


def xy(r: float, theta: float) -> np.ndarray:
    return np.array([r * math.cos(theta), r * math.sin(theta)])


def shorter_arc(theta: float, beta: float) -> float:
    """Signed angle of the shorter rotation from theta to beta; +pi on a tie."""
    d = math.remainder(beta - theta, 2 * math.pi)
    return math.pi if abs(d + math.pi) < 1e-15 else d


def sl_len(r, theta, beta, R) -> float:
    return float(np.linalg.norm(xy(r, theta) - xy(R, beta)))


def or_len(r, theta, beta, R) -> float:
    return r * abs(shorter_arc(theta, beta)) + (R - r)


def leader_len(style: str, r, theta, beta, R) -> float:
    return sl_len(r, theta, beta, R) if style == "SL" else or_len(r, theta, beta, R)


def sample_leader(style: str, r, theta, beta, R, m: int = SAMPLES):
    """Points along one leader plus its key points (feature, corner, port)."""
    if style == "SL":
        t = np.linspace(0.0, 1.0, m)[:, None]
        a, b = xy(r, theta), xy(R, beta)
        pts = a + t * (b - a)
        return pts, [a, b]
    sweep = shorter_arc(theta, beta)
    arc_len = abs(sweep) * r
    rad_len = R - r
    total = arc_len + rad_len
    m_arc = max(2, int(round(m * arc_len / total))) if total > 0 else 2
    m_rad = max(2, m - m_arc)
    ang = theta + np.linspace(0.0, sweep, m_arc)
    arc = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
    rr = np.linspace(r, R, m_rad)
    rad = np.column_stack([rr * math.cos(beta), rr * math.sin(beta)])
    return np.vstack([arc, rad]), [xy(r, theta), xy(r, beta), xy(R, beta)]


def spacing(pts: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(np.diff(pts, axis=0), axis=1)))


def sampled_cross(style: str, fa, ba, fb, bb, R):
    """Decide whether two leaders meet by dense sampling.

    ``fa``/``fb`` are (r, theta).  Returns True/False, or None when the pair
    is too close to a touching configuration for sampling to be decisive.
    """
    pa, ka = sample_leader(style, *fa, ba, R)
    pb, kb = sample_leader(style, *fb, bb, R)
    h = max(spacing(pa), spacing(pb))
    ta, tb = cKDTree(pa), cKDTree(pb)
    clear = 3.0 * h
    # key points of one leader must stay well away from the other leader
    if min(tb.query(k)[0] for k in ka) <= clear or min(ta.query(k)[0] for k in kb) <= clear:
        return None
    if style == "OR" and abs(fa[0] - fb[0]) <= clear:
        return None
    d = float(tb.query(pa, distance_upper_bound=2 * clear)[0].min())
    if d < h:
        return True
    if d > clear:
        return False
    return None


def brute_force_uniform(positions, R: float, style: str) -> float:
    """Minimum total leader length over all n! feature-to-port assignments."""
    n = len(positions)
    ports = [(2 * k + 1) * math.pi / n for k in range(n)]
    cost = [[leader_len(style, r, t, b, R) for b in ports] for r, t in positions]
    return min(math.fsum(cost[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def anchored_ports(widths, order, R: float) -> list[float]:
    out = [0.0] * len(widths)
    start = 0.0
    for i in order:
        out[i] = ((start + widths[i] / 2) / R) % (2 * math.pi)
        start += widths[i]
    return out


def adversarial_two_feature(R: float = 200.0):
    """Two features where one label covers 98% of the boundary.

    Either order puts the two ports so that the straight leaders must cross.
    """
    from orblab.geometry import PolarPoint
    from orblab.instance import Feature, Instance

    B = 2 * math.pi * R
    feats = (
        Feature(PolarPoint(150.0, math.radians(350.0)), "wide", 0.98 * B),
        Feature(PolarPoint(140.0, math.radians(190.0)), "narrow", 0.02 * B),
    )
    return Instance(R, feats, "adversarial_2")
