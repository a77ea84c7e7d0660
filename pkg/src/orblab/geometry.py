"""Coordinate conventions, leader lengths and crossing predicates.

Angles are measured counter-clockwise from the anchor (positive x-axis) and
kept in ``[0, 2*pi)``.  All functions here are pure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-9
ORIENT_EPS = 1e-12


class LeaderStyle(str, enum.Enum):
    SL = "SL"  # straight line
    OR = "OR"  # orbital arc + radial segment


class Direction(str, enum.Enum):
    CW = "CW"
    CCW = "CCW"


@dataclass(frozen=True)
class PolarPoint:
    r: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r >= 0):
            raise ValueError(f"radius must be finite and >= 0, got {self.r}")
        if not (0.0 <= self.theta < TWO_PI):
            raise ValueError(f"theta must lie in [0, 2pi), got {self.theta}")

    @classmethod
    def of(cls, r: float, theta: float) -> PolarPoint:
        """Build a point, normalizing ``theta`` first."""
        return cls(float(r), normalize_angle(theta))

    def cartesian(self) -> tuple[float, float]:
        return polar_to_cartesian(self.r, self.theta)


@dataclass(frozen=True)
class Port:
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.beta < TWO_PI):
            raise ValueError(f"beta must lie in [0, 2pi), got {self.beta}")

    @classmethod
    def of(cls, beta: float) -> Port:
        return cls(normalize_angle(beta))


def normalize_angle(a: float) -> float:
    """Reduce ``a`` modulo 2*pi into ``[0, 2*pi)``."""
    if not math.isfinite(a):
        raise ValueError(f"angle must be finite, got {a}")
    out = math.fmod(a, TWO_PI)
    if out < 0.0:
        out += TWO_PI
    # fmod of a tiny negative number plus 2pi can round up to exactly 2pi
    if out >= TWO_PI:
        out = 0.0
    return out


def angular_distance(a: float, b: float) -> tuple[float, Direction]:
    """Shorter angular distance from ``a`` to ``b`` and the direction realizing it.

    A tie at exactly pi is reported as CCW.
    """
    ccw = normalize_angle(b - a)
    if ccw <= math.pi:
        return ccw, Direction.CCW
    return TWO_PI - ccw, Direction.CW


def polar_to_cartesian(r: float, theta: float) -> tuple[float, float]:
    return r * math.cos(theta), r * math.sin(theta)


def _check_inside(f: PolarPoint, R: float) -> None:
    if f.r > R:
        raise ValueError(f"feature radius {f.r} exceeds disk radius {R}")


def sl_length(f: PolarPoint, p: Port, R: float) -> float:
    """Euclidean length of the straight leader from ``f`` to port ``p``."""
    _check_inside(f, R)
    sq = f.r * f.r + R * R - 2.0 * f.r * R * math.cos(f.theta - p.beta)
    return math.sqrt(max(sq, 0.0))


def or_length(f: PolarPoint, p: Port, R: float) -> float:
    """Length of the orbital-radial leader: shorter arc at radius ``f.r`` plus ``R - f.r``."""
    _check_inside(f, R)
    delta, _ = angular_distance(f.theta, p.beta)
    return f.r * delta + (R - f.r)


def leader_length(style: LeaderStyle, f: PolarPoint, p: Port, R: float) -> float:
    if style is LeaderStyle.SL:
        return sl_length(f, p, R)
    return or_length(f, p, R)


def min_leader_length(
    style: LeaderStyle, f: PolarPoint, lo: float, hi: float, R: float
) -> float:
    """Smallest leader length over port angles in ``[lo, hi]`` (``0 <= lo <= hi <= 2pi``).

    Both leader lengths grow with the angular distance between feature and
    port, so the minimum sits at the interval point closest to ``f.theta``.
    """
    if lo <= f.theta <= hi:
        delta = 0.0
    else:
        delta = min(angular_distance(f.theta, lo)[0], angular_distance(f.theta, hi)[0])
    if style is LeaderStyle.SL:
        return math.sqrt(max(f.r * f.r + R * R - 2.0 * f.r * R * math.cos(delta), 0.0))
    return f.r * delta + (R - f.r)


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Sign of the turn a -> b -> c; values inside the epsilon band count as collinear."""
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if v > ORIENT_EPS:
        return 1
    if v < -ORIENT_EPS:
        return -1
    return 0


def segments_cross(
    p1: tuple[float, float],
    q1: tuple[float, float],
    p2: tuple[float, float],
    q2: tuple[float, float],
) -> bool:
    """Proper intersection of two open segments; touching or collinear is not a crossing."""
    o1 = _orient(*p1, *q1, *p2)
    o2 = _orient(*p1, *q1, *q2)
    o3 = _orient(*p2, *q2, *p1)
    o4 = _orient(*p2, *q2, *q1)
    return o1 * o2 < 0 and o3 * o4 < 0


def sl_cross(f1: PolarPoint, p1: Port, f2: PolarPoint, p2: Port, R: float) -> bool:
    """True iff the straight leaders ``f1-p1`` and ``f2-p2`` properly intersect."""
    _check_inside(f1, R)
    _check_inside(f2, R)
    a1 = f1.cartesian()
    b1 = polar_to_cartesian(R, p1.beta)
    a2 = f2.cartesian()
    b2 = polar_to_cartesian(R, p2.beta)
    if a1 == b1 or a2 == b2:
        raise ValueError("degenerate zero-length leader")
    return segments_cross(a1, b1, a2, b2)


def or_cross(
    f_inner: PolarPoint, p_inner: Port, f_outer: PolarPoint, p_outer: Port, R: float
) -> bool:
    """True iff two orbital-radial leaders intersect.

    Under general position the only possible contact is the radial part of
    the inner leader passing through the arc of the outer one, so the test
    reduces to whether ``p_inner.beta`` lies strictly inside the outer arc.
    """
    if not f_inner.r < f_outer.r:
        raise ValueError("or_cross expects f_inner.r < f_outer.r")
    _check_inside(f_outer, R)
    return port_in_open_arc(p_inner.beta, f_outer.theta, p_outer.beta)


def port_in_open_arc(beta: float, theta: float, beta_end: float) -> bool:
    """Whether angle ``beta`` lies strictly inside the shorter arc from ``theta`` to ``beta_end``."""
    delta, direction = angular_distance(theta, beta_end)
    if direction is Direction.CCW:
        offset = normalize_angle(beta - theta)
    else:
        offset = normalize_angle(theta - beta)
    return ANGLE_TOL < offset < delta - ANGLE_TOL


def leaders_cross(
    style: LeaderStyle, fa: PolarPoint, pa: Port, fb: PolarPoint, pb: Port, R: float
) -> bool:
    """Style-dispatching crossing test; orders OR leaders by radius itself."""
    if style is LeaderStyle.SL:
        return sl_cross(fa, pa, fb, pb, R)
    if fa.r < fb.r:
        return or_cross(fa, pa, fb, pb, R)
    return or_cross(fb, pb, fa, pa, R)
