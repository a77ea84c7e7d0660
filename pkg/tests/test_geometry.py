from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orblab.geometry import (
    TWO_PI,
    Direction,
    LeaderStyle,
    PolarPoint,
    Port,
    angular_distance,
    leaders_cross,
    min_leader_length,
    normalize_angle,
    or_cross,
    or_length,
    port_in_open_arc,
    segments_cross,
    sl_cross,
    sl_length,
)

import oracles

PI = math.pi
R = 200.0
angles = st.floats(0.0, TWO_PI, exclude_max=True)
finite = st.floats(-1e4, 1e4, allow_nan=False)


@pytest.mark.parametrize("a, want", [(0.0, 0.0), (5 * PI / 2, PI / 2), (-PI / 4, 7 * PI / 4)])
def test_normalize_examples(a, want):
    assert normalize_angle(a) == pytest.approx(want, abs=1e-12)


@given(finite)
def test_normalize_range_and_congruence(a):
    out = normalize_angle(a)
    assert 0.0 <= out < TWO_PI
    assert math.remainder(out - a, TWO_PI) == pytest.approx(0.0, abs=1e-9)


def test_normalize_rejects_nonfinite():
    with pytest.raises(ValueError):
        normalize_angle(math.inf)


@pytest.mark.parametrize(
    "a, b, delta, direction",
    [(0.0, PI / 2, PI / 2, Direction.CCW), (0.0, 3 * PI / 2, PI / 2, Direction.CW), (0.0, PI, PI, Direction.CCW)],
)
def test_angular_distance_examples(a, b, delta, direction):
    d, s = angular_distance(a, b)
    assert d == pytest.approx(delta)
    assert s is direction


@given(angles, angles)
def test_angular_distance_symmetric_and_bounded(a, b):
    d1, _ = angular_distance(a, b)
    d2, _ = angular_distance(b, a)
    assert 0.0 <= d1 <= PI
    assert d1 == pytest.approx(d2, abs=1e-12)


def test_sl_length_examples():
    assert sl_length(PolarPoint(0.0, 1.3), Port(4.0), R) == pytest.approx(200.0)
    assert sl_length(PolarPoint(100.0, 1.0), Port(1.0), R) == pytest.approx(100.0)
    assert sl_length(PolarPoint(100.0, 0.0), Port(PI / 2), R) == pytest.approx(math.sqrt(50000), abs=1e-9)


def test_or_length_examples():
    assert or_length(PolarPoint(100.0, 1.0), Port(1.0), R) == pytest.approx(100.0)
    assert or_length(PolarPoint(100.0, 0.0), Port(PI / 2), R) == pytest.approx(100 * PI / 2 + 100)
    assert or_length(PolarPoint(100.0, 0.0), Port(3 * PI / 2), R) == pytest.approx(257.0796, abs=1e-4)


def test_lengths_reject_point_outside_disk():
    with pytest.raises(ValueError):
        sl_length(PolarPoint(201.0, 0.0), Port(0.0), R)
    with pytest.raises(ValueError):
        or_length(PolarPoint(201.0, 0.0), Port(0.0), R)


@given(st.floats(0, 199.0), angles, angles)
def test_lengths_match_oracle(r, t, b):
    assert sl_length(PolarPoint(r, t), Port(b), R) == pytest.approx(oracles.sl_len(r, t, b, R), abs=1e-9)
    assert or_length(PolarPoint(r, t), Port(b), R) == pytest.approx(oracles.or_len(r, t, b, R), abs=1e-9)


@given(st.floats(0, 199.0), angles, angles)
def test_or_never_shorter_than_sl(r, t, b):
    f, p = PolarPoint(r, t), Port(b)
    assert or_length(f, p, R) >= sl_length(f, p, R) - 1e-9


@settings(max_examples=200)
@given(st.sampled_from(list(LeaderStyle)), st.floats(0, 199.0), angles, angles, angles)
def test_min_leader_length_is_a_lower_bound(style, r, t, x, y):
    lo, hi = min(x, y), max(x, y)
    f = PolarPoint(r, t)
    m = min_leader_length(style, f, lo, hi, R)
    for k in range(21):
        beta = lo + (hi - lo) * k / 20
        if beta >= TWO_PI:
            continue
        assert m <= (sl_length if style is LeaderStyle.SL else or_length)(f, Port(beta), R) + 1e-9


def test_segments_cross_open_rule():
    assert segments_cross((0, 0), (2, 2), (0, 2), (2, 0))
    assert not segments_cross((0, 0), (1, 1), (1, 1), (2, 0))  # shared endpoint
    assert not segments_cross((0, 0), (2, 0), (1, 0), (3, 0))  # collinear overlap
    assert not segments_cross((0, 0), (1, 0), (0, 1), (1, 1))


def test_sl_cross_examples():
    assert sl_cross(PolarPoint(100, 0.0), Port(PI), PolarPoint(100, PI), Port(0.0), R)
    assert not sl_cross(PolarPoint(100, 0.0), Port(0.0), PolarPoint(100, PI), Port(PI), R)


def test_sl_cross_rejects_zero_length_leader():
    with pytest.raises(ValueError):
        sl_cross(PolarPoint(200.0, 0.0), Port(0.0), PolarPoint(100, 1.0), Port(2.0), R)


def test_or_cross_examples():
    # [DERIVED] confirmed by the dense-sampling oracle below
    assert or_cross(PolarPoint(50, 0.1), Port(PI / 2), PolarPoint(100, PI / 4), Port(3 * PI / 4), R)
    assert not or_cross(PolarPoint(50, 0.1), Port(PI), PolarPoint(100, PI / 4), Port(3 * PI / 4), R)
    assert not or_cross(PolarPoint(50, 0.1), Port(PI / 4), PolarPoint(100, PI / 4), Port(3 * PI / 4), R)


def test_or_cross_examples_agree_with_oracle():
    assert oracles.sampled_cross("OR", (50, 0.1), PI / 2, (100, PI / 4), 3 * PI / 4, R) is True
    assert oracles.sampled_cross("OR", (50, 0.1), PI, (100, PI / 4), 3 * PI / 4, R) is False


def test_or_cross_requires_radius_order():
    with pytest.raises(ValueError):
        or_cross(PolarPoint(100, 0.0), Port(1.0), PolarPoint(50, 0.0), Port(2.0), R)


def test_port_in_open_arc_cw_arc():
    # arc from 1.0 clockwise to 0.2
    assert port_in_open_arc(0.5, 1.0, 0.2)
    assert not port_in_open_arc(1.5, 1.0, 0.2)
    assert not port_in_open_arc(0.2, 1.0, 0.2)


@settings(max_examples=300)
@given(st.sampled_from(list(LeaderStyle)), st.floats(1, 199), angles, angles, st.floats(1, 199), angles, angles)
def test_leaders_cross_symmetric(style, ra, ta, ba, rb, tb, bb):
    if abs(ra - rb) < 1e-6:
        return
    fa, fb = PolarPoint(ra, ta), PolarPoint(rb, tb)
    pa, pb = Port(ba), Port(bb)
    assert leaders_cross(style, fa, pa, fb, pb, R) == leaders_cross(style, fb, pb, fa, pa, R)
