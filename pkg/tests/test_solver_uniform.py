from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orblab.geometry import TWO_PI, LeaderStyle, PolarPoint
from orblab.instance import Distribution, Feature, GeneratorConfig, Instance, generate
from orblab.labeling import count_crossings
from orblab.solver_uniform import solve_uniform, uniform_ports

import oracles

R = 200.0
PI = math.pi


@pytest.mark.parametrize(
    "n, want",
    [(1, [PI]), (3, [PI / 3, PI, 5 * PI / 3]), (4, [PI / 4, 3 * PI / 4, 5 * PI / 4, 7 * PI / 4])],
)
def test_uniform_ports(n, want):
    assert [p.beta for p in uniform_ports(n)] == pytest.approx(want)


def test_single_feature():
    inst = Instance(R, (Feature(PolarPoint(100.0, PI), "", TWO_PI * R),))
    lab, rep = solve_uniform(inst, LeaderStyle.SL)
    assert lab.ports[0].beta == pytest.approx(PI)
    assert rep.tll == pytest.approx(100.0)


def test_features_on_ports_give_radial_leaders():
    n = 6
    feats = tuple(
        Feature(PolarPoint(150.0 - 0.1 * i, p.beta), "", TWO_PI * R / n) for i, p in enumerate(uniform_ports(n))
    )
    inst = Instance(R, feats)
    _, rep = solve_uniform(inst, LeaderStyle.OR)
    assert rep.tll == pytest.approx(math.fsum(R - f.position.r for f in feats))


def test_requires_uniform_widths():
    inst = generate(GeneratorConfig(n=5, seed=0))
    with pytest.raises(ValueError):
        solve_uniform(inst, LeaderStyle.SL)
    solve_uniform(inst.with_uniform_widths(), LeaderStyle.SL)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.sampled_from(list(Distribution)), st.integers(0, 2**31), st.sampled_from(list(LeaderStyle)))
def test_optimal_and_crossing_free(n, dist, seed, style):
    inst = generate(GeneratorConfig(n=n, distribution=dist, seed=seed, uniform_widths=True))
    lab, rep = solve_uniform(inst, style)
    want = oracles.brute_force_uniform([(p.r, p.theta) for p in inst.positions], R, style.value)
    assert rep.tll == pytest.approx(want, rel=1e-9)
    assert count_crossings(inst, lab)[0] == 0
    assert rep.optimal
