from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from orblab.assignment import min_weight_matching


def brute(W):
    n = W.shape[0]
    return min(math.fsum(W[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def test_small_examples():
    m = min_weight_matching([[0, 1], [1, 0]])
    assert m.assignment == (0, 1) and m.total_cost == 0
    m = min_weight_matching([[1, 2], [2, 1]])
    assert m.assignment == (0, 1) and m.total_cost == 2


def test_ties_resolve_lexicographically():
    assert min_weight_matching(np.ones((4, 4))).assignment == (0, 1, 2, 3)
    W = np.array([[1.0, 1.0, 5.0], [1.0, 1.0, 5.0], [5.0, 5.0, 1.0]])
    assert min_weight_matching(W).assignment == (0, 1, 2)


def test_random_7x7_matches_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(20):
        W = rng.uniform(0, 100, (7, 7))
        assert min_weight_matching(W).total_cost == pytest.approx(brute(W), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.floats(0, 1000))))
def test_optimal_and_permutation(W):
    m = min_weight_matching(W)
    assert sorted(m.assignment) == list(range(W.shape[0]))
    assert m.total_cost == pytest.approx(brute(W), rel=1e-9, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(0, 3))))
def test_lexicographic_among_optima(W):
    # integer costs force many ties; the result must be the smallest optimal permutation
    W = W.astype(float)
    n = W.shape[0]
    best = brute(W)
    want = min(p for p in itertools.permutations(range(n)) if math.fsum(W[i, p[i]] for i in range(n)) == best)
    assert min_weight_matching(W).assignment == want


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        min_weight_matching([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        min_weight_matching([[1, math.nan], [1, 2]])
