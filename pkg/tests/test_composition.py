"""Composition properties of discrete couplings on separated 1D curves.

Each driver draws random small instances, checks the hypothesis by dynamic
programming and, where it holds, the conclusion. The drivers are compiled, so
10^5 instances per property take about a second.
"""

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from cpfrechet.baseline import continuous_decide, discrete_decide
from helpers import ddf_le, compose_crossing, compose_prefix, compose_union, line_curve

COUNT = 100_000


def test_dp_matches_library():
    rng = np.random.default_rng(50)
    for _ in range(2000):
        P = rng.integers(0, 9, int(rng.integers(1, 15))).astype(float)
        S = -rng.integers(0, 9, int(rng.integers(1, 15))).astype(float)
        a, b = sorted(rng.integers(0, len(P), 2))
        c, d = sorted(rng.integers(0, len(S), 2))
        delta = float(rng.integers(0, 17))
        assert ddf_le(P, a, b, S, c, d, delta) == discrete_decide(P[a : b + 1], S[c : d + 1], delta)


def test_union_of_overlapping_intervals():
    held, bad = compose_union(COUNT, 1, 12, 6)
    assert bad == 0 and held > COUNT // 10


def test_crossing_intervals():
    held, bad = compose_crossing(COUNT, 2, 12, 6)
    assert bad == 0 and held > COUNT // 20


def test_prefix_then_full():
    held, bad = compose_prefix(COUNT, 3, 12, 6)
    assert bad == 0 and held > COUNT // 10


def test_negative_control_finds_counterexamples():
    # With a gap between the intervals the union claim is false; the harness must notice.
    held, bad = compose_union(COUNT, 4, 12, 6, disjoint=True)
    assert held > 0 and bad > 0


separated_values = st.lists(st.integers(0, 6), min_size=2, max_size=10)


@given(separated_values, st.lists(st.integers(0, 6), min_size=1, max_size=10), st.integers(1, 12), st.data())
def test_union_property(p, s, delta, data):
    P, S = np.array(p, float), -np.array(s, float)
    n = len(P)
    x = sorted(data.draw(st.lists(st.integers(0, n - 1), min_size=4, max_size=4)))
    aI, aJ, bI, bJ = x
    assume(discrete_decide(P[aI : bI + 1], S, delta) and discrete_decide(P[aJ : bJ + 1], S, delta))
    assert discrete_decide(P[aI : bJ + 1], S, delta)


@given(separated_values, st.lists(st.integers(0, 6), min_size=1, max_size=10), st.integers(1, 12), st.data())
def test_prefix_property(p, s, delta, data):
    P, S = np.array(p, float), -np.array(s, float)
    n = len(P)
    aI, aJ, bI, bJ = sorted(data.draw(st.lists(st.integers(0, n - 1), min_size=4, max_size=4)))
    k = data.draw(st.integers(0, len(S) - 1))
    assume(discrete_decide(P[aI : bI + 1], S[: k + 1], delta) and discrete_decide(P[aJ : bJ + 1], S, delta))
    assert discrete_decide(P[aI : bJ + 1], S, delta)


def test_prefix_property_continuous():
    # On separated 1D curves the continuous and discrete answers agree, so the
    # same composition holds for the continuous decider.
    rng = np.random.default_rng(51)
    held = 0
    for _ in range(3000):
        P = rng.integers(0, 7, int(rng.integers(2, 9))).astype(float)
        S = -rng.integers(0, 7, int(rng.integers(1, 9))).astype(float)
        aI, aJ, bI, bJ = sorted(rng.integers(0, len(P), 4))
        k = int(rng.integers(0, len(S)))
        delta = float(rng.integers(1, 13))
        first = continuous_decide(line_curve(P[aI : bI + 1]), line_curve(S[: k + 1]), delta)
        second = continuous_decide(line_curve(P[aJ : bJ + 1]), line_curve(S), delta)
        if first and second:
            held += 1
            assert continuous_decide(line_curve(P[aI : bJ + 1]), line_curve(S), delta)
    assert held > 300
