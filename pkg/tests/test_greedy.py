import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpfrechet.baseline import discrete_decide
from cpfrechet.errors import ContractError
from cpfrechet.onedim import (
    Separated1D,
    greedy_decide,
    max_greedy_step_pi,
    max_greedy_step_sigma,
    min_greedy_step_pi,
    min_greedy_step_sigma,
    stop_pi,
    stop_sigma,
    tracing,
)


def random_sep(rng, n, m, top=8, delta=None):
    pi = rng.integers(0, top + 1, n).astype(float)
    sigma = -rng.integers(0, top + 1, m).astype(float)
    if delta is None:
        delta = float(rng.integers(1, 2 * top))
    return Separated1D(tuple(pi), tuple(sigma), delta, 1.0)


separated = st.builds(
    lambda a, b, d: Separated1D(tuple(map(float, a)), tuple(-float(x) for x in b), float(d), 1.0),
    st.lists(st.integers(0, 8), min_size=1, max_size=25),
    st.lists(st.integers(0, 8), min_size=1, max_size=25),
    st.integers(0, 16),
)


# Definitional oracles, 1-based and restricted to pi[p..b] x sigma[q..d].

def reach_pi(sep, p, b, q):
    out = []
    for k in range(p + 1, b + 1):
        if not sep.free(k, q):
            break
        out.append(k)
    return out


def vis_sigma(sep, z, q, d):
    return {k for k in range(q, d + 1) if sep.free(z, k)}


def oracle_min_step(sep, p, b, q, d):
    base = vis_sigma(sep, p, q, d)
    for z in reach_pi(sep, p, b, q):
        if vis_sigma(sep, z, q, d) >= base:
            return z
    return None


def oracle_max_step(sep, p, b, q, d):
    base = vis_sigma(sep, p, q, d)
    reach = reach_pi(sep, p, b, q)
    if not reach:
        return None
    best = max(len(vis_sigma(sep, z, q, d)) for z in reach)
    good = [z for z in reach if len(vis_sigma(sep, z, q, d)) == best and vis_sigma(sep, z, q, d) >= base]
    return max(good) if good else None


def free_pairs(sep, rng, count):
    pairs = [(p, q) for p in range(1, sep.n + 1) for q in range(1, sep.m + 1) if sep.free(p, q)]
    if not pairs:
        return []
    picks = rng.integers(0, len(pairs), count)
    return [pairs[i] for i in picks]


class TestSeparated1D:
    def test_rejects_unseparated(self):
        with pytest.raises(ContractError):
            Separated1D((-0.1,), (-1.0,), 1.0)
        with pytest.raises(ContractError):
            Separated1D((1.0,), (0.5,), 1.0)
        with pytest.raises(ContractError):
            Separated1D((), (0.0,), 1.0)

    def test_swapped_is_involution(self):
        sep = Separated1D((1.0, 2.0), (-1.0, -3.0, 0.0), 2.0)
        sw = sep.swapped()
        assert sw.pi == (1.0, 3.0, -0.0) and sw.sigma == (-1.0, -2.0)
        assert sw.swapped() is sep


class TestStop:
    def test_example(self):
        sep = Separated1D((0.5, 0.9, 1.5), (-1.0,), 2.0)
        assert stop_pi(sep, 1, 3, 1) == 3

    def test_all_visible(self):
        sep = Separated1D((0.5, 0.9, 1.0), (-1.0,), 2.0)
        assert stop_pi(sep, 1, 3, 1) == 4

    def test_random_against_scan(self):
        rng = np.random.default_rng(0)
        for _ in range(300):
            sep = random_sep(rng, int(rng.integers(1, 70)), int(rng.integers(1, 70)))
            p = int(rng.integers(1, sep.n + 1))
            b = int(rng.integers(p, sep.n + 1))
            q = int(rng.integers(1, sep.m + 1))
            expected = next((k for k in range(p, b + 1) if sep.pi[k - 1] > sep.sigma[q - 1] + sep.delta), b + 1)
            assert stop_pi(sep, p, b, q) == expected
            d = int(rng.integers(q, sep.m + 1))
            expected = next((k for k in range(q, d + 1) if sep.sigma[k - 1] < sep.pi[p - 1] - sep.delta), d + 1)
            assert stop_sigma(sep, p, q, d) == expected


class TestSteps:
    def test_min_step_example(self):
        sep = Separated1D((1.0, 0.5), (-1.0, -1.4), 2.0)
        assert min_greedy_step_pi(sep, 1, 2, 1, 2) == 2

    def test_min_step_single_vertex(self):
        sep = Separated1D((1.0,), (-1.0, -1.4), 2.0)
        assert min_greedy_step_pi(sep, 1, 1, 1, 2) is None

    def test_max_step_example(self):
        sep = Separated1D((1.0, 0.5, 0.7, 2.0), (-1.0, -1.4), 2.0)
        assert stop_pi(sep, 1, 4, 1) == 4
        assert max_greedy_step_pi(sep, 1, 4, 1, 2) == 2

    def test_max_step_none_below_threshold(self):
        sep = Separated1D((1.0, 1.5), (-1.0, -1.4), 2.0)
        assert max_greedy_step_pi(sep, 1, 2, 1, 2) is None

    def test_random_against_definitions(self):
        rng = np.random.default_rng(1)
        checked = 0
        for _ in range(250):
            sep = random_sep(rng, int(rng.integers(1, 70)), int(rng.integers(1, 70)))
            for p, q in free_pairs(sep, rng, 4):
                b = int(rng.integers(p, sep.n + 1))
                d = int(rng.integers(q, sep.m + 1))
                assert min_greedy_step_pi(sep, p, b, q, d) == oracle_min_step(sep, p, b, q, d)
                assert max_greedy_step_pi(sep, p, b, q, d) == oracle_max_step(sep, p, b, q, d)
                sw = sep.swapped()
                assert min_greedy_step_sigma(sep, p, b, q, d) == oracle_min_step(sw, q, d, p, b)
                assert max_greedy_step_sigma(sep, p, b, q, d) == oracle_max_step(sw, q, d, p, b)
                checked += 1
        assert checked > 500


class TestGreedyDecide:
    def test_examples(self):
        assert greedy_decide(Separated1D((1.0,), (-1.0,), 2.0))
        assert not greedy_decide(Separated1D((1.0, 3.0), (-1.0,), 2.0))

    @given(separated)
    def test_matches_dp(self, sep):
        assert greedy_decide(sep) == discrete_decide(sep.pi, sep.sigma, sep.delta)

    def test_unrounded_values(self):
        rng = np.random.default_rng(2)
        for _ in range(300):
            a = rng.uniform(0, 3, int(rng.integers(1, 30)))
            b = -rng.uniform(0, 3, int(rng.integers(1, 30)))
            sep = Separated1D(tuple(a), tuple(b), float(rng.uniform(0.5, 5)))
            assert greedy_decide(sep) == discrete_decide(a, b, sep.delta)

    def test_trace_hook(self):
        sep = Separated1D((1.0, 0.5, 0.7), (-1.0, -0.5), 2.0)
        seen = []
        with tracing(lambda p, q, kind: seen.append((p, q, kind))):
            assert greedy_decide(sep)
        assert seen[0] == (1, 1, "start") and seen[-1][:2] == (3, 2)
        assert {k for _, _, k in seen} <= {"start", "pi", "sigma"}
        seen.clear()
        greedy_decide(sep)
        assert seen == []


def greedy_run(sep):
    pairs = []
    greedy_decide(sep, trace=lambda p, q, kind: pairs.append((p, q)))
    return pairs


class TestGreedyProperties:
    def test_monotone_visibility(self):
        rng = np.random.default_rng(3)
        for _ in range(400):
            sep = random_sep(rng, int(rng.integers(1, 31)), int(rng.integers(1, 31)))
            for p, q in greedy_run(sep):
                mine = vis_sigma(sep, p, q, sep.m)
                for ell in range(1, p + 1):
                    assert vis_sigma(sep, ell, q, sep.m) <= mine

    def test_stuck_strength(self):
        rng = np.random.default_rng(4)
        stuck = 0
        for _ in range(600):
            sep = random_sep(rng, int(rng.integers(1, 16)), int(rng.integers(1, 16)))
            run = greedy_run(sep)
            if not run or run[-1] == (sep.n, sep.m):
                continue
            p, q = run[-1]
            stuck += 1
            q_stop = stop_sigma(sep, p, q, sep.m)
            p_stop = stop_pi(sep, p, sep.n, q)
            if q_stop < sep.m:
                for p2 in range(1, sep.n + 1):
                    assert not discrete_decide(sep.pi[:p2], sep.sigma[:q_stop], sep.delta)
            if p_stop < sep.n:
                for q2 in range(1, sep.m + 1):
                    assert not discrete_decide(sep.pi[:p_stop], sep.sigma[:q2], sep.delta)
        assert stuck > 100
