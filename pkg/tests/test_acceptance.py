"""Acceptance checks. Each test prints one ``ACCEPTANCE k: PASS/FAIL`` line."""

import time

import numpy as np
import pytest

from cpfrechet._fast import region_exits
from cpfrechet.baseline import continuous_decide, continuous_frechet, discrete_frechet, free_interval, reduced_reach_bruteforce
from cpfrechet.bench import BenchConfig, cpacked_pair
from cpfrechet.curves import Curve
from cpfrechet.decomposition import decompose, piece_radius
from cpfrechet.freespace import approximate_decide, complexity_stats
from cpfrechet.onedim import Separated1D, greedy_decide, solve_reduced, solve_region_pieces
from cpfrechet.search import approximate_frechet
from helpers import (
    GridRegion,
    compare_exits,
    decomposition_problems,
    compose_crossing,
    compose_prefix,
    compose_union,
    noisy_copy,
    random_curve,
    random_entries,
    random_piece_pair,
    random_walk,
    range_index_trial,
    report,
)


def random_pair(rng, max_len):
    pi = random_walk(rng, int(rng.integers(1, max_len + 1)))
    if rng.random() < 0.8:
        sigma = noisy_copy(rng, pi, float(rng.uniform(0.01, 1.0)), int(rng.integers(1, max_len + 1)))
    else:
        sigma = random_walk(rng, int(rng.integers(1, max_len + 1)))
    return pi, sigma


def test_decider_soundness():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    failures, le_count = [], 0
    for k in range(2000):
        pi, sigma = random_pair(rng, 40)
        eps = float(rng.choice([1, 0.5, 0.1, 0.01]))
        true = continuous_frechet(pi, sigma)
        delta = max(true, 1e-6) * float(rng.uniform(0.5, 2.0))
        out = approximate_decide(pi, sigma, delta, eps)
        if out.is_le:
            le_count += 1
            ok = continuous_decide(pi, sigma, (1 + eps) * delta)
        else:
            ok = not continuous_decide(pi, sigma, delta)
        if not ok:
            failures.append(k)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    report(1, ok, f"2000 instances, {len(failures)} inconsistent, {le_count} LE, {elapsed:.0f} s")
    assert ok, failures[:10]


def test_greedy_exactness():
    rng = np.random.default_rng(102)
    failures = 0
    for _ in range(2000):
        n, m = (int(v) for v in rng.integers(1, 51, 2))
        top = int(rng.integers(1, 30))
        pi = tuple(float(v) for v in rng.integers(0, top + 1, n))
        sigma = tuple(-float(v) for v in rng.integers(0, top + 1, m))
        delta = float(rng.integers(0, 2 * top + 1))
        expected = discrete_frechet(Curve(np.array(pi)[:, None]), Curve(np.array(sigma)[:, None])) <= delta
        failures += greedy_decide(Separated1D(pi, sigma, delta, 1.0)) != expected
    report(2, failures == 0, f"2000 instances, {failures} mismatches")
    assert failures == 0


def test_reduced_exactness():
    rng = np.random.default_rng(103)
    failures = 0
    for _ in range(1000):
        n, m = (int(v) for v in rng.integers(1, 41, 2))
        top = int(rng.integers(1, 20))
        pi = tuple(float(v) for v in rng.integers(0, top + 1, n))
        sigma = tuple(-float(v) for v in rng.integers(0, top + 1, m))
        delta = float(rng.integers(0, 2 * top + 1))
        E = {int(x) for x in rng.integers(1, n + 1, int(rng.integers(0, n + 1)))}
        Es = {int(x) for x in rng.integers(1, m + 1, int(rng.integers(0, m + 1)))}
        res = solve_reduced(Separated1D(pi, sigma, delta, 1.0), E, Es)
        failures += (set(res.F_pi), set(res.F_sigma)) != reduced_reach_bruteforce(pi, sigma, delta, E, Es)
    report(3, failures == 0, f"1000 instances, {failures} mismatches")
    assert failures == 0


def test_piece_region_contract():
    rng = np.random.default_rng(104)
    failures = []
    for k in range(500):
        eps = float(rng.choice([1, 0.5, 0.1, 0.04, 0.01]))
        r = piece_radius(eps, 1.0)
        n, m = (int(v) for v in rng.integers(2, 31, 2))
        pi, sigma = random_piece_pair(rng, r, n, m, (0.3, 1.3))
        entries = random_entries(rng, pi, sigma, 1 + eps, free_interval)
        extra_x = [v for s in entries.horizontal.values() for v in s]
        extra_y = [v for s in entries.vertical.values() for v in s]
        grid = GridRegion(pi, sigma, 400, extra_x, extra_y)
        low, high = grid.reach(1.0, entries), grid.reach(1 + eps, entries)
        for solver in (solve_region_pieces, region_exits):
            problems = compare_exits(grid, solver(pi, sigma, 1.0, eps, entries), low, high)
            if problems:
                failures.append((k, solver.__name__, problems[:2]))
    report(4, not failures, f"500 piece pairs x 2 solvers, {len(failures)} violations")
    assert not failures, failures[:5]


def test_value_approximation():
    rng = np.random.default_rng(105)
    failures, worst = [], 0.0
    for k in range(300):
        pi, sigma = random_pair(rng, 40)
        eps = float(rng.choice([1, 0.5, 0.1, 0.01]))
        true = continuous_frechet(pi, sigma, rel_tol=1e-9)
        value = approximate_frechet(pi, sigma, eps).value
        if true == 0.0:
            ok = value == 0.0
        else:
            ratio = value / true
            worst = max(worst, (ratio - 1) / eps)
            ok = 1 - 1e-6 <= ratio <= 1 + eps + 1e-6
        if not ok:
            failures.append((k, value, true, eps))
    report(5, not failures, f"300 pairs, {len(failures)} out of range, worst (ratio-1)/eps = {worst:.3f}")
    assert not failures, failures[:5]


def test_composition_suite():
    count = 100_000
    results = {
        "union": compose_union(count, 11, 12, 6),
        "crossing": compose_crossing(count, 12, 12, 6),
        "prefix": compose_prefix(count, 13, 12, 6),
    }
    bad = sum(b for _, b in results.values())
    thin = [name for name, (held, _) in results.items() if held < count // 20]
    ok = bad == 0 and not thin
    detail = ", ".join(f"{name}: {held} held, {b} broken" for name, (held, b) in results.items())
    report(6, ok, f"{count} draws each; {detail}")
    assert ok


@pytest.mark.slow
def test_complexity_scaling():
    cfg = BenchConfig()
    problems, lines = [], []

    def N(c, n, eps):
        pi, sigma = cpacked_pair(c, n, seed=7, config=cfg)
        return complexity_stats(pi, sigma, cfg.delta, eps).N

    for c in (4, 8):
        series = [N(c, n, 0.04) for n in (10_000, 20_000, 40_000)]
        ratios = [b / a for a, b in zip(series, series[1:])]
        lines.append(f"c={c} N={series} doubling ratios={[round(x, 2) for x in ratios]}")
        problems += [f"c={c} doubling ratio {x:.2f} > 2.6" for x in ratios if x > 2.6]
        fine = N(c, 10_000, 0.01) / series[0]
        lines.append(f"c={c} eps 0.04->0.01 ratio={fine:.2f}")
        if fine > 2.9:
            problems.append(f"c={c} eps ratio {fine:.2f} > 2.9")

    warm = cpacked_pair(8, 2000, seed=1, config=cfg)
    approximate_decide(*warm, cfg.delta, 0.01)
    pi, sigma = cpacked_pair(8, 100_000, seed=7, config=cfg)
    start = time.perf_counter()
    approximate_decide(pi, sigma, cfg.delta, 0.01)
    wall = time.perf_counter() - start
    lines.append(f"n=1e5 c=8 eps=0.01 decide {wall:.1f} s")
    if wall > 60:
        problems.append(f"decide took {wall:.1f} s > 60 s")
    for line in lines:
        print(line)
    report(7, not problems, "; ".join(problems) if problems else "; ".join(lines))
    assert not problems


def test_range_index():
    rng = np.random.default_rng(108)
    total, problems = 0, []
    for _ in range(200):
        count, found = range_index_trial(rng, 400)
        total += count
        problems += found
    report(8, not problems, f"{total} queries on 200 arrays, {len(problems)} mismatches")
    assert not problems, problems[:5]


def test_decomposition_invariants():
    rng = np.random.default_rng(109)
    problems = []
    for k in range(1000):
        n = int(rng.integers(1, 60))
        d = int(rng.choice([1, 2, 3]))
        if rng.random() < 0.5:
            curve = random_walk(rng, n, d, float(rng.uniform(0.01, 2)))
        else:
            curve = random_curve(rng, n, d)
        if rng.random() < 0.2 and n > 2:
            V = curve.vertices.copy()
            V[int(rng.integers(1, n))] = V[int(rng.integers(0, n - 1))]
            curve = Curve(V)
        for radius in np.geomspace(0.01, 3.0, 5) * float(rng.uniform(0.5, 1.5)):
            found = decomposition_problems(curve, decompose(curve, float(radius)), float(radius))
            if found:
                problems.append((k, float(radius), found[:2]))
    report(9, not problems, f"1000 curves x 5 radii, {len(problems)} with violations")
    assert not problems, problems[:5]
