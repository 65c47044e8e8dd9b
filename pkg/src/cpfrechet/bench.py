"""Benchmark instances and the measurement loop behind ``bench``."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .curves import Curve, gen_cpacked
from .freespace import approximate_decide, complexity_stats

__all__ = ["BenchConfig", "cpacked_pair", "bench_record", "run_bench", "parse_sizes"]


@dataclass(frozen=True)
class BenchConfig:
    """Shape of the c-packed benchmark family.

    sigma follows pi at jittered parameters and is displaced by a smooth
    offset of size ``offset``; ``delta`` is fixed well above that offset so
    the decider has to sweep the whole diagonal band.
    """

    delta: float = 1.0
    offset: float = 0.3
    offset_period: float = 400.0
    jitter: float = 0.3


def cpacked_pair(c: float, n: int, seed: int, config: BenchConfig | None = None) -> tuple[Curve, Curve]:
    cfg = config or BenchConfig()
    pi = gen_cpacked(c, n, seed)
    rng = np.random.default_rng(seed + 1_000_003)
    V = pi.vertices
    if n == 1:
        return pi, Curve(V + cfg.offset)
    t = np.arange(n, dtype=float) + rng.uniform(-cfg.jitter, cfg.jitter, n)
    t = np.clip(t, 0.0, n - 1.0)
    t[0], t[-1] = 0.0, n - 1.0
    base = np.floor(t).astype(np.int64)
    base = np.minimum(base, n - 2)
    frac = (t - base)[:, None]
    pts = (1.0 - frac) * V[base] + frac * V[base + 1]
    phase = rng.uniform(0, 2 * math.pi, 2)
    k = np.arange(n) * (2 * math.pi / cfg.offset_period)
    offset = cfg.offset * np.stack([np.cos(k + phase[0]), np.sin(0.7 * k + phase[1])], axis=1)
    return pi, Curve(pts + offset)


def bench_record(pi: Curve, sigma: Curve, delta: float, epsilon: float, time_decide: bool = True) -> dict:
    stats = complexity_stats(pi, sigma, delta, epsilon)
    wall = 0
    if time_decide:
        start = time.perf_counter_ns()
        approximate_decide(pi, sigma, delta, epsilon)
        wall = time.perf_counter_ns() - start
    return {
        "n": pi.n,
        "m": sigma.n,
        "delta": delta,
        "epsilon": epsilon,
        "S": stats.nonempty_boundary_cells,
        "piece_pair_sum": stats.piece_pair_size_sum,
        "N": stats.N,
        "wall_time_ns": wall,
    }


def parse_sizes(text: str) -> list[int]:
    """``"1k,2k,4k"`` -> ``[1000, 2000, 4000]``; also accepts ``m`` suffixes and plain integers."""
    sizes = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        mult = 1
        if tok.endswith("k"):
            mult, tok = 1_000, tok[:-1]
        elif tok.endswith("m"):
            mult, tok = 1_000_000, tok[:-1]
        value = float(tok) * mult
        if value < 1 or value != int(value):
            raise ValueError(f"invalid size {tok!r}")
        sizes.append(int(value))
    if not sizes:
        raise ValueError("no sizes given")
    return sizes


def run_bench(
    c: float, sizes: Sequence[int], epsilon: float, seed: int = 0, config: BenchConfig | None = None,
    time_decide: bool = True,
) -> Iterator[dict]:
    cfg = config or BenchConfig()
    for n in sizes:
        pi, sigma = cpacked_pair(c, n, seed, cfg)
        yield bench_record(pi, sigma, cfg.delta, epsilon, time_decide)


def dumps(record: dict) -> str:
    return json.dumps(record, separators=(", ", ": "))
