"""Exit sets of the reduced problem on separated 1D curves.

Entries ``E`` are pi indices seeded on the first sigma vertex; entries on
sigma are seeded on the first pi vertex. An exit on pi is an index ``f``
such that ``(f, m)`` is reachable by a monotone discrete coupling from some
seed; an exit on sigma is an index ``f`` with ``(n, f)`` reachable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .greedy import (
    Separated1D,
    emit,
    max_greedy_step_pi,
    max_greedy_step_sigma,
    min_greedy_step_pi,
    stop_pi,
)
from .rangeindex import INF

__all__ = ["EntryExitSets", "find_sigma_exits", "pi_exits_from_pi", "sigma_exits_from_pi", "solve_reduced"]


@dataclass(frozen=True)
class EntryExitSets:
    E: tuple[int, ...]
    E_sigma: tuple[int, ...]
    F_pi: tuple[int, ...]
    F_sigma: tuple[int, ...]


def find_sigma_exits(sep: Separated1D, p: int, b: int, q: int, d: int) -> set[int]:
    """Indices ``e`` in ``[q, d]`` such that ``(b, e)`` is reachable from the greedy pair ``(p, q)``.

    Couplings are restricted to ``pi[p..b]`` and ``sigma[q..d]``.
    """
    out: set[int] = set()
    stack = [(p, q, d)]
    while stack:
        p, q, d = stack.pop()
        while True:
            if q == d:
                if stop_pi(sep, p, b, q) == b + 1:
                    out.add(q)
                break
            s = max_greedy_step_pi(sep, p, b, q, d)
            if s is not None:
                p = s
                emit(p, q, "pi")
                continue
            t = max_greedy_step_sigma(sep, p, b, q, d)
            if t is not None:
                emit(p, t, "sigma")
                stack.append((p, t, d))
                d = t - 1
                continue
            d -= 1
    return out


def _greedy_valid_start(sep: Separated1D, p: int) -> bool:
    return sep.pi[p - 1] - sep.sigma[0] <= sep.delta


def pi_exits_from_pi(sep: Separated1D, entries: Iterable[int]) -> set[int]:
    n, m = sep.n, sep.m
    swapped = sep.swapped()
    out: set[int] = set()
    covered = 0
    for start in sorted(set(entries)):
        if start <= covered or not _greedy_valid_start(sep, start):
            continue
        p, q = start, 1
        emit(p, q, "start")
        while True:
            moved = False
            t = max_greedy_step_sigma(sep, p, n, q, m)
            if t is not None:
                q, moved = t, True
                emit(p, q, "sigma")
            s = max_greedy_step_pi(sep, p, n, q, m)
            if s is not None:
                p, moved = s, True
                emit(p, q, "pi")
            if not moved:
                break
        last = stop_pi(sep, p, n, q) - 1
        out |= find_sigma_exits(swapped, 1, m, start, last)
        covered = last
    return out


def sigma_exits_from_pi(sep: Separated1D, entries: Iterable[int]) -> set[int]:
    n, m = sep.n, sep.m
    delta = sep.delta
    pidx, sidx = sep.pi_index, sep.sigma_index
    out: set[int] = set()
    ceiling = m
    dropped = 0
    for start in sorted(set(entries)):
        if start <= dropped or not _greedy_valid_start(sep, start):
            continue
        # Lowest sigma index that can see every remaining pi vertex.
        tallest = pidx.max_height(-INF, INF, start, n)
        target = sidx.min_index(tallest - delta, INF, 1, m)
        if target == INF:
            continue
        target = int(target)
        p, q = start, 1
        emit(p, q, "start")
        while q != target:
            moved = False
            t = max_greedy_step_sigma(sep, p, n, q, target)
            if t is not None:
                q, moved = t, True
                emit(p, q, "sigma")
            if q != target:
                s = min_greedy_step_pi(sep, p, n, q, target)
                if s is not None:
                    p, moved = s, True
                    emit(p, q, "pi")
            if not moved:
                break
        if q == target:
            if target <= ceiling:
                out |= find_sigma_exits(sep, p, n, target, ceiling)
            ceiling = min(ceiling, target - 1)
        dropped = p
    return out


def solve_reduced(sep: Separated1D, entries: Iterable[int], entries_sigma: Iterable[int] = ()) -> EntryExitSets:
    """Exact exit sets for entries on both curves."""
    E = tuple(sorted(set(entries)))
    E_sigma = tuple(sorted(set(entries_sigma)))
    swapped = sep.swapped()
    f_pi: set[int] = set()
    f_sigma: set[int] = set()
    if E:
        f_pi |= pi_exits_from_pi(sep, E)
        f_sigma |= sigma_exits_from_pi(sep, E)
    if E_sigma:
        f_sigma |= pi_exits_from_pi(swapped, E_sigma)
        f_pi |= sigma_exits_from_pi(swapped, E_sigma)
    return EntryExitSets(E, E_sigma, tuple(sorted(f_pi)), tuple(sorted(f_sigma)))
