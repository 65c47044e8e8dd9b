"""Greedy traversal of separated one-dimensional curves.

Throughout, ``pi`` values are nonnegative, ``sigma`` values are nonpositive
and indices are 1-based. A pair ``(p, q)`` is free when
``pi[p] - sigma[q] <= delta``. For a pair ``(p, q)``:

* the *visibility* of ``pi[p]`` is the set of sigma indices it is free with;
  by separation this is ``{k : sigma[k] >= pi[p] - delta}``, so a lower pi
  value sees a superset;
* the *reachable run* consists of the indices after ``p`` that stay free with
  ``sigma[q]``; it ends just before ``stop_pi``.

A greedy step on pi jumps to a reachable index whose visibility contains the
visibility of ``pi[p]``. Steps on sigma are the same on the swapped instance
``(-sigma, -pi)``.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from ..errors import ContractError
from .rangeindex import INF, RangeIndex

__all__ = [
    "Separated1D",
    "stop_pi",
    "stop_sigma",
    "min_greedy_step_pi",
    "min_greedy_step_sigma",
    "max_greedy_step_pi",
    "max_greedy_step_sigma",
    "greedy_decide",
    "tracing",
]

TraceFn = Callable[[int, int, str], None]

_TRACE: ContextVar[Optional[TraceFn]] = ContextVar("greedy_trace", default=None)


@contextmanager
def tracing(fn: TraceFn) -> Iterator[None]:
    """Route every greedy pair visited inside the block to ``fn(p, q, kind)``.

    Pairs are reported in the coordinates of the 1D instance being walked,
    which for role-swapped calls means ``p`` indexes the original sigma.
    """
    token = _TRACE.set(fn)
    try:
        yield
    finally:
        _TRACE.reset(token)


def emit(p: int, q: int, kind: str) -> None:
    fn = _TRACE.get()
    if fn is not None:
        fn(p, q, kind)


@dataclass(frozen=True, eq=False)
class Separated1D:
    """Two 1D vertex sequences separated by zero, with a distance threshold.

    ``grid`` is the rounding step when the values are known to be multiples
    of it (``None`` for unrounded instances).
    """

    pi: tuple
    sigma: tuple
    delta: float
    grid: Optional[float] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "pi", tuple(self.pi))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if not self.pi or not self.sigma:
            raise ContractError("separated curves need at least one vertex each")
        if min(self.pi) < 0 or max(self.sigma) > 0:
            raise ContractError("pi values must be >= 0 and sigma values <= 0")

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def m(self) -> int:
        return len(self.sigma)

    @property
    def pi_index(self) -> RangeIndex:
        idx = self._cache.get("pi")
        if idx is None:
            idx = self._cache["pi"] = RangeIndex(self.pi, self.grid)
        return idx

    @property
    def sigma_index(self) -> RangeIndex:
        idx = self._cache.get("sigma")
        if idx is None:
            idx = self._cache["sigma"] = RangeIndex(self.sigma, self.grid)
        return idx

    def swapped(self) -> "Separated1D":
        """The instance ``(-sigma, -pi)``: roles of the curves exchanged."""
        sw = self._cache.get("swapped")
        if sw is None:
            sw = Separated1D(tuple(-v for v in self.sigma), tuple(-v for v in self.pi), self.delta, self.grid)
            sw._cache["swapped"] = self
            self._cache["swapped"] = sw
        return sw

    def free(self, p: int, q: int) -> bool:
        return self.pi[p - 1] - self.sigma[q - 1] <= self.delta


def stop_pi(sep: Separated1D, p: int, b: int, q: int) -> int:
    """First index in ``[p, b]`` with ``pi > sigma[q] + delta``, or ``b + 1``."""
    k = sep.pi_index.min_index(sep.sigma[q - 1] + sep.delta, INF, p, b, lo_open=True)
    return b + 1 if k == INF else int(k)


def stop_sigma(sep: Separated1D, p: int, q: int, d: int) -> int:
    """First index in ``[q, d]`` with ``sigma < pi[p] - delta``, or ``d + 1``."""
    return stop_pi(sep.swapped(), q, d, p)


def min_greedy_step_pi(sep: Separated1D, p: int, b: int, q: int, d: int) -> Optional[int]:
    """Smallest reachable index whose visibility in ``sigma[q..d]`` contains that of ``p``."""
    delta = sep.delta
    stop = stop_pi(sep, p, b, q)
    lowest = sep.sigma_index.min_height(sep.pi[p - 1] - delta, INF, q, d)
    if lowest == INF:
        return None
    cand = sep.pi_index.min_index(-INF, lowest + delta, p + 1, b)
    return int(cand) if cand < stop else None


def max_greedy_step_pi(sep: Separated1D, p: int, b: int, q: int, d: int) -> Optional[int]:
    """Largest reachable index of maximal visibility, if it dominates ``p``."""
    delta = sep.delta
    stop = stop_pi(sep, p, b, q)
    if p + 1 > stop - 1:
        return None
    pidx, sidx = sep.pi_index, sep.sigma_index
    lowest = sidx.min_height(sep.pi[p - 1] - delta, INF, q, d)
    if lowest == INF:
        return None
    best_height = pidx.min_height(-INF, lowest + delta, p + 1, stop - 1)
    if best_height == INF:
        return None
    lowest = sidx.min_height(best_height - delta, INF, q, d)
    k = pidx.max_index(-INF, lowest + delta, p + 1, stop - 1)
    return None if k == INF else int(k)


def min_greedy_step_sigma(sep: Separated1D, p: int, b: int, q: int, d: int) -> Optional[int]:
    return min_greedy_step_pi(sep.swapped(), q, d, p, b)


def max_greedy_step_sigma(sep: Separated1D, p: int, b: int, q: int, d: int) -> Optional[int]:
    return max_greedy_step_pi(sep.swapped(), q, d, p, b)


def greedy_decide(sep: Separated1D, trace: Optional[TraceFn] = None) -> bool:
    """Whether the discrete Fréchet distance of the two curves is at most ``delta``."""
    if trace is None:
        trace = _TRACE.get()
    if not sep.free(1, 1):
        return False
    n, m = sep.n, sep.m
    p = q = 1
    if trace:
        trace(p, q, "start")
    while True:
        moved = False
        s = max_greedy_step_pi(sep, p, n, q, m)
        if s is not None:
            p = s
            moved = True
            if trace:
                trace(p, q, "pi")
        t = max_greedy_step_sigma(sep, p, n, q, m)
        if t is not None:
            q = t
            moved = True
            if trace:
                trace(p, q, "sigma")
        if not moved:
            break
    return p == n and q == m
