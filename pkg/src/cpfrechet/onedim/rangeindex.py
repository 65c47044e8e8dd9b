"""Orthogonal range queries over an indexed 1D point sequence.

Points are ``(i, v_i)`` for positions ``i = 1..n``. Each query restricts the
position to ``[p, b]`` and the value to an interval whose ends may be open or
closed, and asks for an extreme position or an extreme value. The structure
is a merge-sort tree: a segment tree over positions whose nodes keep their
values sorted, giving ``O(log^2 n)`` per query. Short position ranges are
answered by a direct scan, which is faster in practice.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from typing import Optional, Sequence

from ..errors import ContractError

__all__ = ["RangeIndex", "NO_INDEX", "build_range_index"]

NO_INDEX = math.inf
INF = math.inf

_SCAN_LIMIT = 48


class RangeIndex:
    __slots__ = ("values", "n", "_size", "_tree")

    def __init__(self, values: Sequence[float], grid: Optional[float] = None):
        vals = list(values)
        if grid is not None:
            for v in vals:
                k = v / grid
                if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
                    raise ContractError(f"value {v} is not a multiple of the grid step {grid}")
        self.values = vals
        self.n = len(vals)
        self._size = 0
        self._tree: list[list[float]] = []
        if self.n > _SCAN_LIMIT:
            self._build()

    def _build(self) -> None:
        size = 1
        while size < self.n:
            size *= 2
        tree: list[list[float]] = [[] for _ in range(2 * size)]
        for i, v in enumerate(self.values):
            tree[size + i] = [v]
        for node in range(size - 1, 0, -1):
            left, right = tree[2 * node], tree[2 * node + 1]
            tree[node] = sorted(left + right) if right else left
        self._size = size
        self._tree = tree

    # -- helpers -----------------------------------------------------------

    @staticmethod
    def _inside(v: float, lo: float, hi: float, lo_open: bool, hi_open: bool) -> bool:
        if lo_open:
            if not v > lo:
                return False
        elif not v >= lo:
            return False
        if hi_open:
            return v < hi
        return v <= hi

    def _lowest(self, node: int, lo: float, hi: float, lo_open: bool, hi_open: bool) -> float:
        vals = self._tree[node]
        k = bisect_right(vals, lo) if lo_open else bisect_left(vals, lo)
        if k == len(vals):
            return INF
        v = vals[k]
        if (v < hi) if hi_open else (v <= hi):
            return v
        return INF

    def _highest(self, node: int, lo: float, hi: float, lo_open: bool, hi_open: bool) -> float:
        vals = self._tree[node]
        k = bisect_left(vals, hi) if hi_open else bisect_right(vals, hi)
        if k == 0:
            return -INF
        v = vals[k - 1]
        if (v > lo) if lo_open else (v >= lo):
            return v
        return -INF

    def _canonical(self, p: int, b: int) -> tuple[list[int], list[int]]:
        """Canonical nodes covering positions ``p..b``, split into left and right halves."""
        left: list[int] = []
        right: list[int] = []
        lo = p - 1 + self._size
        hi = b + self._size
        while lo < hi:
            if lo & 1:
                left.append(lo)
                lo += 1
            if hi & 1:
                hi -= 1
                right.append(hi)
            lo >>= 1
            hi >>= 1
        return left, right

    def _clip(self, p: int, b: float) -> tuple[int, int]:
        p = max(int(p), 1)
        b = self.n if b >= self.n else int(b)
        return p, b

    # -- queries -----------------------------------------------------------

    def min_index(self, lo: float, hi: float, p: int, b: float, lo_open: bool = False, hi_open: bool = False) -> float:
        """Smallest position in ``[p, b]`` whose value lies in the interval, else ``inf``."""
        p, b = self._clip(p, b)
        if p > b:
            return NO_INDEX
        if not self._tree or b - p < _SCAN_LIMIT:
            vals = self.values
            for i in range(p - 1, b):
                if self._inside(vals[i], lo, hi, lo_open, hi_open):
                    return i + 1
            return NO_INDEX
        left, right = self._canonical(p, b)
        for node in left + right[::-1]:
            if self._lowest(node, lo, hi, lo_open, hi_open) != INF:
                while node < self._size:
                    node = 2 * node if self._lowest(2 * node, lo, hi, lo_open, hi_open) != INF else 2 * node + 1
                return node - self._size + 1
        return NO_INDEX

    def max_index(self, lo: float, hi: float, p: int, b: float, lo_open: bool = False, hi_open: bool = False) -> float:
        """Largest position in ``[p, b]`` whose value lies in the interval, else ``inf``."""
        p, b = self._clip(p, b)
        if p > b:
            return NO_INDEX
        if not self._tree or b - p < _SCAN_LIMIT:
            vals = self.values
            for i in range(b - 1, p - 2, -1):
                if self._inside(vals[i], lo, hi, lo_open, hi_open):
                    return i + 1
            return NO_INDEX
        left, right = self._canonical(p, b)
        for node in right + left[::-1]:
            if self._lowest(node, lo, hi, lo_open, hi_open) != INF:
                while node < self._size:
                    node = 2 * node + 1 if self._lowest(2 * node + 1, lo, hi, lo_open, hi_open) != INF else 2 * node
                return node - self._size + 1
        return NO_INDEX

    def min_height(self, lo: float, hi: float, p: int, b: float, lo_open: bool = False, hi_open: bool = False) -> float:
        """Smallest value in the interval among positions ``[p, b]``, else ``inf``."""
        p, b = self._clip(p, b)
        best = INF
        if p > b:
            return best
        if not self._tree or b - p < _SCAN_LIMIT:
            for v in self.values[p - 1 : b]:
                if v < best and self._inside(v, lo, hi, lo_open, hi_open):
                    best = v
            return best
        left, right = self._canonical(p, b)
        for node in left + right:
            v = self._lowest(node, lo, hi, lo_open, hi_open)
            if v < best:
                best = v
        return best

    def max_height(self, lo: float, hi: float, p: int, b: float, lo_open: bool = False, hi_open: bool = False) -> float:
        """Largest value in the interval among positions ``[p, b]``, else ``inf`` (no match)."""
        p, b = self._clip(p, b)
        best = -INF
        if p <= b:
            if not self._tree or b - p < _SCAN_LIMIT:
                for v in self.values[p - 1 : b]:
                    if v > best and self._inside(v, lo, hi, lo_open, hi_open):
                        best = v
            else:
                left, right = self._canonical(p, b)
                for node in left + right:
                    v = self._highest(node, lo, hi, lo_open, hi_open)
                    if v > best:
                        best = v
        return INF if best == -INF else best


def build_range_index(values: Sequence[float], grid: Optional[float] = None) -> RangeIndex:
    return RangeIndex(values, grid)
