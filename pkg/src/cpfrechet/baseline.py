"""Exact quadratic-time reference algorithms.

These are deliberately simple and serve as oracles for the fast decider:
discrete Fréchet by dynamic programming, continuous Fréchet decision by
propagating reachable intervals cell by cell, a bisection wrapper for the
continuous value, and boolean reachability for the reduced 1D problem.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .curves import Curve, Witness, total_length
from .errors import InputError, ParameterError

__all__ = [
    "Interval",
    "FreeSpaceCell",
    "free_interval",
    "free_intervals",
    "segment_span",
    "free_space_cell",
    "discrete_frechet",
    "discrete_frechet_witness",
    "discrete_decide",
    "continuous_decide",
    "reachable_boundaries",
    "continuous_frechet",
    "endpoint_lower_bound",
    "reduced_reach_bruteforce",
    "region_reach",
]

# Relative width of the band around a zero discriminant that is read as tangency.
TANGENCY_TOL = 1e-12

Interval = Optional[tuple[float, float]]


def _check_pair(pi: Curve, sigma: Curve) -> None:
    if not isinstance(pi, Curve) or not isinstance(sigma, Curve):
        raise InputError("expected Curve instances")
    if pi.dim != sigma.dim:
        raise InputError(f"dimension mismatch: {pi.dim} vs {sigma.dim}")


# ---------------------------------------------------------------------------
# Free intervals on cell boundaries


def free_interval(start: np.ndarray, end: np.ndarray, center: np.ndarray, delta: float) -> Interval:
    """Closed set of ``lam`` in [0, 1] with ``|start + lam (end - start) - center| <= delta``."""
    lo, hi = free_intervals(
        np.asarray(start, float)[None, :], np.asarray(end, float)[None, :], np.asarray(center, float)[None, :], delta
    )
    if math.isnan(lo[0]):
        return None
    return float(lo[0]), float(hi[0])


def free_intervals(starts: np.ndarray, ends: np.ndarray, centers: np.ndarray, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`free_interval` over broadcastable arrays of shape ``(..., d)``.

    Returns ``(lo, hi)`` arrays; empty intervals are marked with NaN in both.
    """
    direction = ends - starts
    offset = starts - centers
    a = np.einsum("...i,...i->...", direction, direction)
    b = 2.0 * np.einsum("...i,...i->...", direction, offset)
    c = np.einsum("...i,...i->...", offset, offset) - delta * delta
    a, b, c = np.broadcast_arrays(a, b, c)
    lo = np.full(a.shape, np.nan)
    hi = np.full(a.shape, np.nan)

    flat = a == 0.0
    whole = flat & (c <= 0.0)
    lo[whole] = 0.0
    hi[whole] = 1.0

    curved = ~flat
    if np.any(curved):
        ac, bc, cc = a[curved], b[curved], c[curved]
        disc = bc * bc - 4.0 * ac * cc
        scale = np.maximum(bc * bc, np.abs(4.0 * ac * cc))
        tangent = np.abs(disc) <= TANGENCY_TOL * scale
        disc = np.where(tangent, 0.0, disc)
        real = disc >= 0.0
        root = np.sqrt(np.where(real, disc, 0.0))
        # Stable pairing of the two roots.
        q = -0.5 * (bc + np.where(bc >= 0.0, root, -root))
        with np.errstate(divide="ignore", invalid="ignore"):
            r1 = q / ac
            r2 = np.where(q != 0.0, cc / q, r1)
        left = np.minimum(r1, r2)
        right = np.maximum(r1, r2)
        left = np.where(tangent, -bc / (2.0 * ac), left)
        right = np.where(tangent, -bc / (2.0 * ac), right)
        ok = real & (right >= 0.0) & (left <= 1.0)
        sub_lo = np.where(ok, np.maximum(left, 0.0), np.nan)
        sub_hi = np.where(ok, np.minimum(right, 1.0), np.nan)
        lo[curved] = sub_lo
        hi[curved] = sub_hi
    return lo, hi


def segment_span(start, direction, sqlen: float, center, delta2: float) -> Interval:
    """Scalar :func:`free_interval` on plain float sequences, for hot loops.

    ``direction`` is ``end - start``, ``sqlen`` its squared length and
    ``delta2`` the squared radius.
    """
    off = [s - c for s, c in zip(start, center)]
    c = sum(x * x for x in off) - delta2
    if sqlen == 0.0:
        return (0.0, 1.0) if c <= 0.0 else None
    b = 2.0 * sum(x * y for x, y in zip(direction, off))
    disc = b * b - 4.0 * sqlen * c
    scale = max(b * b, abs(4.0 * sqlen * c))
    if abs(disc) <= TANGENCY_TOL * scale:
        lo = hi = -b / (2.0 * sqlen)
    elif disc < 0.0:
        return None
    else:
        root = math.sqrt(disc)
        q = -0.5 * (b + root) if b >= 0.0 else -0.5 * (b - root)
        r1 = q / sqlen
        r2 = c / q if q != 0.0 else r1
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
    if hi < 0.0 or lo > 1.0:
        return None
    return (lo if lo > 0.0 else 0.0, hi if hi < 1.0 else 1.0)


@dataclass(frozen=True)
class FreeSpaceCell:
    """Boundary free intervals of the cell spanned by segments ``i`` of pi and ``j`` of sigma.

    ``bottom``/``top`` are parameters along pi's segment at sigma vertices ``j``
    and ``j+1``; ``left``/``right`` are parameters along sigma's segment at pi
    vertices ``i`` and ``i+1``. All in local coordinates ``[0, 1]``.
    """

    i: int
    j: int
    bottom: Interval
    left: Interval
    top: Interval
    right: Interval


def free_space_cell(pi: Curve, sigma: Curve, i: int, j: int, delta: float) -> FreeSpaceCell:
    a0, a1 = pi.vertex(i), pi.vertex(i + 1)
    b0, b1 = sigma.vertex(j), sigma.vertex(j + 1)
    return FreeSpaceCell(
        i,
        j,
        bottom=free_interval(a0, a1, b0, delta),
        left=free_interval(b0, b1, a0, delta),
        top=free_interval(a0, a1, b1, delta),
        right=free_interval(b0, b1, a1, delta),
    )


# ---------------------------------------------------------------------------
# Discrete Fréchet


def _distance_matrix(pi: Curve, sigma: Curve) -> np.ndarray:
    diff = pi.vertices[:, None, :] - sigma.vertices[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _discrete_table(dist: np.ndarray) -> np.ndarray:
    n, m = dist.shape
    dp = np.empty((n, m))
    dp[0, 0] = dist[0, 0]
    dp[1:, 0] = np.maximum.accumulate(dist[:, 0])[1:]
    dp[0, 1:] = np.maximum.accumulate(dist[0, :])[1:]
    rows = dist.tolist()
    table = dp.tolist()
    for p in range(1, n):
        prev, cur, drow = table[p - 1], table[p], rows[p]
        for q in range(1, m):
            best = prev[q - 1]
            if prev[q] < best:
                best = prev[q]
            if cur[q - 1] < best:
                best = cur[q - 1]
            cur[q] = drow[q] if drow[q] > best else best
    return np.asarray(table)


def discrete_frechet(pi: Curve, sigma: Curve) -> float:
    _check_pair(pi, sigma)
    return float(_discrete_table(_distance_matrix(pi, sigma))[-1, -1])


def discrete_frechet_witness(pi: Curve, sigma: Curve) -> tuple[float, Witness]:
    """Distance plus an optimal coupling; backtracking prefers diagonal, then pi, then sigma."""
    _check_pair(pi, sigma)
    dp = _discrete_table(_distance_matrix(pi, sigma))
    value = float(dp[-1, -1])
    p, q = pi.n - 1, sigma.n - 1
    path = [(p + 1, q + 1)]
    while (p, q) != (0, 0):
        options = []
        if p > 0 and q > 0:
            options.append((p - 1, q - 1))
        if p > 0:
            options.append((p - 1, q))
        if q > 0:
            options.append((p, q - 1))
        p, q = next(o for o in options if dp[o] <= value)
        path.append((p + 1, q + 1))
    return value, Witness(tuple(reversed(path)))


def discrete_decide(pi_vals: Sequence[float], sigma_vals: Sequence[float], delta: float) -> bool:
    """``d_dF <= delta`` for 1D vertex sequences (fast boolean DP)."""
    pi_vals = list(pi_vals)
    sigma_vals = list(sigma_vals)
    m = len(sigma_vals)
    row = [False] * m
    for p, x in enumerate(pi_vals):
        new = [False] * m
        for q, y in enumerate(sigma_vals):
            if abs(x - y) > delta:
                continue
            if p == 0 and q == 0:
                new[q] = True
            else:
                new[q] = (q > 0 and (new[q - 1] or row[q - 1])) or row[q]
        row = new
    return row[-1]


# ---------------------------------------------------------------------------
# Continuous decision and value


def endpoint_lower_bound(pi: Curve, sigma: Curve) -> float:
    return max(
        float(np.linalg.norm(pi.vertices[0] - sigma.vertices[0])),
        float(np.linalg.norm(pi.vertices[-1] - sigma.vertices[-1])),
    )


def continuous_decide(pi: Curve, sigma: Curve, delta: float) -> bool:
    """Exact ``d_F(pi, sigma) <= delta`` by reachable-interval propagation."""
    _check_pair(pi, sigma)
    if delta < 0:
        return False
    P, S = pi.vertices, sigma.vertices
    n, m = pi.n, sigma.n
    if n == 1 or m == 1:
        return bool(np.all(np.linalg.norm(P[:, None, :] - S[None, :, :], axis=2) <= delta))
    if np.linalg.norm(P[0] - S[0]) > delta or np.linalg.norm(P[-1] - S[-1]) > delta:
        return False
    # Horizontal edges: pi segment i at sigma vertex j, shape (n-1, m).
    h_lo, h_hi = free_intervals(P[:-1, None, :], P[1:, None, :], S[None, :, :], delta)
    # Vertical edges: sigma segment j at pi vertex i, shape (n, m-1).
    v_lo, v_hi = free_intervals(S[None, :-1, :], S[None, 1:, :], P[:, None, :], delta)
    h_lo, h_hi, v_lo, v_hi = h_lo.tolist(), h_hi.tolist(), v_lo.tolist(), v_hi.tolist()
    nan = math.isnan

    # Reachable lower bounds along the current row of horizontal edges (None = empty).
    bottom: list[Optional[float]] = [None] * (n - 1)
    ok = True
    for i in range(n - 1):
        lo, hi = h_lo[i][0], h_hi[i][0]
        if ok and not nan(lo) and lo == 0.0:
            bottom[i] = 0.0
            ok = hi == 1.0
        else:
            ok = False
    left_ok = True
    for j in range(m - 1):
        # Left boundary of column 0.
        lo, hi = v_lo[0][j], v_hi[0][j]
        if left_ok and not nan(lo) and lo == 0.0:
            left: Optional[float] = 0.0
            left_ok = hi == 1.0
        else:
            left = None
            left_ok = False
        top: list[Optional[float]] = [None] * (n - 1)
        for i in range(n - 1):
            b = bottom[i]
            tlo, thi = h_lo[i][j + 1], h_hi[i][j + 1]
            if not nan(tlo):
                if left is not None:
                    top[i] = tlo
                elif b is not None:
                    start = max(tlo, b)
                    if start <= thi:
                        top[i] = start
            rlo, rhi = v_lo[i + 1][j], v_hi[i + 1][j]
            right = None
            if not nan(rlo):
                if b is not None:
                    right = rlo
                elif left is not None:
                    start = max(rlo, left)
                    if start <= rhi:
                        right = start
            left = right
        bottom = top
        last_right = left
    top_end = bottom[n - 2] is not None and h_hi[n - 2][m - 1] == 1.0
    right_end = last_right is not None and v_hi[n - 1][m - 2] == 1.0
    return bool(top_end or right_end)


def reachable_boundaries(pi: Curve, sigma: Curve, delta: float) -> tuple[dict, dict]:
    """Exact reachable intervals on every cell edge, for drawing.

    Returns ``(horizontal, vertical)``: ``horizontal[(i, j)]`` is the local
    ``[0, 1]`` span on pi's segment ``i`` at sigma vertex ``j``, and
    ``vertical[(i, j)]`` the span on sigma's segment ``j`` at pi vertex ``i``.
    Unreachable edges are absent.
    """
    _check_pair(pi, sigma)
    P, S = pi.vertices, sigma.vertices
    n, m = pi.n, sigma.n
    horizontal: dict = {}
    vertical: dict = {}
    if n == 1 or m == 1 or np.linalg.norm(P[0] - S[0]) > delta:
        return horizontal, vertical
    h_lo, h_hi = free_intervals(P[:-1, None, :], P[1:, None, :], S[None, :, :], delta)
    v_lo, v_hi = free_intervals(S[None, :-1, :], S[None, 1:, :], P[:, None, :], delta)
    # Bottom row and left column: reachable only along a fully free prefix.
    for i in range(1, n):
        lo, hi = h_lo[i - 1, 0], h_hi[i - 1, 0]
        if math.isnan(lo) or lo > 0.0:
            break
        horizontal[(i, 1)] = (0.0, float(hi))
        if hi < 1.0:
            break
    for j in range(1, m):
        lo, hi = v_lo[0, j - 1], v_hi[0, j - 1]
        if math.isnan(lo) or lo > 0.0:
            break
        vertical[(1, j)] = (0.0, float(hi))
        if hi < 1.0:
            break
    for j in range(1, m):
        for i in range(1, n):
            b = horizontal.get((i, j))
            l = vertical.get((i, j))
            if b is None and l is None:
                continue
            tlo, thi = h_lo[i - 1, j], h_hi[i - 1, j]
            if not math.isnan(tlo):
                start = tlo if l is not None else max(tlo, b[0])
                if start <= thi:
                    horizontal[(i, j + 1)] = (float(start), float(thi))
            rlo, rhi = v_lo[i, j - 1], v_hi[i, j - 1]
            if not math.isnan(rlo):
                start = rlo if b is not None else max(rlo, l[0])
                if start <= rhi:
                    vertical[(i + 1, j)] = (float(start), float(rhi))
    return horizontal, vertical


def continuous_frechet(pi: Curve, sigma: Curve, rel_tol: float = 1e-9, max_iter: int = 200) -> float:
    """Continuous Fréchet distance to relative accuracy ``rel_tol`` by bisection."""
    _check_pair(pi, sigma)
    if not 0.0 < rel_tol < 1.0:
        raise ParameterError("rel_tol must lie in (0, 1)")
    lower = endpoint_lower_bound(pi, sigma)
    if continuous_decide(pi, sigma, lower):
        return lower
    lo, hi = lower, lower + total_length(pi) + total_length(sigma)
    if not continuous_decide(pi, sigma, hi):
        # Guard against rounding at the upper bound.
        hi = 2.0 * hi + 1.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if 0.5 * (hi - lo) <= rel_tol * mid:
            return mid
        if continuous_decide(pi, sigma, mid):
            hi = mid
        else:
            lo = mid
    warnings.warn("continuous_frechet: bisection hit the iteration cap", RuntimeWarning, stacklevel=2)
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Reduced 1D reachability


def _values(curve) -> list[float]:
    if isinstance(curve, Curve):
        if curve.dim != 1:
            raise InputError("expected a one-dimensional curve")
        return curve.vertices[:, 0].tolist()
    return [float(v) for v in curve]


def reduced_reach_bruteforce(
    pi1d, sigma1d, delta: float, entries: Iterable[int], entries_sigma: Iterable[int] = ()
) -> tuple[set[int], set[int]]:
    """Exit sets of the reduced problem by boolean DP (1-based indices).

    Reachability is seeded at ``(e, 1)`` for ``e`` in ``entries`` and at
    ``(1, e)`` for ``e`` in ``entries_sigma``. Returns ``(F_pi, F_sigma)``
    where ``F_pi`` collects ``f`` with ``(f, m)`` reachable and ``F_sigma``
    collects ``f`` with ``(n, f)`` reachable.
    """
    P, S = _values(pi1d), _values(sigma1d)
    n, m = len(P), len(S)
    seeds_pi = set(entries)
    seeds_sigma = set(entries_sigma)
    if not seeds_pi and not seeds_sigma:
        return set(), set()
    reach = [[False] * (m + 1) for _ in range(n + 1)]
    for p in range(1, n + 1):
        x = P[p - 1]
        prev, cur = reach[p - 1], reach[p]
        for q in range(1, m + 1):
            if abs(x - S[q - 1]) > delta:
                continue
            cur[q] = (
                (q == 1 and p in seeds_pi)
                or (p == 1 and q in seeds_sigma)
                or prev[q]
                or cur[q - 1]
                or prev[q - 1]
            )
    f_pi = {f for f in range(1, n + 1) if reach[f][m]}
    f_sigma = {f for f in range(1, m + 1) if reach[n][f]}
    return f_pi, f_sigma


# ---------------------------------------------------------------------------
# Exact reachability through a rectangular region


def region_reach(pi: Curve, sigma: Curve, delta: float, entries) -> "ReachFront":
    """Exact exit intervals of the region spanned by ``pi`` and ``sigma``.

    ``entries.horizontal[i]`` is a reachable interval on the bottom edge of
    column ``i`` and ``entries.vertical[j]`` one on the left edge of row ``j``,
    both in absolute parameters. Returns the reachable parts of the top edges
    (``horizontal``) and right edges (``vertical``).
    """
    from .reach import ReachFront

    _check_pair(pi, sigma)
    n, m = pi.n, sigma.n
    out = ReachFront()
    if n < 2 or m < 2:
        raise InputError("region_reach needs at least two vertices on each curve")
    P, S = pi.vertices, sigma.vertices
    h_lo, h_hi = free_intervals(P[:-1, None, :], P[1:, None, :], S[None, :, :], delta)
    v_lo, v_hi = free_intervals(S[None, :-1, :], S[None, 1:, :], P[:, None, :], delta)

    def clip(span, lo, hi, offset):
        if span is None or math.isnan(lo):
            return None
        a, b = max(span[0] - offset, lo), min(span[1] - offset, hi)
        return a if a <= b else None

    bottom = [clip(entries.horizontal.get(i + 1), h_lo[i, 0], h_hi[i, 0], i + 1) for i in range(n - 1)]
    for j in range(m - 1):
        left = clip(entries.vertical.get(j + 1), v_lo[0, j], v_hi[0, j], j + 1)
        top: list[Optional[float]] = [None] * (n - 1)
        for i in range(n - 1):
            b = bottom[i]
            tlo, thi = h_lo[i, j + 1], h_hi[i, j + 1]
            if not math.isnan(tlo):
                if left is not None:
                    top[i] = tlo
                elif b is not None and max(tlo, b) <= thi:
                    top[i] = max(tlo, b)
            rlo, rhi = v_lo[i + 1, j], v_hi[i + 1, j]
            right = None
            if not math.isnan(rlo):
                if b is not None:
                    right = rlo
                elif left is not None and max(rlo, left) <= rhi:
                    right = max(rlo, left)
            left = right
        if left is not None:
            out.vertical[j + 1] = (j + 1 + left, j + 1 + float(v_hi[n - 1, j]))
        bottom = top
    for i in range(n - 1):
        if bottom[i] is not None:
            out.horizontal[i + 1] = (i + 1 + bottom[i], i + 1 + float(h_hi[i, m - 1]))
    return out
