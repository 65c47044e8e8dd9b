"""Oracles and instance generators shared by the test modules."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from cpfrechet.curves import Curve
from cpfrechet.reach import ReachFront

# Filled by acceptance tests, printed by the terminal-summary hook in conftest.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def report(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")


# ---------------------------------------------------------------------------
# Random curves


def random_curve(rng: np.random.Generator, n: int, d: int = 2, scale: float = 1.0) -> Curve:
    return Curve(rng.normal(0.0, scale, (n, d)))


def random_walk(rng: np.random.Generator, n: int, d: int = 2, step: float = 1.0) -> Curve:
    return Curve(np.cumsum(rng.normal(0.0, step, (n, d)), axis=0))


def noisy_copy(rng: np.random.Generator, curve: Curve, noise: float, m: int) -> Curve:
    """A curve resampled from ``curve`` at ``m`` sorted random parameters plus Gaussian noise."""
    t = np.sort(rng.uniform(1.0, curve.n, m))
    t[0], t[-1] = 1.0, float(curve.n)
    V = curve.vertices
    k = np.clip(np.floor(t).astype(int), 1, max(curve.n - 1, 1))
    lam = (t - k)[:, None]
    if curve.n == 1:
        pts = np.repeat(V, m, axis=0)
    else:
        pts = (1 - lam) * V[k - 1] + lam * V[k]
    return Curve(pts + rng.normal(0.0, noise, pts.shape))


def line_curve(values) -> Curve:
    return Curve(np.asarray(values, dtype=float).reshape(-1, 1))


# ---------------------------------------------------------------------------
# Discrete Fréchet reachability on 1D value arrays


@njit(cache=True)
def ddf_le(P, a, b, S, c, d, delta):
    """``d_dF(P[a..b], S[c..d]) <= delta`` for 0-based inclusive index ranges."""
    w = d - c + 1
    row = np.zeros(w, np.bool_)
    for i in range(a, b + 1):
        diag = False
        for j in range(w):
            free = abs(P[i] - S[c + j]) <= delta
            up = row[j]
            if i == a and j == 0:
                val = free
            elif i == a:
                val = free and row[j - 1]
            elif j == 0:
                val = free and up
            else:
                val = free and (up or row[j - 1] or diag)
            diag = up
            row[j] = val
    return row[w - 1]


@njit(cache=True)
def _separated(n, m, top):
    P = np.empty(n, np.float64)
    S = np.empty(m, np.float64)
    for i in range(n):
        P[i] = np.random.randint(0, top + 1)
    for j in range(m):
        S[j] = -np.random.randint(0, top + 1)
    return P, S


@njit(cache=True)
def _overlapping(n):
    """Intervals aI <= aJ <= bI <= bJ (0-based, inclusive)."""
    x = np.sort(np.random.randint(0, n, 4))
    return x[0], x[2], x[1], x[3]


@njit(cache=True)
def compose_union(count, seed, max_len, top, disjoint=False):
    """Overlapping feasible pi-intervals combine. Returns (hypothesis held, counterexamples).

    ``disjoint=True`` draws intervals with a gap between them instead, where
    the implication is false in general; used as a negative control.
    """
    np.random.seed(seed)
    held = 0
    bad = 0
    for _ in range(count):
        n = np.random.randint(4 if disjoint else 2, max_len + 1)
        m = np.random.randint(1, max_len + 1)
        P, S = _separated(n, m, top)
        delta = float(np.random.randint(1, 2 * top))
        if disjoint:
            x = np.sort(np.random.choice(n, 4, replace=False))
            aI, bI, aJ, bJ = x[0], x[1], x[2] + 1, x[3]
            if aJ > bJ:
                aJ = bJ
            if aJ <= bI + 1:
                continue
        else:
            aI, bI, aJ, bJ = _overlapping(n)
        if np.random.random() < 0.5:
            aI, bI, aJ, bJ = aJ, bJ, aI, bI
        if ddf_le(P, aI, bI, S, 0, m - 1, delta) and ddf_le(P, aJ, bJ, S, 0, m - 1, delta):
            held += 1
            if not ddf_le(P, min(aI, aJ), max(bI, bJ), S, 0, m - 1, delta):
                bad += 1
    return held, bad


@njit(cache=True)
def compose_crossing(count, seed, max_len, top):
    """Nested pi-intervals with a sigma-prefix coupling cross. Curves need not be separated."""
    np.random.seed(seed)
    held = 0
    bad = 0
    for _ in range(count):
        n = np.random.randint(1, max_len + 1)
        m = np.random.randint(1, max_len + 1)
        P = np.empty(n, np.float64)
        S = np.empty(m, np.float64)
        for i in range(n):
            P[i] = np.random.randint(-top, top + 1)
        for j in range(m):
            S[j] = np.random.randint(-top, top + 1)
        delta = float(np.random.randint(1, top + 1))
        aI = np.random.randint(0, n)
        bI = np.random.randint(aI, n)
        aJ = np.random.randint(aI, bI + 1)
        bJ = np.random.randint(aJ, bI + 1)
        k = np.random.randint(0, m)
        if ddf_le(P, aI, bI, S, 0, k, delta) and ddf_le(P, aJ, bJ, S, 0, m - 1, delta):
            held += 1
            if not ddf_le(P, aI, bJ, S, 0, m - 1, delta):
                bad += 1
    return held, bad


@njit(cache=True)
def compose_prefix(count, seed, max_len, top):
    """Overlapping pi-intervals where the first one only needs a sigma-prefix."""
    np.random.seed(seed)
    held = 0
    bad = 0
    for _ in range(count):
        n = np.random.randint(2, max_len + 1)
        m = np.random.randint(1, max_len + 1)
        P, S = _separated(n, m, top)
        delta = float(np.random.randint(1, 2 * top))
        aI, bI, aJ, bJ = _overlapping(n)
        k = np.random.randint(0, m)
        if ddf_le(P, aI, bI, S, 0, k, delta) and ddf_le(P, aJ, bJ, S, 0, m - 1, delta):
            held += 1
            if not ddf_le(P, aI, bJ, S, 0, m - 1, delta):
                bad += 1
    return held, bad


# ---------------------------------------------------------------------------
# Dense-grid monotone reachability through a region


def _axis(count: int, per_axis: int, extra) -> np.ndarray:
    """Sorted parameters on ``[1, count]``: every vertex, a uniform grid and ``extra`` points."""
    base = np.linspace(1.0, float(count), per_axis + 1) if count > 1 else np.array([1.0])
    pts = np.concatenate([base, np.arange(1.0, count + 1.0), np.asarray(list(extra), float)])
    return np.unique(pts)


def _points(curve: Curve, t: np.ndarray) -> np.ndarray:
    V = curve.vertices
    if curve.n == 1:
        return np.repeat(V, len(t), axis=0)
    k = np.clip(np.floor(t).astype(int), 1, curve.n - 1)
    lam = (t - k)[:, None]
    return (1 - lam) * V[k - 1] + lam * V[k]


def _row_sweep(free: np.ndarray, seed_bottom: np.ndarray, seed_left: np.ndarray) -> np.ndarray:
    """Monotone reachability on a boolean grid (axis 0 along pi, axis 1 along sigma)."""
    nx, ny = free.shape
    reach = np.zeros_like(free)
    idx = np.arange(nx)
    prev = np.zeros(nx, bool)
    for y in range(ny):
        f = free[:, y]
        base = prev.copy()
        base[1:] |= prev[:-1]
        if y == 0:
            base |= seed_bottom
        base[0] |= seed_left[y]
        base &= f
        last_base = np.maximum.accumulate(np.where(base, idx, -1))
        last_wall = np.maximum.accumulate(np.where(~f, idx, -1))
        row = f & (last_base > last_wall)
        reach[:, y] = row
        prev = row
    return reach


class GridRegion:
    """A region sampled on a tensor grid whose lines include every vertex parameter.

    Consecutive grid points then always share one free-space cell, so each
    grid step is a straight segment inside a convex cell: the grid answer
    under-approximates continuous reachability.
    """

    def __init__(self, pi: Curve, sigma: Curve, per_axis: int = 400, extra_x=(), extra_y=()):
        self.x = _axis(pi.n, per_axis, extra_x)
        self.y = _axis(sigma.n, per_axis, extra_y)
        A = _points(pi, self.x)
        B = _points(sigma, self.y)
        diff = A[:, None, :] - B[None, :, :]
        self.dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        self.step_x = (pi.n - 1) / per_axis if pi.n > 1 else 0.0
        self.step_y = (sigma.n - 1) / per_axis if sigma.n > 1 else 0.0

    def reach(self, delta: float, entries: ReachFront) -> np.ndarray:
        free = self.dist <= delta
        seed_bottom = np.zeros(len(self.x), bool)
        for lo, hi in entries.horizontal.values():
            seed_bottom |= (self.x >= lo) & (self.x <= hi)
        seed_left = np.zeros(len(self.y), bool)
        for lo, hi in entries.vertical.values():
            seed_left |= (self.y >= lo) & (self.y <= hi)
        return _row_sweep(free, seed_bottom, seed_left)


def _covered(points: np.ndarray, spans, tol: float) -> np.ndarray:
    hit = np.zeros(points.shape, bool)
    for lo, hi in spans:
        hit |= (points >= lo - tol) & (points <= hi + tol)
    return hit


def compare_exits(grid: GridRegion, out: ReachFront, low: np.ndarray, high: np.ndarray) -> list[str]:
    """Problems with emitted exits against grid reachability at both thresholds.

    ``low``/``high`` are grid reachability arrays at ``delta`` and ``(1+eps) delta``.
    Every grid point reachable at ``delta`` on the top or right side must lie in
    an emitted interval, and every grid point inside an emitted interval must
    have a grid point reachable at ``(1+eps) delta`` on the same side. Both
    checks allow one grid step of slack.
    """
    problems = []
    sides = (
        ("top", out.horizontal.values(), grid.x, low[:, -1], high[:, -1], grid.step_x),
        ("right", out.vertical.values(), grid.y, low[-1, :], high[-1, :], grid.step_y),
    )
    for name, emitted, params, low_edge, high_edge, step in sides:
        tol = step + 1e-9
        spans = list(emitted)
        must = params[low_edge]
        missing = must[~_covered(must, spans, tol)]
        if missing.size:
            problems.append(f"{name}: reachable at delta but not emitted: {missing[:5]}")
        ends = np.array([v for span in spans for v in span], float)
        inside = np.concatenate([params[_covered(params, spans, 0.0)], ends])
        may = params[high_edge]
        if inside.size:
            if may.size == 0:
                problems.append(f"{name}: emitted {spans[:3]} but nothing reachable at (1+eps)delta")
            else:
                gap = np.min(np.abs(inside[:, None] - may[None, :]), axis=1)
                far = inside[gap > tol]
                if far.size:
                    problems.append(f"{name}: emitted points unreachable at (1+eps)delta: {far[:5]}")
    return problems


# ---------------------------------------------------------------------------
# Piece pairs


def random_piece(rng: np.random.Generator, center: np.ndarray, radius: float, n: int) -> Curve:
    pts = [center]
    while len(pts) < n:
        p = center + rng.uniform(-radius, radius, center.shape)
        if np.linalg.norm(p - center) <= radius:
            pts.append(p)
    return Curve(np.array(pts))


def random_piece_pair(rng: np.random.Generator, radius: float, n: int, m: int, gap: tuple[float, float]):
    a = random_piece(rng, np.zeros(2), radius, n)
    ang = rng.uniform(0, 2 * math.pi)
    dist = rng.uniform(*gap)
    b = random_piece(rng, dist * np.array([math.cos(ang), math.sin(ang)]), radius, m)
    return a, b


def random_entries(rng: np.random.Generator, pi: Curve, sigma: Curve, delta: float, free_span) -> ReachFront:
    """Random sub-intervals of the free parts of the bottom and left region edges."""
    ent = ReachFront()
    for i in range(1, pi.n):
        if rng.random() < 0.6:
            f = free_span(pi.vertex(i), pi.vertex(i + 1), sigma.vertex(1), delta)
            if f is not None:
                a, b = sorted(rng.uniform(f[0], f[1], 2)) if rng.random() < 0.5 else f
                ent.add_horizontal(i, (i + a, i + b))
    for j in range(1, sigma.n):
        if rng.random() < 0.6:
            f = free_span(sigma.vertex(j), sigma.vertex(j + 1), pi.vertex(1), delta)
            if f is not None:
                a, b = sorted(rng.uniform(f[0], f[1], 2)) if rng.random() < 0.5 else f
                ent.add_vertical(j, (j + a, j + b))
    return ent


# ---------------------------------------------------------------------------
# Decomposition invariants


def decomposition_problems(curve: Curve, dec, radius: float, samples: int = 16) -> list[str]:
    """Every violated decomposition invariant, as readable messages."""
    from cpfrechet.curves import point_at, total_length

    problems = []
    A = dec.augmented.vertices
    parts = dec.parts
    if curve.n == 1:
        return [] if not parts and dec.augmented == curve else ["single vertex curve must have no parts"]
    if parts[0].start != 1 or parts[-1].end != dec.n:
        problems.append("parts do not span the augmented curve")
    for a, b in zip(parts, parts[1:]):
        if a.end != b.start:
            problems.append(f"gap or overlap between {a} and {b}")
    params = dec.params
    if np.any(np.diff(params) < 0):
        problems.append("augmented parameters decrease")
    if not set(range(1, curve.n + 1)) <= set(params.tolist()):
        problems.append("an original vertex is missing")
    scale = max(1.0, float(np.abs(curve.vertices).max()))
    for k, t in enumerate(params, start=1):
        if np.linalg.norm(point_at(curve, float(t)) - A[k - 1]) > 1e-12 * scale:
            problems.append(f"augmented vertex {k} is off the original curve")
    for k in dec.inserted:
        if float(params[k - 1]).is_integer():
            problems.append(f"inserted vertex {k} coincides with an original vertex")
    lam = np.linspace(0.0, 1.0, samples)[:, None]
    for s, part in enumerate(parts):
        start = A[part.start - 1]
        if not part.is_piece:
            if part.size != 2 or np.linalg.norm(A[part.end - 1] - start) < radius:
                problems.append(f"long part {part} is not a single segment of length >= radius")
            continue
        if s < len(parts) - 1 and abs(np.linalg.norm(A[part.end - 1] - start) - radius) > 1e-9:
            problems.append(f"interior piece {part} has chord {np.linalg.norm(A[part.end - 1] - start)}")
        seg = A[part.start - 1 : part.end]
        if len(seg) > 1:
            pts = (1 - lam[:, :, None]) * seg[None, :-1] + lam[:, :, None] * seg[None, 1:]
            far = float(np.linalg.norm(pts - start, axis=2).max())
            if far > radius + 1e-9:
                problems.append(f"piece {part} reaches {far} > radius")
    if len(parts) > 1 + total_length(curve) / radius + curve.n:
        problems.append(f"{len(parts)} parts exceed the count bound")
    return problems


# ---------------------------------------------------------------------------
# Range queries


QUERY_KINDS = ("min_index", "max_index", "min_height", "max_height")


def scan_query(values, kind: str, lo: float, hi: float, p: int, b: int, lo_open: bool, hi_open: bool) -> float:
    """Linear-scan answer with the same sentinel conventions as ``RangeIndex``."""
    hits = [
        (i, v)
        for i, v in enumerate(values, start=1)
        if p <= i <= b and (v > lo if lo_open else v >= lo) and (v < hi if hi_open else v <= hi)
    ]
    if not hits:
        return math.inf
    if kind == "min_index":
        return hits[0][0]
    if kind == "max_index":
        return hits[-1][0]
    if kind == "min_height":
        return min(v for _, v in hits)
    return max(v for _, v in hits)


def range_index_trial(rng: np.random.Generator, queries: int) -> tuple[int, list[str]]:
    """One random grid array, ``queries`` random queries of every kind on both implementations."""
    from cpfrechet import _fast
    from cpfrechet.onedim import RangeIndex

    grid = float(rng.choice([0.1, 0.25, 1 / 3, 1.0]))
    levels = int(rng.integers(1, 25))
    n = int(rng.choice([int(rng.integers(1, 40)), int(rng.integers(40, 400))]))
    units = rng.integers(-levels, levels + 1, n)
    values = [float(u) * grid for u in units]
    index = RangeIndex(values, grid)
    tree = _fast.build_tree(units.astype(np.int64))
    problems = []
    count = 0
    for _ in range(queries):
        kind = QUERY_KINDS[int(rng.integers(0, 4))]
        lo_u, hi_u = sorted(int(x) for x in rng.integers(-levels - 2, levels + 3, 2))
        lo_open, hi_open = bool(rng.random() < 0.5), bool(rng.random() < 0.5)
        lo, hi = lo_u * grid, hi_u * grid
        if rng.random() < 0.1:
            lo, lo_u, lo_open = -math.inf, -(1 << 40), False
        if rng.random() < 0.1:
            hi, hi_u, hi_open = math.inf, 1 << 40, False
        p = int(rng.integers(0, n + 2))
        b = int(rng.integers(p - 1, n + 3))
        expected = scan_query(values, kind, lo, hi, p, b, lo_open, hi_open)
        got = getattr(index, kind)(lo, hi, p, b, lo_open=lo_open, hi_open=hi_open)
        if got != expected:
            problems.append(f"python {kind}({lo}, {hi}, {p}, {b}, {lo_open}, {hi_open}) = {got}, scan {expected}")
        # Compiled tree: integer units, closed bounds, 0-based positions.
        clo = lo_u + 1 if lo_open else lo_u
        chi = hi_u - 1 if hi_open else hi_u
        raw = getattr(_fast, kind)(tree, clo, chi, p - 1, b - 1)
        if kind.endswith("index"):
            fast = math.inf if raw < 0 else raw + 1
        else:
            fast = math.inf if abs(raw) == _fast.BIG else raw * grid
        if not (fast == expected or (math.isfinite(fast) and abs(fast - expected) <= 1e-9 * max(1.0, abs(expected)))):
            problems.append(f"compiled {kind}({clo}, {chi}, {p - 1}, {b - 1}) = {raw}, scan {expected}")
        count += 1
    return count, problems
