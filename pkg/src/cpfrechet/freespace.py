"""Approximate decision procedure over the free-space diagram.

Both curves are cut into long segments and pieces. The parameter rectangle
``[1, n] x [1, m]`` is then tiled by regions: one region per pair of pieces,
and one unit cell for every other segment pair. Regions are visited part
block by part block (sigma parts outer, pi parts inner), and inside a block
of cells by the sum of upper-right coordinates. Only regions that receive a
nonempty entry interval are ever touched.
"""

from __future__ import annotations

import enum
import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .baseline import FreeSpaceCell, Interval, segment_span as _span
from .curves import Curve
from .decomposition import Decomposition, decompose, piece_radius
from ._fast import PIECE_TOO_WIDE, run_sweep
from .errors import ContractError, InputError, ParameterError
from .onedim.reduction import solve_region_pieces
from .reach import ReachFront, hull

__all__ = [
    "Verdict",
    "ComplexityStats",
    "WorkCounters",
    "DecisionOutcome",
    "RegionGraph",
    "solve_cell",
    "build_region_graph",
    "approximate_decide",
    "complexity_stats",
    "ReachFront",
]

log = logging.getLogger(__name__)


class Verdict(enum.Enum):
    GT_DELTA = "GT"
    LE_ONE_PLUS_EPS_DELTA = "LE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ComplexityStats:
    nonempty_boundary_cells: int
    piece_pair_size_sum: int

    @property
    def N(self) -> int:
        return self.nonempty_boundary_cells + self.piece_pair_size_sum


@dataclass
class WorkCounters:
    """What one sweep actually touched."""

    cells: int = 0
    piece_pairs: int = 0
    piece_pair_size_sum: int = 0

    @property
    def total(self) -> int:
        return self.cells + self.piece_pair_size_sum


@dataclass
class DecisionOutcome:
    verdict: Verdict
    work: WorkCounters
    stats: Optional[ComplexityStats] = None

    @property
    def is_le(self) -> bool:
        return self.verdict is Verdict.LE_ONE_PLUS_EPS_DELTA


# ---------------------------------------------------------------------------
# Single cells


def solve_cell(cell: FreeSpaceCell, bottom: Interval, left: Interval) -> tuple[Interval, Interval]:
    """Reachable parts of the top and right edges of one cell, in local ``[0, 1]`` coordinates.

    ``bottom`` and ``left`` are the reachable entry intervals (``None`` if
    empty); they must lie inside the cell's free boundary intervals.
    """
    top = right = None
    if cell.top is not None:
        if left is not None:
            top = cell.top
        elif bottom is not None and max(cell.top[0], bottom[0]) <= cell.top[1]:
            top = (max(cell.top[0], bottom[0]), cell.top[1])
    if cell.right is not None:
        if bottom is not None:
            right = cell.right
        elif left is not None and max(cell.right[0], left[0]) <= cell.right[1]:
            right = (max(cell.right[0], left[0]), cell.right[1])
    return top, right


# ---------------------------------------------------------------------------
# Region graph


@dataclass
class RegionGraph:
    """Lazy tiling of the parameter rectangle into piece-pair regions and cells.

    ``col_part[i-1]`` is the part number of pi's segment ``i`` and
    ``row_part[j-1]`` that of sigma's segment ``j``. Nodes are created on
    demand: ``('v', s, t)`` for a piece pair, ``('u', i, j)`` for a cell.

    Layers are keyed by ``(sigma part, pi part, x2 + y2)``. The corner sum
    alone is not a topological order: a cell above a wide piece pair can have
    a smaller sum than the pair that feeds it.
    """

    dec_pi: Decomposition
    dec_sigma: Decomposition
    col_part: list[int]
    row_part: list[int]
    col_piece: list[bool]
    row_piece: list[bool]
    layers: dict[tuple[int, int, int], dict[tuple, ReachFront]] = field(default_factory=dict)
    _queue: list = field(default_factory=list, repr=False)

    def node_of(self, i: int, j: int) -> tuple:
        s, t = self.col_part[i - 1], self.row_part[j - 1]
        if self.col_piece[s] and self.row_piece[t]:
            return ("v", s, t)
        return ("u", i, j)

    def rectangle(self, node: tuple) -> tuple[int, int, int, int]:
        if node[0] == "v":
            ps, pt = self.dec_pi.parts[node[1]], self.dec_sigma.parts[node[2]]
            return ps.start, ps.end, pt.start, pt.end
        _, i, j = node
        return i, i + 1, j, j + 1

    def key(self, node: tuple) -> tuple[int, int, int]:
        x1, x2, y1, y2 = self.rectangle(node)
        return self.row_part[y1 - 1], self.col_part[x1 - 1], x2 + y2

    def pop_layer(self) -> Optional[dict[tuple, ReachFront]]:
        """Remove and return the earliest layer, or ``None`` once all are done."""
        if not self._queue:
            return None
        return self.layers.pop(heapq.heappop(self._queue))

    def pending(self, node: tuple) -> ReachFront:
        key = self.key(node)
        layer = self.layers.get(key)
        if layer is None:
            layer = self.layers[key] = {}
            heapq.heappush(self._queue, key)
        front = layer.get(node)
        if front is None:
            front = layer[node] = ReachFront()
        return front


def build_region_graph(dec_pi: Decomposition, dec_sigma: Decomposition) -> RegionGraph:
    col = dec_pi.part_of_segment().tolist()
    row = dec_sigma.part_of_segment().tolist()
    return RegionGraph(
        dec_pi,
        dec_sigma,
        col,
        row,
        [p.is_piece for p in dec_pi.parts],
        [p.is_piece for p in dec_sigma.parts],
    )


# ---------------------------------------------------------------------------
# Decider


def _check_inputs(pi: Curve, sigma: Curve, delta: float, epsilon: float) -> None:
    if pi.dim != sigma.dim:
        raise InputError(f"dimension mismatch: {pi.dim} vs {sigma.dim}")
    if not (delta > 0.0) or math.isinf(delta):
        raise ParameterError(f"delta must be positive and finite, got {delta}")
    if not (0.0 < epsilon <= 1.0):
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")


ENGINES = ("fast", "reference")


def approximate_decide(
    pi: Curve, sigma: Curve, delta: float, epsilon: float, collect_stats: bool = False, engine: str = "fast"
) -> DecisionOutcome:
    """Returns GT only if the distance exceeds ``delta``, LE only if it is at most ``(1+epsilon) delta``.

    ``engine="fast"`` runs the compiled sweep; ``"reference"`` walks the same
    region graph in pure Python, layer by layer. Both give the same verdict
    up to floating-point ties.
    """
    _check_inputs(pi, sigma, delta, epsilon)
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    work = WorkCounters()
    stats = complexity_stats(pi, sigma, delta, epsilon) if collect_stats else None
    P0, S0 = pi.vertices, sigma.vertices
    if pi.n == 1 or sigma.n == 1:
        far = float(np.max(np.linalg.norm(P0[:, None, :] - S0[None, :, :], axis=2)))
        verdict = Verdict.LE_ONE_PLUS_EPS_DELTA if far <= delta else Verdict.GT_DELTA
        return DecisionOutcome(verdict, work, stats)
    if np.linalg.norm(P0[0] - S0[0]) > delta or np.linalg.norm(P0[-1] - S0[-1]) > delta:
        return DecisionOutcome(Verdict.GT_DELTA, work, stats)

    radius = piece_radius(epsilon, delta)
    dec_pi, dec_sigma = decompose(pi, radius), decompose(sigma, radius)
    if engine == "fast":
        reached, status, work.cells, work.piece_pairs, work.piece_pair_size_sum = run_sweep(
            dec_pi, dec_sigma, delta, epsilon, radius
        )
        if status == PIECE_TOO_WIDE:
            raise ContractError("a piece leaves the ball of its decomposition radius")
    else:
        graph = build_region_graph(dec_pi, dec_sigma)
        reached = _sweep(graph, delta, epsilon, work)
    verdict = Verdict.LE_ONE_PLUS_EPS_DELTA if reached else Verdict.GT_DELTA
    log.debug("decide delta=%g eps=%g verdict=%s work=%s", delta, epsilon, verdict, work)
    return DecisionOutcome(verdict, work, stats)


def _sweep(graph: RegionGraph, delta: float, epsilon: float, work: WorkCounters) -> bool:
    P = graph.dec_pi.augmented
    S = graph.dec_sigma.augmented
    n, m = P.n, S.n
    pv = [tuple(r) for r in P.vertices.tolist()]
    sv = [tuple(r) for r in S.vertices.tolist()]
    pdir = [tuple(b - a for a, b in zip(pv[k], pv[k + 1])) for k in range(n - 1)]
    sdir = [tuple(b - a for a, b in zip(sv[k], sv[k + 1])) for k in range(m - 1)]
    plen = [sum(x * x for x in d) for d in pdir]
    slen = [sum(x * x for x in d) for d in sdir]
    delta2 = delta * delta

    start = graph.pending(graph.node_of(1, 1))
    start.add_horizontal(1, (1.0, 1.0))
    start.add_vertical(1, (1.0, 1.0))

    final_top: Optional[tuple[float, float]] = None
    final_right: Optional[tuple[float, float]] = None
    while (layer := graph.pop_layer()) is not None:
        for node, entry in layer.items():
            if not entry:
                continue
            if node[0] == "u":
                _, i, j = node
                work.cells += 1
                b = entry.horizontal.get(i)
                l = entry.vertical.get(j)
                top = right = None
                tfree = _span(pv[i - 1], pdir[i - 1], plen[i - 1], sv[j], delta2)
                if tfree is not None:
                    if l is not None:
                        top = tfree
                    elif b is not None and max(tfree[0], b[0] - i) <= tfree[1]:
                        top = (max(tfree[0], b[0] - i), tfree[1])
                rfree = _span(sv[j - 1], sdir[j - 1], slen[j - 1], pv[i], delta2)
                if rfree is not None:
                    if b is not None:
                        right = rfree
                    elif l is not None and max(rfree[0], l[0] - j) <= rfree[1]:
                        right = (max(rfree[0], l[0] - j), rfree[1])
                if top is not None:
                    span = (i + top[0], i + top[1])
                    if j + 1 < m:
                        graph.pending(graph.node_of(i, j + 1)).add_horizontal(i, span)
                    elif i == n - 1:
                        final_top = hull(final_top, span)
                if right is not None:
                    span = (j + right[0], j + right[1])
                    if i + 1 < n:
                        graph.pending(graph.node_of(i + 1, j)).add_vertical(j, span)
                    elif j == m - 1:
                        final_right = hull(final_right, span)
            else:
                x1, x2, y1, y2 = graph.rectangle(node)
                work.piece_pairs += 1
                work.piece_pair_size_sum += (x2 - x1 + 1) + (y2 - y1 + 1)
                local = entry.shifted(1 - x1, 1 - y1)
                exits = solve_region_pieces(
                    P.subcurve(x1, x2), S.subcurve(y1, y2), delta, epsilon, local
                ).shifted(x1 - 1, y1 - 1)
                for i, span in exits.horizontal.items():
                    if y2 < m:
                        graph.pending(graph.node_of(i, y2)).add_horizontal(i, span)
                    elif i == n - 1:
                        final_top = hull(final_top, span)
                for j, span in exits.vertical.items():
                    if x2 < n:
                        graph.pending(graph.node_of(x2, j)).add_vertical(j, span)
                    elif j == m - 1:
                        final_right = hull(final_right, span)
    return (final_top is not None and final_top[1] >= n) or (final_right is not None and final_right[1] >= m)


# ---------------------------------------------------------------------------
# Complexity counter


def _segment_distances(a0, a1, b0, b1) -> np.ndarray:
    """Row-wise Euclidean distance between segments ``a0a1`` and ``b0b1``."""

    def point_seg(p, s0, s1):
        d = s1 - s0
        dd = np.einsum("ij,ij->i", d, d)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(dd > 0, np.einsum("ij,ij->i", p - s0, d) / dd, 0.0)
        t = np.clip(t, 0.0, 1.0)
        return np.linalg.norm(s0 + t[:, None] * d - p, axis=1)

    best = np.minimum.reduce(
        [point_seg(a0, b0, b1), point_seg(a1, b0, b1), point_seg(b0, a0, a1), point_seg(b1, a0, a1)]
    )
    u, v, w = a1 - a0, b1 - b0, a0 - b0
    a = np.einsum("ij,ij->i", u, u)
    b = np.einsum("ij,ij->i", u, v)
    c = np.einsum("ij,ij->i", v, v)
    d = np.einsum("ij,ij->i", u, w)
    e = np.einsum("ij,ij->i", v, w)
    den = a * c - b * b
    ok = den > 1e-15 * np.maximum(a * c, 1e-300)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(ok, (b * e - c * d) / den, -1.0)
        t = np.where(ok, (a * e - b * d) / den, -1.0)
    inside = ok & (s >= 0) & (s <= 1) & (t >= 0) & (t <= 1)
    if np.any(inside):
        gap = np.linalg.norm(w + s[:, None] * u - t[:, None] * v, axis=1)
        best = np.where(inside, np.minimum(best, gap), best)
    return best


def _subballs(V: np.ndarray, step: float) -> tuple[np.ndarray, np.ndarray]:
    """Centers covering each segment with balls of radius ``step/2``, plus their segment ids."""
    seg = V[1:] - V[:-1]
    length = np.linalg.norm(seg, axis=1)
    count = np.maximum(np.ceil(length / step).astype(np.int64), 1)
    owner = np.repeat(np.arange(len(seg)), count)
    first = np.concatenate([[0], np.cumsum(count)[:-1]])
    local = np.arange(owner.size) - first[owner]
    frac = (local + 0.5) / count[owner]
    centers = V[:-1][owner] + frac[:, None] * seg[owner]
    return centers, owner


def complexity_stats(pi: Curve, sigma: Curve, delta: float, epsilon: float) -> ComplexityStats:
    """Size of the free-space outside piece pairs plus the total size of nearby piece pairs.

    A cell counts when it is nonempty at ``(1+epsilon) delta`` and at least one
    of its two segments is long. A piece pair counts when its start points are
    within ``(1+epsilon) delta + 2 radius``, contributing both piece sizes.
    """
    _check_inputs(pi, sigma, delta, epsilon)
    radius = piece_radius(epsilon, delta)
    reach = (1.0 + epsilon) * delta
    dec_pi, dec_sigma = decompose(pi, radius), decompose(sigma, radius)
    P, S = dec_pi.augmented.vertices, dec_sigma.augmented.vertices

    cells = 0
    if len(P) >= 2 and len(S) >= 2:
        step = max(delta, 1e-300)
        pc, po = _subballs(P, step)
        sc, so = _subballs(S, step)
        tree_s = cKDTree(sc)
        hits = tree_s.query_ball_point(pc, reach + step)
        rows = np.repeat(po, [len(h) for h in hits])
        cols = so[np.concatenate([np.asarray(h, dtype=np.int64) for h in hits])] if rows.size else np.zeros(0, np.int64)
        if rows.size:
            pairs = np.unique(rows * np.int64(len(S)) + cols)
            ii, jj = pairs // len(S), pairs % len(S)
            col_piece = np.array([p.is_piece for p in dec_pi.parts])[dec_pi.part_of_segment()]
            row_piece = np.array([p.is_piece for p in dec_sigma.parts])[dec_sigma.part_of_segment()]
            keep = ~(col_piece[ii] & row_piece[jj])
            ii, jj = ii[keep], jj[keep]
            if ii.size:
                dist = _segment_distances(P[ii], P[ii + 1], S[jj], S[jj + 1])
                cells = int(np.count_nonzero(dist <= reach))

    size_sum = 0
    pieces_pi = [p for p in dec_pi.parts if p.is_piece]
    pieces_sigma = [p for p in dec_sigma.parts if p.is_piece]
    if pieces_pi and pieces_sigma:
        starts_pi = P[[p.start - 1 for p in pieces_pi]]
        starts_sigma = S[[p.start - 1 for p in pieces_sigma]]
        size_pi = np.array([p.size for p in pieces_pi])
        size_sigma = np.array([p.size for p in pieces_sigma])
        tree = cKDTree(starts_sigma)
        near = tree.query_ball_point(starts_pi, reach + 2.0 * radius)
        for s, hits in enumerate(near):
            if hits:
                size_sum += int(len(hits) * size_pi[s] + size_sigma[hits].sum())
    return ComplexityStats(cells, size_sum)
