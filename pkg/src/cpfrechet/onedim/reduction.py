"""From a pair of pieces to exit intervals, through separated 1D curves.

Pipeline for one piece pair:

1. :func:`project_pieces` moves the pieces apart if their start points are
   too close and projects every vertex onto the line through the two start
   points, producing curves separated by zero.
2. :func:`round_and_prepare` snaps values to an integer grid (pi down, sigma
   up), turns entry intervals into entry vertices, and clamps values that
   can never be free.
3. :func:`solve_region_pieces` queries the exact reduced solver, then runs a
   batched binary search on every sub-segment to locate the ends of the exit
   sets among the grid points, and maps the result back to parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..baseline import segment_span
from ..curves import Curve
from ..decomposition import piece_radius
from ..errors import ContractError, ParameterError
from ..reach import ReachFront, hull
from .exits import solve_reduced
from .greedy import Separated1D

__all__ = [
    "project_pieces",
    "grid_resolution",
    "SideVertices",
    "PreparedInstance",
    "round_and_prepare",
    "solve_region_pieces",
]

# Slack for the piece-radius precondition, relative to max(1, radius).
RADIUS_SLACK = 1e-9


# ---------------------------------------------------------------------------
# Projection


def project_pieces(
    piece_pi: Curve, piece_sigma: Curve, delta: float, epsilon: float, radius: Optional[float] = None
) -> Separated1D:
    """Separated 1D images of two pieces on the line through their start points."""
    if radius is None:
        radius = piece_radius(epsilon, delta)
    P = np.asarray(piece_pi.vertices, dtype=float)
    S = np.asarray(piece_sigma.vertices, dtype=float)
    limit = radius + RADIUS_SLACK * max(1.0, radius)
    for name, V in (("pi", P), ("sigma", S)):
        spread = float(np.max(np.linalg.norm(V - V[0], axis=1)))
        if spread > limit:
            raise ContractError(f"{name} piece leaves the ball of radius {radius} around its start ({spread})")
    gap = delta - 2.0 * radius
    offset = P[0] - S[0]
    dist = float(np.linalg.norm(offset))
    if dist > 0.0:
        unit = offset / dist
    else:
        unit = np.zeros(P.shape[1])
        unit[0] = 1.0
    if dist < gap:
        P = P + (S[0] + gap * unit - P[0])
    mid = 0.5 * (P[0] + S[0])
    pi_vals = np.maximum((P - mid) @ unit, 0.0)
    sigma_vals = np.minimum((S - mid) @ unit, 0.0)
    return Separated1D(tuple(pi_vals.tolist()), tuple(sigma_vals.tolist()), delta)


# ---------------------------------------------------------------------------
# Rounding and entry preparation


def grid_resolution(epsilon: float) -> int:
    """Number of grid steps per ``delta``: ``6 * ceil(1/epsilon)``."""
    if not 0.0 < epsilon <= 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    return 6 * math.ceil(1.0 / epsilon - 1e-9)


@dataclass
class SideVertices:
    """Vertices of one rounded curve: grid values, source parameters, entry flags."""

    values: list[int] = field(default_factory=list)
    params: list[float] = field(default_factory=list)
    entry: list[bool] = field(default_factory=list)

    def append(self, value: int, param: float, is_entry: bool = False) -> None:
        self.values.append(value)
        self.params.append(param)
        self.entry.append(is_entry)

    def entry_indices(self) -> list[int]:
        return [k + 1 for k, flag in enumerate(self.entry) if flag]


@dataclass
class PreparedInstance:
    rounded: Separated1D
    gamma: float
    units: int
    pi_side: SideVertices
    sigma_side: SideVertices

    @property
    def E(self) -> list[int]:
        return self.pi_side.entry_indices()

    @property
    def E_sigma(self) -> list[int]:
        return self.sigma_side.entry_indices()


def _leftmost_entry(u0: float, u1: float, lo: float, hi: float, bound: int) -> Optional[float]:
    """Smallest ``lam`` in ``[lo, hi]`` with ``u0 + lam (u1 - u0) <= bound``."""
    if u0 + lo * (u1 - u0) <= bound:
        return lo
    if u1 < u0 and u0 + hi * (u1 - u0) <= bound:
        return min(max((u0 - bound) / (u0 - u1), lo), hi)
    return None


def _prepare_side(units: list[float], entries: dict, bound: int, cap: int) -> SideVertices:
    """Round one curve down to the grid, add entry vertices, then clamp above ``cap``."""
    n = len(units)
    base = [math.floor(u) for u in units]
    entry_at_vertex = [False] * n
    inner: dict[int, tuple[float, int]] = {}
    for i, (a, b) in entries.items():
        if not 1 <= i < n:
            continue
        u0, u1 = units[i - 1], units[i]
        lam = _leftmost_entry(u0, u1, a - i, b - i, bound)
        if lam is None:
            continue
        if lam <= 0.0:
            entry_at_vertex[i - 1] = True
        elif lam >= 1.0:
            entry_at_vertex[i] = True
        else:
            inner[i] = (i + lam, min(math.floor(u0 + lam * (u1 - u0)), bound))
    # Each entry becomes an unseeded copy followed by a seeded copy, so that no
    # sub-segment ends in a vertex that is an exit merely because it is seeded.
    staged = SideVertices()
    for k in range(n):
        if entry_at_vertex[k]:
            staged.append(base[k], float(k + 1))
        staged.append(base[k], float(k + 1), entry_at_vertex[k])
        extra = inner.get(k + 1)
        if extra is not None:
            staged.append(extra[1], extra[0])
            staged.append(extra[1], extra[0], True)
    # Split every sub-segment that crosses the cap so clamping leaves the free part intact.
    side = SideVertices()
    for k, value in enumerate(staged.values):
        if k > 0:
            a, b = staged.values[k - 1], value
            if (a < cap < b) or (b < cap < a):
                ta, tb = staged.params[k - 1], staged.params[k]
                side.append(cap, ta + (tb - ta) * (cap - a) / (b - a))
        side.append(value, staged.params[k], staged.entry[k])
    side.values = [2 * cap if v > cap else v for v in side.values]
    return side


def round_and_prepare(sep: Separated1D, epsilon_hat: float, entries: ReachFront) -> PreparedInstance:
    """Round ``sep`` to the grid of step ``epsilon_hat * delta / 3`` and attach entries.

    ``entries.horizontal`` holds reachable intervals on pi's segments along the
    first sigma vertex, ``entries.vertical`` those on sigma's segments along the
    first pi vertex. Values of the returned instance are integer grid units;
    multiply by ``gamma`` to return to distances.
    """
    units_per_delta = 3.0 / epsilon_hat
    cap = round(units_per_delta)
    if cap < 1 or abs(units_per_delta - cap) > 1e-9 * units_per_delta:
        raise ParameterError("3 / epsilon_hat must be a positive integer")
    gamma = sep.delta / cap
    pi_units = [v / gamma for v in sep.pi]
    sigma_units = [-v / gamma for v in sep.sigma]
    first_pi = math.floor(pi_units[0])
    first_sigma = math.floor(sigma_units[0])
    pi_side = _prepare_side(pi_units, entries.horizontal, cap - first_sigma, cap)
    sigma_side = _prepare_side(sigma_units, entries.vertical, cap - first_pi, cap)
    rounded = Separated1D(tuple(pi_side.values), tuple(-v for v in sigma_side.values), cap, 1)
    return PreparedInstance(rounded, gamma, cap, pi_side, sigma_side)


# ---------------------------------------------------------------------------
# Batched binary search over grid points of each sub-segment


class _Part:
    """Grid points ``0..length`` between two consecutive rounded vertices.

    Exit status along a part is monotone: a prefix when values rise (lower
    values see more of the other curve) and a suffix when they fall. Seeded
    vertices only ever end zero-length parts, which are never searched.
    """

    __slots__ = ("k", "a", "b", "ta", "tb", "length", "ranges", "lo", "hi", "rising", "searching")

    def __init__(self, k: int, side: SideVertices, status: list[bool]):
        self.k = k
        self.a, self.b = side.values[k], side.values[k + 1]
        self.ta, self.tb = side.params[k], side.params[k + 1]
        self.length = max(abs(self.b - self.a), 1)
        self.rising = self.b > self.a
        self.searching = False
        self.lo = self.hi = 0
        left, right = status[k], status[k + 1]
        L = self.length
        ends = [(L, L)] if right else []
        if self.a == self.b:
            self.ranges = [(0, L)] if left else ends
        elif L == 1:
            self.ranges = ([(0, 0)] if left else []) + ends
        elif self.rising:
            if not left:
                self.ranges = ends
            elif right:
                self.ranges = [(0, L)]
            else:
                self.ranges = ends
                self.lo, self.hi, self.searching = 0, L, True
        else:
            if not right:
                self.ranges = []
            elif left:
                self.ranges = [(0, L)]
            else:
                self.ranges = []
                self.lo, self.hi, self.searching = 0, L, True

    def probe(self) -> tuple[int, int, float]:
        mid = (self.lo + self.hi) // 2
        sign = 1 if self.rising else -1
        return mid, self.a + sign * mid, self.ta + (self.tb - self.ta) * mid / self.length

    def record(self, mid: int, reachable: bool) -> None:
        if self.rising == reachable:
            self.lo = mid
        else:
            self.hi = mid
        if self.hi - self.lo <= 1:
            self.searching = False
            if self.rising:
                self.ranges.append((0, self.lo))
            else:
                self.ranges.append((self.hi, self.length))

    def spans(self):
        """Parameter spans of the exit ranges, widened by one grid point each way."""
        L = self.length
        for s, e in self.ranges:
            s, e = max(s - 1, 0), min(e + 1, L)
            lo = self.ta if s == 0 else self.ta + (self.tb - self.ta) * s / L
            hi = self.tb if e == L else self.ta + (self.tb - self.ta) * e / L
            yield lo, hi


def _augment(side: SideVertices, probes: dict[int, tuple[int, float]]) -> tuple[list[int], list[int], dict[int, int]]:
    """Insert one probe after base vertex ``k`` for every ``k`` in ``probes``."""
    values: list[int] = []
    entries: list[int] = []
    where: dict[int, int] = {}
    for k, value in enumerate(side.values):
        values.append(value)
        if side.entry[k]:
            entries.append(len(values))
        extra = probes.get(k)
        if extra is not None:
            values.append(extra[0])
            where[k] = len(values)
    return values, entries, where


def _segment_of(ta: float, tb: float, count: int) -> int:
    return min(int(math.floor(ta)), count - 1)


def solve_region_pieces(
    piece_pi: Curve, piece_sigma: Curve, delta: float, epsilon: float, entries: ReachFront
) -> ReachFront:
    """Exit intervals on the top and right boundary of a piece-pair region.

    ``entries`` are reachable intervals on the bottom edges (``horizontal``)
    and left edges (``vertical``) in the pieces' local parameters. Every
    returned point is reachable within ``(1 + epsilon) * delta``, and every
    point reachable within ``delta`` is returned.
    """
    exits = ReachFront()
    if not entries:
        return exits
    n, m = piece_pi.n, piece_sigma.n
    radius = piece_radius(epsilon, delta)
    sep = project_pieces(piece_pi, piece_sigma, delta, epsilon, radius)
    steps = grid_resolution(epsilon) // 6
    prep = round_and_prepare(sep, 1.0 / (2 * steps), entries)
    pi_side, sigma_side = prep.pi_side, prep.sigma_side

    base = solve_reduced(prep.rounded, prep.E, prep.E_sigma)
    pi_status = [False] * len(pi_side.values)
    for f in base.F_pi:
        pi_status[f - 1] = True
    sigma_status = [False] * len(sigma_side.values)
    for f in base.F_sigma:
        sigma_status[f - 1] = True

    pi_parts = [_Part(k, pi_side, pi_status) for k in range(len(pi_side.values) - 1)]
    sigma_parts = [_Part(k, sigma_side, sigma_status) for k in range(len(sigma_side.values) - 1)]

    while True:
        pi_probe = {p.k: p.probe() for p in pi_parts if p.searching}
        sigma_probe = {p.k: p.probe() for p in sigma_parts if p.searching}
        if not pi_probe and not sigma_probe:
            break
        pv, pe, pwhere = _augment(pi_side, {k: (v, t) for k, (_, v, t) in pi_probe.items()})
        sv, se, swhere = _augment(sigma_side, {k: (v, t) for k, (_, v, t) in sigma_probe.items()})
        result = solve_reduced(Separated1D(tuple(pv), tuple(-v for v in sv), prep.units, 1), pe, se)
        f_pi, f_sigma = set(result.F_pi), set(result.F_sigma)
        for k, (mid, _, _) in pi_probe.items():
            pi_parts[k].record(mid, pwhere[k] in f_pi)
        for k, (mid, _, _) in sigma_probe.items():
            sigma_parts[k].record(mid, swhere[k] in f_sigma)

    _collect(exits.horizontal, pi_parts, piece_pi, piece_sigma.vertices[-1], delta)
    _collect(exits.vertical, sigma_parts, piece_sigma, piece_pi.vertices[-1], delta)
    return exits


def _collect(store: dict, parts: list[_Part], curve: Curve, corner, delta: float) -> None:
    """Hull of the part spans per original segment, cut down to the segment's free interval."""
    count = curve.n
    for part in parts:
        i = _segment_of(part.ta, part.tb, count)
        for span in part.spans():
            store[i] = hull(store.get(i), span)
    V = curve.vertices.tolist()
    center = tuple(float(x) for x in corner)
    for i, (lo, hi) in list(store.items()):
        a, b = V[i - 1], V[i]
        direction = [y - x for x, y in zip(a, b)]
        free = segment_span(a, direction, sum(x * x for x in direction), center, delta * delta)
        if free is None:
            del store[i]
            continue
        lo, hi = max(lo - i, free[0]), min(hi - i, free[1])
        if lo <= hi:
            store[i] = (i + lo, i + hi)
        else:
            del store[i]
