"""Polygonal curves, their parameterization, file I/O, packedness and generators.

A curve with ``n`` vertices is parameterized over ``[1, n]``: integer
parameters hit vertices exactly and fractional parameters interpolate
linearly on the containing segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import GenerationError, InputError, ParameterError

__all__ = [
    "Curve",
    "Witness",
    "point_at",
    "total_length",
    "packedness_estimate",
    "gen_cpacked",
    "GeneratorConfig",
    "read_curve",
    "write_curve",
    "parse_curve_text",
]


@dataclass(frozen=True, eq=False)
class Curve:
    """Immutable polyline in R^d; ``vertices`` has shape ``(n, d)``."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.vertices, dtype=float, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InputError(f"a curve needs at least one vertex of dimension >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("curve coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "vertices", arr)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "Curve":
        return cls(np.asarray([tuple(p) for p in points], dtype=float))

    @property
    def n(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def dim(self) -> int:
        return int(self.vertices.shape[1])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Curve):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and bool(np.array_equal(self.vertices, other.vertices))

    def __hash__(self) -> int:
        return hash((self.vertices.shape, self.vertices.tobytes()))

    def __repr__(self) -> str:
        return f"Curve(n={self.n}, dim={self.dim})"

    def vertex(self, k: int) -> np.ndarray:
        """Vertex with 1-based index ``k``."""
        return self.vertices[k - 1]

    def segment_lengths(self) -> np.ndarray:
        if self.n < 2:
            return np.zeros(0)
        return np.linalg.norm(np.diff(self.vertices, axis=0), axis=1)

    def subcurve(self, start: int, end: int) -> "Curve":
        """Vertices ``start..end`` (1-based, inclusive)."""
        if not 1 <= start <= end <= self.n:
            raise ParameterError(f"invalid vertex range [{start}, {end}] for n={self.n}")
        return Curve(self.vertices[start - 1 : end])

    def translated(self, offset: Sequence[float]) -> "Curve":
        return Curve(self.vertices + np.asarray(offset, dtype=float))


@dataclass(frozen=True)
class Witness:
    """Monotone unit-step coupling of vertex indices, from (1, 1) to (n, m)."""

    steps: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.steps or self.steps[0] != (1, 1):
            raise InputError("a witness starts at (1, 1)")
        for (p0, q0), (p1, q1) in zip(self.steps, self.steps[1:]):
            dp, dq = p1 - p0, q1 - q0
            if dp not in (0, 1) or dq not in (0, 1) or dp + dq == 0:
                raise InputError(f"witness step {(p0, q0)} -> {(p1, q1)} is not a unit monotone step")

    def width(self, pi: Curve, sigma: Curve) -> float:
        return max(float(np.linalg.norm(pi.vertex(p) - sigma.vertex(q))) for p, q in self.steps)


def point_at(curve: Curve, t: float) -> np.ndarray:
    """Point of ``curve`` at continuous parameter ``t`` in ``[1, n]``."""
    n = curve.n
    if not (1.0 <= t <= n) or math.isnan(t):
        raise ParameterError(f"parameter t={t} outside [1, {n}]")
    base = int(math.floor(t))
    if base >= n:
        return curve.vertices[n - 1].copy()
    lam = t - base
    if lam == 0.0:
        return curve.vertices[base - 1].copy()
    a = curve.vertices[base - 1]
    b = curve.vertices[base]
    return (1.0 - lam) * a + lam * b


def total_length(curve: Curve) -> float:
    return float(curve.segment_lengths().sum())


# ---------------------------------------------------------------------------
# File format: one vertex per line, whitespace separated, '#' comments.


def parse_curve_text(text: str, source: str = "<string>") -> Curve:
    rows: list[list[float]] = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError as exc:
            raise InputError(f"{source}:{lineno}: cannot parse coordinates: {exc}") from None
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise InputError(f"{source}:{lineno}: expected {dim} coordinates, found {len(row)}")
        if not all(math.isfinite(v) for v in row):
            raise InputError(f"{source}:{lineno}: non-finite coordinate")
        rows.append(row)
    if not rows:
        raise InputError(f"{source}: no vertices found")
    return Curve(np.asarray(rows, dtype=float))


def read_curve(path: str | Path) -> Curve:
    path = Path(path)
    text = path.read_text(encoding="ascii")
    return parse_curve_text(text, source=str(path))


def write_curve(curve: Curve, path: str | Path, header: str | None = None) -> None:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(" ".join(repr(float(v)) for v in row) for row in curve.vertices)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


# ---------------------------------------------------------------------------
# Packedness


def _clipped_lengths(centers: np.ndarray, starts: np.ndarray, dirs: np.ndarray, radius: float) -> np.ndarray:
    """Total curve length inside the ball of ``radius`` around each center."""
    a = np.einsum("ij,ij->i", dirs, dirs)
    # |s + t d - z|^2 = a t^2 + b t + c, expanded to stay in matrix products.
    zd = centers @ dirs.T
    sd = np.einsum("ij,ij->i", starts, dirs)
    b = 2.0 * (sd[None, :] - zd)
    ss = np.einsum("ij,ij->i", starts, starts)
    zz = np.einsum("ij,ij->i", centers, centers)
    c = ss[None, :] - 2.0 * (centers @ starts.T) + zz[:, None] - radius * radius
    disc = b * b - 4.0 * a[None, :] * c
    ok = (disc > 0.0) & (a[None, :] > 0.0)
    root = np.sqrt(np.where(ok, disc, 0.0))
    denom = np.where(a > 0.0, 2.0 * a, 1.0)[None, :]
    t1 = np.clip((-b - root) / denom, 0.0, 1.0)
    t2 = np.clip((-b + root) / denom, 0.0, 1.0)
    seg = np.sqrt(a)[None, :] * np.maximum(t2 - t1, 0.0)
    return np.where(ok, seg, 0.0).sum(axis=1)


def _candidate_radii(vertices: np.ndarray, resolution: int, max_pairs: int = 2_000_000) -> np.ndarray:
    n = vertices.shape[0]
    if n * (n - 1) // 2 <= max_pairs:
        iu, ju = np.triu_indices(n, k=1)
    else:
        rng = np.random.default_rng(0)
        iu = rng.integers(0, n, size=max_pairs)
        ju = rng.integers(0, n, size=max_pairs)
    dist = np.linalg.norm(vertices[iu] - vertices[ju], axis=1)
    radii = np.unique(np.concatenate([dist, 0.5 * dist]))
    radii = radii[radii > 0.0]
    if radii.size > resolution:
        # Geometric spacing so that every length scale gets candidates.
        targets = np.geomspace(radii[0], radii[-1], resolution)
        picks = np.clip(np.searchsorted(radii, targets), 0, radii.size - 1)
        radii = np.unique(radii[picks])
    return radii


def packedness_estimate(curve: Curve, resolution: int = 24, max_centers: int | None = 4096) -> float:
    """Lower bound on the packedness constant of ``curve``.

    Maximizes (length inside ball) / radius over ball centers at vertices and
    segment midpoints and over radii drawn from the pairwise vertex distances
    and their halves, thinned to ``resolution`` values. The clipped length is
    exact per ball. ``max_centers`` thins the center set evenly on long curves;
    any thinning keeps the result a lower bound.
    """
    if resolution < 1:
        raise ParameterError("resolution must be a positive integer")
    if curve.n < 2:
        raise InputError("packedness needs at least two vertices")
    V = curve.vertices
    starts = V[:-1]
    dirs = V[1:] - V[:-1]
    centers = np.concatenate([V, 0.5 * (V[:-1] + V[1:])])
    if max_centers is not None and centers.shape[0] > max_centers:
        centers = centers[np.round(np.linspace(0, centers.shape[0] - 1, max_centers)).astype(int)]
    radii = _candidate_radii(V, resolution)
    if radii.size == 0:
        return 0.0
    nseg = starts.shape[0]
    chunk = max(1, 2_000_000 // max(nseg, 1))
    best = 0.0
    for r in radii:
        for lo in range(0, centers.shape[0], chunk):
            lengths = _clipped_lengths(centers[lo : lo + chunk], starts, dirs, float(r))
            best = max(best, float(lengths.max()) / float(r))
    return best


# ---------------------------------------------------------------------------
# c-packed generator


@dataclass(frozen=True)
class GeneratorConfig:
    """Shape parameters of the c-packed generator (units: arc step ~ 1)."""

    arc_vertices: tuple[int, int] = (8, 24)
    arc_step: tuple[float, float] = (0.1, 1.0)
    turn_rate: float = 0.08
    max_heading: float = 0.4
    amplitude: float = 4.0
    stroke_spacing: tuple[float, float] = (0.03, 0.4)
    pass_shift: float = 0.05
    bundle_gap: float = 3.0
    max_shift: float = 1.6
    verify_window: int = 1200
    verify_resolution: int = 24
    max_attempts: int = 12


def _log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def _build_cpacked(n: int, passes: int, amplitude: float, pass_shift: float, seed: int, cfg: GeneratorConfig) -> np.ndarray:
    rng = np.random.default_rng(seed)
    pts: list[tuple[float, float]] = [(0.0, 0.0)]
    x, y, heading = 0.0, 0.0, 0.0
    while len(pts) < n:
        # Arc: gently turning walk that keeps progressing along +x.
        count = int(rng.integers(cfg.arc_vertices[0], cfg.arc_vertices[1] + 1))
        rate = rng.uniform(-cfg.turn_rate, cfg.turn_rate)
        step = _log_uniform(rng, *cfg.arc_step)
        if passes >= 2:
            # Keep neighbouring stroke bundles from overlapping.
            count = max(count, int(math.ceil(cfg.bundle_gap * amplitude / step)))
        for _ in range(count):
            heading = min(cfg.max_heading, max(-cfg.max_heading, heading + rate))
            x += step * math.cos(heading)
            y += step * math.sin(heading)
            pts.append((x, y))
        if passes < 2 or len(pts) >= n:
            continue
        # Oscillation: doubled-back strokes roughly across the heading.
        side = 1.0 if rng.random() < 0.5 else -1.0
        angle = heading + side * rng.uniform(math.pi / 3, 2 * math.pi / 3)
        ux, uy = math.cos(angle), math.sin(angle)
        hx, hy = math.cos(heading), math.sin(heading)
        length = amplitude * rng.uniform(0.7, 1.3)
        spacing = _log_uniform(rng, *cfg.stroke_spacing)
        per_pass = max(2, int(math.ceil(length / spacing)))
        shift = pass_shift * length
        bx, by = x, y
        for k in range(passes):
            forward = k % 2 == 0
            ox, oy = bx + k * shift * hx, by + k * shift * hy
            for s in range(1, per_pass + 1):
                frac = s / per_pass if forward else 1.0 - s / per_pass
                pts.append((ox + frac * length * ux, oy + frac * length * uy))
        x, y = pts[-1]
    return np.asarray(pts[:n], dtype=float)


def gen_cpacked(c_target: float, n: int, seed: int, config: GeneratorConfig | None = None) -> Curve:
    """Deterministic 2D curve with ``n`` vertices and packedness near ``c_target``.

    The curve alternates turning arcs with bundles of doubled-back strokes;
    the number of strokes per bundle controls the local density. The result is
    checked with :func:`packedness_estimate` on a prefix window; the spacing
    between passes, then the pass count, is adjusted until the estimate lies
    in ``[c/2, c + 0.5]``.
    """
    cfg = config or GeneratorConfig()
    if not c_target >= 2.0:
        raise ParameterError("c_target must be at least 2")
    if n < 1:
        raise ParameterError("n must be positive")
    passes = max(1, int(math.floor(c_target / 2.0)))
    shift = cfg.pass_shift
    lo, hi = c_target / 2.0, c_target + 0.5
    last = float("nan")
    for _ in range(cfg.max_attempts):
        pts = _build_cpacked(n, passes, cfg.amplitude, shift, seed, cfg)
        if n < 2:
            return Curve(pts)
        window = Curve(pts[: min(n, cfg.verify_window)])
        last = packedness_estimate(window, cfg.verify_resolution)
        if lo <= last <= hi:
            return Curve(pts)
        if last > hi:
            # Spreading the passes apart lowers density smoothly; dropping a pass is coarse.
            if shift < cfg.max_shift:
                shift *= 2.0
            elif passes > 1:
                passes -= 1
                shift = cfg.pass_shift
            else:
                break
        else:
            passes += 1
            shift = cfg.pass_shift
    raise GenerationError(f"could not reach packedness in [{lo}, {hi}] (last estimate {last:.3f})")
