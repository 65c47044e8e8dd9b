"""Split a curve into long segments and short-radius pieces."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .curves import Curve
from .errors import ParameterError

__all__ = ["PartKind", "Part", "Decomposition", "piece_radius", "decompose"]

# Cut points this close to an existing vertex reuse that vertex.
SNAP_TOL = 1e-12


def piece_radius(epsilon: float, delta: float) -> float:
    """Chord radius of a piece: ``min(sqrt(epsilon)/2, 1/4) * delta``."""
    if not (0.0 < epsilon <= 1.0):
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    if not (delta > 0.0) or math.isinf(delta):
        raise ParameterError(f"delta must be positive and finite, got {delta}")
    return min(0.5 * math.sqrt(epsilon), 0.25) * delta


class PartKind(enum.Enum):
    LONG = "long"
    PIECE = "piece"


@dataclass(frozen=True)
class Part:
    kind: PartKind
    start: int
    end: int

    @property
    def is_piece(self) -> bool:
        return self.kind is PartKind.PIECE

    @property
    def size(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class Decomposition:
    """Augmented curve, its tiling into parts, and the inserted vertex indices.

    ``params[k-1]`` is the parameter of augmented vertex ``k`` on the original
    curve, which lets callers translate between both index spaces.
    """

    augmented: Curve
    parts: tuple[Part, ...]
    inserted: frozenset[int]
    params: np.ndarray
    radius: float

    @property
    def n(self) -> int:
        return self.augmented.n

    def part_of_segment(self) -> np.ndarray:
        """Array mapping augmented segment ``i`` (index ``i-1``) to its part number."""
        owner = np.empty(max(self.n - 1, 0), dtype=np.int64)
        for s, part in enumerate(self.parts):
            owner[part.start - 1 : part.end - 1] = s
        return owner


def _exit_root(inside, outside, center, radius: float) -> float:
    """Parameter in (0, 1] where the segment ``inside -> outside`` leaves the ball."""
    d = [o - i for o, i in zip(outside, inside)]
    w = [i - c for i, c in zip(inside, center)]
    a = sum(x * x for x in d)
    b = 2.0 * sum(x * y for x, y in zip(d, w))
    c = sum(x * x for x in w) - radius * radius
    disc = max(b * b - 4.0 * a * c, 0.0)
    root = math.sqrt(disc)
    # c < 0, so the larger root is the unique positive one; use the cancellation-free form.
    if b <= 0.0:
        t = (-b + root) / (2.0 * a)
    else:
        t = (2.0 * c) / (-b - root)
    return min(max(t, 0.0), 1.0)


def decompose(curve: Curve, radius: float) -> Decomposition:
    """Greedy left-to-right decomposition with chord radius ``radius``."""
    if not radius > 0.0:
        raise ParameterError("radius must be positive")
    verts = [tuple(row) for row in curve.vertices.tolist()]
    n = len(verts)
    out = [verts[0]]
    params = [1.0]
    inserted: set[int] = set()
    parts: list[Part] = []
    k = 1  # next original vertex (0-based)
    cur = 0  # current augmented vertex (0-based)
    while k < n:
        here = out[cur]
        if math.dist(verts[k], here) >= radius:
            out.append(verts[k])
            params.append(float(k + 1))
            parts.append(Part(PartKind.LONG, cur + 1, cur + 2))
            cur += 1
            k += 1
            continue
        j = k
        while j < n and math.dist(verts[j], here) < radius:
            out.append(verts[j])
            params.append(float(j + 1))
            j += 1
        if j == n:
            parts.append(Part(PartKind.PIECE, cur + 1, len(out)))
            break
        prev = out[-1]
        t = _exit_root(prev, verts[j], here, radius)
        cut = tuple(p + t * (q - p) for p, q in zip(prev, verts[j]))
        if math.dist(cut, verts[j]) <= SNAP_TOL:
            out.append(verts[j])
            params.append(float(j + 1))
            k = j + 1
        elif math.dist(cut, prev) <= SNAP_TOL and len(out) - 1 > cur:
            # prev already sits on the sphere up to rounding; end the piece there.
            k = j
        else:
            out.append(cut)
            # prev may itself be a cut on the same original segment.
            base = params[-1]
            params.append(base + t * (float(j + 1) - base))
            inserted.add(len(out))
            k = j
        parts.append(Part(PartKind.PIECE, cur + 1, len(out)))
        cur = len(out) - 1
    return Decomposition(
        augmented=Curve(np.asarray(out, dtype=float).reshape(len(out), curve.dim)),
        parts=tuple(parts),
        inserted=frozenset(inserted),
        params=np.asarray(params),
        radius=radius,
    )
