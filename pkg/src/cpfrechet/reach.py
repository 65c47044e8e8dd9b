"""Reachable intervals on the boundary edges of a free-space region."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["ReachFront", "hull"]

Span = tuple[float, float]


def hull(a: Span | None, b: Span | None) -> Span | None:
    if a is None:
        return b
    if b is None:
        return a
    return (min(a[0], b[0]), max(a[1], b[1]))


@dataclass
class ReachFront:
    """Closed intervals on horizontal and vertical boundary edges.

    ``horizontal[i]`` lies in ``[i, i+1]`` (pi parameter) and ``vertical[j]``
    in ``[j, j+1]`` (sigma parameter). Empty intervals are simply absent.
    Which boundary (lower/left or upper/right) is meant depends on context.
    """

    horizontal: dict[int, Span] = field(default_factory=dict)
    vertical: dict[int, Span] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.horizontal) or bool(self.vertical)

    def add_horizontal(self, i: int, span: Span | None) -> None:
        if span is not None and span[0] <= span[1]:
            self.horizontal[i] = hull(self.horizontal.get(i), span)

    def add_vertical(self, j: int, span: Span | None) -> None:
        if span is not None and span[0] <= span[1]:
            self.vertical[j] = hull(self.vertical.get(j), span)

    def shifted(self, di: int, dj: int) -> "ReachFront":
        """Re-index by integer offsets on both parameters."""
        return ReachFront(
            {i + di: (a + di, b + di) for i, (a, b) in self.horizontal.items()},
            {j + dj: (a + dj, b + dj) for j, (a, b) in self.vertical.items()},
        )
