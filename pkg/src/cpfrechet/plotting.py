"""SVG rendering of the free-space diagram."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .baseline import reachable_boundaries
from .curves import Curve
from .decomposition import decompose, piece_radius

__all__ = ["PlotConfig", "free_fractions", "render_freespace_svg"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlotConfig:
    cell_px: float = 24.0
    samples: int = 12
    max_elements: int = 250_000
    free_color: str = "#3b7dd8"
    piece_color: str = "#e08a00"
    reach_color: str = "#d62728"
    margin: float = 10.0


def _along(V: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Points at 1-based parameters ``t`` of the polyline ``V``."""
    k = np.clip(np.floor(t).astype(np.int64), 1, len(V) - 1)
    lam = (t - k)[..., None]
    return (1.0 - lam) * V[k - 1] + lam * V[k]


def free_fractions(
    pi: Curve, sigma: Curve, delta: float, samples: int = 12, block: int = 1, chunk: int = 4096
) -> np.ndarray:
    """Free fraction of each ``block x block`` group of cells, sampled on a midpoint grid.

    With ``block=1`` the result has shape ``(n-1, m-1)``, one entry per cell.
    """
    P, S = pi.vertices, sigma.vertices
    n, m = pi.n, sigma.n
    cols = -(-(n - 1) // block) if n > 1 else 0
    rows = -(-(m - 1) // block) if m > 1 else 0
    out = np.zeros((cols, rows))
    if cols == 0 or rows == 0:
        return out
    u = (np.arange(samples) + 0.5) / samples
    x0 = 1.0 + block * np.arange(cols)
    xw = np.minimum(block, (n - 1) - block * np.arange(cols))
    y0 = 1.0 + block * np.arange(rows)
    yw = np.minimum(block, (m - 1) - block * np.arange(rows))
    along_pi = _along(P, x0[:, None] + u[None, :] * xw[:, None])
    along_sigma = _along(S, y0[:, None] + u[None, :] * yw[:, None])
    ii, jj = np.meshgrid(np.arange(cols), np.arange(rows), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    frac = np.empty(ii.size)
    for start in range(0, ii.size, chunk):
        a, b = ii[start : start + chunk], jj[start : start + chunk]
        gap = along_pi[a][:, :, None, :] - along_sigma[b][:, None, :, :]
        inside = np.einsum("kstd,kstd->kst", gap, gap) <= delta * delta
        frac[start : start + chunk] = inside.mean(axis=(1, 2))
    out[ii, jj] = frac
    return out


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_freespace_svg(
    pi: Curve, sigma: Curve, delta: float, epsilon: float = 1.0, config: PlotConfig | None = None
) -> str:
    """The diagram at ``delta``: shaded cells, outlined piece pairs, exact reachable edges.

    pi runs along the horizontal axis and sigma upwards. When the element
    count would pass ``config.max_elements``, cells are merged into square
    blocks (shaded by their mean free fraction) and reachable edges are
    dropped if still necessary; both cases are logged as warnings.
    """
    cfg = config or PlotConfig()
    n, m = pi.n, sigma.n
    cols, rows = max(n - 1, 1), max(m - 1, 1)
    cells = (n - 1) * (m - 1)

    radius = piece_radius(epsilon, delta)
    dec_pi, dec_sigma = decompose(pi, radius), decompose(sigma, radius)
    pieces_pi = [p for p in dec_pi.parts if p.is_piece]
    pieces_sigma = [p for p in dec_sigma.parts if p.is_piece]
    rects = len(pieces_pi) * len(pieces_sigma)
    if cells <= cfg.max_elements:
        horizontal, vertical = reachable_boundaries(pi, sigma, delta)
    else:
        log.warning("free-space plot: %d cells exceed the element cap, reachable edges omitted", cells)
        horizontal, vertical = {}, {}
    reach_count = len(horizontal) + len(vertical)

    block = 1
    if cells > max(cfg.max_elements - rects - reach_count, 1):
        block = math.ceil(math.sqrt(cells / max(cfg.max_elements // 2, 1)))
        log.warning("free-space plot downsampled: %d cells merged in %dx%d blocks", cells, block, block)
    fractions = free_fractions(pi, sigma, delta, cfg.samples, block)
    if fractions.size + rects + reach_count > cfg.max_elements:
        log.warning("free-space plot: dropping %d reachable-edge marks to stay under the element cap", reach_count)
        horizontal, vertical = {}, {}
    if fractions.size + rects > cfg.max_elements:
        log.warning("free-space plot: dropping %d piece-pair outlines to stay under the element cap", rects)
        pieces_pi, pieces_sigma = [], []

    def original(dec, k: int) -> float:
        return float(dec.params[k - 1])

    px = cfg.cell_px
    width = cols * px + 2 * cfg.margin
    height = rows * px + 2 * cfg.margin

    def X(t: float) -> float:
        return cfg.margin + (t - 1.0) * px

    def Y(t: float) -> float:
        return cfg.margin + (rows - (t - 1.0)) * px

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="{_fmt(cfg.margin)}" y="{_fmt(cfg.margin)}" width="{_fmt(cols * px)}" '
        f'height="{_fmt(rows * px)}" fill="white" stroke="black" stroke-width="1"/>',
        f'<g fill="{cfg.free_color}" stroke="none">',
    ]
    for a in range(fractions.shape[0]):
        for b in range(fractions.shape[1]):
            f = float(fractions[a, b])
            if f > 0.0:
                bi, bj = a * block, b * block
                w = min(block, n - 1 - bi)
                h = min(block, m - 1 - bj)
                out.append(
                    f'<rect x="{_fmt(X(bi + 1))}" y="{_fmt(Y(bj + 1 + h))}" width="{_fmt(w * px)}" '
                    f'height="{_fmt(h * px)}" fill-opacity="{f:.3f}"/>'
                )
    out.append("</g>")
    out.append(f'<g fill="none" stroke="{cfg.piece_color}" stroke-width="1.5">')
    for a in pieces_pi:
        x1, x2 = original(dec_pi, a.start), original(dec_pi, a.end)
        for b in pieces_sigma:
            y1, y2 = original(dec_sigma, b.start), original(dec_sigma, b.end)
            out.append(
                f'<rect x="{_fmt(X(x1))}" y="{_fmt(Y(y2))}" width="{_fmt((x2 - x1) * px)}" '
                f'height="{_fmt((y2 - y1) * px)}"/>'
            )
    out.append("</g>")
    out.append(f'<g stroke="{cfg.reach_color}" stroke-width="2.5" stroke-linecap="round">')
    for (i, j), (lo, hi) in sorted(horizontal.items()):
        out.append(
            f'<line x1="{_fmt(X(i + lo))}" y1="{_fmt(Y(j))}" x2="{_fmt(X(i + hi))}" y2="{_fmt(Y(j))}"/>'
        )
    for (i, j), (lo, hi) in sorted(vertical.items()):
        out.append(
            f'<line x1="{_fmt(X(i))}" y1="{_fmt(Y(j + lo))}" x2="{_fmt(X(i))}" y2="{_fmt(Y(j + hi))}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
