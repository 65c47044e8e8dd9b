"""(1+eps)-approximation of the Fréchet distance from the approximate decider."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .baseline import endpoint_lower_bound
from .curves import Curve
from .errors import InputError, ParameterError
from .freespace import approximate_decide

__all__ = ["ApproxResult", "approximate_frechet", "ZERO_SCALE"]

# A distance this small relative to the coordinate scale is reported as zero.
ZERO_SCALE = 1e-30


@dataclass
class ApproxResult:
    """``lower <= d_F <= upper``; ``value`` equals ``upper``.

    ``evidence`` lists every decider call as ``(delta, epsilon, verdict)``.
    """

    value: float
    lower: float
    upper: float
    decider_calls: int
    evidence: list = field(default_factory=list, repr=False)

    def line(self) -> str:
        return f"{self.value!r} {self.lower!r} {self.upper!r} {self.decider_calls}"


def approximate_frechet(pi: Curve, sigma: Curve, epsilon: float) -> ApproxResult:
    if pi.dim != sigma.dim:
        raise InputError(f"dimension mismatch: {pi.dim} vs {sigma.dim}")
    if not (0.0 < epsilon <= 1.0):
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    evidence: list = []

    def le(delta: float, eps: float) -> bool:
        verdict = approximate_decide(pi, sigma, delta, eps).is_le
        evidence.append((delta, eps, "LE" if verdict else "GT"))
        return verdict

    lower = endpoint_lower_bound(pi, sigma)
    if lower == 0.0:
        scale = max(float(np.max(np.abs(pi.vertices))), float(np.max(np.abs(sigma.vertices))))
        if scale == 0.0 or le(ZERO_SCALE * scale, 1.0):
            return ApproxResult(0.0, 0.0, 0.0, len(evidence), evidence)
        floor = ZERO_SCALE * scale
        extent = float(np.ptp(np.concatenate([pi.vertices, sigma.vertices]), axis=0).max())
        start = max(1e-3 * extent, floor)
    else:
        floor = lower
        start = lower

    # Bracketing with the coarse decider: LE at delta gives d_F <= 2 delta.
    delta = start
    if le(delta, 1.0):
        hi = 2.0 * delta
        lo = floor
        while delta / 2.0 > floor:
            delta /= 2.0
            if le(delta, 1.0):
                hi = 2.0 * delta
            else:
                lo = delta
                break
        lo = max(lo, floor)
    else:
        while True:
            lo = delta
            delta *= 2.0
            if le(delta, 1.0):
                hi = 2.0 * delta
                break

    # Refinement: each call at eps/3 either raises lo to mid or lowers hi to (1+eps/3) mid.
    fine = epsilon / 3.0
    while hi > (1.0 + epsilon) * lo:
        mid = math.sqrt(lo * hi)
        if le(mid, fine):
            hi = min(hi, (1.0 + fine) * mid)
        else:
            lo = mid
    return ApproxResult(hi, lo, hi, len(evidence), evidence)
