"""Upper envelopes of lines t -> s*t + c and the 1-D problems built on them.

Lines are ``(slope, intercept)`` pairs. Arithmetic is whatever the scalars
support, so Fractions give exact breakpoints and roots.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass


class UnboundedBelow(ArithmeticError):
    """The univariate max of lines has no minimizer."""


def _cross(l1, l2):
    # t where l1 and l2 meet; slopes must differ
    return (l1[1] - l2[1]) / (l2[0] - l1[0])


@dataclass(frozen=True)
class Envelope:
    """max_k (s_k t + c_k) as lines sorted by slope with increasing breakpoints.

    ``lines[k]`` is the maximum on ``[breaks[k-1], breaks[k]]``.
    """

    lines: tuple
    breaks: tuple

    def active(self, t) -> tuple:
        return self.lines[bisect_left(self.breaks, t)]

    def __call__(self, t):
        s, c = self.active(t)
        return s * t + c


def upper_envelope(lines) -> Envelope:
    """Convex-hull-trick construction; dominated lines are dropped."""
    lines = sorted(lines)
    if not lines:
        raise ValueError("envelope of no lines")
    hull = []
    for line in lines:
        if hull and hull[-1][0] == line[0]:
            # same slope; sorted order puts the larger intercept last
            hull.pop()
        while len(hull) >= 2 and _cross(hull[-2], line) <= _cross(hull[-2], hull[-1]):
            hull.pop()
        hull.append(line)
    breaks = tuple(_cross(hull[k], hull[k + 1]) for k in range(len(hull) - 1))
    return Envelope(tuple(hull), breaks)


def crossing(decreasing, increasing):
    """Unique t with max(decreasing lines)(t) == max(increasing lines)(t).

    All slopes in ``decreasing`` must be negative and all in ``increasing``
    positive, so the difference of the two envelopes is strictly decreasing.
    The merged breakpoints are scanned for the sign change of that difference
    and the two active lines on the bracketing piece are intersected.
    """
    if not decreasing or not increasing:
        raise ValueError("need at least one line of each slope sign")
    if any(s >= 0 for s, _ in decreasing) or any(s <= 0 for s, _ in increasing):
        raise ValueError("slope signs do not match the families")
    left = upper_envelope(decreasing)
    right = upper_envelope(increasing)
    merged = sorted(set(left.breaks) | set(right.breaks))

    def gap(t):
        return left(t) - right(t)

    # first breakpoint where the gap is no longer positive
    lo, hi = 0, len(merged)
    while lo < hi:
        mid = (lo + hi) // 2
        if gap(merged[mid]) <= 0:
            hi = mid
        else:
            lo = mid + 1
    k = lo
    if k < len(merged) and gap(merged[k]) == 0:
        return merged[k]
    if not merged:
        probe = 0
    elif k == 0:
        probe = merged[0] - 1
    elif k == len(merged):
        probe = merged[-1] + 1
    else:
        probe = (merged[k - 1] + merged[k]) / 2
    sl, cl = left.active(probe)
    sr, cr = right.active(probe)
    return (cr - cl) / (sl - sr)


def argmin_interval(lines):
    """Minimizer set ``(lo, hi)`` of max of lines; ``None`` marks an infinite end.

    Raises :class:`UnboundedBelow` when the maximum decreases without bound.
    """
    env = upper_envelope(lines)
    slopes = [s for s, _ in env.lines]
    k = bisect_left(slopes, 0)
    if k == len(slopes):
        raise UnboundedBelow("all envelope slopes are negative")
    if slopes[k] == 0:
        lo = env.breaks[k - 1] if k > 0 else None
        hi = env.breaks[k] if k < len(env.breaks) else None
        return lo, hi
    if k == 0:
        raise UnboundedBelow("all envelope slopes are positive")
    t = env.breaks[k - 1]
    return t, t


def clamp(t, lo, hi):
    if lo is not None and t < lo:
        return lo
    if hi is not None and t > hi:
        return hi
    return t

