"""Exact two-dimensional hypervolume of front points against a reference point."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np

from . import kernels
from .errors import ValidationError
from .front import Front

MERGE_TOL = 1e-12


class ReferencePoint(NamedTuple):
    r1: float
    r2: float


RefLike = Union[ReferencePoint, Sequence]


def as_reference(ref: RefLike) -> ReferencePoint:
    try:
        r1, r2 = ref
        r = ReferencePoint(float(r1), float(r2))
    except (TypeError, ValueError):
        raise ValidationError(f"reference point must be a pair of reals, got {ref!r}") from None
    if not (math.isfinite(r.r1) and math.isfinite(r.r2)):
        raise ValidationError(f"reference point must be finite, got {ref!r}")
    return r


class PointSet(Sequence):
    """Sorted, de-duplicated x-coordinates of a candidate distribution.

    Coordinates closer than 1e-12 (relative for |x| > 1) are merged.
    """

    __slots__ = ("_xs",)

    def __init__(self, xs: Iterable[float]):
        vals = sorted(float(v) for v in xs)
        if not vals:
            raise ValidationError("a point set needs at least one point")
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError(f"point coordinates must be finite: {vals!r}")
        merged = [vals[0]]
        for v in vals[1:]:
            if v - merged[-1] > MERGE_TOL * max(1.0, abs(v)):
                merged.append(v)
        self._xs = tuple(merged)

    @property
    def xs(self) -> np.ndarray:
        return np.array(self._xs)

    def __len__(self):
        return len(self._xs)

    def __getitem__(self, i):
        return self._xs[i]

    def __iter__(self):
        return iter(self._xs)

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self._xs == other._xs
        return NotImplemented

    def __hash__(self):
        return hash(self._xs)

    def __repr__(self):
        return f"PointSet({list(self._xs)!r})"

    def within(self, front: Front) -> "PointSet":
        """Validate against the front's domain, clamping tolerance-level overshoot."""
        return PointSet(front.clip(np.array(self._xs)))


def as_points(points, front: Front | None = None) -> PointSet:
    ps = points if isinstance(points, PointSet) else PointSet(points)
    return ps.within(front) if front is not None else ps


@dataclass(frozen=True)
class HypervolumeResult:
    value: float
    contributing: tuple[float, ...]
    dropped: tuple[float, ...]

    @property
    def no_contributing_points(self) -> bool:
        return not self.contributing


def hypervolume(front: Front, points, ref: RefLike) -> HypervolumeResult:
    """Hypervolume with the clipping report.

    Points not strictly dominating the reference point contribute nothing and
    are listed in ``dropped``; if none remain the value is 0.
    """
    ps = as_points(points, front)
    r = as_reference(ref)
    xs = ps.xs
    ys = front.eval(xs)
    keep = (xs > r.r1) & (ys > r.r2)
    value = kernels.staircase_volume(xs[keep], ys[keep], r.r1, r.r2)
    return HypervolumeResult(
        float(value), tuple(xs[keep].tolist()), tuple(xs[~keep].tolist())
    )


def hyp2d(front: Front, points, ref: RefLike) -> float:
    """Area dominated by ``{(x, f(x))}`` and bounded below by ``ref``.

    Computed in one pass over the points sorted by x as
    ``sum_i (x_i - x_{i-1}) * (f(x_i) - r2)`` with ``x_0 = r1``.
    """
    return hypervolume(front, points, ref).value


def contributions(front: Front, points, ref: RefLike) -> list[float]:
    """Exclusive hypervolume of each input entry, in input order.

    Removing entry ``i`` lowers :func:`hyp2d` by exactly ``result[i]``.
    Duplicated or clipped entries contribute 0.
    """
    raw = [float(v) for v in points]
    ps = as_points(raw, front)
    r = as_reference(ref)
    xs = ps.xs
    ys = front.eval(xs)
    keep = (xs > r.r1) & (ys > r.r2)
    kx, ky = xs[keep], ys[keep]
    left = np.concatenate(([r.r1], kx[:-1]))
    below = np.concatenate((ky[1:], [r.r2]))
    excl = dict(zip(kx.tolist(), ((kx - left) * (ky - below)).tolist()))

    out = []
    for v in raw:
        twins = sum(1 for w in raw if abs(w - v) <= MERGE_TOL * max(1.0, abs(v)))
        if twins > 1:
            out.append(0.0)
            continue
        x = front.clip(v)
        # nearest retained coordinate; merging may have nudged it by <= MERGE_TOL
        match = [k for k in excl if abs(k - x) <= MERGE_TOL * max(1.0, abs(x))]
        out.append(excl[match[0]] if match else 0.0)
    return out
