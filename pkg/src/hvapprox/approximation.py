"""Multiplicative approximation ratio of a point set and optimality certificates.

A set ``X`` is a delta-approximation of ``f`` if every front point ``(x, f(x))``
has some ``x_i`` in ``X`` with ``x <= delta * x_i`` and ``f(x) <= delta * f(x_i)``.
Between two neighbours the worst-covered point is where the two candidate
ratios cross; left of ``x_1`` only the f-constraint binds, right of ``x_mu``
only the x-constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

from ._roots import bisect_increasing
from .errors import InvalidCertificateError, ValidationError
from .front import Front
from .hypervolume import as_points

CERT_RTOL = 1e-8

Mode = Literal["fixed", "free"]


class IntervalRatio(NamedTuple):
    """One row of the per-interval breakdown.

    ``index`` is 0 for the left boundary ``[x_min, x_1]``, ``i`` for the gap
    ``[x_i, x_{i+1}]`` and ``mu`` for the right boundary ``[x_mu, x_max]``.
    """

    index: int
    kind: str
    worst_x: float
    ratio: float


@dataclass(frozen=True)
class ApproxResult:
    delta: float
    witness_x: float
    per_interval: tuple[IntervalRatio, ...]


@dataclass(frozen=True)
class Certificate:
    """Auxiliary points ``z_0..z_mu`` and the common ratio ``delta``.

    ``mode="fixed"`` certifies optimality among sets containing both extremes,
    ``mode="free"`` among all sets of the same size.  ``z_0`` and ``z_mu`` are
    the domain endpoints in both modes.
    """

    zs: tuple[float, ...]
    delta: float
    mode: Mode = "free"


def interval_worst_point(front: Front, xi: float, xj: float) -> tuple[float, float]:
    """Worst-approximated point between two neighbouring set members.

    Solves ``x * f(xj) = xi * f(x)`` on ``[xi, xj]`` by bisection down to
    adjacent floats.

    Returns:
        ``(x_tilde, ratio)`` where ``ratio = x_tilde / xi``.
    """
    xi = front.clip(xi)
    xj = front.clip(xj)
    if xj < xi:
        raise ValidationError(f"interval endpoints out of order: {xi!r} > {xj!r}")
    if xj == xi:
        return xi, 1.0
    f = front._f
    fxj = f(xj)

    def cross(x):
        return x * fxj - xi * f(x)

    a, b = bisect_increasing(cross, xi, xj, xtol=0.0)
    # the crossing lies in [a, b]; take the larger of the two local ratios there
    ra = min(a / xi, f(a) / fxj)
    rb = min(b / xi, f(b) / fxj)
    return (a, ra) if ra >= rb else (b, rb)


def ratio(front: Front, points) -> ApproxResult:
    """Approximation ratio of ``points`` with the per-interval breakdown.

    The witness is the worst point of the lowest-indexed interval attaining the
    maximum.
    """
    ps = as_points(points, front)
    lo, hi = front.domain
    f = front._f
    rows = [IntervalRatio(0, "left", lo, f(lo) / f(ps[0]))]
    for i in range(len(ps) - 1):
        xt, r = interval_worst_point(front, ps[i], ps[i + 1])
        rows.append(IntervalRatio(i + 1, "interval", xt, r))
    rows.append(IntervalRatio(len(ps), "right", hi, hi / ps[-1]))
    worst = rows[0]
    for row in rows[1:]:
        if row.ratio > worst.ratio:
            worst = row
    return ApproxResult(worst.ratio, worst.worst_x, tuple(rows))


def _close(a: float, b: float, rtol: float = CERT_RTOL) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def check_certificate(front: Front, points, cert: Certificate) -> bool:
    """Check the equalities that certify ``points`` as an optimal distribution.

    Both modes need ``delta = z_i / x_i = f(z_i) / f(x_{i+1})`` for
    ``1 <= i < mu``.  Fixed mode additionally needs ``x_1 = x_min`` and
    ``x_mu = x_max``; free mode needs ``f(x_min) = delta * f(x_1)`` and
    ``x_max = delta * x_mu``.  Equalities are compared at relative
    tolerance 1e-8.

    Raises:
        InvalidCertificateError: if ``zs`` has the wrong length or does not
            interleave the points.
    """
    ps = as_points(points, front)
    mu = len(ps)
    zs = [float(z) for z in cert.zs]
    if cert.mode not in ("fixed", "free"):
        raise InvalidCertificateError(f"unknown certificate mode {cert.mode!r}")
    if len(zs) != mu + 1:
        raise InvalidCertificateError(f"expected {mu + 1} auxiliary points, got {len(zs)}")
    if cert.mode == "fixed" and mu < 2:
        raise InvalidCertificateError("fixed-endpoint certificates need at least two points")
    for i in range(1, mu):
        lo_ok = ps[i - 1] <= zs[i] if cert.mode == "fixed" else ps[i - 1] < zs[i]
        hi_ok = zs[i] <= ps[i] if cert.mode == "fixed" else zs[i] < ps[i]
        if not (lo_ok and hi_ok):
            raise InvalidCertificateError(
                f"z_{i}={zs[i]!r} does not lie between x_{i}={ps[i - 1]!r} and x_{i + 1}={ps[i]!r}"
            )

    delta = float(cert.delta)
    if not delta > 1:
        return False
    lo, hi = front.domain
    f = front._f
    for i in range(1, mu):
        if not (_close(zs[i] / ps[i - 1], delta) and _close(f(front.clip(zs[i])) / f(ps[i]), delta)):
            return False
    if cert.mode == "fixed":
        return _close(ps[0], lo) and _close(ps[-1], hi)
    if not (_close(zs[0], lo) and _close(zs[mu], hi)):
        return False
    return _close(f(lo) / f(ps[0]), delta) and _close(hi / ps[-1], delta)


def certificate_for(front: Front, points, mode: Mode = "free") -> Certificate:
    """Build the certificate candidate implied by the interval worst points.

    ``delta`` is the largest local ratio; :func:`check_certificate` decides
    whether the equalities actually hold.
    """
    ps = as_points(points, front)
    res = ratio(front, ps)
    lo, hi = front.domain
    zs = [lo] + [row.worst_x for row in res.per_interval[1:-1]] + [hi]
    if mode == "fixed":
        delta = max((row.ratio for row in res.per_interval[1:-1]), default=1.0)
    else:
        delta = res.delta
    return Certificate(tuple(zs), delta, mode)

