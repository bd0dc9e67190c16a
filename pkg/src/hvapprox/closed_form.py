"""Analytic distributions and approximation factors for linear and c/x fronts.

Linear fronts are ``f(x) = c*x + d`` on ``[1, (1-d)/c]``; convex fronts are
``f(x) = c/x`` on ``[1, c]``.  The ``*_ref`` functions give the hypervolume
optimum for an arbitrary reference point together with the regime it falls in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .approximation import Certificate
from .errors import ConstructionError, DegenerateReferenceError, RegimeClassificationError
from .front import Front, Linear, Reciprocal
from .hypervolume import PointSet, RefLike, as_reference

CaseId = Literal["both-extremes", "interior-both", "left-fixed", "right-fixed"]
CASE_ORDER: tuple[CaseId, ...] = ("both-extremes", "interior-both", "left-fixed", "right-fixed")

_EDGE_RTOL = 1e-12


@dataclass(frozen=True)
class RefRegime:
    """Which extremes the hypervolume optimum keeps for a reference point.

    ``m1``/``m2`` are the linear-front auxiliaries (None for c/x fronts).
    ``degenerate`` marks a reference point lying on the front itself, where
    every set has zero hypervolume and the returned points are the limit.
    """

    case_id: CaseId
    m1: Optional[float] = None
    m2: Optional[float] = None
    degenerate: bool = False


@dataclass(frozen=True)
class RatioBreakdown:
    a_left: float
    a_center: float
    a_right: float

    @property
    def overall(self) -> float:
        return max(self.a_left, self.a_center, self.a_right)


def _check_mu(mu, minimum):
    if isinstance(mu, bool) or not isinstance(mu, int) or mu < minimum:
        raise ConstructionError(f"mu must be an integer >= {minimum}, got {mu!r}")


def _reference_status(front: Front, ref) -> bool:
    """Raise if ``ref`` is strictly beyond the front; return True if on it."""
    r1, r2 = ref
    lo, hi = front.domain
    ymin, ymax = front.y_range
    tol = _EDGE_RTOL
    if r1 > hi * (1 + tol) or r2 > ymax * (1 + tol):
        raise DegenerateReferenceError(
            f"reference point {tuple(ref)!r} dominates the whole front "
            f"(x_max={hi!r}, f(x_min)={ymax!r})"
        )
    if r1 >= lo:
        fr = front.eval(min(r1, hi))
        if r2 > fr * (1 + tol):
            raise DegenerateReferenceError(
                f"reference point {tuple(ref)!r} lies above the front (f(r1)={fr!r})"
            )
        return r2 >= fr * (1 - tol)
    return False


# ---------------------------------------------------------------- linear


def linear_hyp_dist(c: float, d: float, mu: int) -> PointSet:
    """Equally spaced hypervolume optimum including both extremes."""
    front = Linear(c, d)
    _check_mu(mu, 2)
    lo, hi = front.domain
    return PointSet(lo + (i - 1) / (mu - 1) * (hi - lo) for i in range(1, mu + 1))


def linear_hyp_ratio_fixed(c: float, d: float, mu: int) -> float:
    """``d(mu-1) / (d(mu-2) - c + 1)``, the ratio of :func:`linear_hyp_dist`."""
    Linear(c, d)
    _check_mu(mu, 2)
    return d * (mu - 1) / (d * (mu - 2) - c + 1)


def linear_hyp_certificate(c: float, d: float, mu: int) -> Certificate:
    """Fixed-endpoint certificate of the equally spaced set.

    Each gap's worst point is ``delta * x_i`` with the constant ratio above.
    """
    xs = linear_hyp_dist(c, d, mu)
    delta = linear_hyp_ratio_fixed(c, d, mu)
    lo, hi = Linear(c, d).domain
    zs = [lo] + [delta * xs[i] for i in range(mu - 1)] + [hi]
    return Certificate(tuple(zs), delta, "fixed")


def linear_opt_app_dist(c: float, d: float, mu: int) -> tuple[PointSet, float]:
    """Optimal approximation without fixed extremes and its ratio."""
    Linear(c, d)
    _check_mu(mu, 1)
    k = c + (mu + 1) * d - 1
    xs = [d * (mu * c - i * (c + d - 1)) / (c * k) for i in range(1, mu + 1)]
    return PointSet(xs), k / (mu * d)


def linear_opt_app_certificate(c: float, d: float, mu: int) -> Certificate:
    _, delta = linear_opt_app_dist(c, d, mu)
    zs = [1 - i * (c + d - 1) / (mu * c) for i in range(mu + 1)]
    return Certificate(tuple(zs), delta, "free")


def linear_m1_m2(c: float, d: float, mu: int, ref: RefLike) -> tuple[float, float]:
    r1, r2 = as_reference(ref)
    m1 = min(
        c + d - r1,
        mu / (mu - 1) * (c + d - 1),
        (d - 1) + (d + (mu + 1) * c) / mu + (r2 + d - 1) / (mu * c) + (d - 1) / (mu * c * c),
    )
    m2 = min(
        (1 - d) / c - r2,
        mu / (mu - 1) * (1 - c - d) / c,
        (1 - c - d) / c + (r1 - c - d) / (mu * c),
    )
    return m1, m2


def _edge_case(xs, lo, hi) -> CaseId:
    at_lo = abs(xs[0] - lo) <= _EDGE_RTOL * max(1.0, abs(lo))
    at_hi = abs(xs[-1] - hi) <= _EDGE_RTOL * max(1.0, abs(hi))
    if at_lo and at_hi:
        return "both-extremes"
    if not at_lo and not at_hi:
        return "interior-both"
    return "left-fixed" if at_lo else "right-fixed"


def linear_hyp_dist_ref(c: float, d: float, mu: int, ref: RefLike) -> tuple[PointSet, RefRegime]:
    """Hypervolume optimum on a linear front for reference point ``ref``.

    Raises:
        DegenerateReferenceError: if ``ref`` is beyond or above the front, or
            the resulting points leave the domain.
    """
    front = Linear(c, d)
    _check_mu(mu, 2)
    r = as_reference(ref)
    on_front = _reference_status(front, r)
    m1, m2 = linear_m1_m2(c, d, mu, r)
    step = (d - m1 + (m2 + 1) * c - 1) / (c * (mu + 1))
    base = (m1 - d + 1) / c
    raw = [base + i * step for i in range(1, mu + 1)]
    lo, hi = front.domain
    tol = _EDGE_RTOL * max(1.0, hi)
    if raw[0] < lo - tol or raw[-1] > hi + tol or step < -tol:
        raise DegenerateReferenceError(
            f"reference point {tuple(r)!r} puts the optimum outside [{lo!r}, {hi!r}]: {raw!r}"
        )
    xs = [min(max(x, lo), hi) for x in raw]
    regime = RefRegime(_edge_case(xs, lo, hi), m1, m2, on_front)
    return PointSet(xs), regime


def linear_hyp_ratio_ref(c: float, d: float, mu: int, ref: RefLike) -> RatioBreakdown:
    """Left, centre and right approximation factors of the reference-point optimum."""
    front = Linear(c, d)
    _check_mu(mu, 2)
    r = as_reference(ref)
    _reference_status(front, r)
    m1, m2 = linear_m1_m2(c, d, mu, r)
    a_left = (c + d) * (mu + 1) / (mu + c + d + m1 * mu + m2 * c)
    a_center = d * (mu + 1) / (d * mu + c + 2 * d - 1 - m1 + m2 * c)
    a_right = (1 - d) * (mu + 1) / (c * mu - d + 1 + m1 + m2 * c * mu)
    return RatioBreakdown(a_left, a_center, a_right)


def linear_optimal_reference(c: float, d: float, mu: int) -> tuple[float, float]:
    """Reference point whose hypervolume optimum is the optimal approximation."""
    Linear(c, d)
    _check_mu(mu, 2)
    v = (c * c + d * (c + 1 + mu) - 1) / (c + d * (mu + 1) - 1)
    return v, v


# ---------------------------------------------------------------- convex c/x


def convex_hyp_dist(c: float, mu: int) -> PointSet:
    """Geometric hypervolume optimum ``c**((i-1)/(mu-1))`` including both extremes."""
    Reciprocal(c)
    _check_mu(mu, 2)
    return PointSet(c ** ((i - 1) / (mu - 1)) for i in range(1, mu + 1))


def convex_hyp_ratio_fixed(c: float, mu: int) -> float:
    Reciprocal(c)
    _check_mu(mu, 2)
    return c ** (1 / (2 * mu - 2))


def convex_hyp_certificate(c: float, mu: int) -> Certificate:
    """Fixed-endpoint certificate: worst points ``c**((2i-1)/(2mu-2))``."""
    delta = convex_hyp_ratio_fixed(c, mu)
    zs = [1.0] + [c ** ((2 * i - 1) / (2 * mu - 2)) for i in range(1, mu)] + [float(c)]
    return Certificate(tuple(zs), delta, "fixed")


def convex_opt_app_dist(c: float, mu: int) -> tuple[PointSet, float]:
    Reciprocal(c)
    _check_mu(mu, 1)
    xs = [c ** ((2 * i - 1) / (2 * mu)) for i in range(1, mu + 1)]
    return PointSet(xs), c ** (1 / (2 * mu))


def convex_opt_app_certificate(c: float, mu: int) -> Certificate:
    _, delta = convex_opt_app_dist(c, mu)
    zs = [c ** (i / mu) for i in range(mu + 1)]
    return Certificate(tuple(zs), delta, "free")


def convex_optimal_reference(c: float, mu: int) -> tuple[float, float]:
    Reciprocal(c)
    _check_mu(mu, 2)
    v = c ** (-1 / (2 * mu))
    return v, v


def convex_regime_inequalities(c: float, mu: int, ref: RefLike) -> dict[str, bool]:
    """Evaluate the four case conditions.

    Negative reference coordinates enter the ``c * r**mu`` terms as 0: a
    reference point below the axis never pulls the corresponding extreme
    inward.
    """
    r1, r2 = as_reference(ref)
    t = c ** (-1 / (mu - 1))
    p1 = c * max(r1, 0.0) ** mu
    p2 = c * max(r2, 0.0) ** mu
    return {
        "r1<=c^(-1/(mu-1))": r1 <= t,
        "r2<=c^(-1/(mu-1))": r2 <= t,
        "r1<=c*r2^mu": r1 <= p2,
        "r2<=c*r1^mu": r2 <= p1,
        "r1>=c^(-1/(mu-1))": r1 >= t,
        "r2>=c^(-1/(mu-1))": r2 >= t,
        "r1<=c": r1 <= c,
        "r2<=c": r2 <= c,
        "r1>=c*r2^mu": r1 >= p2,
        "r2>=c*r1^mu": r2 >= p1,
    }


def _convex_case(c: float, mu: int, ref) -> CaseId:
    q = convex_regime_inequalities(c, mu, ref)
    if q["r1<=c^(-1/(mu-1))"] and q["r2<=c^(-1/(mu-1))"]:
        return "both-extremes"
    if q["r1<=c*r2^mu"] and q["r2<=c*r1^mu"]:
        return "interior-both"
    if q["r2>=c^(-1/(mu-1))"] and q["r2<=c"] and q["r2>=c*r1^mu"]:
        return "left-fixed"
    if q["r1>=c^(-1/(mu-1))"] and q["r1<=c"] and q["r1>=c*r2^mu"]:
        return "right-fixed"
    raise RegimeClassificationError(
        f"no regime matches reference point {tuple(ref)!r} for c={c!r}, mu={mu}", q
    )


def convex_hyp_dist_ref(c: float, mu: int, ref: RefLike) -> tuple[PointSet, RefRegime]:
    """Hypervolume optimum on ``c/x`` for reference point ``ref``.

    Cases are tried in the order both-extremes, interior-both, left-fixed,
    right-fixed; the first match wins, which is harmless because the
    distributions agree on the boundaries.
    """
    front = Reciprocal(c)
    _check_mu(mu, 2)
    r = as_reference(ref)
    on_front = _reference_status(front, r)
    case = _convex_case(c, mu, r)
    r1, r2 = r
    idx = range(1, mu + 1)
    if case == "both-extremes":
        xs = [c ** ((i - 1) / (mu - 1)) for i in idx]
    elif case == "interior-both":
        xs = [(c**i * r1 ** (mu - i + 1) / r2**i) ** (1 / (mu + 1)) for i in idx]
    elif case == "left-fixed":
        xs = [(c / r2) ** ((i - 1) / mu) for i in idx]
    else:
        xs = [r1 * (c / r1) ** (i / mu) for i in idx]
    xs = [min(max(x, 1.0), float(c)) for x in xs]
    return PointSet(xs), RefRegime(case, degenerate=on_front)


def convex_hyp_ratio_ref(c: float, mu: int, ref: RefLike) -> RatioBreakdown:
    """Left, centre and right approximation factors of the ``c/x`` optimum.

    The right factor of the left-fixed case is ``c * (r2/c)**((mu-1)/mu)``,
    i.e. ``c / x_mu`` for the left-fixed points.
    """
    front = Reciprocal(c)
    _check_mu(mu, 2)
    r = as_reference(ref)
    _reference_status(front, r)
    case = _convex_case(c, mu, r)
    r1, r2 = r
    if case == "both-extremes":
        return RatioBreakdown(1.0, c ** (1 / (2 * mu - 2)), 1.0)
    if case == "interior-both":
        return RatioBreakdown(
            (c * r1**mu / r2) ** (1 / (mu + 1)),
            (c / (r1 * r2)) ** (1 / (2 * (mu + 1))),
            c * (r2**mu / (c**mu * r1)) ** (1 / (mu + 1)),
        )
    if case == "left-fixed":
        return RatioBreakdown(1.0, (c / r2) ** (1 / (2 * mu)), c * (r2 / c) ** ((mu - 1) / mu))
    return RatioBreakdown((c * r1 ** (mu - 1)) ** (1 / mu), (c / r1) ** (1 / (2 * mu)), 1.0)


def hyp_dist_ref(front: Front, mu: int, ref: RefLike) -> tuple[PointSet, RefRegime]:
    """Dispatch to the closed form matching ``front``'s family."""
    if isinstance(front, Linear):
        return linear_hyp_dist_ref(front.c, front.d, mu, ref)
    if isinstance(front, Reciprocal):
        return convex_hyp_dist_ref(front.c, mu, ref)
    raise ConstructionError(f"no closed form for {front.kind} fronts")


def hyp_ratio_ref(front: Front, mu: int, ref: RefLike) -> RatioBreakdown:
    if isinstance(front, Linear):
        return linear_hyp_ratio_ref(front.c, front.d, mu, ref)
    if isinstance(front, Reciprocal):
        return convex_hyp_ratio_ref(front.c, mu, ref)
    raise ConstructionError(f"no closed form for {front.kind} fronts")


def has_closed_form(front: Front) -> bool:
    return isinstance(front, (Linear, Reciprocal))
