"""Numerical solvers for arbitrary fronts and an exhaustive grid oracle.

* :func:`maximize_hypervolume` -- projected Newton / projected gradient ascent
  over ordered points in a box, with multistart.
* :func:`optimal_approximation` -- bisection on the common ratio ``delta``
  with forward propagation of the certificate equalities.
* :func:`brute_force_best` -- exhaustive search over grid tuples, used as an
  independent check of the two solvers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from . import kernels
from .approximation import Certificate, check_certificate, interval_worst_point
from .errors import (
    BudgetError,
    ConvergenceError,
    DegenerateReferenceError,
    SolverError,
    ValidationError,
)
from .front import Front
from .hypervolume import PointSet, RefLike, as_reference

log = logging.getLogger(__name__)

BRUTE_FORCE_BUDGET = 5 * 10**8
MAX_GRID = 2000
_SCAN_POINTS = 33
_MAX_SCAN_ROUNDS = 20


@dataclass(frozen=True)
class SolverOptions:
    """Iteration limits and tolerances shared by the solvers."""

    max_iters: int = 10000
    x_tol: float = 1e-10
    f_tol: float = 1e-12
    multistart_count: int = 8
    seed: int = 0

    def __post_init__(self):
        for name in ("max_iters", "multistart_count"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        for name in ("x_tol", "f_tol"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be a positive real, got {v!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ValidationError(f"seed must be a non-negative integer, got {self.seed!r}")


def _check_mu(mu, minimum, what):
    if isinstance(mu, bool) or not isinstance(mu, (int, np.integer)) or mu < minimum:
        raise ValidationError(f"{what} needs an integer mu >= {minimum}, got {mu!r}")
    return int(mu)


# ---------------------------------------------------------------- hypervolume


@dataclass(frozen=True)
class HypervolumeSolution:
    """Outcome of :func:`solve_hypervolume`.

    ``history`` holds the objective after every accepted iteration of the
    winning start; it is nondecreasing.
    """

    points: PointSet
    value: float
    iterations: int
    residual: float
    start_index: int
    history: tuple[float, ...] = field(repr=False)


def project_ordered(v: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Euclidean projection onto ``{lo <= v_1 <= ... <= v_n <= hi}``.

    Pool-adjacent-violators followed by clipping, which is exact for a box
    with common bounds.
    """
    vals: list[float] = []
    sizes: list[int] = []
    for x in v:
        vals.append(float(x))
        sizes.append(1)
        while len(vals) > 1 and vals[-2] > vals[-1]:
            w = sizes[-2] + sizes[-1]
            m = (vals[-2] * sizes[-2] + vals[-1] * sizes[-1]) / w
            vals[-2:] = [m]
            sizes[-2:] = [w]
    out = np.repeat(vals, sizes)
    return np.clip(out, lo, hi)


class _Problem:
    """Hypervolume objective in the free coordinates."""

    def __init__(self, front: Front, mu: int, ref, fixed: bool):
        self.front = front
        self.fixed = fixed
        x_min, x_max = front.domain
        if fixed:
            self.r1, self.r2 = x_min, front._f(x_max)
            self.lo, self.hi = x_min, x_max
            self.n = mu - 2
        else:
            self.r1, self.r2 = ref
            y_lo, y_hi = front.y_range
            if self.r1 >= x_max or self.r2 >= y_hi:
                raise DegenerateReferenceError(
                    f"reference point {tuple(ref)!r} does not leave any dominated area"
                )
            self.lo = max(x_min, self.r1)
            self.hi = x_max if self.r2 < y_lo else front.inverse(self.r2)
            if not self.hi - self.lo > 1e-12 * max(1.0, abs(self.hi)):
                raise DegenerateReferenceError(
                    f"reference point {tuple(ref)!r} lies on the front; every set has zero volume"
                )
            self.n = mu
        y_lo, y_hi = front._f(self.hi), front._f(self.lo)
        self.xscale = max(self.hi - self.lo, 1e-300)
        self.yscale = max(y_hi - y_lo, 1e-300)

    def full(self, v):
        if self.fixed:
            return np.concatenate(([self.lo], v, [self.hi]))
        return v

    def value(self, v) -> float:
        x = self.full(v)
        y = self.front._f(x)
        return float(kernels.staircase_volume(x, y, self.r1, self.r2))

    def grad(self, v) -> np.ndarray:
        x = self.full(v)
        y = self.front._f(x)
        left = np.concatenate(([self.r1], x[:-1]))
        below = np.concatenate((y[1:], [self.r2]))
        g = (y - below) + (x - left) * self._slope(x)
        return g[1:-1] if self.fixed else g

    def hessian(self, v) -> np.ndarray:
        x = self.full(v)
        left = np.concatenate(([self.r1], x[:-1]))
        d1 = self._slope(x)
        with np.errstate(invalid="ignore", over="ignore"):
            d2 = np.asarray(self.front._d2f(x), dtype=float) * np.ones_like(x)
            diag = 2.0 * d1 + (x - left) * d2
        off = -d1[1:]
        h = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        return h[1:-1, 1:-1] if self.fixed else h

    def _slope(self, x):
        return np.asarray(self.front.slope(x), dtype=float) * np.ones_like(x)

    def project(self, v):
        return project_ordered(v, self.lo, self.hi)

    def stationarity(self, v, g) -> float:
        """Sup-norm of the projected gradient, in units of f."""
        alpha = self.xscale / self.yscale
        step = self.project(v + alpha * g) - v
        return float(np.max(np.abs(step)) / alpha) if step.size else 0.0


def _newton_direction(prob: _Problem, v, g):
    """Reduced Newton step on coordinates not pinned by a bound or neighbour."""
    n = v.size
    tol = 1e-14 * prob.xscale
    free = np.ones(n, dtype=bool)
    free &= ~((v <= prob.lo + tol) & (g < 0))
    free &= ~((v >= prob.hi - tol) & (g > 0))
    for i in range(n - 1):
        if v[i + 1] - v[i] <= tol and g[i] >= g[i + 1]:
            free[i] = free[i + 1] = False
    if not free.any():
        return None
    h = prob.hessian(v)[np.ix_(free, free)]
    if not np.all(np.isfinite(h)):
        return None
    try:
        chol = np.linalg.cholesky(-h)
    except np.linalg.LinAlgError:
        return None
    d = np.zeros(n)
    d[free] = np.linalg.solve(chol.T, np.linalg.solve(chol, g[free]))
    return d if np.all(np.isfinite(d)) else None


def _local_ascent(prob: _Problem, v, opts: SolverOptions, history: list, budget: int):
    """Run from ``v`` until stationary; returns ``(v, value, iterations, residual)``."""
    val = prob.value(v)
    t_grad = prob.xscale / prob.yscale
    it = 0
    res = math.inf
    while it < budget:
        g = prob.grad(v)
        res = prob.stationarity(v, g)
        if res <= opts.f_tol * prob.yscale:
            return v, val, it, res, True
        it += 1
        cand = None
        d = _newton_direction(prob, v, g)
        if d is not None:
            t = 1.0
            for _ in range(40):
                w = prob.project(v + t * d)
                fw = prob.value(w)
                if fw > val:
                    cand = (w, fw)
                    break
                t *= 0.5
        if cand is None:
            t = min(4.0 * t_grad, 1e6 * prob.xscale / prob.yscale)
            for _ in range(80):
                w = prob.project(v + t * g)
                fw = prob.value(w)
                if fw >= val + 1e-4 * float(g @ (w - v)) and fw > val:
                    cand = (w, fw)
                    t_grad = t
                    break
                t *= 0.5
        if cand is None:
            # no representable ascent step: round-off floor reached
            return v, val, it, res, res <= 1e-7 * prob.yscale
        w, fw = cand
        step = float(np.max(np.abs(w - v)))
        gain = fw - val
        v, val = w, fw
        history.append(val)
        if step <= opts.x_tol * prob.xscale and gain <= opts.f_tol * max(1.0, abs(val)):
            g = prob.grad(v)
            res = prob.stationarity(v, g)
            if res <= 1e-7 * prob.yscale:
                return v, val, it, res, True
    return v, val, it, res, False


def _coordinate_scan(prob: _Problem, v, val, opts):
    """Best single-coordinate improvement on a grid, or None."""
    best = None
    thresh = opts.f_tol * max(1.0, abs(val))
    for j in range(v.size):
        a = v[j - 1] if j > 0 else prob.lo
        b = v[j + 1] if j + 1 < v.size else prob.hi
        if b <= a:
            continue
        for s in np.linspace(a, b, _SCAN_POINTS):
            w = v.copy()
            w[j] = s
            fw = prob.value(w)
            if fw > val + thresh and (best is None or fw > best[1]):
                best = (w, fw)
    return best


def _starts(prob: _Problem, opts: SolverOptions):
    n = prob.n
    lo, hi = prob.lo, prob.hi
    k = np.arange(1, n + 1) / (n + 1)
    yield lo + k * (hi - lo)
    if opts.multistart_count >= 2:
        if lo > 0:
            yield lo * (hi / lo) ** k
        else:
            yield lo + k**2 * (hi - lo)
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.multistart_count - 2):
        yield np.sort(rng.uniform(lo, hi, n))


def solve_hypervolume(front: Front, mu: int, ref: Optional[RefLike] = None,
                      fixed_endpoints: bool = False,
                      opts: Optional[SolverOptions] = None) -> HypervolumeSolution:
    """Maximize the hypervolume of ``mu`` front points.

    With ``fixed_endpoints`` both extremes are included and only the interior
    points move; the objective is then measured against
    ``(x_min, f(x_max))`` and ``ref`` is ignored, since any reference point
    below that corner only adds a constant.

    Raises:
        DegenerateReferenceError: if ``ref`` leaves no dominated area.
        ConvergenceError: if no start converges within ``opts.max_iters``.
    """
    opts = opts or SolverOptions()
    if fixed_endpoints:
        mu = _check_mu(mu, 2, "fixed-endpoint hypervolume maximization")
        r = None
    else:
        mu = _check_mu(mu, 1, "hypervolume maximization")
        if ref is None:
            raise ValidationError("a reference point is required unless endpoints are fixed")
        r = as_reference(ref)
    prob = _Problem(front, mu, r, fixed_endpoints)
    if prob.n == 0:
        v = np.zeros(0)
        return HypervolumeSolution(PointSet(prob.full(v)), prob.value(v), 0, 0.0, 0, ())

    best = None
    failures = []
    for idx, v0 in enumerate(_starts(prob, opts)):
        v = prob.project(np.asarray(v0, dtype=float))
        history = [prob.value(v)]
        used = 0
        ok = False
        res = math.inf
        for _ in range(_MAX_SCAN_ROUNDS):
            v, val, n_it, res, ok = _local_ascent(prob, v, opts, history, opts.max_iters - used)
            used += n_it
            if not ok:
                break
            jump = _coordinate_scan(prob, v, val, opts)
            if jump is None:
                break
            v, val = jump
            history.append(val)
        log.debug("start=%d iterations=%d value=%.17g residual=%.3g converged=%s",
                  idx, used, val, res, ok)
        if not ok:
            failures.append((idx, v, val, res))
            continue
        if best is None or val > best[2]:
            best = (idx, v, val, used, res, tuple(history))
    if best is None:
        idx, v, val, res = max(failures, key=lambda f: f[2])
        raise ConvergenceError(
            f"hypervolume maximization did not converge in {opts.max_iters} iterations "
            f"(residual {res:.3g})",
            best=PointSet(prob.full(v)),
            residual=res,
        )
    idx, v, val, used, res, history = best
    log.info("hypervolume optimum value=%.17g start=%d iterations=%d residual=%.3g",
             val, idx, used, res)
    return HypervolumeSolution(PointSet(prob.full(v)), val, used, res, idx, history)


def maximize_hypervolume(front: Front, mu: int, ref: Optional[RefLike] = None,
                         fixed_endpoints: bool = False,
                         opts: Optional[SolverOptions] = None) -> PointSet:
    """Points maximizing the hypervolume; see :func:`solve_hypervolume`."""
    return solve_hypervolume(front, mu, ref, fixed_endpoints, opts).points


# ---------------------------------------------------------------- approximation


def _propagate(front: Front, mu: int, delta: float, fixed: bool):
    """Forward pass of the certificate equalities for a trial ``delta``.

    Returns ``(residual, xs, zs)``.  The residual is dimensionless and
    increasing in ``delta``: in ``[-1, 1]`` while the chain reaches the last
    step, and the number of unused steps plus one if it overshoots earlier.
    Fixed mode measures the last step in y, because the inverse is badly
    conditioned where the front is steep at ``x_max``.
    """
    x_min, x_max = front.domain
    f = front._f
    y_floor = f(x_max)
    y_span = f(x_min) - y_floor
    width = x_max - x_min
    xs: list[float] = []
    zs = [x_min]
    if fixed:
        xs.append(x_min)
        steps = mu - 1
        z = delta * x_min
        for k in range(steps):
            if z >= x_max:
                return float(steps - k), xs, zs
            zs.append(z)
            y = f(z) / delta
            if k == steps - 1:
                xs.append(front._inverse(max(y, y_floor)))
                return min((y_floor - y) / y_span, 1.0), xs, zs
            if y < y_floor:
                return float(steps - k), xs, zs
            x = front._inverse(y)
            xs.append(x)
            z = delta * x
    z = x_min
    for k in range(mu):
        y = f(z) / delta
        if y < y_floor:
            return float(mu - k + 1), xs, zs
        x = front._inverse(y)
        xs.append(x)
        z = delta * x
        if z > x_max and k < mu - 1:
            return float(mu - k), xs, zs
        zs.append(z)
    return min((zs[-1] - x_max) / width, 1.0), xs, zs


def optimal_approximation(front: Front, mu: int, fixed_endpoints: bool = False,
                          opts: Optional[SolverOptions] = None) -> tuple[PointSet, Certificate]:
    """Points minimizing the approximation ratio, with their certificate.

    The common ratio is bracketed in ``[1, f(x_min)/f(x_max) * x_max/x_min]``
    and bisected to adjacent floats.

    Raises:
        SolverError: if the terminal residual is not monotone in ``delta``, or
            the result fails its own certificate check.
    """
    opts = opts or SolverOptions()
    mu = _check_mu(mu, 2 if fixed_endpoints else 1, "optimal approximation")
    x_min, x_max = front.domain
    if fixed_endpoints and mu == 2:
        zt, d = interval_worst_point(front, x_min, x_max)
        return PointSet([x_min, x_max]), Certificate((x_min, zt, x_max), d, "fixed")

    lo = 1.0
    hi = front._f(x_min) / front._f(x_max) * x_max / x_min
    trace = []

    def evaluate(delta):
        r, xs, zs = _propagate(front, mu, delta, fixed_endpoints)
        trace.append((delta, r))
        return r, xs, zs

    r_lo, xs_lo, zs_lo = evaluate(lo)
    r_hi, _, _ = evaluate(hi)
    if not (r_lo < 0 <= r_hi):
        raise SolverError(
            f"ratio bracket [{lo!r}, {hi!r}] has residuals {r_lo!r}, {r_hi!r}", trace
        )
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        r, xs, zs = evaluate(mid)
        if r < 0:
            lo, xs_lo, zs_lo = mid, xs, zs
        else:
            hi = mid
    ordered = sorted(trace)
    for (d0, r0), (d1, r1) in zip(ordered, ordered[1:]):
        if r1 < r0 - 1e-12:
            raise SolverError(
                f"terminal residual decreases between delta={d0!r} and delta={d1!r}", ordered
            )

    delta = lo
    xs = list(xs_lo)
    zs = list(zs_lo)
    if fixed_endpoints:
        xs[-1] = x_max
        zs.append(x_max)
    else:
        zs[-1] = x_max
    xs = [min(max(x, x_min), x_max) for x in xs]
    points = PointSet(xs)
    cert = Certificate(tuple(zs), delta, "fixed" if fixed_endpoints else "free")
    log.info("optimal approximation delta=%.17g evaluations=%d", delta, len(trace))
    if len(points) != mu or not check_certificate(front, points, cert):
        raise SolverError("optimal approximation failed its certificate check", trace)
    return points, cert


# ---------------------------------------------------------------- oracle


def brute_force_best(front: Front, mu: int, ref: Optional[RefLike] = None,
                     objective: Literal["hyp", "app"] = "hyp", grid_n: int = 1001,
                     fixed_endpoints: bool = False) -> PointSet:
    """Best ascending ``mu``-tuple from a uniform grid of ``grid_n`` domain points.

    ``objective="hyp"`` maximizes the hypervolume with respect to ``ref``
    (or ``(x_min, f(x_max))`` with fixed endpoints); ``"app"`` minimizes the
    approximation ratio, computed exactly for every grid pair.

    Raises:
        BudgetError: if the number of tuples exceeds 5e8.
    """
    mu = _check_mu(mu, 1, "brute force search")
    if mu > 4:
        raise ValidationError(f"brute force search supports mu <= 4, got {mu}")
    if isinstance(grid_n, bool) or not isinstance(grid_n, int) or not 2 <= grid_n <= MAX_GRID:
        raise ValidationError(f"grid_n must be an integer in [2, {MAX_GRID}], got {grid_n!r}")
    if objective not in ("hyp", "app"):
        raise ValidationError(f"objective must be 'hyp' or 'app', got {objective!r}")
    if fixed_endpoints and mu < 2:
        raise ValidationError("fixed endpoints need mu >= 2")
    free_slots = mu - 2 if fixed_endpoints else mu
    free_grid = grid_n - 2 if fixed_endpoints else grid_n
    if math.comb(max(free_grid, 0), free_slots) > BRUTE_FORCE_BUDGET:
        raise BudgetError(
            f"C({free_grid}, {free_slots}) tuples exceed the budget of {BRUTE_FORCE_BUDGET}"
        )

    x_min, x_max = front.domain
    xs = np.linspace(x_min, x_max, grid_n)
    ys = front._f(xs)
    if objective == "hyp":
        if fixed_endpoints:
            r1, r2 = x_min, float(ys[-1])
        else:
            if ref is None:
                raise ValidationError("a reference point is required for the hyp objective")
            r1, r2 = as_reference(ref)
        cx = np.maximum(xs, r1)
        cy = np.maximum(ys, r2) - r2
        head = (cx - r1) * cy
        edge = np.maximum(cx[None, :] - cx[:, None], 0.0) * cy[None, :]
        tail = np.zeros(grid_n)
        value, idx = kernels.enumerate_chains(
            head, edge, tail, mu, maximize=True, use_max=False,
            first_fixed=fixed_endpoints, last_fixed=fixed_endpoints,
        )
    else:
        head = front._f(x_min) / ys
        tail = x_max / xs
        edge = kernels.worst_ratio_table(front, xs)
        value, idx = kernels.enumerate_chains(
            head, edge, tail, mu, maximize=False, use_max=True,
            first_fixed=fixed_endpoints, last_fixed=fixed_endpoints,
        )
    if idx is None:
        raise SolverError("no admissible tuple on the grid")
    log.debug("brute force objective=%s value=%.17g indices=%s", objective, value, idx)
    return PointSet(xs[list(idx)])
