"""Pareto-front curves: strictly decreasing functions on a closed interval.

Three families are provided:

* :class:`Linear` -- ``f(x) = c*x + d`` on ``[1, (1-d)/c]``
* :class:`Reciprocal` -- ``f(x) = c/x`` on ``[1, c]``
* :class:`PowerFamily` -- the scaled ``x**p`` family through two corners

All fronts are immutable; parameters are validated when the object is built.
``eval``, ``slope`` and ``curvature`` accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
import numbers
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._roots import bisect_increasing, bisect_increasing_vec
from .errors import ConstructionError, DomainError

DOMAIN_TOL = 1e-12
INVERSE_XTOL = 1e-12

# identifiers shared with the compiled kernels
KIND_LINEAR = 0
KIND_RECIPROCAL = 1
KIND_POWER = 2


def _tol(bound):
    return DOMAIN_TOL * max(1.0, abs(bound))


class Front(ABC):
    """A continuous, strictly decreasing front ``y = f(x)`` on ``[x_min, x_max]``."""

    kind: str = ""

    @property
    @abstractmethod
    def domain(self) -> tuple[float, float]:
        """``(x_min, x_max)``."""

    @property
    def x_min(self) -> float:
        return self.domain[0]

    @property
    def x_max(self) -> float:
        return self.domain[1]

    @property
    def y_range(self) -> tuple[float, float]:
        """``(f(x_max), f(x_min))``."""
        lo, hi = self.domain
        return self._f(hi), self._f(lo)

    # subclasses implement these on in-domain scalars or arrays
    @abstractmethod
    def _f(self, x): ...

    @abstractmethod
    def _df(self, x): ...

    @abstractmethod
    def _d2f(self, x): ...

    @abstractmethod
    def kernel_params(self) -> tuple[int, tuple[float, ...]]:
        """Encoding consumed by the compiled kernels."""

    @abstractmethod
    def spec(self) -> str:
        """Round-trippable ``kind=... key=value`` description."""

    def clip(self, x):
        """Validate ``x`` against the domain (tolerance 1e-12) and clamp it inside."""
        lo, hi = self.domain
        if np.ndim(x) == 0:
            x = float(x)
            if not (lo - _tol(lo) <= x <= hi + _tol(hi)):
                raise DomainError(f"x={x!r} outside domain [{lo!r}, {hi!r}]", x)
            return min(max(x, lo), hi)
        arr = np.asarray(x, dtype=float)
        bad = (arr < lo - _tol(lo)) | (arr > hi + _tol(hi)) | np.isnan(arr)
        if bad.any():
            offender = float(arr[bad].flat[0])
            raise DomainError(f"x={offender!r} outside domain [{lo!r}, {hi!r}]", offender)
        return np.clip(arr, lo, hi)

    def eval(self, x):
        """Front value ``f(x)``; raises :class:`DomainError` outside the domain."""
        return self._f(self.clip(x))

    __call__ = eval

    def inverse(self, y):
        """Return ``x`` with ``f(x) = y``."""
        ylo, yhi = self.y_range
        if np.ndim(y) == 0:
            y = float(y)
            if not (ylo - _tol(ylo) <= y <= yhi + _tol(yhi)):
                raise DomainError(f"y={y!r} outside range [{ylo!r}, {yhi!r}]", y)
            return self._inverse(min(max(y, ylo), yhi))
        arr = np.asarray(y, dtype=float)
        bad = (arr < ylo - _tol(ylo)) | (arr > yhi + _tol(yhi)) | np.isnan(arr)
        if bad.any():
            offender = float(arr[bad].flat[0])
            raise DomainError(f"y={offender!r} outside range [{ylo!r}, {yhi!r}]", offender)
        return self._inverse_vec(np.clip(arr, ylo, yhi))

    def _inverse(self, y: float) -> float:
        lo, hi = self.domain
        a, b = bisect_increasing(lambda x: y - self._f(x), lo, hi, xtol=INVERSE_XTOL)
        return 0.5 * (a + b)

    def _inverse_vec(self, y: np.ndarray) -> np.ndarray:
        lo, hi = self.domain
        a, b = bisect_increasing_vec(
            lambda x: y - self._f(x), np.full_like(y, lo), np.full_like(y, hi)
        )
        return 0.5 * (a + b)

    def slope(self, x):
        """Derivative ``f'(x)``.

        Endpoint singularities (PowerFamily with ``p != 1``) fall back to a
        one-sided difference, so the magnitude there is large but finite.
        Callers must not rely on endpoint slopes.
        """
        x = self.clip(x)
        d = self._df(x)
        if np.ndim(d) == 0:
            return d if math.isfinite(d) else self._one_sided(x)
        d = np.array(d, dtype=float)
        bad = ~np.isfinite(d)
        if bad.any():
            d[bad] = [self._one_sided(float(v)) for v in np.atleast_1d(x)[bad]]
        return d

    def curvature(self, x):
        """Second derivative ``f''(x)`` (may be infinite at the endpoints)."""
        return self._d2f(self.clip(x))

    def _one_sided(self, x: float) -> float:
        lo, hi = self.domain
        h = 1e-7 * (hi - lo)
        if x - lo < h:
            return (self._f(x + h) - self._f(x)) / h
        if hi - x < h:
            return (self._f(x) - self._f(x - h)) / h
        return (self._f(x + h) - self._f(x - h)) / (2 * h)

    def mesh(self, n: int) -> np.ndarray:
        lo, hi = self.domain
        return np.linspace(lo, hi, n)


def _check_finite(**params):
    for name, v in params.items():
        if not isinstance(v, numbers.Real) or not math.isfinite(v):
            raise ConstructionError(f"{name} must be a finite real, got {v!r}")


@dataclass(frozen=True)
class Linear(Front):
    """``f(x) = c*x + d`` on ``[1, (1-d)/c]`` with ``c < 0`` and ``d > 1 - c``."""

    c: float
    d: float
    kind = "linear"

    def __post_init__(self):
        _check_finite(c=self.c, d=self.d)
        if not self.c < 0:
            raise ConstructionError(f"linear front needs c < 0, got c={self.c!r}")
        if not self.d > 1 - self.c:
            raise ConstructionError(
                f"linear front needs d > 1 - c = {1 - self.c!r}, got d={self.d!r}"
            )

    @property
    def domain(self):
        return 1.0, (1.0 - self.d) / self.c

    def _f(self, x):
        return self.c * x + self.d

    def _df(self, x):
        return self.c if np.ndim(x) == 0 else np.full(np.shape(x), float(self.c))

    def _d2f(self, x):
        return 0.0 if np.ndim(x) == 0 else np.zeros(np.shape(x))

    def _inverse(self, y):
        return min(max((y - self.d) / self.c, self.x_min), self.x_max)

    def _inverse_vec(self, y):
        return np.clip((y - self.d) / self.c, self.x_min, self.x_max)

    def kernel_params(self):
        return KIND_LINEAR, (float(self.c), float(self.d))

    def spec(self):
        return f"kind=linear c={self.c!r} d={self.d!r}"


@dataclass(frozen=True)
class Reciprocal(Front):
    """``f(x) = c/x`` on ``[1, c]`` with ``c > 1``; symmetric under x <-> y."""

    c: float
    kind = "reciprocal"

    def __post_init__(self):
        _check_finite(c=self.c)
        if not self.c > 1:
            raise ConstructionError(f"reciprocal front needs c > 1, got c={self.c!r}")

    @property
    def domain(self):
        return 1.0, float(self.c)

    def _f(self, x):
        return self.c / x

    def _df(self, x):
        return -self.c / (x * x)

    def _d2f(self, x):
        return 2.0 * self.c / (x * x * x)

    def _inverse(self, y):
        return min(max(self.c / y, 1.0), float(self.c))

    def _inverse_vec(self, y):
        return np.clip(self.c / y, 1.0, float(self.c))

    def kernel_params(self):
        return KIND_RECIPROCAL, (float(self.c),)

    def spec(self):
        return f"kind=reciprocal c={self.c!r}"


@dataclass(frozen=True)
class PowerFamily(Front):
    """Scaled ``x**p`` front through ``(x1, y1)`` and ``(xmu, ymu)``.

    ``f(x) = ymu - (ymu - y1) * (1 - t**p)**(1/p)`` with
    ``t = (x - x1) / (xmu - x1)``.  ``p < 1`` is convex, ``p > 1`` concave and
    ``p = 1`` the straight line through the corners.
    """

    p: float
    x1: float
    y1: float
    xmu: float
    ymu: float
    kind = "power"

    def __post_init__(self):
        _check_finite(p=self.p, x1=self.x1, y1=self.y1, xmu=self.xmu, ymu=self.ymu)
        if not self.p > 0:
            raise ConstructionError(f"power front needs p > 0, got p={self.p!r}")
        if not (self.x1 > 0 and self.ymu > 0):
            raise ConstructionError("power front needs positive corner coordinates")
        if not self.x1 < self.xmu:
            raise ConstructionError(f"power front needs x1 < xmu, got {self.x1!r} >= {self.xmu!r}")
        if not self.ymu < self.y1:
            raise ConstructionError(f"power front needs ymu < y1, got {self.ymu!r} >= {self.y1!r}")

    @classmethod
    def symmetric(cls, p: float) -> "PowerFamily":
        """The front ``[1, 2] -> [1, 2]``."""
        return cls(p, 1.0, 2.0, 2.0, 1.0)

    @classmethod
    def asymmetric(cls, p: float, xmu: float = 201.0) -> "PowerFamily":
        """The front ``[1, xmu] -> [1, 2]`` (default ``xmu = 201``)."""
        return cls(p, 1.0, 2.0, float(xmu), 1.0)

    @property
    def domain(self):
        return float(self.x1), float(self.xmu)

    def _t(self, x):
        t = (x - self.x1) / (self.xmu - self.x1)
        if np.ndim(t) == 0:
            return min(max(t, 0.0), 1.0)
        return np.clip(t, 0.0, 1.0)

    def _f(self, x):
        t = self._t(x)
        u = 1.0 - t**self.p
        if np.ndim(u) == 0:
            u = max(u, 0.0)
        else:
            u = np.maximum(u, 0.0)
        return self.ymu + (self.y1 - self.ymu) * u ** (1.0 / self.p)

    def _df(self, x):
        t = self._t(x)
        p = self.p
        a = (self.y1 - self.ymu) / (self.xmu - self.x1)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            u = np.maximum(1.0 - np.power(t, p), 0.0)
            r = -a * np.power(u, 1.0 / p - 1.0) * np.power(t, p - 1.0)
        return float(r) if np.ndim(x) == 0 else r

    def _d2f(self, x):
        t = self._t(x)
        p = self.p
        w = self.xmu - self.x1
        a = (self.y1 - self.ymu) / (w * w)
        if p == 1.0:
            return 0.0 if np.ndim(x) == 0 else np.zeros(np.shape(x))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            u = np.maximum(1.0 - np.power(t, p), 0.0)
            r = -a * (p - 1.0) * np.power(u, 1.0 / p - 2.0) * np.power(t, p - 2.0)
        return float(r) if np.ndim(x) == 0 else r

    def kernel_params(self):
        return KIND_POWER, tuple(float(v) for v in (self.p, self.x1, self.y1, self.xmu, self.ymu))

    def spec(self):
        return (
            f"kind=power p={self.p!r} x1={self.x1!r} y1={self.y1!r} "
            f"xmu={self.xmu!r} ymu={self.ymu!r}"
        )


_KINDS = {"linear": (Linear, ("c", "d")), "reciprocal": (Reciprocal, ("c",)),
          "power": (PowerFamily, ("p", "x1", "y1", "xmu", "ymu"))}


def parse_front(spec: str | Sequence[str]) -> Front:
    """Build a front from ``kind=linear c=-1 d=3`` style tokens.

    The leading ``kind=`` may be omitted (``linear c=-1 d=3``).  For the power
    family, ``shape=symmetric`` or ``shape=asymmetric`` fills in the corners.
    """
    tokens = spec.split() if isinstance(spec, str) else [t for s in spec for t in s.split()]
    if not tokens:
        raise ConstructionError("empty front specification")
    params: dict[str, str] = {}
    kind = None
    for tok in tokens:
        if "=" not in tok:
            if kind is not None:
                raise ConstructionError(f"unexpected token {tok!r} in front specification")
            kind = tok
            continue
        key, _, value = tok.partition("=")
        if key == "kind":
            kind = value
        else:
            params[key] = value
    if kind not in _KINDS:
        raise ConstructionError(f"unknown front kind {kind!r}; expected one of {sorted(_KINDS)}")
    cls, names = _KINDS[kind]
    shape = params.pop("shape", None)
    try:
        values = {k: float(v) for k, v in params.items()}
    except ValueError as exc:
        raise ConstructionError(f"non-numeric front parameter: {exc}") from None
    if cls is PowerFamily and shape is not None:
        if "p" not in values:
            raise ConstructionError("power front needs p")
        if shape == "symmetric":
            base = PowerFamily.symmetric(values["p"])
        elif shape == "asymmetric":
            base = PowerFamily.asymmetric(values["p"], values.get("xmu", 201.0))
        else:
            raise ConstructionError(f"unknown power shape {shape!r}")
        corners = {n: getattr(base, n) for n in names}
        corners.update(values)
        values = corners
    unknown = set(values) - set(names)
    missing = set(names) - set(values)
    if unknown:
        raise ConstructionError(f"unknown parameter(s) for {kind} front: {sorted(unknown)}")
    if missing:
        raise ConstructionError(f"missing parameter(s) for {kind} front: {sorted(missing)}")
    return cls(**{n: values[n] for n in names})
