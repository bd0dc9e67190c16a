"""Bracketing bisection shared by the front inversion and the solvers."""

import math

import numpy as np

from .errors import BracketError


def bisect_increasing(func, lo, hi, xtol=1e-12, max_iter=200):
    """Locate the sign change of a nondecreasing function on ``[lo, hi]``.

    Iterates until the bracket is narrower than ``xtol`` or the midpoint no
    longer separates the endpoints in floating point.

    Returns:
        ``(a, b)`` with ``func(a) <= 0 <= func(b)`` and ``b - a`` minimal.
    """
    fa = func(lo)
    fb = func(hi)
    if fa > 0 or fb < 0 or math.isnan(fa) or math.isnan(fb):
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={fa!r}, f(hi)={fb!r}",
            trace=[(lo, fa), (hi, fb)],
        )
    a, b = lo, hi
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = func(m)
        if fm < 0:
            a = m
        elif fm > 0:
            b = m
        else:
            return m, m
    return a, b


def bisect_increasing_vec(func, lo, hi, iterations=80):
    """Vectorised bisection; ``func`` maps an array of x to an array of g(x).

    Runs a fixed number of halvings, which is enough to collapse every
    bracket of a double-precision interval to adjacent floats.
    """
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    for _ in range(iterations):
        m = 0.5 * (a + b)
        gm = func(m)
        neg = gm < 0
        a = np.where(neg, m, a)
        b = np.where(neg, b, m)
    return a, b
