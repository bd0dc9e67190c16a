"""Independent oracles shared by the test modules.

None of these call into the package's hypervolume or ratio code; they work
from the front's ``eval`` alone.
"""

import numpy as np
import pytest

from hvapprox.front import Linear, PowerFamily, Reciprocal


def hyp_by_strips(front, xs, ref):
    """Exact area from vertical strips: height at x is the tallest point to its right."""
    r1, r2 = ref
    xs = np.sort(np.asarray(xs, dtype=float))
    ys = np.array([front.eval(x) for x in xs])
    keep = (xs > r1) & (ys > r2)
    xs, ys = xs[keep], ys[keep]
    if xs.size == 0:
        return 0.0
    edges = np.concatenate(([r1], xs))
    area = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (a + b)
        h = max((y for x, y in zip(xs, ys) if x >= mid), default=r2)
        area += (b - a) * (h - r2)
    return area


def hyp_by_raster(front, xs, ref, n=1500):
    """Midpoint-rule rasterization of the dominated region."""
    r1, r2 = ref
    xs = np.sort(np.asarray(xs, dtype=float))
    ys = front.eval(xs)
    if not ((xs > r1) & (ys > r2)).any():
        return 0.0
    gx = np.linspace(r1, xs.max(), n + 1)
    gy = np.linspace(r2, ys.max(), n + 1)
    cx = 0.5 * (gx[1:] + gx[:-1])
    cy = 0.5 * (gy[1:] + gy[:-1])
    # a cell centre is dominated if some point is to its upper right
    covered = np.zeros((n, n), dtype=bool)
    for x, y in zip(xs, ys):
        covered |= (cx[:, None] <= x) & (cy[None, :] <= y)
    return covered.sum() * (gx[1] - gx[0]) * (gy[1] - gy[0])


def ratio_by_sampling(front, xs, n=20001):
    """Max over a dense mesh of the best per-point covering factor."""
    xs = np.asarray(sorted(xs), dtype=float)
    fx = front.eval(xs)
    mesh = front.mesh(n)
    fm = front.eval(mesh)
    need = np.maximum(mesh[:, None] / xs[None, :], fm[:, None] / fx[None, :])
    return float(need.min(axis=1).max())


def fd_gradient(fun, x, h=1e-7):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (fun(x + e) - fun(x - e)) / (2 * h)
    return g


def random_front(rng, kind=None):
    """One front with random parameters; family ``kind`` (0, 1, 2) or random."""
    kind = rng.integers(3) if kind is None else kind
    if kind == 0:
        c = -rng.uniform(0.2, 3.0)
        return Linear(c, 1 - c + rng.uniform(0.1, 3.0))
    if kind == 1:
        return Reciprocal(rng.uniform(1.5, 50.0))
    p = float(rng.choice([0.5, 1.0, 2.0, 3.0]) * rng.uniform(0.8, 1.25))
    return PowerFamily(p, 1.0, 1.0 + rng.uniform(0.5, 3.0), 1.0 + rng.uniform(0.5, 20.0), 1.0)


@pytest.fixture
def fig1_front():
    return Linear(-1, 3)
