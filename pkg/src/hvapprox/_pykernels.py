"""Pure-Python/numpy implementations of the hot loops.

Semantics match ``_ckernels``: same accumulation order and lexicographic tie
rule.  ``worst_ratio_table`` uses plain bisection where the compiled version
uses regula falsi; both stop at adjacent floats, so entries agree to an ulp.
"""

from itertools import combinations

import numpy as np

from ._roots import bisect_increasing_vec


def staircase_volume(xs, ys, r1, r2):
    prev = r1
    acc = 0.0
    for x, y in zip(xs, ys):
        acc += (x - prev) * (y - r2)
        prev = x
    return acc


def worst_ratio_table(front, xs):
    xs = np.asarray(xs, dtype=float)
    n = xs.size
    out = np.ones((n, n))
    a_idx, b_idx = np.triu_indices(n, k=1)
    if a_idx.size == 0:
        return out
    xa = xs[a_idx]
    xb = xs[b_idx]
    fxb = front._f(xb)
    lo, hi = bisect_increasing_vec(lambda m: m * fxb - xa * front._f(m), xa, xb)
    ra = np.minimum(lo / xa, front._f(lo) / fxb)
    rb = np.minimum(hi / xa, front._f(hi) / fxb)
    out[a_idx, b_idx] = np.maximum(ra, rb)
    return out


def enumerate_chains(head, edge, tail, mu, maximize, use_max, first_fixed, last_fixed):
    head = np.asarray(head, dtype=float)
    tail = np.asarray(tail, dtype=float)
    edge = np.asarray(edge, dtype=float)
    n = head.size
    comb = np.maximum if use_max else np.add
    bad = -np.inf if maximize else np.inf
    pick = np.argmax if maximize else np.argmin
    best = -1e308 if maximize else 1e308
    best_idx = None

    def better(v):
        return v > best if maximize else v < best

    if mu == 1:
        vals = comb(head, tail)
        mask = np.ones(n, dtype=bool)
        if first_fixed:
            mask[1:] = False
        if last_fixed:
            mask[:-1] = False
        vals = np.where(mask, vals, bad)
        if mask.any():
            k = int(pick(vals))
            if better(vals[k]):
                return float(vals[k]), [k]
        return best, None

    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    if last_fixed:
        upper[:, :-1] = False

    if mu == 2:
        rows = np.arange(n)
        if first_fixed:
            rows = rows[:1]
        vals = comb(comb(head[rows][:, None], edge[rows]), tail[None, :])
        vals = np.where(upper[rows], vals, bad)
        if upper[rows].any():
            k = int(pick(vals))
            b, c = divmod(k, n)
            if better(vals.flat[k]):
                return float(vals.flat[k]), [int(rows[b]), c]
        return best, None

    first_range = range(1) if first_fixed else range(n)
    for i0 in first_range:
        for rest in combinations(range(i0 + 1, n), mu - 3):
            prefix = (i0,) + rest
            s = head[prefix[0]]
            for u, v in zip(prefix[:-1], prefix[1:]):
                s = comb(s, edge[u, v])
            p = prefix[-1]
            if p + 2 >= n:
                continue
            bs = np.arange(p + 1, n)
            s1 = comb(s, edge[p, bs])
            vals = comb(comb(s1[:, None], edge[p + 1:, :]), tail[None, :])
            mask = upper[p + 1:]
            if not mask.any():
                continue
            vals = np.where(mask, vals, bad)
            k = int(pick(vals))
            if better(vals.flat[k]):
                b, c = divmod(k, n)
                best = float(vals.flat[k])
                best_idx = list(prefix) + [int(bs[b]), c]
    return best, best_idx
