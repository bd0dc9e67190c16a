# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops.  ``_pykernels`` holds the reference implementations."""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow, fmax, fmin

cnp.import_array()

cdef enum:
    KIND_LINEAR = 0
    KIND_RECIPROCAL = 1
    KIND_POWER = 2


cdef inline double _front(int kind, double[::1] prm, double x) noexcept nogil:
    cdef double t, u
    if kind == KIND_LINEAR:
        return prm[0] * x + prm[1]
    if kind == KIND_RECIPROCAL:
        return prm[0] / x
    # power family: p, x1, y1, xmu, ymu
    t = (x - prm[1]) / (prm[3] - prm[1])
    t = fmin(fmax(t, 0.0), 1.0)
    u = fmax(1.0 - pow(t, prm[0]), 0.0)
    return prm[4] + (prm[2] - prm[4]) * pow(u, 1.0 / prm[0])


def staircase_volume(double[::1] xs, double[::1] ys, double r1, double r2):
    cdef Py_ssize_t i, n = xs.shape[0]
    cdef double prev = r1, acc = 0.0
    with nogil:
        for i in range(n):
            acc += (xs[i] - prev) * (ys[i] - r2)
            prev = xs[i]
    return acc


def worst_ratio_table(int kind, double[::1] prm, double[::1] xs):
    """``W[a, b]`` = worst local ratio on ``[xs[a], xs[b]]`` for ``a < b``.

    The crossing is bracketed with Illinois regula falsi and finished by
    bisection down to adjacent floats.
    """
    cdef Py_ssize_t n = xs.shape[0], a, b, it
    out = np.ones((n, n), dtype=np.float64)
    cdef double[:, ::1] W = out
    cdef double xa, xb, fxb, lo, hi, glo, ghi, m, c, g, ra, rb
    cdef int side
    with nogil:
        for a in range(n):
            xa = xs[a]
            for b in range(a + 1, n):
                xb = xs[b]
                fxb = _front(kind, prm, xb)
                lo = xa
                hi = xb
                glo = xa * fxb - xa * _front(kind, prm, xa)
                ghi = xb * fxb - xa * fxb
                side = 0
                for it in range(200):
                    m = 0.5 * (lo + hi)
                    if m <= lo or m >= hi:
                        break
                    c = m
                    if hi - lo > 1e-13 * hi and ghi > glo:
                        c = (lo * ghi - hi * glo) / (ghi - glo)
                        if c <= lo or c >= hi:
                            c = m
                    g = c * fxb - xa * _front(kind, prm, c)
                    if g < 0:
                        lo = c
                        glo = g
                        if side == -1:
                            ghi *= 0.5
                        side = -1
                    else:
                        hi = c
                        ghi = g
                        if side == 1:
                            glo *= 0.5
                        side = 1
                ra = fmin(lo / xa, _front(kind, prm, lo) / fxb)
                rb = fmin(hi / xa, _front(kind, prm, hi) / fxb)
                W[a, b] = fmax(ra, rb)
    return out


cdef inline bint _better(double v, double best, bint maximize) noexcept nogil:
    return v > best if maximize else v < best


cdef inline double _comb(double acc, double v, bint use_max) noexcept nogil:
    return fmax(acc, v) if use_max else acc + v


def enumerate_chains(double[::1] head, double[:, ::1] edge, double[::1] tail,
                     int mu, bint maximize, bint use_max,
                     bint first_fixed, bint last_fixed):
    """Exhaustive search over ascending index tuples of length ``mu`` (1..4).

    A tuple ``(i0 < i1 < ...)`` scores ``head[i0] (+) edge[i0,i1] (+) ... (+)
    tail[i_last]`` where ``(+)`` is ``+`` or ``max``, accumulated left to right.
    Ties keep the lexicographically first tuple.
    """
    cdef Py_ssize_t n = head.shape[0]
    cdef Py_ssize_t i0, i1, i2, i3, lo0, hi0, nlast
    cdef double s0, s1, s2, v
    cdef double best = -1e308 if maximize else 1e308
    cdef Py_ssize_t b0 = -1, b1 = -1, b2 = -1, b3 = -1
    if mu < 1 or mu > 4:
        raise ValueError("compiled enumeration supports 1 <= mu <= 4")
    lo0 = 0
    hi0 = 1 if first_fixed else n
    nlast = n - 1
    with nogil:
        if mu == 1:
            for i0 in range(lo0, hi0):
                if last_fixed and i0 != nlast:
                    continue
                v = _comb(head[i0], tail[i0], use_max)
                if _better(v, best, maximize):
                    best = v
                    b0 = i0
        elif mu == 2:
            for i0 in range(lo0, hi0):
                s0 = head[i0]
                for i1 in range(i0 + 1, n):
                    if last_fixed and i1 != nlast:
                        continue
                    v = _comb(_comb(s0, edge[i0, i1], use_max), tail[i1], use_max)
                    if _better(v, best, maximize):
                        best = v
                        b0 = i0
                        b1 = i1
        elif mu == 3:
            for i0 in range(lo0, hi0):
                s0 = head[i0]
                for i1 in range(i0 + 1, n):
                    s1 = _comb(s0, edge[i0, i1], use_max)
                    for i2 in range(i1 + 1, n):
                        if last_fixed and i2 != nlast:
                            continue
                        v = _comb(_comb(s1, edge[i1, i2], use_max), tail[i2], use_max)
                        if _better(v, best, maximize):
                            best = v
                            b0 = i0
                            b1 = i1
                            b2 = i2
        else:
            for i0 in range(lo0, hi0):
                s0 = head[i0]
                for i1 in range(i0 + 1, n):
                    s1 = _comb(s0, edge[i0, i1], use_max)
                    for i2 in range(i1 + 1, n):
                        s2 = _comb(s1, edge[i1, i2], use_max)
                        for i3 in range(i2 + 1, n):
                            if last_fixed and i3 != nlast:
                                continue
                            v = _comb(_comb(s2, edge[i2, i3], use_max), tail[i3], use_max)
                            if _better(v, best, maximize):
                                best = v
                                b0 = i0
                                b1 = i1
                                b2 = i2
                                b3 = i3
    idx = [b0, b1, b2, b3][:mu]
    if b0 < 0:
        return best, None
    return best, idx
