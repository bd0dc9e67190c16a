"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when importable; otherwise the
numpy implementations in ``_pykernels`` take over.  Setting
``HVAPPROX_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_c = None
if os.environ.get("HVAPPROX_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _c

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _c = None


def _as_c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def staircase_volume(xs, ys, r1, r2, backend=None):
    """Sum of ``(x_i - x_{i-1}) * (y_i - r2)`` with ``x_0 = r1``; xs ascending."""
    if (backend or BACKEND) == "compiled" and _c is not None:
        return _c.staircase_volume(_as_c(xs), _as_c(ys), float(r1), float(r2))
    return _pykernels.staircase_volume(np.asarray(xs).tolist(), np.asarray(ys).tolist(), r1, r2)


def worst_ratio_table(front, xs, backend=None):
    """Matrix of worst-approximated local ratios for every grid interval ``a < b``."""
    if (backend or BACKEND) == "compiled" and _c is not None:
        kind, params = front.kernel_params()
        return _c.worst_ratio_table(kind, _as_c(params), _as_c(xs))
    return _pykernels.worst_ratio_table(front, xs)


def enumerate_chains(head, edge, tail, mu, *, maximize, use_max,
                     first_fixed=False, last_fixed=False, backend=None):
    """Best ascending index tuple under a chain-structured objective.

    Returns ``(best_value, indices)``; ``indices`` is None if no tuple is
    admissible.
    """
    if (backend or BACKEND) == "compiled" and _c is not None and 1 <= mu <= 4:
        return _c.enumerate_chains(
            _as_c(head), _as_c(edge), _as_c(tail), int(mu),
            bool(maximize), bool(use_max), bool(first_fixed), bool(last_fixed),
        )
    return _pykernels.enumerate_chains(
        head, edge, tail, mu, maximize, use_max, first_fixed, last_fixed
    )
