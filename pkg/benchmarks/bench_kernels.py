"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``; prints one line per kernel
with the best-of-N wall time for each backend and the speed-up.
"""

import argparse
import time

import numpy as np

from hvapprox import kernels
from hvapprox.front import PowerFamily


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=300)
    ap.add_argument("--mu", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if kernels._c is None:
        raise SystemExit("compiled extension not available; build with pip install -e .")

    front = PowerFamily.symmetric(2.0)
    xs = front.mesh(args.grid)
    ys = front.eval(xs)
    head = (xs - 0.5) * (ys - 0.5)
    edge = np.maximum(xs[None, :] - xs[:, None], 0.0) * (ys[None, :] - 0.5)
    tail = np.zeros_like(xs)

    cases = {
        "staircase_volume": lambda b: kernels.staircase_volume(xs, ys, 0.5, 0.5, backend=b),
        "worst_ratio_table": lambda b: kernels.worst_ratio_table(front, xs, backend=b),
        f"enumerate_chains(mu={args.mu})": lambda b: kernels.enumerate_chains(
            head, edge, tail, args.mu, maximize=True, use_max=False, backend=b),
    }
    print(f"{'kernel':<28}{'compiled [s]':>14}{'python [s]':>14}{'speed-up':>10}")
    for name, fn in cases.items():
        tc = best_of(lambda: fn("compiled"), args.repeat)
        tp = best_of(lambda: fn("python"), args.repeat)
        print(f"{name:<28}{tc:>14.4g}{tp:>14.4g}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
