"""Command-line driver: single computations and figure-style parameter sweeps.

Examples::

    hvapprox hyp --front linear c=-1 d=3 --points 1,1.6,2 --ref 0.5,0.25
    hvapprox ratio --front linear c=-1 d=3 --points 1,1.6,2
    hvapprox dist --front reciprocal c=2 --mu 2 --objective hyp --ref 0,0
    hvapprox sweep --axis scaling --front power shape=asymmetric p=2 --mu 3 \\
        --start 2 --stop 1e6 --steps 30 --log

Negative reference coordinates need the ``--ref=-10,-10`` spelling.
Exit status is 0 on success, 2 for invalid input and 3 for solver failures.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import closed_form, numeric
from .approximation import ratio
from .errors import HvApproxError, SolverError, ValidationError
from .front import Front, Linear, PowerFamily, parse_front
from .hypervolume import hypervolume

log = logging.getLogger("hvapprox.cli")

MAX_REF_CELLS = 10**6
EXIT_OK, EXIT_INVALID, EXIT_SOLVER = 0, 2, 3


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return "%.12g" % v


def _floats(text: str, what: str, count: Optional[int] = None) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"{what} must be comma-separated numbers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise ValidationError(f"{what} needs {count} values, got {text!r}")
    if not vals:
        raise ValidationError(f"{what} is empty")
    return vals


# ---------------------------------------------------------------- output


def _emit(args, header: Sequence[str], rows: list[Sequence], extra: Optional[dict] = None):
    out = args.out
    if args.format == "json":
        payload = dict(extra or {})
        payload["rows"] = [dict(zip(header, (_jsonable(v) for v in row))) for row in rows]
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


# ---------------------------------------------------------------- single runs


def run_hyp(args) -> int:
    front = parse_front(args.front)
    res = hypervolume(front, _floats(args.points, "--points"), _floats(args.ref, "--ref", 2))
    if args.format == "json":
        args.out.write(json.dumps({"hypervolume": res.value, "contributing": list(res.contributing),
                                   "dropped": list(res.dropped)}, sort_keys=True) + "\n")
    else:
        args.out.write(fmt(res.value) + "\n")
    if res.no_contributing_points:
        log.warning("no point dominates the reference point")
    return EXIT_OK


def run_ratio(args) -> int:
    front = parse_front(args.front)
    res = ratio(front, _floats(args.points, "--points"))
    rows = [(r.index, r.kind, r.worst_x, r.ratio) for r in res.per_interval]
    if args.format == "json":
        _emit(args, ("index", "kind", "worst_x", "ratio"), rows,
              {"delta": res.delta, "witness_x": res.witness_x})
        return EXIT_OK
    args.out.write(fmt(res.delta) + "\n")
    if args.breakdown:
        _emit(args, ("index", "kind", "worst_x", "ratio"), rows)
    return EXIT_OK


def _options(args) -> numeric.SolverOptions:
    return numeric.SolverOptions(seed=args.seed, multistart_count=args.starts)


def compute_dist(front: Front, mu: int, objective: str, ref, fixed: bool, method: str,
                 opts: numeric.SolverOptions):
    """Distribution for one objective; closed forms first when ``method='auto'``."""
    closed = method != "numeric" and closed_form.has_closed_form(front)
    if method == "closed" and not closed_form.has_closed_form(front):
        raise ValidationError(f"no closed form for {front.kind} fronts")
    if objective == "hyp":
        if closed and fixed:
            if isinstance(front, Linear):
                return closed_form.linear_hyp_dist(front.c, front.d, mu)
            return closed_form.convex_hyp_dist(front.c, mu)
        if closed and ref is not None:
            return closed_form.hyp_dist_ref(front, mu, ref)[0]
        return numeric.maximize_hypervolume(front, mu, ref, fixed, opts)
    if closed and not fixed:
        if isinstance(front, Linear):
            return closed_form.linear_opt_app_dist(front.c, front.d, mu)[0]
        return closed_form.convex_opt_app_dist(front.c, mu)[0]
    return numeric.optimal_approximation(front, mu, fixed, opts)[0]


def run_dist(args) -> int:
    front = parse_front(args.front)
    ref = _floats(args.ref, "--ref", 2) if args.ref else None
    fixed = args.endpoints == "fixed"
    if args.objective == "hyp" and ref is None and not fixed:
        raise ValidationError("--ref is required for the hyp objective with free endpoints")
    points = compute_dist(front, args.mu, args.objective, ref, fixed, args.method, _options(args))
    rows = [(x, float(front.eval(x))) for x in points]
    extra = {"delta": ratio(front, points).delta}
    _emit(args, ("x", "y"), rows, extra)
    return EXIT_OK


# ---------------------------------------------------------------- sweeps


@dataclasses.dataclass(frozen=True)
class SweepSpec:
    """One sweep: an axis, its range(s), the front and the solver settings."""

    axis: str
    front: Front
    mu: int
    objective: str = "both"
    endpoints: str = "fixed"
    start: float = 0.0
    stop: float = 0.0
    steps: int = 1
    log_scale: bool = False
    r1: tuple[float, float, int] = (0.0, 0.0, 1)
    r2: tuple[float, float, int] = (0.0, 0.0, 1)
    seed: int = 0
    starts: int = 8

    def __post_init__(self):
        if self.axis not in ("mu", "scaling", "p", "ref-grid"):
            raise ValidationError(f"unknown sweep axis {self.axis!r}")
        if self.objective not in ("hyp", "app", "both"):
            raise ValidationError(f"unknown objective {self.objective!r}")
        if self.axis == "ref-grid":
            for name in ("r1", "r2"):
                a, b, n = getattr(self, name)
                if n < 1 or b < a:
                    raise ValidationError(f"--{name} range must be ordered with steps >= 1")
            if self.r1[2] * self.r2[2] > MAX_REF_CELLS:
                raise ValidationError(f"ref-grid exceeds {MAX_REF_CELLS} cells")
        else:
            if self.steps < 1 or self.stop < self.start:
                raise ValidationError("sweep range must be ordered with steps >= 1")
            if self.log_scale and self.start <= 0:
                raise ValidationError("--log needs a positive start")
        if self.axis in ("scaling", "p") and not isinstance(self.front, PowerFamily):
            raise ValidationError(f"the {self.axis} axis needs a power front")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        if self.log_scale:
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)

    def cells(self) -> list[tuple]:
        if self.axis == "ref-grid":
            g1 = np.linspace(*self.r1[:2], self.r1[2]) if self.r1[2] > 1 else [self.r1[0]]
            g2 = np.linspace(*self.r2[:2], self.r2[2]) if self.r2[2] > 1 else [self.r2[0]]
            return [(float(a), float(b)) for a in g1 for b in g2]
        return [(float(v),) for v in self.values()]

    def header(self) -> tuple[str, ...]:
        if self.axis == "ref-grid":
            return ("r1", "r2", "approx_factor", "status")
        return (self.axis.replace("-", "_"), "hyp_ratio", "app_ratio", "status")


def _status(exc: Exception) -> str:
    return type(exc).__name__


def _sweep_cell(job):
    spec, cell = job
    opts = numeric.SolverOptions(seed=spec.seed, multistart_count=spec.starts)
    if spec.axis == "ref-grid":
        ref = cell
        try:
            if closed_form.has_closed_form(spec.front):
                value = closed_form.hyp_ratio_ref(spec.front, spec.mu, ref).overall
            else:
                pts = numeric.maximize_hypervolume(spec.front, spec.mu, ref, False, opts)
                value = ratio(spec.front, pts).delta
            return (*cell, value, "ok")
        except HvApproxError as exc:
            return (*cell, math.nan, _status(exc))

    (v,) = cell
    front, mu = spec.front, spec.mu
    try:
        if spec.axis == "mu":
            mu = int(round(v))
        elif spec.axis == "scaling":
            front = dataclasses.replace(front, xmu=v)
        else:
            front = dataclasses.replace(front, p=v)
    except HvApproxError as exc:
        return (v, math.nan, math.nan, _status(exc))
    fixed = spec.endpoints == "fixed"
    hyp_r = app_r = None
    status = "ok"
    if spec.objective in ("hyp", "both"):
        try:
            ref = None if fixed else (front.x_min, front.y_range[0])
            pts = compute_dist(front, mu, "hyp", ref, fixed, "auto", opts)
            hyp_r = ratio(front, pts).delta
        except HvApproxError as exc:
            hyp_r, status = math.nan, _status(exc)
    if spec.objective in ("app", "both"):
        try:
            pts = compute_dist(front, mu, "app", None, fixed, "auto", opts)
            app_r = ratio(front, pts).delta
        except HvApproxError as exc:
            app_r, status = math.nan, _status(exc)
    return (v, hyp_r, app_r, status)


def _workers() -> int:
    env = os.environ.get("HVAPPROX_THREADS")
    if env is None:
        return os.cpu_count() or 1
    try:
        n = int(env)
    except ValueError:
        raise ValidationError(f"HVAPPROX_THREADS must be an integer, got {env!r}") from None
    if n < 1:
        raise ValidationError(f"HVAPPROX_THREADS must be >= 1, got {n}")
    return n


def run_sweep_spec(spec: SweepSpec, workers: Optional[int] = None) -> list[tuple]:
    """Evaluate every cell; rows come back in cell order whatever the pool does."""
    jobs = [(spec, cell) for cell in spec.cells()]
    workers = min(workers or _workers(), len(jobs))
    if workers <= 1:
        return [_sweep_cell(j) for j in jobs]
    chunk = max(1, len(jobs) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_cell, jobs, chunksize=chunk))


def _triple(text: Optional[str], what: str) -> tuple[float, float, int]:
    if text is None:
        raise ValidationError(f"{what} is required for the ref-grid axis")
    a, b, n = _floats(text, what, 3)
    if n != int(n):
        raise ValidationError(f"{what} steps must be an integer, got {n!r}")
    return a, b, int(n)


def run_sweep(args) -> int:
    front = parse_front(args.front)
    if args.axis == "ref-grid":
        spec = SweepSpec("ref-grid", front, args.mu, args.objective, "free",
                         r1=_triple(args.r1, "--r1"), r2=_triple(args.r2, "--r2"),
                         seed=args.seed, starts=args.starts)
    else:
        if args.start is None or args.stop is None:
            raise ValidationError("--start and --stop are required")
        spec = SweepSpec(args.axis, front, args.mu, args.objective, args.endpoints,
                         args.start, args.stop, args.steps, args.log,
                         seed=args.seed, starts=args.starts)
    rows = run_sweep_spec(spec)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            args.out = fh
            _emit(args, spec.header(), rows)
    else:
        _emit(args, spec.header(), rows)
    failed = sum(1 for r in rows if r[-1] != "ok")
    if failed:
        log.warning("%d of %d cells failed", failed, len(rows))
    return EXIT_OK


# ---------------------------------------------------------------- parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--front", nargs="+", required=True, metavar="TOKEN",
                        help="front spec, e.g. 'linear c=-1 d=3' or 'power shape=symmetric p=2'")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--config", help="key=value file mirroring the flags; flags win")
    common.add_argument("-v", "--verbose", action="store_true", help="solver diagnostics on stderr")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--seed", type=int, default=0)
    solver.add_argument("--starts", type=int, default=8, help="multistart count")

    p = argparse.ArgumentParser(prog="hvapprox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hyp", parents=[common], help="hypervolume of a point set")
    h.add_argument("--points", required=True)
    h.add_argument("--ref", required=True)
    h.set_defaults(func=run_hyp)

    r = sub.add_parser("ratio", parents=[common], help="approximation ratio of a point set")
    r.add_argument("--points", required=True)
    r.add_argument("--breakdown", action="store_true", help="also print the per-interval table")
    r.set_defaults(func=run_ratio)

    d = sub.add_parser("dist", parents=[common, solver], help="optimal distribution")
    d.add_argument("--mu", type=int, required=True)
    d.add_argument("--objective", choices=("hyp", "app"), default="hyp")
    d.add_argument("--ref")
    d.add_argument("--endpoints", choices=("free", "fixed"), default="free")
    d.add_argument("--method", choices=("auto", "closed", "numeric"), default="auto")
    d.set_defaults(func=run_dist)

    s = sub.add_parser("sweep", parents=[common, solver], help="parameter sweep to CSV")
    s.add_argument("--axis", choices=("mu", "scaling", "p", "ref-grid"), required=True)
    s.add_argument("--mu", type=int, required=True)
    s.add_argument("--objective", choices=("hyp", "app", "both"), default="both")
    s.add_argument("--endpoints", choices=("free", "fixed"), default="fixed")
    s.add_argument("--start", type=float)
    s.add_argument("--stop", type=float)
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--log", action="store_true", help="geometric spacing")
    s.add_argument("--r1", help="ref-grid range start,stop,steps")
    s.add_argument("--r2", help="ref-grid range start,stop,steps")
    s.add_argument("--output", "-o", help="write CSV here instead of stdout")
    s.set_defaults(func=run_sweep)
    return p


_FLAGS = {"points", "breakdown", "ref", "mu", "objective", "endpoints", "method", "seed",
          "starts", "axis", "start", "stop", "steps", "log", "r1", "r2", "output", "format",
          "front", "verbose"}
_SWITCHES = {"breakdown", "log", "verbose"}


def _config_tokens(path: str) -> list[str]:
    """Translate a key=value config file into argv tokens."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path!r}: {exc.strerror}") from None
    tokens: list[str] = []
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().replace("_", "-"), value.strip()
        if not sep or key.replace("-", "_") not in {k.replace("-", "_") for k in _FLAGS}:
            raise ValidationError(f"{path}:{n}: expected a known key=value, got {line!r}")
        if key in _SWITCHES:
            if value.lower() in ("1", "true", "yes", "on"):
                tokens.append(f"--{key}")
        elif key == "front":
            tokens += ["--front", *value.split()]
        else:
            tokens.append(f"--{key}={value}")
    return tokens


def _with_config(argv: list[str]) -> list[str]:
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None or not argv:
        return argv
    # config flags go right after the subcommand so explicit flags override them
    return [argv[0], *_config_tokens(path), *argv[1:]]


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    try:
        argv = _with_config(argv)
    except ValidationError as exc:
        print(f"hvapprox: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.out = out
    handler = None
    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s %(levelname)s %(message)s"))
        pkg_log = logging.getLogger("hvapprox")
        pkg_log.addHandler(handler)
        pkg_log.setLevel(logging.DEBUG)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"hvapprox: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SolverError as exc:
        print(f"hvapprox: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    finally:
        if handler is not None:
            logging.getLogger("hvapprox").removeHandler(handler)
            logging.getLogger("hvapprox").setLevel(logging.NOTSET)


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run :func:`main` capturing stdout; convenient for tests."""
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
