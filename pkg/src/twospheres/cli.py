"""Command-line entry point: ``twospheres <subcommand> [options]``."""
import argparse
import csv
from dataclasses import asdict, dataclass
import io
import math
import sys

import numpy as np

from . import discrete, empirical, measure, mse, optimize
from .errors import DomainError, EndpointError

SWEEP_HEADER = ("n", "a", "E", "dEda", "M_minus", "C_minus", "C_plus")
SUBCOMMANDS = ("eval", "sweep", "minimize", "certify", "lloyd", "discrete")
MONOTONE_CUTOFFS = tuple(k / 10 for k in range(1, 10)) + tuple(1 + k / 10 for k in range(1, 10))
MONOTONE_DIMS = (4, 5, 6, 8, 12, 16)


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    a: float | None = None
    grid_step: float = 0.05
    samples: int = 200_000
    seed: int = 0
    tol: float = 1e-8
    output_format: str | None = None
    output_path: str | None = None
    method: str = "golden_section"
    epsilon: float | None = None
    init: str = "antipodal"
    max_iter: int = 300
    move_tol: float = 1e-10
    points_output: str | None = None

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise DomainError(f"unknown subcommand {self.subcommand!r}")
        needs_n = self.subcommand in ("eval", "sweep", "minimize", "lloyd")
        if needs_n and self.n is None:
            raise DomainError("--n is required")
        if self.n is not None:
            measure.check_dimension(self.n, minimum=4 if self.subcommand == "certify" else 2)
        if self.subcommand == "eval":
            if self.a is None:
                raise DomainError("--a is required")
            measure.fold_cutoff(self.a)
        if self.subcommand in ("sweep", "certify") and not 1e-4 <= self.grid_step <= 0.1:
            raise DomainError("--grid-step must lie in [1e-4, 0.1]")
        if self.subcommand == "minimize" and not 1e-12 <= self.tol <= 1e-2:
            raise DomainError("--tol must lie in [1e-12, 1e-2]")
        if self.subcommand == "discrete":
            if self.epsilon is not None and not self.epsilon > 0:
                raise DomainError("--epsilon must be positive")
            if not 1e-12 <= self.tol <= 1e-3:
                raise DomainError("--tol must lie in [1e-12, 1e-3]")
        if self.subcommand == "lloyd":
            if self.samples < 2:
                raise DomainError("--samples must be >= 2")
            if self.max_iter < 1 or not self.move_tol > 0:
                raise DomainError("--max-iter must be >= 1 and --move-tol positive")
            if self.init not in ("antipodal", "random_points"):
                raise DomainError("--init must be antipodal or random_points")
        if self.output_format not in (None, "csv", "json"):
            raise DomainError("--format must be csv or json")


def fmt(x):
    """17 significant digits, '.' decimal separator; None becomes an empty field."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


def to_json(obj, indent=0):
    """JSON with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return "%.17g" % x
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + to_json(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _emit(config, text):
    if config.output_path:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(config, result, default="json"):
    if (config.output_format or default) == "json":
        return to_json({"config": asdict(config), "result": result}) + "\n"
    keys = list(result)
    return _csv_text(keys, [[result[k] if not isinstance(result[k], (list, dict)) else str(result[k]) for k in keys]])


def sweep_rows(n, grid_step):
    """One row per grid cutoff in [0, 2): n, a, E, dE/da, M^-, C^- and C^+ (symmetric frame)."""
    rows = []
    for a in optimize.cutoff_grid(grid_step):
        a = float(a)
        try:
            deriv = mse.mse_derivative(n, a)
        except EndpointError:
            deriv = None
        cp = measure.centroids(n, a)
        rows.append((n, a, mse.mse_total(n, a), deriv, measure.mass_minus(n, a), cp.rho_minus, cp.rho_plus))
    return rows


def read_sweep(path):
    """Parse a sweep CSV back into dicts of floats (empty derivative becomes None)."""
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            row = {k: (float(v) if v != "" else None) for k, v in rec.items()}
            row["n"] = int(row["n"])
            out.append(row)
    return out


def _eval(config):
    n, a = config.n, measure.fold_cutoff(config.a)
    rep = mse.mse_report(n, a)
    result = rep.as_dict()
    result["M_minus"] = measure.mass_minus(n, a)
    cp = measure.centroids(n, a, allow_empty=True)
    result.update(C_minus_left=cp.c_minus, C_plus_left=cp.c_plus,
                  C_minus_rho=cp.rho_minus, C_plus_rho=cp.rho_plus)
    _emit(config, _report(config, result))
    return 0


def _sweep(config):
    rows = sweep_rows(config.n, config.grid_step)
    if (config.output_format or "csv") == "csv":
        text = _csv_text(SWEEP_HEADER, rows)
    else:
        text = to_json({"config": asdict(config), "rows": [dict(zip(SWEEP_HEADER, r)) for r in rows]}) + "\n"
    _emit(config, text)
    return 0


def _minimize(config):
    res = optimize.minimize_cutoff(config.n, config.tol, method=config.method)
    _emit(config, _report(config, res.as_dict()))
    return 0


def certification_checks(dims, grid_step):
    """Run the numeric suites; yields (name, passed, failing points)."""
    for n in dims:
        bad = optimize.monotonicity_failures(n, grid_step)
        yield f"dE/da > 0 (n={n}, step={grid_step:g})", not bad, [(n, a) for a in bad]
    bad = [(None, a) for a in MONOTONE_CUTOFFS if not measure.mass_dimension_monotonicity_check(a, MONOTONE_DIMS)]
    yield f"M^- monotone in n over {list(MONOTONE_DIMS)}", not bad, bad
    upper = [n for n in dims if n > 3] or [4]
    bad = [(None, a) for a in optimize.cutoff_grid(0.05, 0.0, 1.0 + 1e-9)
           if not measure.corollary_ordering_check(a, upper)]
    yield "M_3^- <= M_n^- <= 1 on [0, 1]", not bad, bad
    lb_dims = sorted(set([3] + list(dims)))
    bad = [(n, float(a)) for n in lb_dims for a in np.round(np.arange(1.0, 1.951, 0.05), 10)
           if not measure.mass_lower_bound_check(n, a)]
    yield "M^- lower bound on [1, 1.95]", not bad, bad
    bad = []
    for n in lb_dims:
        for a in np.round(np.arange(1.05, 1.951, 0.05), 10):
            if abs(measure.mass_series(n, a) - measure.mass_minus(n, a)) >= 1e-8:
                bad.append((n, float(a)))
    yield "series mass agrees with quadrature (1e-8)", not bad, bad


def _certify(config):
    dims = [config.n] if config.n is not None else list(range(4, 13))
    failed = False
    lines = []
    for name, ok, bad in certification_checks(dims, config.grid_step):
        failed |= not ok
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if bad:
            line += " at " + ", ".join(f"(n={n}, a={fmt(a)})" for n, a in bad[:20])
        lines.append(line)
    _emit(config, "\n".join(lines) + "\n")
    return 1 if failed else 0


def cloud_csv(cloud, labels):
    header = [f"x{i + 1}" for i in range(cloud.n)] + ["source", "cluster"]
    rows = (list(p) + [int(s), int(l)] for p, s, l in zip(cloud.points, cloud.source_labels, labels))
    return _csv_text(header, rows)


def _lloyd(config):
    cloud = empirical.sample_spheres(config.n, config.samples, config.seed)
    run = empirical.lloyd(cloud, init=config.init, max_iter=config.max_iter, move_tol=config.move_tol)
    if config.points_output:
        with open(config.points_output, "w", newline="") as fh:
            fh.write(cloud_csv(cloud, run.labels))
    _emit(config, _report(config, run.summary()))
    return 0


def _discrete(config):
    threshold = discrete.separation_threshold(config.tol)
    result = {"threshold": threshold}
    if config.epsilon is not None:
        cfg = discrete.FourPointConfig(config.epsilon)
        result["points"] = list(cfg.points)
        result["optimal"] = [
            {"kind": p.kind, "clusters": [list(c) for c in p.clusters(cfg)], "mse": p.mse, "means": list(p.means)}
            for p in discrete.enumerate_optimal(config.epsilon)
        ]
    _emit(config, _report(config, result))
    return 0


HANDLERS = {"eval": _eval, "sweep": _sweep, "minimize": _minimize,
            "certify": _certify, "lloyd": _lloyd, "discrete": _discrete}


def run(config):
    """Validate ``config``, dispatch, return the exit status."""
    config.validate()
    return HANDLERS[config.subcommand](config)


def build_parser():
    parser = argparse.ArgumentParser(prog="twospheres", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, n_required=True):
        p.add_argument("--n", type=int, required=n_required, help="dimension (>= 2)")
        p.add_argument("--format", dest="output_format", choices=("csv", "json"))
        p.add_argument("--output", dest="output_path", help="write here instead of stdout")
        return p

    p = common(sub.add_parser("eval", help="E(n, a), its components and derivative"))
    p.add_argument("--a", type=float, required=True, help="cutoff in [-2, 2]")
    p = common(sub.add_parser("sweep", help="E and dE/da over a grid of cutoffs"))
    p.add_argument("--grid-step", type=float, default=0.05)
    p = common(sub.add_parser("minimize", help="optimal cutoff"))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--method", choices=optimize.METHODS, default="golden_section")
    p = common(sub.add_parser("certify", help="numeric monotonicity and bound checks"), n_required=False)
    p.add_argument("--grid-step", type=float, default=0.01)
    p = common(sub.add_parser("lloyd", help="Lloyd's algorithm on sampled points"))
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init", choices=("antipodal", "random_points"), default="antipodal")
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--move-tol", type=float, default=1e-10)
    p.add_argument("--points-output", help="CSV of the point cloud with labels")
    p = sub.add_parser("discrete", help="four-point line example")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", dest="output_format", choices=("csv", "json"))
    p.add_argument("--output", dest="output_path")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(**{k: v for k, v in vars(args).items() if v is not None or k == "n"})
    try:
        config.validate()
    except DomainError as exc:
        parser.error(str(exc))
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
