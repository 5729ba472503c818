"""
Command-line front end: ``qbouncer <command> [options]``.

Every command writes its data files plus a ``<command>_manifest.json`` into
``--out-dir``.  Exit codes: 0 success, 1 usage or domain error, 2 I/O
failure, 3 accuracy budget exceeded.
"""

import argparse
import csv
from datetime import datetime, timezone
import hashlib
from importlib import metadata, resources
import itertools
import json
import math
import os
from pathlib import Path
import sys

import numpy as np

from . import bouncer as bc
from . import correspondence as cr
from .errors import AccuracyError, DomainError
from .special import airy_zero, airy_zero_asymptotic
from .svg import LineChart

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_ACCURACY = 0, 1, 2, 3

ZEROS_HEADER = ["n", "a_n", "a_n_asymptotic", "rel_error", "ai_prime"]
DENSITY_HEADER = ["zeta_over_h", "rho_quantum", "rho_classical"]
REGIME_HEADER = ["label", "l_g_um", "height_mm", "n_estimate", "suppression"]
DEFAULT_ROUTES = ("numeric", "albright0", "albright1", "closed_form", "classical")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    """Round-trip-safe decimal text for CSV cells."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _json_ready(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_num(v) for v in row])


def write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_json_ready(payload), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _config_text():
    path = os.environ.get("BOUNCER_CONFIG")
    if path:
        return Path(path).read_text(encoding="utf-8")
    return resources.files(__package__).joinpath("species.ini").read_text(encoding="utf-8")


def _version():
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


class Run:
    """Collects outputs of one command and writes its manifest."""

    def __init__(self, args):
        self.args = args
        self.out_dir = Path(args.out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.outputs = []

    def path(self, name):
        p = self.out_dir / name
        self.outputs.append(p.name)
        return p

    def svg_comment(self):
        if self.args.reproducible:
            return None
        return f"generated {datetime.now(timezone.utc).isoformat(timespec='seconds')}"

    def finish(self):
        params = {k: v for k, v in sorted(vars(self.args).items())
                  if k not in ("func", "out_dir")}
        manifest = {
            "command": self.args.command,
            "parameters": params,
            "outputs": self.outputs,
            "versions": {
                "artifact": _version(),
                "config_sha256": hashlib.sha256(_config_text().encode("utf-8")).hexdigest(),
            },
        }
        write_json(self.out_dir / f"{self.args.command}_manifest.json", manifest)


def _n_list(text):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {text!r}")
    if not values:
        raise UsageError("--n-list is empty")
    if any(v < 1 for v in values):
        raise UsageError("quantum numbers must be >= 1")
    return values


def cmd_zeros(args, run):
    if args.n_max < 1:
        raise UsageError("--n must be >= 1")
    rows = []
    for n in range(1, args.n_max + 1):
        z = airy_zero(n)
        asym = airy_zero_asymptotic(n)
        rows.append([n, z.value, asym, abs(asym - z.value) / abs(z.value), z.ai_prime_at_zero])
    write_csv(run.path("zeros.csv"), ZEROS_HEADER, rows)


def _density_table(n, grid_size):
    state = bc.make_state(n)
    h = state.turning_point
    grid = bc.density_grid(h, grid_size)
    q = bc.quantum_density(state, grid).values
    c = bc.classical_density(h, grid).values
    return state, grid / h, q, c


def cmd_density(args, run):
    if args.n < 1 or args.grid < 3:
        raise UsageError("need --n >= 1 and --grid >= 3")
    state, x, q, c = _density_table(args.n, args.grid)
    write_csv(run.path(f"density_n{args.n}.csv"), DENSITY_HEADER, zip(x, q, c))
    chart = LineChart(title=f"Quantum bouncer, n = {args.n}",
                      xlabel="z / h_n", ylabel="probability density (1/l_g)")
    chart.add_series(x, q, "quantum", color="#1f4fbf")
    inside = x < 1.0
    chart.add_series(x[inside], c[inside], "classical", color="#e0b000", dash="7,4", width=2.0)
    chart.add_vline(1.0, "turning point")
    chart.save(run.path(f"density_n{args.n}.svg"), run.svg_comment())


def cmd_tailprob(args, run):
    records = []
    for n in _n_list(args.n_list):
        tp = bc.tail_probability(bc.make_state(n), agreement=args.tol)
        records.append({
            "n": n,
            "closed_form": tp.closed_form,
            "quadrature": tp.quadrature,
            "abs_difference": abs(tp.closed_form - tp.quadrature),
            "quoted_value": tp.quoted_value,
        })
    write_json(run.path("tailprob.json"), records)


def _coefficient(route, state, q):
    if route == "numeric":
        return cr.quantum_coefficient_numeric(state, q).value
    if route == "albright0":
        return cr.quantum_coefficient_albright(state, q, 0).value
    if route == "albright1":
        return cr.quantum_coefficient_albright(state, q, 1).value
    if route == "closed_form":
        return cr.quantum_coefficient_closed(state, q).value
    if route == "classical":
        return cr.classical_coefficient(state.turning_point, q).value
    raise UsageError(f"unknown route {route!r}; choose from {', '.join(DEFAULT_ROUTES)}")


def cmd_fourier(args, run):
    if args.n < 1 or not args.q_max > 0 or args.grid < 2:
        raise UsageError("need --n >= 1, --q-max > 0 and --grid >= 2")
    routes = [r.strip() for r in args.routes.split(",") if r.strip()]
    for r in routes:
        if r not in DEFAULT_ROUTES:
            raise UsageError(f"unknown route {r!r}; choose from {', '.join(DEFAULT_ROUTES)}")
    state = bc.make_state(args.n)
    pairs = list(itertools.combinations(routes, 2))
    header = ["Q"] + [f"{p}_{r}" for r in routes for p in ("re", "im")] \
        + [f"dev_{a}_{b}" for a, b in pairs]
    rows = []
    for Q in np.linspace(0.0, args.q_max, args.grid):
        q = Q / state.turning_point
        vals = {r: _coefficient(r, state, q) for r in routes}
        row = [Q]
        for r in routes:
            row += [vals[r].real, vals[r].imag]
        row += [abs(vals[a] - vals[b]) for a, b in pairs]
        rows.append(row)
    write_csv(run.path(f"fourier_n{args.n}.csv"), header, rows)


def cmd_limit(args, run):
    ns = _n_list(args.n_list)
    if len(ns) < 2:
        raise UsageError("--n-list needs at least two quantum numbers")
    reports = cr.convergence_study(ns)
    write_json(run.path("limit.json"), [r.__dict__ for r in reports])

    a = np.array([abs(r.a_n) for r in reports])
    dev = np.array([r.deviation_at_fit_Q for r in reports])
    slope = reports[0].fitted_exponent
    intercept = np.mean(np.log(dev) - slope * np.log(a))
    chart = LineChart(title=f"|numeric - leading| at Q = {cr.WindowPolicy().fit_Q:g}; slope {slope:.3f}",
                      xlabel="|a_n|", ylabel="coefficient deviation", logx=True, logy=True)
    chart.add_series(a, dev, "deviation", color="#1f4fbf")
    chart.add_series(a, np.exp(intercept) * a ** slope, f"fit, slope {slope:.3f}",
                     color="#c03030", dash="5,4")
    chart.save(run.path("limit.svg"), run.svg_comment())


def cmd_regime(args, run):
    rows = []
    height = args.height_mm * 1e-3
    if args.lg_um is not None:
        est = bc.regime_estimate(args.lg_um * 1e-6, height, args.label or "custom")
        rows.append(est)
    else:
        table = bc.load_species()
        keys = list(table) if args.species == "all" else [args.species]
        for key in keys:
            if key not in table:
                raise UsageError(f"unknown species {key!r}; known: {', '.join(table)}")
            sp = table[key]
            rows.append(bc.regime_estimate(sp.l_g, height, sp.label))
    write_csv(run.path("regime.csv"), REGIME_HEADER,
              [[r.species_label, r.l_g * 1e6, r.drop_height * 1e3, r.n_estimate, r.suppression]
               for r in rows])


def build_parser():
    parser = _Parser(prog="qbouncer", description=__doc__.strip().splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=".", help="directory for outputs (default: .)")
    common.add_argument("--reproducible", action="store_true",
                        help="omit the timestamp comment from SVG output")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="agreement tolerance for oracle cross-checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zeros", parents=[common], help="Airy zeros vs asymptotic formula")
    p.add_argument("--n", "--n-max", dest="n_max", type=int, default=20)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("density", parents=[common], help="quantum and classical densities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=2001)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("tailprob", parents=[common], help="probability above the turning point")
    p.add_argument("--n-list", default="1,2,10,30")
    p.set_defaults(func=cmd_tailprob)

    p = sub.add_parser("fourier", parents=[common], help="Fourier coefficients by route")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q-max", type=float, default=30.0)
    p.add_argument("--grid", type=int, default=61, help="number of Q samples")
    p.add_argument("--routes", default=",".join(DEFAULT_ROUTES))
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("limit", parents=[common], help="convergence study across n")
    p.add_argument("--n-list", default="10,20,50,100,200")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("regime", parents=[common], help="quantum number for a macroscopic drop")
    p.add_argument("--species", default="all", help="species key from the config, or 'all'")
    p.add_argument("--lg-um", type=float, help="gravitational length in micrometers")
    p.add_argument("--height-mm", type=float, default=1.0)
    p.add_argument("--label", default=None)
    p.set_defaults(func=cmd_regime)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        run = Run(args)
        args.func(args, run)
        run.finish()
    except (UsageError, DomainError) as exc:
        print(f"qbouncer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyError as exc:
        print(f"qbouncer: accuracy budget exceeded: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except OSError as exc:
        print(f"qbouncer: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
