"""Command-line front end: configuration, persistence, plot-data emission.

Subcommand grammar::

    extomo verify <experiment> [--key value ...]
    extomo sweep <experiment> [--key value ...]
    extomo knapp lower-bounds [--key value ...]
    extomo tubes randomized [--key value ...]
    extomo extremize run --functional "xray_sup_ratio(2,inf)" ...
    extomo transform dump --transform xray --preset cap ...
    extomo list
    extomo plot-data <report.json> [--out file.csv]

Exit codes: 0 pass, 1 tolerance failure, 2 usage or configuration error.
Every run writes a directory with the echoed config, the report JSON, the
raw sweep CSV, a human-readable summary, and the package version.  The
``EXTOMO_THREADS`` environment variable caps BLAS/OpenMP worker counts.
Configs are flat ``key = value`` text; a ``--config`` file is merged
below command-line flags.  Same config + seed reproduces metrics
byte-identically.
"""

import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (InvalidArgumentError, NonFiniteObjectiveError,
                     PreconditionError)
from .extension import extend, sigma_hat_closed_form
from .reports import ExperimentReport
from .sphere import (CapSpec, Density, bump_cap_density, knapp_cap_density,
                     make_circle_grid, make_sphere_grid)
from .spherical import funk_At
from .tomography import Hyperplane, radon, xray_profile
from . import experiments as X


class UsageError(Exception):
    """Configuration problem: maps to exit code 2."""


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    """One experiment invocation: name, typed parameters, seed, output."""

    experiment: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    outdir: str = None
    tolerance_overrides: dict = field(default_factory=dict)

    def echo_lines(self):
        lines = [f"experiment = {self.experiment}", f"seed = {self.seed}"]
        if self.outdir:
            lines.append(f"out = {self.outdir}")
        for key in sorted(self.params):
            lines.append(f"{key} = {_format_value(self.params[key])}")
        for key in sorted(self.tolerance_overrides):
            lo, hi = self.tolerance_overrides[key]
            lines.append(f"tol.{key} = {lo!r},{hi!r}")
        return lines


def _parse_value(text):
    """Typed parsing: int, float, inf, comma-separated list, else string."""
    text = text.strip()
    if "," in text:
        return [_parse_value(tok) for tok in text.split(",") if tok.strip()]
    for caster in (int, float):
        try:
            return caster(text)
        except ValueError:
            pass
    if text in ("inf", "+inf"):
        return math.inf
    return text


def _format_value(value):
    if isinstance(value, list):
        return ",".join(_format_value(v) for v in value)
    return str(value)


def _parse_config_file(path):
    params = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(
                        f"config-syntax {path}:{lineno} (expected key = value)")
                key, _, value = line.partition("=")
                params[key.strip()] = _parse_value(value)
    except OSError as exc:
        raise UsageError(f"config-unreadable {path}: {exc}") from exc
    return params


def _apply_thread_cap():
    cap = os.environ.get("EXTOMO_THREADS")
    if not cap:
        return None
    try:
        limit = int(cap)
    except ValueError as exc:
        raise UsageError(f"bad-env EXTOMO_THREADS={cap!r}") from exc
    try:
        import threadpoolctl
        threadpoolctl.threadpool_limits(limit)
    except ImportError:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS"):
            os.environ[var] = str(limit)
    return limit


# ---------------------------------------------------------------------------
# density presets

PRESETS = ("constant", "cap", "band", "smooth", "modulated", "knapp")


def _preset_density(grid, preset, seed=0, delta=0.1):
    n = grid.dim
    pole = np.zeros(n)
    pole[-1] = 1.0
    if preset == "constant":
        return Density(grid, np.ones(grid.node_count),
                       evaluator=lambda pts: np.ones(np.atleast_2d(pts).shape[0]))
    if preset == "cap":
        return bump_cap_density(grid, pole, 0.7)
    if preset == "band":
        def band_eval(pts):
            pts = np.atleast_2d(np.asarray(pts, dtype=float))
            return (np.abs(pts[:, 0]) <= 0.3).astype(float)
        return Density(grid, band_eval(grid.nodes), evaluator=band_eval)
    if preset == "smooth":
        from .reports import experiment_rng
        rng = experiment_rng(seed, "cli:smooth-preset")
        a = rng.standard_normal(n)
        b = rng.standard_normal(n)

        def smooth_eval(pts, a=a, b=b):
            pts = np.atleast_2d(np.asarray(pts, dtype=float))
            return 1.0 + 0.5 * np.tanh(pts @ a) + 0.3 * (pts @ b) ** 2
        return Density(grid, smooth_eval(grid.nodes), evaluator=smooth_eval)
    if preset == "modulated":
        k = np.arange(1, n + 1, dtype=float)

        def mod_eval(pts, k=k):
            pts = np.atleast_2d(np.asarray(pts, dtype=float))
            base = bump_cap_density(grid, pole, 0.7)
            return base.evaluate(pts) * np.exp(1j * pts @ k)
        return Density(grid, mod_eval(grid.nodes), evaluator=mod_eval)
    if preset == "knapp":
        return knapp_cap_density(grid, CapSpec(pole, delta))
    raise UsageError(f"unknown-preset {preset!r} (choose from {PRESETS})")


def _generic_direction(n):
    omega = np.array([0.6, 0.8]) if n == 2 else np.array([0.3, -0.5, 0.8])
    return omega / np.linalg.norm(omega)


def _default_grid(n, fine=False):
    if n == 2:
        return make_circle_grid(512 if fine else 256)
    return make_sphere_grid(*((96, 192) if fine else (24, 48)))


def _fit_report(name, fit, abscissa_label, params, checks=()):
    """Wrap a GrowthFit into an ExperimentReport with plot-ready raw data."""
    report = ExperimentReport(name=name, params=params)
    report.raw_data["abscissa"] = [float(v) for v in fit.abscissae]
    report.raw_data["ordinate"] = [float(v) for v in fit.ordinates]
    report.raw_data["fit_value"] = [float(v) for v in fit.predicted()]
    report.params["abscissa"] = abscissa_label
    report.record("slope", fit.slope)
    report.record("intercept", fit.intercept)
    report.record("r_squared", fit.r_squared)
    for key, lo, hi in checks:
        report.check(key, report.metrics[key], lo=lo, hi=hi)
    return report


# ---------------------------------------------------------------------------
# experiment adapters: params dict + seed -> ExperimentReport


def _run_xray_identity(p, seed):
    n = p.get("n", 3)
    grid = _default_grid(n, fine=True)
    g = _preset_density(grid, p.get("preset", "cap"), seed)
    return X.verify_xray_identity(g, _generic_direction(n))


def _run_radon_identity(p, seed):
    n = p.get("n", 3)
    grid = _default_grid(n, fine=True)
    g = _preset_density(grid, p.get("preset", "cap"), seed)
    return X.verify_radon_identity(g, _generic_direction(n))


def _run_mollified_radon(p, seed):
    n = p.get("n", 2)
    grid = _default_grid(n, fine=True)
    g = _preset_density(grid, p.get("preset", "constant"), seed)
    R_list = tuple(p.get("R_list", [16, 64, 256]))
    return X.verify_mollified_radon(g, _generic_direction(n), R_list=R_list)


def _run_sharp_constant(p, seed):
    return X.sharp_constant_S2()


def _run_isometry(p, seed):
    return X.isometry_constancy(n_funcs=p.get("n_funcs", 10), seed=seed)


def _run_wstein(p, seed):
    return X.verify_wstein(R_list=tuple(p.get("R_list", [16, 32, 64])),
                           C_max=p.get("C_max", 50))


def _run_wmiztak(p, seed):
    return X.verify_wmiztak(
        R_list=tuple(p.get("R_list", [16, 32, 64, 128, 256])),
        q_probe=p.get("q_probe", 3.0), seed=seed,
        C_max=p.get("C_max", 50))


def _run_x_reduction(p, seed):
    q = p.get("q", 1.0)
    grid = make_sphere_grid(24, 48)
    g = _preset_density(grid, p.get("preset", "constant" if q > 1 else "cap"),
                        seed)
    return X.lemma_X_reduction_check(g, q=q)


def _run_reduce_lemma(p, seed):
    if p.get("family", 1):
        return X.reduce_lemma_family(eps=p.get("eps", 0.25),
                                     q=p.get("q", 2.0), seed=seed)
    grid = make_sphere_grid(24, 48)
    g = _preset_density(grid, p.get("preset", "cap"), seed)
    return X.verify_reduce_lemma(g, eps=p.get("eps", 0.25), q=p.get("q", 2.0))


def _run_t_delta(p, seed):
    fit, report = X.t_delta_log_law(
        delta_list=tuple(p.get("delta_list", [1e-1, 1e-2, 1e-3, 1e-4, 1e-5])))
    report.raw_data["abscissa"] = [float(v) for v in fit.abscissae]
    report.raw_data["ordinate"] = [float(v) for v in fit.ordinates]
    report.raw_data["fit_value"] = [float(v) for v in fit.predicted()]
    return report


def _run_radon_growth(p, seed):
    R_list = tuple(p.get("R_list", [16, 32, 64, 128, 256, 512, 1024]))
    q = p.get("q", 2.0)
    preset = p.get("preset", "constant")
    grid = make_circle_grid(max(64, int(np.ceil(2.5 * max(R_list)))))
    g = _preset_density(grid, preset, seed)
    closed_form = None
    if preset == "constant":
        def closed_form(pts):
            return sigma_hat_closed_form(2, np.linalg.norm(
                np.atleast_2d(pts), axis=1))
    fit = X.radon_growth_sweep(g, q, R_list, closed_form=closed_form)
    return _fit_report("radon_growth_sweep", fit, "log(R)",
                       {"q": q, "preset": preset, "R_list": list(R_list)},
                       checks=(("r_squared", 0.9, 1.0),))


def _run_outside_range(p, seed):
    fit = X.radon_outside_range_probe(
        R_list=tuple(p.get("R_list", [16, 32, 64, 128, 256])))
    return _fit_report("radon_outside_range_probe", fit, "log(R)",
                       {}, checks=(("slope", 0.3, math.inf),))


def _run_bt_bounds(p, seed):
    fit_half, fit_one = X.bt_bounds_sweep(
        delta_list=tuple(p.get("delta_list", [1e-1, 3e-2, 1e-2, 3e-3, 1e-3])),
        family=p.get("family", "constant"), seed=seed)
    report = _fit_report("bt_bounds_sweep", fit_one, "log(1/delta)",
                         {"family": p.get("family", "constant")},
                         checks=(("slope", 0.0, math.inf),
                                 ("r_squared", 0.9, 1.0)))
    report.record("slope_half_norm", fit_half.slope)
    report.record("r_squared_half_norm", fit_half.r_squared)
    return report


def _run_multiscale(p, seed):
    fit = X.xray_multiscale_lower_bound(
        delta_list=tuple(p.get("delta_list", [0.2, 0.1, 0.05, 0.025])))
    return _fit_report("xray_multiscale_lower_bound", fit, "log(1/delta)",
                       {}, checks=(("slope", 0.0, math.inf),
                                   ("r_squared", 0.8, 1.0)))


def _run_necessity(p, seed):
    report, fit = X.necessity_band_example(
        delta_list=tuple(p.get("delta_list", [0.2, 0.1, 0.05, 0.025])),
        eps=p.get("eps", 0.25), seed=seed)
    report.raw_data["abscissa"] = [float(v) for v in fit.abscissae]
    report.raw_data["ordinate"] = [float(v) for v in fit.ordinates]
    report.raw_data["fit_value"] = [float(v) for v in fit.predicted()]
    return report


def _run_power_weight(p, seed):
    grid = make_sphere_grid(16, 32)
    g = _preset_density(grid, p.get("preset", "constant"), seed)
    closed_form = None
    if p.get("preset", "constant") == "constant":
        def closed_form(r_grid):
            return sigma_hat_closed_form(3, r_grid)
    return X.power_weight_ratio(
        g, p.get("p", 2.0), p.get("q", 4.0), p.get("r", 2.0),
        L_list=tuple(p.get("L_list", [8, 16, 32, 64])),
        closed_form=closed_form)


def _run_knapp(p, seed):
    return X.knapp_radon_lower_bounds(
        m=p.get("m", 1),
        delta_list=tuple(p.get("delta_list", [0.2, 0.1, 0.05, 0.025])),
        q=p.get("q", 2.0), seed=seed)


def _run_tubes(p, seed):
    return X.randomized_tube_experiment(
        R=p.get("R", 64), n_trials=p.get("n_trials", 400), seed=seed,
        cap_scale=p.get("cap_scale", 0.5))


def _run_extremize(p, seed):
    functional = p.get("functional", "xray_sup_ratio(2,inf)")
    if isinstance(functional, list):
        # commas inside functional ids hit the list-valued parser
        functional = ",".join("inf" if v == math.inf else str(v)
                              for v in functional)
    density, report = X.extremize(functional, steps=p.get("steps", 40),
                                  step_size=p.get("step_size", 0.5),
                                  seed=seed)
    report.raw_data["abscissa"] = list(
        range(len(report.raw_data["objective"])))
    report.raw_data["ordinate"] = list(report.raw_data["objective"])
    report.raw_data["density_values"] = [float(v) for v in
                                         np.real(density.values)]
    return report


def _run_transform(p, seed):
    kind = p.get("transform", "xray")
    n = p.get("n", 2)
    grid = _default_grid(n, fine=True)
    g = _preset_density(grid, p.get("preset", "cap"), seed)
    omega = _generic_direction(n)
    report = ExperimentReport(name=f"transform_{kind}",
                              params={"n": n, "transform": kind,
                                      "preset": p.get("preset", "cap")})

    def field_fn(pts):
        return np.abs(extend(g, pts)) ** 2

    if kind == "xray":
        prof = xray_profile(field_fn, omega, half_width=p.get("half_width", 8.0),
                            samples_per_axis=p.get("samples", 65),
                            truncation=p.get("truncation", 40.0))
        ax = prof.axis()
        if n == 2:
            report.raw_data["abscissa"] = [float(v) for v in ax]
            report.raw_data["ordinate"] = [float(v) for v in prof.values]
        else:
            report.raw_data["abscissa"] = [float(v) for v in ax]
            report.raw_data["ordinate"] = [
                float(v) for v in prof.values[:, prof.values.shape[1] // 2]]
        report.record("max_value", float(np.max(prof.values)))
    elif kind == "radon":
        t_grid = np.arange(-p.get("t_extent", 2.0), p.get("t_extent", 2.0)
                           + 1e-12, p.get("t_pitch", 0.25))
        vals = [radon(field_fn, Hyperplane(omega, float(t)),
                      truncation=p.get("truncation", 40.0),
                      n_samples_per_axis=p.get("samples", 1024))
                for t in t_grid]
        report.raw_data["abscissa"] = [float(t) for t in t_grid]
        report.raw_data["ordinate"] = [float(v) for v in vals]
        report.record("max_value", float(np.max(vals)))
    elif kind == "funk":
        angles = 2.0 * np.pi * np.arange(64) / 64
        if n == 2:
            raise UsageError("funk transform requires n = 3")
        vals = []
        for ang in angles:
            om = np.array([np.cos(ang), np.sin(ang), 0.0])
            vals.append(float(np.real(funk_At(g, om, 0.0))))
        report.raw_data["abscissa"] = [float(a) for a in angles]
        report.raw_data["ordinate"] = vals
        report.record("max_value", float(np.max(vals)))
    else:
        raise UsageError(f"unknown-transform {kind!r}")
    return report


# ---------------------------------------------------------------------------
# registry

# name -> (group, runner, allowed parameter keys, description)
REGISTRY = {
    "xray-identity": ("verify", _run_xray_identity, {"n", "preset"},
                      "line transform of the squared extension vs slices"),
    "radon-identity": ("verify", _run_radon_identity, {"n", "preset"},
                       "hyperplane transform vs the equator-singular slice sum"),
    "mollified-radon": ("verify", _run_mollified_radon,
                        {"n", "preset", "R_list"},
                        "ball-truncated hyperplane transform bound"),
    "sharp-constant": ("verify", _run_sharp_constant, set(),
                       "sharp line-bound constant on the 2-sphere, two paths"),
    "isometry": ("verify", _run_isometry, {"n_funcs"},
                 "half-derivative line-transform isometry constancy"),
    "wstein": ("verify", _run_wstein, {"R_list", "C_max"},
               "weighted bound with direction-wise square function data"),
    "wmiztak": ("verify", _run_wmiztak, {"R_list", "q_probe", "C_max"},
                "weighted log-growth bound and its falsification probe"),
    "x-reduction": ("verify", _run_x_reduction, {"q", "preset"},
                    "sup-line norm vs power-weighted Lorentz norm"),
    "reduce-lemma": ("verify", _run_reduce_lemma,
                     {"family", "eps", "q", "preset"},
                     "derivative line norm vs bilinear slice functional"),
    "t-delta": ("sweep", _run_t_delta, {"delta_list"},
                "log law of the equator-singular integral"),
    "radon-growth": ("sweep", _run_radon_growth, {"q", "R_list", "preset"},
                     "log growth of the truncated hyperplane norm"),
    "outside-range": ("sweep", _run_outside_range, {"R_list"},
                      "power growth outside the admissible exponent range"),
    "bt-bounds": ("sweep", _run_bt_bounds, {"delta_list", "family"},
                  "bilinear operator quasinorm growth in log(1/delta)"),
    "multiscale": ("sweep", _run_multiscale, {"delta_list"},
                   "square-root-log lower bound for the line transform"),
    "necessity": ("sweep", _run_necessity, {"delta_list", "eps"},
                  "band-density scaling behind the derivative loss"),
    "power-weight": ("sweep", _run_power_weight,
                     {"p", "q", "r", "L_list", "preset"},
                     "power-weighted Lorentz ratio on doubling boxes"),
    "lower-bounds": ("knapp", _run_knapp, {"m", "delta_list", "q"},
                     "cylinder-slab lower bound scalings"),
    "randomized": ("tubes", _run_tubes, {"R", "n_trials", "cap_scale"},
                   "wavepacket tube family with Khintchine averaging"),
    "run": ("extremize", _run_extremize,
            {"functional", "steps", "step_size"},
            "projected gradient ascent of a Rayleigh quotient"),
    "dump": ("transform", _run_transform,
             {"transform", "n", "preset", "half_width", "samples",
              "truncation", "t_extent", "t_pitch"},
             "evaluate a transform of the squared extension to CSV"),
}

GROUPS = ("verify", "sweep", "knapp", "tubes", "extremize", "transform")


# ---------------------------------------------------------------------------
# persistence


def _write_run_dir(config, report, outdir):
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "config.txt"), "w") as fh:
        fh.write("\n".join(config.echo_lines()) + "\n")
    with open(os.path.join(outdir, "version.txt"), "w") as fh:
        fh.write(f"extomo {__version__}\n")
    report.to_json(os.path.join(outdir, "report.json"))
    with open(os.path.join(outdir, "summary.txt"), "w") as fh:
        fh.write(report.summary() + "\n")
    if _sweep_columns(report.raw_data) is not None:
        emit_plot_data(os.path.join(outdir, "report.json"),
                       os.path.join(outdir, "sweep.csv"))


def _sweep_columns(raw_data):
    """Locate (abscissa, ordinate, fit) columns in raw data, or None."""
    lists = {k: v for k, v in raw_data.items()
             if isinstance(v, (list, tuple)) and len(v) > 0
             and all(isinstance(x, (int, float)) for x in v)}
    if "abscissa" in lists and "ordinate" in lists:
        fit = lists.get("fit_value")
        return lists["abscissa"], lists["ordinate"], fit
    named = [k for k in ("delta", "R", "L") if k in lists]
    valued = [k for k in ("value", "norm", "ratio", "objective")
              if k in lists]
    if named and valued and len(lists[named[0]]) == len(lists[valued[0]]):
        return lists[named[0]], lists[valued[0]], lists.get("fit_value")
    return None


def emit_plot_data(report_path, out_path=None):
    """Write the report's sweep as CSV (abscissa, ordinate, fit_value).

    Floats are serialized with ``repr`` so re-parsing the CSV reproduces
    the in-memory values bit-exactly.
    """
    with open(report_path) as fh:
        report = ExperimentReport.from_json(fh.read())
    cols = _sweep_columns(report.raw_data)
    if cols is None:
        raise UsageError(f"no-sweep-data {report_path}")
    xs, ys, fit = cols
    if fit is None or len(fit) != len(xs):
        fit = [math.nan] * len(xs)
    if out_path is None:
        out_path = os.path.splitext(report_path)[0] + "_sweep.csv"
    with open(out_path, "w") as fh:
        fh.write("abscissa,ordinate,fit_value\n")
        for x, y, f in zip(xs, ys, fit):
            fh.write(f"{float(x)!r},{float(y)!r},{float(f)!r}\n")
    return out_path


# ---------------------------------------------------------------------------
# argument handling


def _collect_params(tokens):
    """Turn ['--key', 'value', ...] into a typed parameter dict."""
    params = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--"):
            raise UsageError(f"unexpected-argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, _, value = key.partition("=")
        else:
            if i + 1 >= len(tokens):
                raise UsageError(f"missing-value --{key}")
            i += 1
            value = tokens[i]
        params[key.replace("-", "_")] = _parse_value(value)
        i += 1
    return params


def _build_config(name, tokens):
    group, runner, allowed, _ = REGISTRY[name]
    params = _collect_params(tokens)
    if "config" in params:
        file_params = _parse_config_file(str(params.pop("config")))
        file_params.update(params)
        params = file_params
    params.pop("experiment", None)
    seed = int(params.pop("seed", 0))
    outdir = params.pop("out", None)
    overrides = {}
    for key in [k for k in params if k.startswith("tol.")]:
        value = params.pop(key)
        pair = value if isinstance(value, list) else [-math.inf, value]
        if len(pair) != 2:
            raise UsageError(f"bad-tolerance {key} (expected lo,hi)")
        overrides[key[4:]] = (float(pair[0]), float(pair[1]))
    unknown = set(params) - allowed
    if unknown:
        raise UsageError(
            f"unknown-parameter {sorted(unknown)} for {name} "
            f"(allowed: {sorted(allowed)})")
    return RunConfig(experiment=name, params=params, seed=seed,
                     outdir=outdir, tolerance_overrides=overrides)


def _execute(config):
    group, runner, _, _ = REGISTRY[config.experiment]
    report = runner(dict(config.params), config.seed)
    report.params.setdefault("seed", config.seed)
    for key, (lo, hi) in config.tolerance_overrides.items():
        report.tolerances[key] = (lo, hi)
    outdir = config.outdir or os.path.join("runs", config.experiment)
    _write_run_dir(config, report, outdir)
    print(report.summary())
    print(f"run directory: {outdir}")
    return 0 if report.pass_ else 1


def _usage():
    lines = ["usage: extomo <subcommand> ...", "",
             "subcommands:"]
    for group in GROUPS:
        names = sorted(n for n, v in REGISTRY.items() if v[0] == group)
        lines.append(f"  {group:10s} {' | '.join(names)}")
    lines.append("  list       show the experiment registry")
    lines.append("  plot-data  <report.json> [--out file.csv]")
    lines.append("")
    lines.append("common flags: --seed N --out DIR --config FILE "
                 "--tol.<metric> LO,HI  plus experiment parameters as "
                 "--key value")
    return "\n".join(lines)


def run(argv):
    """Execute one CLI invocation; returns the process exit code."""
    try:
        _apply_thread_cap()
        if not argv:
            print(_usage())
            return 2
        cmd, rest = argv[0], list(argv[1:])
        if cmd in ("-h", "--help", "help"):
            print(_usage())
            return 0
        if cmd == "list":
            print(f"extomo {__version__} experiment registry:")
            for name, (group, _, allowed, desc) in sorted(
                    REGISTRY.items(), key=lambda kv: (kv[1][0], kv[0])):
                keys = ",".join(sorted(allowed)) or "-"
                print(f"  {group:9s} {name:16s} [{keys}]  {desc}")
            return 0
        if cmd == "plot-data":
            if not rest:
                raise UsageError("missing-report-path")
            params = _collect_params(rest[1:])
            out = emit_plot_data(rest[0], params.get("out"))
            print(f"wrote {out}")
            return 0
        if cmd not in GROUPS:
            raise UsageError(f"unknown-subcommand {cmd!r}")
        if not rest:
            raise UsageError(f"missing-experiment for {cmd!r}")
        name = rest[0]
        if name not in REGISTRY or REGISTRY[name][0] != cmd:
            valid = sorted(n for n, v in REGISTRY.items() if v[0] == cmd)
            raise UsageError(f"unknown-experiment {name!r} (valid: {valid})")
        config = _build_config(name, rest[1:])
        return _execute(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidArgumentError, PreconditionError,
            NonFiniteObjectiveError) as exc:
        print(f"error: {type(exc).__name__} {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
