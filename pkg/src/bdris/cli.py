"""Command-line front end: parameter sweeps, MC validation, inverse solves.

Examples::

    bdris sweep --metric se --sweep tx-power-dbm=0:50:2 --sectors 6 --elements-total 360
    bdris sweep --metric outage --sweep tx-power-dbm=-10:30:5 --mc --trials 100000 --out out.csv
    bdris validate --trials 100000 --seed 1
    bdris solve --target 1e-2 --tx-power-dbm 15 --sectors 2
    bdris show-dist --kappa-h 0 --kappa-g 0

Settings resolve as built-in defaults, then the ``--config`` file, then
flags.  The resolved configuration is echoed to stderr as ``#`` lines.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import io
import math
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from bdris import gammastats, metrics, montecarlo
from bdris.channel import ConfigError, SystemConfig, snr_threshold
from bdris.metrics import PowerModel

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_ALL_FAILED = 3

METRICS = ("outage", "outage-asymptotic", "sep", "sep-asymptotic", "se", "se-sectorized", "ee", "cdf-distance")
SWEEP_VARS = ("tx-power-dbm", "total-elements", "sectors")
CSV_COLUMNS = ("sweep_var", "metric", "analytic", "mc_value", "mc_stderr", "trials", "seed")
LOG_SCALE_METRICS = {"outage", "outage-asymptotic", "sep", "sep-asymptotic", "cdf-distance"}

# flag dest -> SystemConfig field
_SYSTEM_FLAGS = {
    "sectors": "sectors",
    "kappa_h": "kappa_h",
    "kappa_g": "kappa_g",
    "dist_ris": "d_ris_m",
    "dist_user": "d_user_m",
    "eta_ris": "eta_ris",
    "eta_user": "eta_user",
    "users": "users",
    "rate_bpcu": "rate_target_bpcu",
    "tx_power_dbm": "tx_power_dbm",
    "noise_dbm": "noise_power_dbm",
    "freq_hz": "freq_hz",
}


@dataclass(frozen=True)
class SweepSpec:
    metric: str
    variable: str
    start: float
    stop: float
    step: float
    system: SystemConfig = SystemConfig()
    power: PowerModel = PowerModel()
    mc: bool = False
    trials: int = 100_000
    seed: int = 1
    workers: int = 1

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ConfigError("metric", f"unknown metric {self.metric!r}; choose from {', '.join(METRICS)}")
        if self.variable not in SWEEP_VARS:
            raise ConfigError("sweep", f"unknown sweep variable {self.variable!r}; choose from {', '.join(SWEEP_VARS)}")
        if not self.step > 0:
            raise ConfigError("sweep", f"step must be positive, got {self.step!r}")
        if self.stop < self.start:
            raise ConfigError("sweep", f"empty range {self.start}:{self.stop}")
        if self.trials < 2:
            raise ConfigError("trials", f"need at least 2 trials, got {self.trials}")
        for v in self.grid():
            self.config_at(v)

    def grid(self) -> list:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]

    def config_at(self, value: float) -> SystemConfig:
        cfg = self.system
        if self.variable == "tx-power-dbm":
            return cfg.updated(tx_power_dbm=float(value))
        if int(value) != value:
            raise ConfigError("sweep", f"{self.variable} values must be integers, got {value!r}")
        if self.variable == "total-elements":
            return cfg.with_total_elements(int(value))
        z = cfg.total_elements
        sectors = int(value)
        if z % sectors:
            raise ConfigError("sweep", f"total elements {z} not divisible by sectors={sectors}")
        return cfg.updated(sectors=sectors, elements_per_sector=z // sectors)


@dataclass(frozen=True)
class MetricPoint:
    sweep_value: float
    metric: str
    analytic: float
    mc_value: Optional[float] = None
    mc_stderr: Optional[float] = None
    trials: Optional[int] = None
    seed: Optional[int] = None
    error: Optional[str] = None


class _GainCache:
    """Channel draws keyed by everything they depend on (power excluded)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._store: dict = {}

    def get(self, cfg: SystemConfig, trials: int, seed: int) -> np.ndarray:
        key = (cfg.kappa_h, cfg.user_link(0).kappa_g, cfg.elements_per_sector, trials, seed)
        with self._lock:
            hit = self._store.get(key)
        if hit is None:
            hit = montecarlo.draw_config_gain(cfg, trials, seed)
            with self._lock:
                self._store.setdefault(key, hit)
        return hit


def _evaluate(spec: SweepSpec, value: float, cache: _GainCache) -> MetricPoint:
    cfg = spec.config_at(value)
    p = cfg.tx_power_dbm
    m = spec.metric
    try:
        mc = None
        if m == "cdf-distance":
            dist = montecarlo.empirical_cdf_distance(cfg, p, spec.trials, spec.seed)
            return MetricPoint(value, m, math.nan, dist, None, spec.trials, spec.seed)
        if m == "outage":
            analytic = metrics.outage_probability(cfg, p)
        elif m == "outage-asymptotic":
            analytic = metrics.outage_asymptotic(cfg, p)
        elif m == "sep":
            analytic = metrics.sep_bpsk_closed_form(cfg, p)
        elif m == "sep-asymptotic":
            analytic = metrics.sep_asymptotic(cfg, p)
        elif m == "se":
            analytic = metrics.spectral_efficiency(cfg, p)
        elif m == "se-sectorized":
            analytic = metrics.spectral_efficiency_sectorized(cfg, p)
        else:
            analytic = metrics.energy_efficiency(cfg, spec.power, p)
        if spec.mc and cfg.symmetric_users:
            gains = cache.get(cfg, spec.trials, spec.seed)
            if m in ("outage", "outage-asymptotic"):
                mc = montecarlo.estimate_outage(cfg, p, spec.trials, spec.seed, gains=gains)
            elif m in ("sep", "sep-asymptotic"):
                mc = montecarlo.estimate_sep_bpsk(cfg, p, spec.trials, spec.seed, gains=gains)
            elif m in ("se", "se-sectorized"):
                mc = montecarlo.estimate_se(cfg, p, spec.trials, spec.seed, gains=gains)
            else:
                mc = montecarlo.estimate_ee(cfg, spec.power, p, spec.trials, spec.seed, gains=gains)
        if mc is None:
            return MetricPoint(value, m, analytic)
        return MetricPoint(value, m, analytic, mc.value, mc.std_error, mc.trials, mc.seed)
    except (ArithmeticError, ValueError) as exc:
        return MetricPoint(value, m, math.nan, error=f"{type(exc).__name__}: {exc}")


def run_sweep(spec: SweepSpec) -> list:
    """Evaluate every grid point; rows come back in grid order."""
    cache = _GainCache()
    grid = spec.grid()
    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(lambda v: _evaluate(spec, v, cache), grid))
    return [_evaluate(spec, v, cache) for v in grid]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return "%.17g" % x


def format_csv(points: Sequence[MetricPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for pt in points:
        writer.writerow([_fmt(pt.sweep_value), pt.metric, _fmt(pt.analytic), _fmt(pt.mc_value),
                         _fmt(pt.mc_stderr), _fmt(pt.trials), _fmt(pt.seed)])
    return buf.getvalue()


def gnuplot_script(spec: SweepSpec, csv_path: str) -> str:
    lines = [
        "# gnuplot script",
        "set datafile separator ','",
        f"set xlabel '{spec.variable}'",
        f"set ylabel '{spec.metric}'",
        "set grid",
    ]
    if spec.metric in LOG_SCALE_METRICS:
        lines.append("set logscale y")
        lines.append("set format y '10^{%L}'")
    series = [f"'{csv_path}' every ::1 using 1:3 with lines title 'analytic'"]
    if spec.mc or spec.metric == "cdf-distance":
        series.append(f"'{csv_path}' every ::1 using 1:4 with points pt 7 title 'monte carlo'")
    lines.append("plot " + ", \\\n     ".join(series))
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- validation

@dataclass(frozen=True)
class Check:
    metric: str
    tx_power_dbm: float
    analytic: float
    mc_value: float
    mc_stderr: float
    z_score: float
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple
    sigma: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def format(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("metric", "tx_power_dbm", "analytic", "mc_value", "mc_stderr", "z_score", "status"))
        for c in self.checks:
            writer.writerow((c.metric, _fmt(c.tx_power_dbm), _fmt(c.analytic), _fmt(c.mc_value),
                             _fmt(c.mc_stderr), "%.3f" % c.z_score, "pass" if c.passed else "FAIL"))
        n_fail = sum(not c.passed for c in self.checks)
        buf.write(f"# {len(self.checks)} checks, {n_fail} failed, tolerance {self.sigma:g} stderr: "
                  f"{'PASS' if self.passed else 'FAIL'}\n")
        return buf.getvalue()


DEFAULT_VALIDATION_GRID = tuple(float(p) for p in range(0, 21, 2))
PROBABILITY_WINDOW = (1e-4, 1.0 - 1e-4)


def validate(cfg: SystemConfig, grid: Sequence[float] = DEFAULT_VALIDATION_GRID, trials: int = 100_000,
             seed: int = 1, sigma: float = 3.0) -> ValidationReport:
    """Closed form against Monte Carlo on a power grid.

    Checks outage and BPSK SEP (only where the analytic probability lies in
    [1e-4, 1 - 1e-4]), spectral efficiency under the matched law, and the MGF
    at s = -1/E[SNR].  Each check passes when |analytic - MC| <= sigma * stderr.
    """
    gains = montecarlo.draw_config_gain(cfg, trials, seed)
    checks = []

    def add(name, p, analytic, est):
        se = est.std_error
        z = (analytic - est.value) / se if se > 0 else (0.0 if analytic == est.value else math.inf)
        checks.append(Check(name, p, analytic, est.value, se, z, abs(z) <= sigma))

    lo, hi = PROBABILITY_WINDOW
    for p in grid:
        out = metrics.outage_probability(cfg, p)
        if lo <= out <= hi:
            add("outage", p, out, montecarlo.estimate_outage(cfg, p, trials, seed, gains=gains))
        sep = metrics.sep_bpsk_closed_form(cfg, p)
        if lo <= sep <= hi:
            add("sep", p, sep, montecarlo.estimate_sep_bpsk(cfg, p, trials, seed, gains=gains))
        add("se", p, metrics.spectral_efficiency(cfg, p, method="gamma"),
            montecarlo.estimate_se(cfg, p, trials, seed, gains=gains))
        d = gammastats.snr_distribution(cfg, p)
        s = -1.0 / d.mean
        add("mgf", p, float(d.mgf(s)), montecarlo.estimate_mgf(cfg, p, s, trials, seed, gains=gains))
    return ValidationReport(tuple(checks), sigma)


# --------------------------------------------------------- configuration

def _coerce(section: str, key: str, raw: str, target_type):
    try:
        if target_type is bool:
            return raw.strip().lower() in ("1", "true", "yes", "on")
        if target_type is int:
            f = float(raw)
            if int(f) != f:
                raise ValueError
            return int(f)
        return target_type(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key}", f"cannot parse {raw!r} as {target_type.__name__}") from None


def _field_types(cls) -> dict:
    hints = {"int": int, "float": float, "str": str, "bool": bool}
    out = {}
    for f in dataclasses.fields(cls):
        name = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", "float")
        out[f.name] = hints.get(name, float)
    return out


def load_config_file(path: str) -> tuple[dict, dict, dict]:
    """Read [system], [power-model] and [sweep] sections as override dicts."""
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError("config", f"malformed file {path}: {exc}") from None
    unknown = set(parser.sections()) - {"system", "power-model", "sweep"}
    if unknown:
        raise ConfigError("config", f"unknown section(s): {', '.join(sorted(unknown))}")

    sys_types = _field_types(SystemConfig)
    sys_types.pop("users_per_sector")
    sys_types.pop("user_links")
    sys_types["elements_total"] = int
    system = {}
    if parser.has_section("system"):
        for key, raw in parser.items("system"):
            if key not in sys_types:
                raise ConfigError(f"system.{key}", "unknown key")
            system[key] = _coerce("system", key, raw, sys_types[key])

    pm_types = _field_types(PowerModel)
    power = {}
    if parser.has_section("power-model"):
        for key, raw in parser.items("power-model"):
            if key not in pm_types:
                raise ConfigError(f"power-model.{key}", "unknown key")
            power[key] = _coerce("power-model", key, raw, pm_types[key])

    sweep_types = {"metric": str, "sweep": str, "mc": bool, "trials": int, "seed": int, "workers": int}
    sweep = {}
    if parser.has_section("sweep"):
        for key, raw in parser.items("sweep"):
            if key not in sweep_types:
                raise ConfigError(f"sweep.{key}", "unknown key")
            sweep[key] = _coerce("sweep", key, raw, sweep_types[key])
    return system, power, sweep


def parse_range(text: str) -> tuple[str, float, float, float]:
    """VAR=START:STOP:STEP -> (var, start, stop, step)."""
    try:
        var, rng = text.split("=", 1)
        parts = [float(x) for x in rng.split(":")]
    except ValueError:
        raise ConfigError("sweep", f"expected VAR=START:STOP:STEP, got {text!r}") from None
    if len(parts) != 3:
        raise ConfigError("sweep", f"expected VAR=START:STOP:STEP, got {text!r}")
    return var.strip(), parts[0], parts[1], parts[2]


def _build_system(file_values: dict, args) -> SystemConfig:
    values = dict(file_values)
    for dest, fld in _SYSTEM_FLAGS.items():
        v = getattr(args, dest, None)
        if v is not None:
            values[fld] = v
    total = values.pop("elements_total", None)
    if getattr(args, "elements_total", None) is not None:
        total = args.elements_total
    if getattr(args, "elements_per_sector", None) is not None:
        values["elements_per_sector"] = args.elements_per_sector
        total = None
    cfg = SystemConfig(**values)
    if total is not None:
        cfg = cfg.with_total_elements(total)
    return cfg


def _echo(out, cfg: SystemConfig, pm: Optional[PowerModel] = None, extra: Optional[dict] = None) -> None:
    lines = ["# resolved configuration"]
    for f in dataclasses.fields(cfg):
        lines.append(f"# system.{f.name} = {getattr(cfg, f.name)}")
    lines.append(f"# system.elements_total = {cfg.total_elements}")
    lines.append(f"# system.snr_threshold = {_fmt(snr_threshold(cfg.users, cfg.rate_target_bpcu))}")
    if pm is not None:
        for f in dataclasses.fields(pm):
            lines.append(f"# power-model.{f.name} = {getattr(pm, f.name)}")
    for k, v in (extra or {}).items():
        lines.append(f"# sweep.{k} = {v}")
    out.write("\n".join(lines) + "\n")


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("scenario")
    g.add_argument("--config", metavar="PATH", help="INI file with [system], [power-model], [sweep] sections")
    g.add_argument("--sectors", type=int, help="number of sectors L")
    g.add_argument("--elements-total", type=int, help="total elements Z = L*M")
    g.add_argument("--elements-per-sector", type=int, help="elements per sector M (overrides --elements-total)")
    g.add_argument("--kappa-h", type=float, help="Rician factor of the BS-RIS link")
    g.add_argument("--kappa-g", type=float, help="Rician factor of the RIS-user link")
    g.add_argument("--dist-ris", type=float, help="BS-RIS distance in m")
    g.add_argument("--dist-user", type=float, help="RIS-user distance in m")
    g.add_argument("--eta-ris", type=float, help="BS-RIS path-loss exponent")
    g.add_argument("--eta-user", type=float, help="RIS-user path-loss exponent")
    g.add_argument("--users", type=int, help="number of users K")
    g.add_argument("--rate-bpcu", type=float, help="per-user target rate R")
    g.add_argument("--tx-power-dbm", type=float, help="transmit power when it is not swept")
    g.add_argument("--noise-dbm", type=float, help="noise power in dBm")
    g.add_argument("--freq-hz", type=float, help="carrier frequency")


def _add_mc_flags(p: argparse.ArgumentParser, trials_default: Optional[int]) -> None:
    p.add_argument("--trials", type=int, default=trials_default, help="Monte Carlo trials per point")
    p.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")
    p.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdris", description="Multi-sector BD-RIS link analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate a metric over a parameter range")
    _add_system_flags(sw)
    sw.add_argument("--metric", choices=METRICS)
    sw.add_argument("--sweep", metavar="VAR=START:STOP:STEP", help=f"VAR in {{{', '.join(SWEEP_VARS)}}}")
    sw.add_argument("--mc", action="store_true", default=None, help="add Monte Carlo estimates")
    sw.add_argument("--workers", type=int, default=None, help="parallel grid workers")
    sw.add_argument("--plot-script", metavar="PATH", help="also write a gnuplot script for the CSV")
    _add_mc_flags(sw, None)

    va = sub.add_parser("validate", help="closed form vs Monte Carlo agreement report")
    _add_system_flags(va)
    va.add_argument("--sweep", metavar="tx-power-dbm=START:STOP:STEP", help="power grid")
    va.add_argument("--sigma", type=float, default=3.0, help="tolerance in standard errors")
    _add_mc_flags(va, None)

    so = sub.add_parser("solve", help="minimum total elements for an outage target")
    _add_system_flags(so)
    so.add_argument("--target", type=float, default=1e-2, help="outage target")
    so.add_argument("--z-max", type=int, default=metrics.DEFAULT_Z_MAX, help="largest total element count")

    sd = sub.add_parser("show-dist", help="matched gamma parameters and asymptotic law")
    _add_system_flags(sd)
    return parser


def _write(path: Optional[str], text: str, stdout) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _cmd_sweep(args, stdout, stderr) -> int:
    sys_file, pm_file, sweep_file = load_config_file(args.config) if args.config else ({}, {}, {})
    cfg = _build_system(sys_file, args)
    pm = PowerModel(**pm_file)
    metric = args.metric or sweep_file.get("metric")
    rng_text = args.sweep or sweep_file.get("sweep")
    if metric is None:
        raise ConfigError("metric", "no metric given (use --metric or [sweep] metric)")
    if rng_text is None:
        raise ConfigError("sweep", "no range given (use --sweep or [sweep] sweep)")
    var, start, stop, step = parse_range(rng_text)
    mc = args.mc if args.mc is not None else sweep_file.get("mc", False)
    trials = args.trials if args.trials is not None else sweep_file.get("trials", 100_000)
    seed = args.seed if args.seed is not None else sweep_file.get("seed", 1)
    workers = args.workers if args.workers is not None else sweep_file.get("workers", 1)
    if args.plot_script and not args.out:
        raise ConfigError("plot-script", "--plot-script needs --out so the script can reference the CSV")
    spec = SweepSpec(metric, var, start, stop, step, cfg, pm, bool(mc), trials, seed, max(1, workers))
    _echo(stderr, cfg, pm, {"metric": metric, "range": f"{var}={_fmt(start)}:{_fmt(stop)}:{_fmt(step)}",
                            "mc": spec.mc, "trials": trials, "seed": seed, "workers": spec.workers})
    points = run_sweep(spec)
    for pt in points:
        if pt.error:
            stderr.write(f"# point {_fmt(pt.sweep_value)} failed: {pt.error}\n")
    _write(args.out, format_csv(points), stdout)
    if args.plot_script:
        _write(args.plot_script, gnuplot_script(spec, args.out), stdout)
    return EXIT_ALL_FAILED if all(pt.error for pt in points) else EXIT_OK


def _cmd_validate(args, stdout, stderr) -> int:
    sys_file, _, sweep_file = load_config_file(args.config) if args.config else ({}, {}, {})
    cfg = _build_system(sys_file, args)
    trials = args.trials if args.trials is not None else sweep_file.get("trials", 100_000)
    seed = args.seed if args.seed is not None else sweep_file.get("seed", 1)
    if args.sweep:
        var, start, stop, step = parse_range(args.sweep)
        if var != "tx-power-dbm":
            raise ConfigError("sweep", "validate only sweeps tx-power-dbm")
        grid = SweepSpec("se", var, start, stop, step, cfg).grid()
    else:
        grid = list(DEFAULT_VALIDATION_GRID)
    _echo(stderr, cfg, extra={"grid": ",".join(_fmt(g) for g in grid), "trials": trials, "seed": seed})
    report = validate(cfg, grid, trials, seed, args.sigma)
    _write(args.out, report.format(), stdout)
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


def _cmd_solve(args, stdout, stderr) -> int:
    sys_file, _, _ = load_config_file(args.config) if args.config else ({}, {}, {})
    cfg = _build_system(sys_file, args)
    _echo(stderr, cfg, extra={"target": args.target, "z_max": args.z_max})
    try:
        z = metrics.solve_elements_for_outage(cfg, args.target, z_max=args.z_max)
    except metrics.UnreachableTargetError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_ALL_FAILED
    m = z // cfg.sectors
    out = metrics.outage_probability(cfg.updated(elements_per_sector=m))
    stdout.write(f"elements_total,elements_per_sector,outage\n{z},{m},{_fmt(out)}\n")
    return EXIT_OK


def _cmd_show_dist(args, stdout, stderr) -> int:
    sys_file, _, _ = load_config_file(args.config) if args.config else ({}, {}, {})
    cfg = _build_system(sys_file, args)
    _echo(stderr, cfg)
    y = gammastats.cascade_gamma(cfg.kappa_h, cfg.kappa_g, cfg.elements_per_sector)
    d = gammastats.snr_distribution(cfg)
    rows = [
        ("shape_y", y.shape), ("scale_y", y.scale),
        ("shape_y2", d.gamma.shape), ("scale_y2", d.gamma.scale),
        ("pathloss", d.alpha), ("rho", d.rho), ("snr_scale", d.scale), ("snr_mean", d.mean),
        ("diversity_order", metrics.asymptotic_law(cfg).diversity_order),
        ("coding_gain_outage", metrics.asymptotic_law(cfg, "outage").coding_gain),
        ("coding_gain_sep", metrics.asymptotic_law(cfg, "sep").coding_gain),
    ]
    stdout.write("quantity,value\n" + "".join(f"{k},{_fmt(v)}\n" for k, v in rows))
    return EXIT_OK


_COMMANDS = {"sweep": _cmd_sweep, "validate": _cmd_validate, "solve": _cmd_solve, "show-dist": _cmd_show_dist}


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, stdout, stderr)
    except ConfigError as exc:
        stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
