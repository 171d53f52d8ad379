"""Closed-form link metrics built on the matched SNR law.

Outage, M-PSK symbol error probability, spectral and energy efficiency,
their high-SNR asymptotes, and a few inverse queries (elements or power
needed to reach a target).  Tail probabilities are evaluated in log form
first; the ``log_*`` variants stay finite far below 1e-308.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from bdris import channel, gammastats
from bdris.channel import ConfigError, SystemConfig
from bdris.specfun import gauss_2f1_unit_a, ln_gamma

LOG_SQRT_PI = 0.5 * math.log(math.pi)
SEP_DELTA_GUARD = 1e-9
DEFAULT_Z_MAX = 10_000


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class UnreachableTargetError(ValueError):
    """The requested target cannot be met inside the search range."""


@dataclass(frozen=True)
class PowerModel:
    """Static power budget used by the energy-efficiency metric.

    ``ris_scaling`` selects how phase-shifter power is counted: ``"total"``
    charges every element of the surface once (Z * P_e); ``"per-user"``
    charges the active sector once per served user (K * M * P_e).
    """

    amp_efficiency: float = 0.5
    p_ue_w: float = 0.01
    p_bs_w: float = 0.01
    p_sw_w: float = 0.01
    p_element_w: float = 0.5e-3
    bandwidth_hz: float = 10e6
    ris_scaling: str = "total"

    def __post_init__(self):
        if not 0.0 < self.amp_efficiency <= 1.0:
            raise ConfigError("amp_efficiency", f"must lie in (0, 1], got {self.amp_efficiency!r}")
        for name in ("p_ue_w", "p_bs_w", "p_sw_w", "p_element_w", "bandwidth_hz"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ConfigError(name, f"must be nonnegative and finite, got {v!r}")
        if self.ris_scaling not in ("total", "per-user"):
            raise ConfigError("ris_scaling", f"must be 'total' or 'per-user', got {self.ris_scaling!r}")

    def ris_power_w(self, cfg: SystemConfig) -> float:
        if self.ris_scaling == "total":
            return cfg.total_elements * self.p_element_w
        return cfg.users * cfg.elements_per_sector * self.p_element_w

    def total_power_w(self, cfg: SystemConfig, tx_power_dbm: Optional[float] = None) -> float:
        p = channel.dbm_to_watts(cfg.tx_power_dbm if tx_power_dbm is None else tx_power_dbm)
        per_user = p / self.amp_efficiency + self.p_ue_w
        return float(cfg.users * per_user + self.p_bs_w + self.ris_power_w(cfg) + self.p_sw_w)


@dataclass(frozen=True)
class AsymptoticLaw:
    """High-SNR behaviour P ~ (coding_gain * rho)^(-diversity_order)."""

    coding_gain: float
    diversity_order: float


def _threshold(cfg: SystemConfig) -> float:
    return channel.snr_threshold(cfg.users, cfg.rate_target_bpcu)


def _exp_or_inf(x: float) -> float:
    # asymptotes are unbounded at low SNR; report inf rather than raise
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _users(cfg: SystemConfig) -> range:
    return range(1) if cfg.symmetric_users else range(cfg.users)


# ---------------------------------------------------------------- outage

def log_outage_probability(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    """ln P(SNR <= psi) with psi = 2^(K R) - 1."""
    psi = _threshold(cfg)
    if psi == 0.0:
        return -math.inf
    d = gammastats.snr_distribution(cfg, tx_power_dbm, user)
    return float(d.log_cdf(psi))


def outage_probability(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    """Outage probability F_gamma(psi) under the matched gamma SNR law."""
    return math.exp(log_outage_probability(cfg, tx_power_dbm, user))


def log_outage_asymptotic(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    psi = _threshold(cfg)
    if psi == 0.0:
        return -math.inf
    d = gammastats.snr_distribution(cfg, tx_power_dbm, user)
    k = d.shape
    return k * math.log(psi / d.scale) - ln_gamma(k + 1.0)


def outage_asymptotic(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    """High-SNR outage [alpha theta rho / (psi Gamma(k+1)^(-1/k))]^(-k)."""
    return _exp_or_inf(log_outage_asymptotic(cfg, tx_power_dbm, user))


def asymptotic_law(cfg: SystemConfig, metric: str = "outage", user: int = 0) -> AsymptoticLaw:
    """Coding gain and diversity order of the outage or BPSK SEP asymptote.

    Both share the diversity order k of the matched Y^2 law; the coding gain
    multiplies rho.
    """
    d = gammastats.snr_distribution(cfg, 0.0, user)
    k = d.shape
    base = d.alpha * d.gamma.scale
    if metric == "outage":
        log_gc = math.log(base) + ln_gamma(k + 1.0) / k - math.log(_threshold(cfg))
    elif metric == "sep":
        log_gc = math.log(base) + (math.log(2.0) + LOG_SQRT_PI + ln_gamma(k + 1.0) - ln_gamma(k + 0.5)) / k
    else:
        raise ValueError(f"unknown metric {metric!r}; expected 'outage' or 'sep'")
    return AsymptoticLaw(math.exp(log_gc), k)


def diversity_order(cfg: SystemConfig, user: int = 0) -> float:
    return gammastats.snr_distribution(cfg, 0.0, user).shape


# ------------------------------------------------------------------- SEP

def sep_mpsk(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, mod_order: int = 2,
             user: int = 0, epsabs: float = 1e-12, epsrel: float = 1e-11) -> float:
    """M-PSK symbol error probability by the MGF method.

    (1/pi) * integral_0^{(M-1) pi / M} MGF(-sin^2(pi/M) / sin^2 d) dd, with the
    lower limit moved to a small guard where the integrand is already zero.
    """
    if mod_order < 2 or mod_order & (mod_order - 1):
        raise ValueError(f"mod_order must be a power of two >= 2, got {mod_order!r}")
    d = gammastats.snr_distribution(cfg, tx_power_dbm, user)
    k, b = d.shape, d.scale
    g = math.sin(math.pi / mod_order) ** 2
    upper = (mod_order - 1) * math.pi / mod_order

    def integrand(delta: float) -> float:
        return math.exp(-k * math.log1p(b * g / math.sin(delta) ** 2))

    # epsabs alone is useless for tiny SEPs, so a relative target is kept too.
    res = integrate.quad(integrand, SEP_DELTA_GUARD, upper, epsabs=0.0, epsrel=epsrel,
                         limit=400, full_output=1)
    val, err = res[0], res[1]
    if len(res) > 3 and err > max(epsabs, 1e3 * epsrel * abs(val)):
        raise QuadratureError(f"SEP quadrature did not converge ({res[3].splitlines()[0]}); "
                              f"value {val!r}, error estimate {err!r}")
    return val / math.pi


def log_sep_bpsk_closed_form(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    d = gammastats.snr_distribution(cfg, tx_power_dbm, user)
    k, b = d.shape, d.scale
    z = 1.0 / (1.0 + b)
    zc = b / (1.0 + b)
    f = gauss_2f1_unit_a(k + 0.5, k + 1.0, z, complement=zc)
    return (-math.log(2.0) - LOG_SQRT_PI + 0.5 * math.log(b) - (k + 0.5) * math.log1p(b)
            + ln_gamma(k + 0.5) - ln_gamma(k + 1.0) + math.log(f))


def sep_bpsk_closed_form(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    """BPSK SEP in closed form.

    sqrt(b) / (2 sqrt(pi) (1+b)^(k+1/2)) * Gamma(k+1/2)/Gamma(k+1)
    * 2F1(1, k+1/2; k+1; 1/(1+b)), b = rho alpha theta.
    """
    return math.exp(log_sep_bpsk_closed_form(cfg, tx_power_dbm, user))


def log_sep_asymptotic(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    d = gammastats.snr_distribution(cfg, tx_power_dbm, user)
    k, b = d.shape, d.scale
    return -k * math.log(b) - math.log(2.0) - LOG_SQRT_PI - ln_gamma(k + 1.0) + ln_gamma(k + 0.5)


def sep_asymptotic(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> float:
    """High-SNR BPSK SEP (alpha theta (2 sqrt(pi) Gamma(k+1)/Gamma(k+1/2))^(1/k) rho)^(-k)."""
    return _exp_or_inf(log_sep_asymptotic(cfg, tx_power_dbm, user))


# ---------------------------------------------------- spectral efficiency

def _expected_log1p_gamma(shape: float, scale: float) -> float:
    """E[ln(1 + scale * X)] for X ~ Gamma(shape, 1) by adaptive quadrature."""
    lg = ln_gamma(shape)
    if shape < 1.0:
        # u = x^k flattens the x^(k-1) endpoint singularity.
        inv = 1.0 / shape

        def f(u):
            x = u**inv
            return math.log1p(scale * x) * math.exp(-x)

        hi = (60.0 + 2.0 * shape) ** shape
        val = integrate.quad(f, 0.0, hi, limit=400, epsabs=0.0, epsrel=1e-11)[0]
        return val / math.exp(ln_gamma(shape + 1.0))

    def g(x):
        return math.log1p(scale * x) * math.exp((shape - 1.0) * math.log(x) - x - lg) if x > 0 else 0.0

    spread = 40.0 * math.sqrt(shape) + 40.0
    lo = max(0.0, shape - spread)
    hi = shape + spread
    mode = shape - 1.0
    pts = [p for p in (mode,) if lo < p < hi]
    val = integrate.quad(g, lo, hi, points=pts or None, limit=400, epsabs=0.0, epsrel=1e-11)[0]
    return val


def spectral_efficiency(cfg: SystemConfig, tx_power_dbm: Optional[float] = None, method: str = "jensen",
                        trials: int = 100_000, seed: int = 0) -> float:
    """Average per-user spectral efficiency (1/K) sum_l sum_k log2(1 + SNR).

    ``method``:
      * ``"jensen"``: closed form log2(1 + rho alpha E[Y^2]), E[Y^2] = k (k+1) theta^2;
      * ``"gamma"``: E[log2(1 + SNR)] under the matched gamma SNR law;
      * ``"monte_carlo"``: sample mean over channel draws (``trials``, ``seed``).
    """
    if method == "monte_carlo":
        from bdris import montecarlo

        return montecarlo.estimate_se(cfg, tx_power_dbm, trials, seed).value
    users = _users(cfg)
    total = 0.0
    for u in users:
        d = gammastats.snr_distribution(cfg, tx_power_dbm, u)
        if method == "jensen":
            total += math.log1p(d.mean) / math.log(2.0)
        elif method == "gamma":
            total += _expected_log1p_gamma(d.shape, d.scale) / math.log(2.0)
        else:
            raise ValueError(f"unknown method {method!r}; expected 'jensen', 'gamma' or 'monte_carlo'")
    return total / len(users)


def spectral_efficiency_sectorized(cfg: SystemConfig, tx_power_dbm: Optional[float] = None,
                                   total_elements: Optional[int] = None) -> float:
    """Jensen spectral efficiency written in terms of the total element count Z.

    log2(1 + A [(Z/L)^2 Omega + (Z/L)(1 - Omega)] / (1 - cos(pi/L))^2) averaged
    over users, with A collecting rho and the distance-dependent factors.
    """
    z = cfg.total_elements if total_elements is None else total_elements
    if z % cfg.sectors:
        raise ConfigError("elements_total", f"{z} is not a multiple of sectors={cfg.sectors}")
    rho = channel.transmit_snr(cfg, tx_power_dbm)
    per_sector = z / cfg.sectors
    aperture = (1.0 - math.cos(math.pi / cfg.sectors)) ** 2
    users = _users(cfg)
    total = 0.0
    for u in users:
        link = cfg.user_link(u)
        a = rho * cfg.wavelength_m**4 * cfg.g_t * cfg.g_r / (
            4.0**3 * math.pi**4 * cfg.d_ris_m**cfg.eta_ris * link.d_user_m**link.eta_user)
        omega = gammastats.coherence_factor(cfg.kappa_h, link.kappa_g)
        gain = per_sector * per_sector * omega + per_sector * (1.0 - omega)
        total += math.log1p(a * gain / aperture) / math.log(2.0)
    return total / len(users)


def average_se_gain_percent(cfg: SystemConfig, powers_dbm: Sequence[float], base_sectors: int,
                            sectors: int) -> float:
    """Mean SE advantage of ``sectors`` over ``base_sectors`` at fixed Z.

    Returned as 100 * mean(SE_sectors - SE_base), i.e. the average difference
    in bit/s/Hz expressed in percent, over the given power grid.
    """
    z = cfg.total_elements
    a = cfg.updated(sectors=base_sectors, elements_per_sector=1).with_total_elements(z)
    b = cfg.updated(sectors=sectors, elements_per_sector=1).with_total_elements(z)
    diffs = [spectral_efficiency(b, p) - spectral_efficiency(a, p) for p in powers_dbm]
    return 100.0 * float(np.mean(diffs))


# ----------------------------------------------------- energy efficiency

def energy_efficiency(cfg: SystemConfig, pm: Optional[PowerModel] = None,
                      tx_power_dbm: Optional[float] = None) -> float:
    """Bits per joule: W * SE_jensen / P_total."""
    pm = PowerModel() if pm is None else pm
    se = spectral_efficiency(cfg, tx_power_dbm)
    return pm.bandwidth_hz * se / pm.total_power_w(cfg, tx_power_dbm)


def peak_energy_efficiency(cfg: SystemConfig, pm: Optional[PowerModel] = None,
                           lo_dbm: float = -10.0, hi_dbm: float = 40.0) -> tuple[float, float]:
    """(power in dBm, EE in bit/J) at the EE maximum inside [lo_dbm, hi_dbm]."""
    pm = PowerModel() if pm is None else pm
    grid = np.linspace(lo_dbm, hi_dbm, int(round((hi_dbm - lo_dbm) * 2)) + 1)
    vals = [energy_efficiency(cfg, pm, p) for p in grid]
    i = int(np.argmax(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(lambda p: -energy_efficiency(cfg, pm, p), bounds=(a, b),
                                   method="bounded", options={"xatol": 1e-6})
    return float(res.x), float(-res.fun)


# -------------------------------------------------------- inverse queries

def solve_elements_for_outage(cfg: SystemConfig, target_outage: float, tx_power_dbm: Optional[float] = None,
                              z_max: int = DEFAULT_Z_MAX) -> int:
    """Smallest total element count Z (a multiple of L) with outage <= target.

    Outage falls monotonically with M, so the per-sector count is bisected.
    """
    if not 0.0 < target_outage < 1.0:
        raise ValueError(f"target outage must lie in (0, 1), got {target_outage!r}")
    log_target = math.log(target_outage)
    sectors = cfg.sectors

    def meets(m: int) -> bool:
        return log_outage_probability(cfg.updated(elements_per_sector=m), tx_power_dbm) <= log_target

    hi = z_max // sectors
    if hi < 1 or not meets(hi):
        raise UnreachableTargetError(
            f"outage target {target_outage:g} not reached with Z_max={z_max} elements ({sectors} sectors)")
    if meets(1):
        return sectors
    lo = 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if meets(mid):
            hi = mid
        else:
            lo = mid
    return hi * sectors


_POWER_METRICS: dict = {
    "outage": (log_outage_probability, True),
    "sep": (log_sep_bpsk_closed_form, True),
    "se": (spectral_efficiency, False),
}


def solve_power_for_target(cfg: SystemConfig, metric: str, target: float, lo_dbm: float = -60.0,
                           hi_dbm: float = 120.0, xtol: float = 1e-9) -> float:
    """Transmit power (dBm) at which ``metric`` equals ``target``.

    ``metric`` is one of ``outage``, ``sep`` (BPSK closed form) or ``se``
    (Jensen).  Probabilities are matched in log form.
    """
    try:
        func, is_log = _POWER_METRICS[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}; expected one of {sorted(_POWER_METRICS)}") from None
    goal = math.log(target) if is_log else target

    def f(p):
        return func(cfg, p) - goal

    flo, fhi = f(lo_dbm), f(hi_dbm)
    if flo * fhi > 0:
        raise UnreachableTargetError(f"{metric} target {target:g} not bracketed in [{lo_dbm}, {hi_dbm}] dBm")
    return float(optimize.brentq(f, lo_dbm, hi_dbm, xtol=xtol))
