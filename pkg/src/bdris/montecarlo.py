"""Monte Carlo oracle for the closed-form metrics.

Trials are split into fixed-size blocks, and block ``i`` draws from its own
substream ``SeedSequence(seed, spawn_key=(i,))``.  Blocks are concatenated
in index order, so results depend only on (seed, n) and never on how many
workers evaluated the blocks.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special

from bdris import channel, gammastats
from bdris.channel import SystemConfig

BLOCK_SIZE = 4096
TAIL_WARN_COUNT = 20


class TailWarning(UserWarning):
    """Too few events in the sample for the standard error to be trusted."""


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    trials: int
    seed: int


def block_rng(seed: int, block: int, user: int = 0) -> np.random.Generator:
    """Substream for one block; users other than 0 get their own key branch."""
    key = (block,) if user == 0 else (block, user)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def _blocks(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise ValueError(f"need at least one trial, got {n}")
    return [(i, min(BLOCK_SIZE, n - i * BLOCK_SIZE)) for i in range(-(-n // BLOCK_SIZE))]


def _rician_amplitude(kappa: float, shape, rng: np.random.Generator) -> np.ndarray:
    # |sqrt(k/(k+1)) e^{j phi} + CN(0, 1/(k+1))| does not depend on phi, so the
    # LoS phase is dropped here; the magnitude law is unchanged.
    los = math.sqrt(kappa / (kappa + 1.0))
    s = math.sqrt(0.5 / (kappa + 1.0))
    x = rng.standard_normal(shape)
    y = rng.standard_normal(shape)
    x *= s
    x += los
    y *= s
    x *= x
    y *= y
    x += y
    return np.sqrt(x, out=x)


def _gain_block(kappa_h: float, kappa_g: float, elements: int, seed: int, user: int,
                block: int, size: int) -> np.ndarray:
    rng = block_rng(seed, block, user)
    a = _rician_amplitude(kappa_h, (size, elements), rng)
    b = _rician_amplitude(kappa_g, (size, elements), rng)
    return np.einsum("ij,ij->i", a, b)


def draw_cascaded_gain(kappa_h: float, kappa_g: float, elements: int, n: int, seed: int,
                       workers: int = 1, user: int = 0) -> np.ndarray:
    """n independent draws of Y = sum_m |h_m| |g_m| under optimal co-phasing."""
    blocks = _blocks(n)

    def run(b):
        return _gain_block(kappa_h, kappa_g, elements, seed, user, *b)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    return np.concatenate(parts)


def draw_config_gain(cfg: SystemConfig, n: int, seed: int, user: int = 0, workers: int = 1) -> np.ndarray:
    link = cfg.user_link(user)
    return draw_cascaded_gain(cfg.kappa_h, link.kappa_g, cfg.elements_per_sector, n, seed, workers, user)


def draw_snr_samples(cfg: SystemConfig, tx_power_dbm: Optional[float], n: int, seed: int,
                     user: int = 0, workers: int = 1, gains: Optional[np.ndarray] = None) -> np.ndarray:
    """SNR draws rho * alpha * Y^2.  Pass ``gains`` to reuse channel draws."""
    y = draw_config_gain(cfg, n, seed, user, workers) if gains is None else gains
    return channel.transmit_snr(cfg, tx_power_dbm) * channel.pathloss(cfg, user) * y * y


def _mean_estimate(values: np.ndarray, seed: int) -> McEstimate:
    n = values.size
    se = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else math.inf
    return McEstimate(float(values.mean()), se, n, seed)


def estimate_outage(cfg: SystemConfig, tx_power_dbm: Optional[float], n: int, seed: int,
                    gains: Optional[np.ndarray] = None, workers: int = 1) -> McEstimate:
    """Fraction of draws with SNR <= psi, with its binomial standard error."""
    psi = channel.snr_threshold(cfg.users, cfg.rate_target_bpcu)
    if psi <= 0.0:
        return McEstimate(0.0, 0.0, n if gains is None else gains.size, seed)
    snr = draw_snr_samples(cfg, tx_power_dbm, n, seed, workers=workers, gains=gains)
    n = snr.size
    hits = int(np.count_nonzero(snr <= psi))
    p = hits / n
    if hits < TAIL_WARN_COUNT:
        warnings.warn(f"only {hits} outage events in {n} trials; the standard error is unreliable",
                      TailWarning, stacklevel=2)
    return McEstimate(p, math.sqrt(p * (1.0 - p) / n), n, seed)


def estimate_sep_bpsk(cfg: SystemConfig, tx_power_dbm: Optional[float], n: int, seed: int,
                      gains: Optional[np.ndarray] = None, workers: int = 1) -> McEstimate:
    """Semi-analytic BPSK SEP: mean of Q(sqrt(2 SNR)) = erfc(sqrt(SNR)) / 2."""
    snr = draw_snr_samples(cfg, tx_power_dbm, n, seed, workers=workers, gains=gains)
    return _mean_estimate(0.5 * special.erfc(np.sqrt(snr)), seed)


def estimate_se(cfg: SystemConfig, tx_power_dbm: Optional[float], n: int, seed: int,
                gains: Optional[np.ndarray] = None, workers: int = 1) -> McEstimate:
    """Sample mean of the per-user average rate (1/K) sum log2(1 + SNR)."""
    if cfg.symmetric_users:
        snr = draw_snr_samples(cfg, tx_power_dbm, n, seed, workers=workers, gains=gains)
        return _mean_estimate(np.log1p(snr) / math.log(2.0), seed)
    rates = np.zeros(n)
    for u in range(cfg.users):
        snr = draw_snr_samples(cfg, tx_power_dbm, n, seed, user=u, workers=workers)
        rates += np.log1p(snr) / math.log(2.0)
    return _mean_estimate(rates / cfg.users, seed)


def estimate_mgf(cfg: SystemConfig, tx_power_dbm: Optional[float], s: float, n: int, seed: int,
                 gains: Optional[np.ndarray] = None, workers: int = 1) -> McEstimate:
    """Sample mean of exp(s * SNR) for s <= 0."""
    if s > 0:
        raise ValueError("mgf estimate only for nonpositive s")
    snr = draw_snr_samples(cfg, tx_power_dbm, n, seed, workers=workers, gains=gains)
    return _mean_estimate(np.exp(s * snr), seed)


def estimate_ee(cfg: SystemConfig, pm, tx_power_dbm: Optional[float], n: int, seed: int,
                gains: Optional[np.ndarray] = None, workers: int = 1) -> McEstimate:
    """Energy efficiency with the exact (sampled) spectral efficiency."""
    se = estimate_se(cfg, tx_power_dbm, n, seed, gains, workers)
    scale = pm.bandwidth_hz / pm.total_power_w(cfg, tx_power_dbm)
    return McEstimate(se.value * scale, se.std_error * scale, se.trials, seed)


def analytic_cdf_values(d: gammastats.SnrDistribution, x: np.ndarray) -> np.ndarray:
    """Vectorized matched-law CDF used for the sup-distance statistic."""
    return special.gammainc(d.shape, np.asarray(x, dtype=float) / d.scale)


def sup_distance(sorted_samples: np.ndarray, cdf_values: np.ndarray) -> float:
    """Kolmogorov sup |F_n - F| given F at the sorted sample points."""
    n = sorted_samples.size
    upper = np.arange(1, n + 1) / n - cdf_values
    lower = cdf_values - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def empirical_cdf_distance(cfg: SystemConfig, tx_power_dbm: Optional[float], n: int, seed: int,
                           samples: Optional[np.ndarray] = None, workers: int = 1) -> float:
    """Sup-distance between the empirical SNR CDF and the matched gamma CDF."""
    snr = draw_snr_samples(cfg, tx_power_dbm, n, seed, workers=workers) if samples is None else samples
    snr = np.sort(np.asarray(snr, dtype=float))
    d = gammastats.snr_distribution(cfg, tx_power_dbm)
    return sup_distance(snr, analytic_cdf_values(d, snr))
