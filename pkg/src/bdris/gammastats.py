"""Gamma moment matching of the cascaded gain and the resulting SNR law.

The co-phased cascade ``Y`` is a sum of ``M`` i.i.d. products of Rician
amplitudes.  It is replaced by a gamma variable with the same mean and
variance, ``Y^2`` is then matched again from the gamma raw moments, and the
SNR ``rho * alpha * Y^2`` inherits a gamma law with a scaled scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from bdris import channel
from bdris.specfun import ln_gamma, log_reg_lower_gamma, log_reg_upper_gamma, laguerre_half

# Relative variance floor below which the fit is rejected as degenerate.
DEGENERATE_REL_VAR = 1e-12


class DegenerateFitError(ArithmeticError):
    """Variance too small relative to the mean for a finite-shape gamma fit."""


@dataclass(frozen=True)
class GammaParams:
    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0 and math.isfinite(self.shape) and math.isfinite(self.scale)):
            raise ValueError(f"gamma parameters must be positive and finite, got k={self.shape!r}, theta={self.scale!r}")

    @property
    def mean(self) -> float:
        return self.shape * self.scale

    @property
    def var(self) -> float:
        return self.shape * self.scale * self.scale


def coherence_factor(kappa_h: float, kappa_g: float) -> float:
    """Omega = E[|h||g|]^2, the squared mean of one amplitude product."""
    lh = laguerre_half(-kappa_h)
    lg = laguerre_half(-kappa_g)
    return math.pi**2 * lh * lh * lg * lg / (16.0 * (kappa_h + 1.0) * (kappa_g + 1.0))


def product_sum_moments(kappa_h: float, kappa_g: float, elements: int) -> tuple[float, float]:
    """Mean and variance of Y = sum_{m=1}^{M} |h_m| |g_m|."""
    if kappa_h < 0 or kappa_g < 0:
        raise ValueError("Rician factors must be nonnegative")
    if elements < 1:
        raise ValueError(f"need at least one element, got {elements}")
    omega = coherence_factor(kappa_h, kappa_g)
    return elements * math.sqrt(omega), elements * (1.0 - omega)


def fit_gamma(mean: float, var: float) -> GammaParams:
    """Gamma law with the given mean and variance: k = mean^2/var, theta = var/mean."""
    if not mean > 0:
        raise ValueError(f"mean must be positive, got {mean!r}")
    if not var > DEGENERATE_REL_VAR * mean * mean:
        raise DegenerateFitError(
            f"variance {var!r} is below {DEGENERATE_REL_VAR:g} * mean^2; the matched shape would be unbounded"
        )
    return GammaParams(mean * mean / var, var / mean)


def raw_moment(g: GammaParams, n: float) -> float:
    """E[Y^n] = Gamma(k + n) / Gamma(k) * theta^n."""
    return math.exp(ln_gamma(g.shape + n) - ln_gamma(g.shape) + n * math.log(g.scale))


def square_moments(g: GammaParams) -> tuple[float, float]:
    """Mean and variance of Y^2 for Y ~ Gamma(k, theta).

    The variance uses the expanded polynomial k (k+1) (4k+6) theta^4, which
    equals the Gamma-ratio difference but has no cancellation at large k.
    """
    k, t = g.shape, g.scale
    t2 = t * t
    return k * (k + 1.0) * t2, k * (k + 1.0) * (4.0 * k + 6.0) * t2 * t2


def cascade_gamma(kappa_h: float, kappa_g: float, elements: int) -> GammaParams:
    """Matched gamma law of Y."""
    return fit_gamma(*product_sum_moments(kappa_h, kappa_g, elements))


def squared_cascade_gamma(kappa_h: float, kappa_g: float, elements: int) -> GammaParams:
    """Matched gamma law of Y^2 (second matching stage)."""
    return fit_gamma(*square_moments(cascade_gamma(kappa_h, kappa_g, elements)))


def _elementwise(func, y):
    arr = np.asarray(y, dtype=float)
    if arr.ndim == 0:
        return func(float(arr))
    return np.array([func(v) for v in arr.ravel()]).reshape(arr.shape)


@dataclass(frozen=True)
class SnrDistribution:
    """SNR ~ Gamma(k, rho * alpha * theta) with (k, theta) the law of Y^2."""

    gamma: GammaParams
    rho: float
    alpha: float

    @property
    def shape(self) -> float:
        return self.gamma.shape

    @property
    def scale(self) -> float:
        return self.rho * self.alpha * self.gamma.scale

    @property
    def mean(self) -> float:
        return self.shape * self.scale

    @property
    def var(self) -> float:
        return self.shape * self.scale**2

    def log_cdf(self, y):
        return _elementwise(lambda v: log_reg_lower_gamma(self.shape, max(v, 0.0) / self.scale), y)

    def cdf(self, y):
        return np.exp(self.log_cdf(y))[()]

    def log_sf(self, y):
        return _elementwise(lambda v: log_reg_upper_gamma(self.shape, max(v, 0.0) / self.scale), y)

    def sf(self, y):
        return np.exp(self.log_sf(y))[()]

    def log_pdf(self, y):
        k, s = self.shape, self.scale

        def one(v):
            if v < 0:
                return -math.inf
            if v == 0:
                return math.log(1.0 / s) if k == 1 else (math.inf if k < 1 else -math.inf)
            return (k - 1.0) * math.log(v) - v / s - ln_gamma(k) - k * math.log(s)

        return _elementwise(one, y)

    def pdf(self, y):
        return np.exp(self.log_pdf(y))[()]

    def mgf(self, s):
        """(1 - s * scale)^(-k) for s <= 0, as exp(-k * log1p(-s * scale))."""
        k, sc = self.shape, self.scale

        def one(v):
            if v > 0:
                raise ValueError("mgf is only evaluated for nonpositive arguments")
            return math.exp(-k * math.log1p(-v * sc))

        return _elementwise(one, s)


def snr_distribution(cfg: channel.SystemConfig, tx_power_dbm: Optional[float] = None, user: int = 0) -> SnrDistribution:
    """Matched SNR law for one user of the configuration."""
    link = cfg.user_link(user)
    g2 = squared_cascade_gamma(cfg.kappa_h, link.kappa_g, cfg.elements_per_sector)
    return SnrDistribution(g2, channel.transmit_snr(cfg, tx_power_dbm), channel.pathloss(cfg, user))


def snr_cdf(d: SnrDistribution, y):
    return d.cdf(y)


def snr_pdf(d: SnrDistribution, y):
    return d.pdf(y)


def snr_mgf(d: SnrDistribution, s):
    return d.mgf(s)
