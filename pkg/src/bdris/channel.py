"""Scenario geometry, Rician fading and the time-switching phase configuration.

A multi-sector BD-RIS has ``L`` sectors of ``M`` elements each.  Under time
switching a user is served alone with only the sector facing it switched
on, so the end-to-end channel reduces to a single-sector cascade whose
optimal co-phased amplitude is ``Y = sum_m |h_m| |g_m|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from bdris.specfun import laguerre_half

SPEED_OF_LIGHT = 3.0e8
MAX_SECTORS = 64


class ConfigError(ValueError):
    """Invalid scenario parameter; ``field`` names the offending setting."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


def dbm_to_watts(p_dbm):
    """dBm to watts; scalars or arrays."""
    return np.power(10.0, (np.asarray(p_dbm, dtype=float) - 30.0) / 10.0)[()]


def watts_to_dbm(p_w):
    return (10.0 * np.log10(np.asarray(p_w, dtype=float)) + 30.0)[()]


def eta_for_kappa(kappa: float) -> float:
    """Path-loss exponent preset used alongside a Rician factor: 3 - kappa/10.

    Only a convenience; nothing in the package applies it implicitly.
    """
    return 3.0 - kappa / 10.0


def snr_threshold(users: int, rate_bpcu: float) -> float:
    """Outage SNR threshold 2^(K R) - 1 for K time-shared users at rate R."""
    return math.expm1(users * rate_bpcu * math.log(2.0))


@dataclass(frozen=True)
class UserLink:
    """Per-user override of the RIS-to-user link; None keeps the config value."""

    d_user_m: Optional[float] = None
    eta_user: Optional[float] = None
    kappa_g: Optional[float] = None


@dataclass(frozen=True)
class SystemConfig:
    """Scenario parameters.  Defaults follow the reference simulation setup."""

    sectors: int = 6
    elements_per_sector: int = 60
    users: int = 6
    users_per_sector: Optional[tuple] = None
    freq_hz: float = 2.4e9
    d_ris_m: float = 100.0
    d_user_m: float = 30.0
    eta_ris: float = 2.0
    eta_user: float = 2.0
    kappa_h: float = 10.0
    kappa_g: float = 10.0
    g_t: float = 1.0
    g_r: float = 1.0
    tx_power_dbm: float = 20.0
    noise_power_dbm: float = -80.0
    rate_target_bpcu: float = 0.25
    user_links: Optional[tuple] = None

    def __post_init__(self):
        _check_int("sectors", self.sectors, 2)
        if self.sectors > MAX_SECTORS:
            raise ConfigError("sectors", f"at most {MAX_SECTORS} sectors are supported, got {self.sectors}")
        _check_int("elements_per_sector", self.elements_per_sector, 1)
        _check_int("users", self.users, 1)
        for name in ("freq_hz", "d_ris_m", "d_user_m", "g_t", "g_r", "eta_ris", "eta_user"):
            _check_positive(name, getattr(self, name))
        for name in ("kappa_h", "kappa_g", "rate_target_bpcu"):
            _check_nonnegative(name, getattr(self, name))
        for name in ("tx_power_dbm", "noise_power_dbm"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(name, "must be finite")
        if self.users_per_sector is not None:
            counts = tuple(self.users_per_sector)
            if len(counts) != self.sectors:
                raise ConfigError("users_per_sector", f"needs {self.sectors} entries, got {len(counts)}")
            if any(int(c) != c or c < 0 for c in counts):
                raise ConfigError("users_per_sector", "entries must be nonnegative integers")
            if sum(counts) != self.users:
                raise ConfigError("users_per_sector", f"entries sum to {sum(counts)}, expected users={self.users}")
            object.__setattr__(self, "users_per_sector", tuple(int(c) for c in counts))
        if self.user_links is not None:
            links = tuple(self.user_links)
            if len(links) != self.users:
                raise ConfigError("user_links", f"needs {self.users} entries, got {len(links)}")
            for i, link in enumerate(links):
                if link.d_user_m is not None:
                    _check_positive(f"user_links[{i}].d_user_m", link.d_user_m)
                if link.eta_user is not None:
                    _check_positive(f"user_links[{i}].eta_user", link.eta_user)
                if link.kappa_g is not None:
                    _check_nonnegative(f"user_links[{i}].kappa_g", link.kappa_g)
            object.__setattr__(self, "user_links", links)

    @property
    def total_elements(self) -> int:
        return self.sectors * self.elements_per_sector

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.freq_hz

    def sector_user_counts(self) -> tuple:
        """Users per sector; round-robin assignment unless given explicitly."""
        if self.users_per_sector is not None:
            return self.users_per_sector
        base, extra = divmod(self.users, self.sectors)
        return tuple(base + (1 if i < extra else 0) for i in range(self.sectors))

    def user_link(self, user: int) -> UserLink:
        """Fully resolved (d_user_m, eta_user, kappa_g) for one user."""
        if not 0 <= user < self.users:
            raise IndexError(f"user index {user} out of range for {self.users} users")
        link = self.user_links[user] if self.user_links is not None else UserLink()
        return UserLink(
            d_user_m=self.d_user_m if link.d_user_m is None else link.d_user_m,
            eta_user=self.eta_user if link.eta_user is None else link.eta_user,
            kappa_g=self.kappa_g if link.kappa_g is None else link.kappa_g,
        )

    @property
    def symmetric_users(self) -> bool:
        if self.user_links is None:
            return True
        first = self.user_link(0)
        return all(self.user_link(u) == first for u in range(1, self.users))

    def with_total_elements(self, total: int) -> "SystemConfig":
        if total % self.sectors:
            raise ConfigError("elements_total", f"{total} is not a multiple of sectors={self.sectors}")
        return replace(self, elements_per_sector=total // self.sectors)

    def updated(self, **changes) -> "SystemConfig":
        return replace(self, **changes)


def _check_int(name, value, minimum):
    if isinstance(value, bool) or int(value) != value:
        raise ConfigError(name, f"must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(name, f"must be >= {minimum}, got {value}")


def _check_positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise ConfigError(name, f"must be positive and finite, got {value!r}")


def _check_nonnegative(name, value):
    if not (math.isfinite(value) and value >= 0):
        raise ConfigError(name, f"must be nonnegative and finite, got {value!r}")


def transmit_snr(cfg: SystemConfig, tx_power_dbm: Optional[float] = None) -> float:
    """Linear transmit SNR rho = p / sigma^2."""
    p = cfg.tx_power_dbm if tx_power_dbm is None else tx_power_dbm
    return 10.0 ** ((p - cfg.noise_power_dbm) / 10.0)


def pathloss(cfg: SystemConfig, user: int = 0) -> float:
    """Cascaded large-scale gain alpha of a sector of the L-sided surface.

    alpha = lambda^4 Gt Gr / (4^3 pi^4 d_ris^eta_ris d_user^eta_user (1 - cos(pi/L))^2)
    """
    link = cfg.user_link(user)
    lam = cfg.wavelength_m
    aperture = 1.0 - math.cos(math.pi / cfg.sectors)
    num = lam**4 * cfg.g_t * cfg.g_r
    den = 4.0**3 * math.pi**4 * cfg.d_ris_m**cfg.eta_ris * link.d_user_m**link.eta_user * aperture**2
    return num / den


def sample_rician(kappa: float, size, rng: np.random.Generator) -> np.ndarray:
    """Unit-power Rician samples with a uniformly random LoS phase per entry.

    sqrt(k/(k+1)) e^{j phi} + sqrt(1/(k+1)) CN(0, 1),  phi ~ U[0, 2 pi).
    """
    if not kappa >= 0:
        raise ValueError(f"kappa must be nonnegative, got {kappa!r}")
    los_amp = math.sqrt(kappa / (kappa + 1.0))
    nlos_amp = math.sqrt(0.5 / (kappa + 1.0))
    phase = rng.uniform(0.0, 2.0 * math.pi, size)
    out = nlos_amp * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
    if los_amp:
        out += los_amp * np.exp(1j * phase)
    return out


def rician_amplitude_moments(kappa: float) -> tuple[float, float]:
    """Mean and variance of |h| for a unit-power Rician entry."""
    lag = laguerre_half(-kappa)
    c = math.pi / (4.0 * (kappa + 1.0))
    mean = math.sqrt(c) * lag
    return mean, 1.0 - c * lag * lag


@dataclass(frozen=True)
class PhaseConfig:
    """Diagonal reflection coefficients of every sector, shape (L, M)."""

    coefficients: np.ndarray
    active_sector: int

    @property
    def sectors(self) -> int:
        return self.coefficients.shape[0]

    @property
    def elements(self) -> int:
        return self.coefficients.shape[1]

    def amplitudes(self) -> np.ndarray:
        return np.abs(self.coefficients)

    def phases(self) -> np.ndarray:
        """Phase shifts wrapped to [0, 2 pi)."""
        ph = np.mod(np.angle(self.coefficients), 2.0 * np.pi)
        return np.where(ph >= 2.0 * np.pi, 0.0, ph)

    def unitarity_residual(self) -> float:
        """max |sum_l Phi_l^H Phi_l - I| (entrywise; the sum is diagonal)."""
        gram = np.sum(np.abs(self.coefficients) ** 2, axis=0)
        return float(np.max(np.abs(gram - 1.0)))

    def cell_power_residuals(self) -> np.ndarray:
        """Per-cell deviation of the total reflected power from one."""
        return np.abs(np.sum(np.abs(self.coefficients) ** 2, axis=0) - 1.0)

    def is_feasible(self, tol: float = 1e-12) -> bool:
        amps = self.amplitudes()
        return bool(
            self.unitarity_residual() <= tol
            and np.all(amps <= 1.0 + tol)
            and np.all(self.cell_power_residuals() <= tol)
        )

    def effective_channel(self, h: np.ndarray, g: np.ndarray, sector: Optional[int] = None) -> complex:
        """h^T Phi_l g for the given (default: active) sector."""
        l = self.active_sector if sector is None else sector
        return complex(np.sum(h * self.coefficients[l] * g))


def build_ts_phase_config(h: Sequence[complex], g: Sequence[complex], active_sector: int, sectors: int) -> PhaseConfig:
    """Co-phasing configuration with only ``active_sector`` switched on."""
    h = np.asarray(h, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if h.shape != g.shape or h.ndim != 1:
        raise ValueError(f"h and g must be equal-length vectors, got {h.shape} and {g.shape}")
    if not 0 <= active_sector < sectors:
        raise IndexError(f"active sector {active_sector} out of range for {sectors} sectors")
    coeffs = np.zeros((sectors, h.size), dtype=complex)
    coeffs[active_sector] = np.exp(-1j * np.angle(h * g))
    return PhaseConfig(coeffs, active_sector)


def random_feasible_phase_config(elements: int, sectors: int, active_sector: int, rng: np.random.Generator) -> PhaseConfig:
    """A random configuration meeting the per-cell power constraint.

    Each cell splits unit power across the sectors with Dirichlet weights and
    draws independent phases.
    """
    power = rng.dirichlet(np.ones(sectors), size=elements).T
    phase = rng.uniform(0.0, 2.0 * np.pi, (sectors, elements))
    return PhaseConfig(np.sqrt(power) * np.exp(1j * phase), active_sector)


def cascaded_gain(h, g) -> np.ndarray:
    """Co-phased cascade amplitude Y = sum_m |h_m| |g_m| along the last axis."""
    h = np.asarray(h)
    g = np.asarray(g)
    if h.shape != g.shape:
        raise ValueError(f"shape mismatch: {h.shape} vs {g.shape}")
    return np.sum(np.abs(h) * np.abs(g), axis=-1)


@dataclass(frozen=True)
class ChannelDraw:
    """One realization of the BS-RIS (h) and RIS-user (g) element channels."""

    h: np.ndarray
    g: np.ndarray


def draw_channel(cfg: SystemConfig, rng: np.random.Generator, user: int = 0) -> ChannelDraw:
    link = cfg.user_link(user)
    m = cfg.elements_per_sector
    return ChannelDraw(sample_rician(cfg.kappa_h, m, rng), sample_rician(link.kappa_g, m, rng))
