"""Time evolution of pairings, weak limits, and decay-rate extraction.

Evolution multiplies the regular coefficients by exp(i (omega - omega') t
/ hbar); the singular term never moves. For smooth absolutely-integrable
regular kernels the oscillatory sum dies out (Riemann-Lebesgue), leaving
the momentum-space pairing of the diagonal as the weak limit. Residual
decay is classified empirically by competing exponential and power-law
fits; for a Lorentzian coherence kernel of half-width gamma the fitted
rate is gamma / hbar, the inverse-pole-distance law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import Observable, _swap_blocks
from .states import State, pair, pair_singular_symbols, to_classical_density

__all__ = [
    "Trajectory",
    "DecayReport",
    "PositivityReport",
    "evolve_pairing",
    "limit_pairing",
    "residual_trajectory",
    "fit_decay",
    "verify_final_positivity",
]

RESIDUAL_FLOOR = 1e-14
MODEL_R2_THRESHOLD = 0.9


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Evolved-pairing residuals sampled on an increasing time grid."""

    times: np.ndarray
    values: np.ndarray
    limit_value: float

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=complex)
        if times.ndim != 1 or len(times) == 0:
            raise ValueError("times must be a non-empty 1-D array")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        if values.shape != times.shape:
            raise ValueError("values must align with times")
        if not np.all(np.isfinite(values)):
            raise ValueError("trajectory values must be finite")
        for arr in (times, values):
            arr.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class DecayReport:
    """Selected decay model of a residual trajectory.

    ``rate`` is the exponential rate for the exponential model and the
    power-law exponent magnitude otherwise; ``t_dec`` is 1/rate for
    exponential decay and infinite for every other model.
    """

    model: str
    rate: float
    fit_quality: float
    t_dec: float


@dataclass(frozen=True)
class PositivityReport:
    min_value: float
    passed: bool


def _check_pair_args(rho: State, obs: Observable, hbar: float):
    if rho.grid != obs.grid:
        raise ValueError("state and observable live on different spectral grids")
    if hbar <= 0:
        raise ValueError("hbar must be positive")


def evolve_pairing(rho: State, obs: Observable, t: float, hbar: float) -> complex:
    """Pairing at time t: static singular term + phase-weighted regular term."""
    _check_pair_args(rho, obs, hbar)
    grid = rho.grid
    cell = grid.cell
    half = len(grid.shape)
    singular_term = np.sum(rho.diagonal * obs.singular) * cell

    n_omega = grid.omega_count
    mp = int(np.prod(grid.shape[1:])) if grid.momentum_axes else 1
    omega = grid.omega
    phase = np.exp(1j * (omega[:, None] - omega[None, :]) * t / hbar)
    integrand = (rho.regular * _swap_blocks(obs.regular, half)).reshape(
        n_omega, mp, n_omega, mp
    )
    regular_term = np.sum(integrand * phase[:, None, :, None]) * cell**2
    return complex(singular_term + regular_term)


def limit_pairing(rho: State, obs: Observable) -> float:
    """Weak limit of the evolved pairing: the momentum-space diagonal term."""
    if rho.grid != obs.grid:
        raise ValueError("state and observable live on different spectral grids")
    return complex(pair_singular_symbols(to_classical_density(rho), obs)).real


def _coherence_spectrum(rho: State, obs: Observable):
    """Regular-term weights grouped by the frequency difference omega - omega'.

    Returns (nu, weights) with nu = d * d_omega for d in -(n-1)..(n-1);
    the evolved regular term is sum_d weights[d] * exp(i nu[d] t / hbar).
    Valid because the omega axis is uniform.
    """
    grid = rho.grid
    half = len(grid.shape)
    n_omega = grid.omega_count
    mp = int(np.prod(grid.shape[1:])) if grid.momentum_axes else 1
    integrand = (rho.regular * _swap_blocks(obs.regular, half)).reshape(
        n_omega, mp, n_omega, mp
    )
    cross = integrand.sum(axis=(1, 3)) * grid.cell**2
    i = np.arange(n_omega)
    offsets = (i[:, None] - i[None, :]).ravel() + (n_omega - 1)
    weights = np.bincount(offsets, weights=cross.real.ravel(), minlength=2 * n_omega - 1)
    weights = weights + 1j * np.bincount(
        offsets, weights=cross.imag.ravel(), minlength=2 * n_omega - 1
    )
    nu = np.arange(-(n_omega - 1), n_omega) * grid.d_omega
    return nu, weights


def residual_trajectory(rho: State, obs: Observable, times, hbar: float) -> Trajectory:
    """Oscillatory regular term over a time grid; the singular term cancels exactly.

    Algebraically identical to evolve_pairing(t) - limit_pairing, but the
    off-diagonal sum is grouped by frequency difference first so a whole
    trajectory costs one pass over the kernels.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise ValueError("time grid must be non-empty")
    _check_pair_args(rho, obs, hbar)
    nu, weights = _coherence_spectrum(rho, obs)
    phases = np.exp(1j * np.outer(times, nu) / hbar)
    values = phases @ weights
    return Trajectory(times, values, limit_pairing(rho, obs))


def _r_squared(y: np.ndarray, fitted: np.ndarray) -> float:
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 0.0
    ss_res = float(np.sum((y - fitted) ** 2))
    return 1.0 - ss_res / ss_tot


def fit_decay(
    traj: Trajectory,
    transient_fraction: float = 0.1,
    floor: float = RESIDUAL_FLOOR,
    min_r2: float = MODEL_R2_THRESHOLD,
) -> DecayReport:
    """Classify residual decay by competing log-linear and log-log fits.

    The first ``transient_fraction`` of samples is dropped; magnitudes
    below ``floor`` are clipped before taking logs. An all-floor
    trajectory means the state is already decohered (rate-0 sentinel).
    """
    skip = int(math.ceil(transient_fraction * len(traj.times)))
    times = traj.times[skip:]
    mags = np.abs(traj.values[skip:])
    if len(times) < 10:
        raise ValueError("need at least 10 samples past the transient window")

    if np.all(mags < floor):
        return DecayReport(model="exponential", rate=0.0, fit_quality=1.0, t_dec=0.0)
    mags = np.maximum(mags, floor)
    log_mags = np.log(mags)

    exp_coeffs = np.polyfit(times, log_mags, 1)
    r2_exp = _r_squared(log_mags, np.polyval(exp_coeffs, times))

    positive = times > 0
    if np.count_nonzero(positive) >= 10:
        log_t = np.log(times[positive])
        pow_coeffs = np.polyfit(log_t, log_mags[positive], 1)
        r2_pow = _r_squared(log_mags[positive], np.polyval(pow_coeffs, log_t))
    else:
        pow_coeffs = (0.0, 0.0)
        r2_pow = -np.inf

    if max(r2_exp, r2_pow) < min_r2:
        return DecayReport(model="none", rate=0.0, fit_quality=max(r2_exp, 0.0), t_dec=math.inf)
    if r2_exp >= r2_pow:
        rate = -float(exp_coeffs[0])
        if rate <= 0:
            return DecayReport(model="none", rate=0.0, fit_quality=r2_exp, t_dec=math.inf)
        return DecayReport(model="exponential", rate=rate, fit_quality=r2_exp, t_dec=1.0 / rate)
    exponent = -float(pow_coeffs[0])
    return DecayReport(
        model="power_law", rate=max(exponent, 0.0), fit_quality=r2_pow, t_dec=math.inf
    )


def verify_final_positivity(rho: State, tol: float = 1e-12) -> PositivityReport:
    """Check the decohered density is nonnegative over the (H, P) grid."""
    density = to_classical_density(rho)
    min_value = float(density.values.min())
    return PositivityReport(min_value=min_value, passed=min_value >= -tol)
