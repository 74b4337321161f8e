"""Built-in spectral kernel families for states and observables.

Each factory returns a callable suitable for ``make_state`` /
``make_observable``: profiles take the label mesh, off-diagonal families
take (omega, omega'). The families differ in the analytic structure of
their dependence on nu = omega - omega', which is what sets the decay
class of time-evolved pairings:

* lorentzian: a pole at nu = +/- i*gamma, so residuals decay like
  exp(-gamma * t / hbar);
* gaussian: entire in nu, super-exponential residual decay;
* spectral_edge ("pole-free"): smooth in nu but with a sqrt(omega)
  half-line edge, so residuals decay only as a power law.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "gaussian_profile",
    "polynomial_profile",
    "spectral_edge_profile",
    "separable_kernel",
    "lorentzian_kernel",
    "gaussian_coherence_kernel",
]


def gaussian_profile(center: float, width: float):
    """exp(-(w - center)^2 / (2 width^2)) as a label profile."""
    if width <= 0:
        raise ValueError("width must be positive")

    def profile(w):
        return np.exp(-((w - center) ** 2) / (2.0 * width**2))

    return profile


def polynomial_profile(coefficients, decay: float = 1.0):
    """polyval(coefficients, w) * exp(-w / decay); decaying polynomial profile."""
    if decay <= 0:
        raise ValueError("decay must be positive")
    coeffs = np.asarray(coefficients, dtype=float)

    def profile(w):
        return np.polyval(coeffs, w) * np.exp(-w / decay)

    return profile


def spectral_edge_profile(decay: float = 1.2, cutoff: float | None = None):
    """sqrt(w) * exp(-w / decay), optionally super-Gaussian truncated.

    The square-root edge at w = 0 is non-analytic, the stand-in for
    pole-free spectra such as the free particle's.
    """
    if decay <= 0:
        raise ValueError("decay must be positive")

    def profile(w):
        out = np.sqrt(np.maximum(w, 0.0)) * np.exp(-w / decay)
        if cutoff is not None:
            out = out * np.exp(-((w / cutoff) ** 6))
        return out

    return profile


def separable_kernel(profile):
    """Rank-1 hermitian off-diagonal kernel profile(w) * conj(profile(w'))."""

    def kernel(w, wp):
        return profile(w) * np.conj(profile(wp))

    return kernel


def lorentzian_kernel(gamma: float, profile):
    """profile(w) profile(w') * gamma^2 / ((w - w')^2 + gamma^2).

    Half-width ``gamma`` in nu = w - w'; the nearest pole of the nu
    dependence sits at distance gamma from the real axis.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")

    def kernel(w, wp):
        nu = w - wp
        return profile(w) * np.conj(profile(wp)) * gamma**2 / (nu**2 + gamma**2)

    return kernel


def gaussian_coherence_kernel(nu_width: float, profile):
    """profile(w) profile(w') * exp(-(w - w')^2 / (2 nu_width^2))."""
    if nu_width <= 0:
        raise ValueError("nu_width must be positive")

    def kernel(w, wp):
        nu = w - wp
        return profile(w) * np.conj(profile(wp)) * np.exp(-(nu**2) / (2.0 * nu_width**2))

    return kernel
