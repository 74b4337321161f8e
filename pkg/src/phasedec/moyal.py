"""Star product and Moyal bracket as truncated bidifferential series.

The product is sum_m (1/m!) (i*hbar/2)^m B_m(f, g), where B_m applies the
m-th power of the bidifferential operator built from the symplectic form.
The sign convention is fixed so that the bracket of the canonical pair is
+1, i.e. {q, p}_mb = {q, p}_pb; a dedicated test pins this constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial

import numpy as np

from .phase_space import (
    PhaseFunction,
    SymplecticForm,
    _require_same_grid,
    interior_max_abs,
    partial_derivative,
    poisson_bracket,
)

__all__ = [
    "StarOrder",
    "DEFAULT_ORDER",
    "star_product",
    "moyal_bracket",
    "classical_limit_check",
    "ConvergenceReport",
]

MAX_ORDER = 6


@dataclass(frozen=True)
class StarOrder:
    """Truncation of the star series after the hbar^max_order term."""

    max_order: int = 2

    def __post_init__(self):
        if not 0 <= self.max_order <= MAX_ORDER:
            raise ValueError(f"truncation order must be in 0..{MAX_ORDER}")

    @classmethod
    def coerce(cls, order) -> "StarOrder":
        if isinstance(order, StarOrder):
            return order
        return cls(int(order))


DEFAULT_ORDER = StarOrder(2)


class _DerivativeCache:
    """Mixed partial derivatives of one phase function, memoized by multi-order."""

    def __init__(self, f: PhaseFunction):
        self.f = f
        self._store: dict[tuple[int, ...], np.ndarray] = {
            (0,) * len(f.grid.axes): np.asarray(f.values)
        }

    def get(self, alpha: tuple[int, ...]) -> np.ndarray:
        if alpha in self._store:
            return self._store[alpha]
        # peel one derivative off the first non-zero slot; orders above 4
        # per axis are reached by composing <=4-order applications
        axis = next(i for i, a in enumerate(alpha) if a > 0)
        step = min(alpha[axis], 4)
        lower = list(alpha)
        lower[axis] -= step
        base = self.get(tuple(lower))
        out = partial_derivative(self.f.with_values(base), axis, step).values
        self._store[alpha] = out
        return out


def _bidifferential_term(
    fd: _DerivativeCache, gd: _DerivativeCache, pairs, m: int
) -> np.ndarray:
    """B_m(f, g): multinomial expansion of the m-th bidifferential power."""
    n_axes = len(fd.f.grid.axes)
    total = np.zeros(fd.f.grid.shape, dtype=complex)
    for combo in combinations_with_replacement(range(len(pairs)), m):
        counts = np.bincount(combo, minlength=len(pairs))
        coeff = factorial(m)
        sign = 1.0
        alpha_f = [0] * n_axes
        alpha_g = [0] * n_axes
        for idx, mult in enumerate(counts):
            if mult == 0:
                continue
            a, b, w = pairs[idx]
            coeff //= factorial(int(mult))
            sign *= w**mult
            alpha_f[a] += mult
            alpha_g[b] += mult
        total += coeff * sign * fd.get(tuple(alpha_f)) * gd.get(tuple(alpha_g))
    return total


def star_product(
    f: PhaseFunction,
    g: PhaseFunction,
    hbar: float,
    order: StarOrder | int = DEFAULT_ORDER,
) -> PhaseFunction:
    """Truncated star product of two phase functions on a common grid."""
    _require_same_grid(f, g)
    if hbar < 0:
        raise ValueError("hbar must be >= 0")
    k = StarOrder.coerce(order).max_order
    fd = _DerivativeCache(f)
    gd = _DerivativeCache(g)
    pairs = SymplecticForm(f.grid.n_dof).pairs()
    total = np.array(f.values * g.values, dtype=complex)
    for m in range(1, k + 1):
        prefactor = (1j * hbar / 2.0) ** m / factorial(m)
        total += prefactor * _bidifferential_term(fd, gd, pairs, m)
    return f.with_values(total, label="")


def moyal_bracket(
    f: PhaseFunction,
    g: PhaseFunction,
    hbar: float,
    order: StarOrder | int = DEFAULT_ORDER,
) -> PhaseFunction:
    """(f*g - g*f) / (i*hbar); equals the Poisson bracket for quadratics."""
    if hbar == 0:
        raise ValueError("hbar = 0 has no Moyal bracket; use poisson_bracket instead")
    if hbar < 0:
        raise ValueError("hbar must be > 0")
    fg = star_product(f, g, hbar, order)
    gf = star_product(g, f, hbar, order)
    return f.with_values((fg.values - gf.values) / (1j * hbar), label="")


@dataclass(frozen=True)
class ConvergenceReport:
    """Observed classical-limit orders from a decreasing hbar sweep."""

    hbars: tuple[float, ...]
    product_errors: tuple[float, ...]
    bracket_errors: tuple[float, ...]
    product_slope: float | None
    bracket_slope: float | None
    product_exact: bool
    bracket_exact: bool


def _loglog_slope(hbars, errors) -> float:
    return float(np.polyfit(np.log(hbars), np.log(errors), 1)[0])


def classical_limit_check(
    f: PhaseFunction,
    g: PhaseFunction,
    hbar_sequence,
    order: StarOrder | int = StarOrder(3),
    interior_fraction: float = 0.8,
) -> ConvergenceReport:
    """Measure how fast the star product and bracket reach their limits.

    Regresses max-interior deviations against hbar on log-log axes. The
    product deviation |f*g - fg| is expected to vanish like hbar, the
    bracket deviation like hbar^2; the truncation default keeps the first
    term beyond the Poisson bracket so the latter is visible.
    """
    hbars = [float(h) for h in hbar_sequence]
    if len(hbars) < 3:
        raise ValueError("need at least 3 hbar values")
    if any(h <= 0 for h in hbars) or any(a <= b for a, b in zip(hbars, hbars[1:])):
        raise ValueError("hbar sequence must be positive and strictly decreasing")
    _require_same_grid(f, g)

    plain = f * g
    pb = poisson_bracket(f, g)
    scale = max(interior_max_abs(plain), interior_max_abs(pb), 1.0)
    exact_tol = 1e-12 * scale

    prod_err, brak_err = [], []
    for h in hbars:
        prod_err.append(interior_max_abs(star_product(f, g, h, order) - plain, interior_fraction))
        brak_err.append(interior_max_abs(moyal_bracket(f, g, h, order) - pb, interior_fraction))

    product_exact = all(e < exact_tol for e in prod_err)
    bracket_exact = all(e < exact_tol for e in brak_err)
    return ConvergenceReport(
        hbars=tuple(hbars),
        product_errors=tuple(prod_err),
        bracket_errors=tuple(brak_err),
        product_slope=None if product_exact else _loglog_slope(hbars, prod_err),
        bracket_slope=None if bracket_exact else _loglog_slope(hbars, brak_err),
        product_exact=product_exact,
        bracket_exact=bracket_exact,
    )
