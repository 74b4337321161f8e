"""State functionals over the singular + regular observable algebra.

A state is a pair of coefficient kernels on a spectral grid: a real
diagonal rho(omega, p) carrying probabilities (nonnegative, unit discrete
mass) and a hermitian regular kernel rho(omega, omega', p, p').
Admissibility is enforced by :func:`make_state`; the dataclass itself is
a plain value holder so basis functionals and test fixtures can be built
directly.

Two pairing prescriptions coexist on purpose. Regular pairings integrate
over all of phase space (or equivalently sum both spectral kernels);
singular pairings integrate over the (H, P) momentum space only. The
full-phase-space integral of a singular (x) singular pairing grows with
the volume of the conjugate coordinates and has no finite limit, which is
exactly why the restricted prescription exists.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .phase_space import Grid, PhaseFunction, integrate
from .spectral import (
    MomentumMap,
    Observable,
    SpectralGrid,
    _compose_on_phase_space,
    _conjugate_transpose,
    _swap_blocks,
)

__all__ = [
    "AdmissibilityError",
    "State",
    "ClassicalDensity",
    "make_state",
    "pure_state",
    "random_admissible_state",
    "pair",
    "pair_regular_symbols",
    "pair_singular_symbols",
    "singular_symbol",
    "to_classical_density",
    "singular_basis_functional",
    "regular_basis_functional",
]

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
NEGATIVITY_TOL = 1e-12


class AdmissibilityError(ValueError):
    """The proposed coefficients cannot represent probabilities."""


@dataclass(frozen=True, eq=False)
class State:
    """Coefficient kernels of a functional: diagonal + regular parts."""

    grid: SpectralGrid
    diagonal: np.ndarray
    regular: np.ndarray

    def __post_init__(self):
        diagonal = np.array(self.diagonal, dtype=float)
        regular = np.array(self.regular, dtype=complex)
        if diagonal.shape != self.grid.shape:
            raise ValueError(f"diagonal must have shape {self.grid.shape}")
        if regular.shape != self.grid.shape * 2:
            raise ValueError(f"regular kernel must have shape {self.grid.shape * 2}")
        if not (np.all(np.isfinite(diagonal)) and np.all(np.isfinite(regular))):
            raise ValueError("state coefficients must be finite")
        for arr in (diagonal, regular):
            arr.setflags(write=False)
        object.__setattr__(self, "diagonal", diagonal)
        object.__setattr__(self, "regular", regular)

    @property
    def diagonal_mass(self) -> float:
        return float(np.sum(self.diagonal) * self.grid.cell)


@dataclass(frozen=True, eq=False)
class ClassicalDensity:
    """Nonnegative unit-mass density over the (H, P) momentum space."""

    grid: SpectralGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ValueError(f"density must have shape {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("density values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def mass(self) -> float:
        return float(np.sum(self.values) * self.grid.cell)


def _sample_diagonal(grid: SpectralGrid, diagonal_fn) -> np.ndarray:
    if callable(diagonal_fn):
        return np.array(np.broadcast_to(diagonal_fn(*grid.meshes()), grid.shape), dtype=float)
    return np.asarray(diagonal_fn, dtype=float).copy()


def _sample_regular(grid: SpectralGrid, regular_fn) -> np.ndarray:
    if regular_fn is None:
        return np.zeros(grid.shape * 2, dtype=complex)
    if callable(regular_fn):
        coords = grid.coordinates()
        meshes = np.meshgrid(*coords, *coords, indexing="ij")
        half = len(coords)
        row, col = meshes[:half], meshes[half:]
        args = [row[0], col[0]]
        for k in range(1, half):
            args.extend([row[k], col[k]])
        return np.array(np.broadcast_to(regular_fn(*args), grid.shape * 2), dtype=complex)
    return np.asarray(regular_fn, dtype=complex).copy()


def make_state(grid: SpectralGrid, diagonal_fn, regular_fn=None) -> State:
    """Build an admissible state, renormalizing the diagonal to unit mass.

    Rejects negative diagonal samples and non-hermitian regular kernels;
    the renormalization factor is logged rather than treated as an error,
    since unit mass is a property of states, not of the sampled profile.
    """
    diagonal = _sample_diagonal(grid, diagonal_fn)
    regular = _sample_regular(grid, regular_fn)
    if not np.all(np.isfinite(diagonal)):
        raise AdmissibilityError("diagonal samples must be finite")
    scale = max(float(np.max(np.abs(diagonal))), 1e-300)
    if float(diagonal.min()) < -NEGATIVITY_TOL * scale:
        raise AdmissibilityError(
            f"diagonal must be nonnegative; min sample {float(diagonal.min()):.4g}"
        )
    diagonal = np.maximum(diagonal, 0.0)
    mass = float(np.sum(diagonal) * grid.cell)
    if mass <= 0.0:
        raise AdmissibilityError("diagonal has zero mass; cannot normalize")
    if abs(mass - 1.0) > 1e-12:
        logger.info("renormalizing state diagonal by factor %.6g", 1.0 / mass)
    diagonal = diagonal / mass

    half = len(grid.shape)
    reg_scale = max(float(np.max(np.abs(regular))), 1e-300)
    defect = float(np.max(np.abs(regular - _conjugate_transpose(regular, half))))
    if defect > HERMITIAN_TOL * reg_scale:
        raise AdmissibilityError(f"regular kernel is not hermitian (defect {defect:.3g})")
    return State(grid, diagonal, regular)


def pure_state(grid: SpectralGrid, coeffs) -> State:
    """Rank-1 state from spectral coefficients c: diagonal |c|^2, regular c (x) conj(c)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != grid.shape:
        raise ValueError("coefficient array must match the spectral grid shape")
    norm = np.sqrt(np.sum(np.abs(coeffs) ** 2) * grid.cell)
    if norm == 0:
        raise AdmissibilityError("zero coefficients")
    coeffs = coeffs / norm
    flat = coeffs.reshape(-1)
    regular = np.outer(flat, flat.conj()).reshape(grid.shape * 2)
    return State(grid, np.abs(coeffs) ** 2, regular)


def random_admissible_state(grid: SpectralGrid, rng: np.random.Generator, rank: int = 3) -> State:
    """Seeded random admissible state: Gaussian-mixture diagonal, low-rank hermitian regular."""
    coords = grid.coordinates()
    diagonal = np.zeros(grid.shape)
    meshes = grid.meshes()
    n_bumps = int(rng.integers(2, 5))
    for _ in range(n_bumps):
        weight = float(rng.uniform(0.2, 1.0))
        bump = np.ones(grid.shape)
        for axis_values, mesh in zip(coords, meshes):
            lo, hi = axis_values[0], axis_values[-1]
            center = rng.uniform(lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo))
            width = rng.uniform(0.05, 0.15) * (hi - lo)
            bump = bump * np.exp(-((mesh - center) ** 2) / (2.0 * width**2))
        diagonal += weight * bump

    flat_n = grid.n_points
    regular = np.zeros((flat_n, flat_n), dtype=complex)
    for _ in range(rank):
        vec = np.ones(grid.shape, dtype=complex)
        for axis_values, mesh in zip(coords, meshes):
            lo, hi = axis_values[0], axis_values[-1]
            center = rng.uniform(lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo))
            width = rng.uniform(0.08, 0.2) * (hi - lo)
            phase = rng.uniform(0.0, 4.0) / (hi - lo)
            vec = vec * np.exp(-((mesh - center) ** 2) / (2.0 * width**2) + 1j * phase * mesh)
        flat = vec.reshape(-1)
        regular += rng.uniform(0.1, 0.5) * np.outer(flat, flat.conj())
    return make_state(grid, diagonal, regular.reshape(grid.shape * 2))


def _require_same_spectral_grid(a, b):
    if a.grid != b.grid:
        raise ValueError("spectral grids do not match")


def pair(rho: State, obs: Observable) -> complex:
    """Functional applied to an observable: singular term + transposed regular term."""
    _require_same_spectral_grid(rho, obs)
    cell = rho.grid.cell
    half = len(rho.grid.shape)
    singular_term = np.sum(rho.diagonal * obs.singular) * cell
    regular_term = np.sum(rho.regular * _swap_blocks(obs.regular, half)) * cell**2
    return complex(singular_term + regular_term)


def pair_regular_symbols(rho_symbol: PhaseFunction, obs_symbol: PhaseFunction) -> complex:
    """Phase-space form of the regular pairing: integral of the symbol product."""
    if rho_symbol.grid != obs_symbol.grid:
        raise ValueError("symbols live on different grids")
    imag = float(np.max(np.abs(rho_symbol.values.imag)))
    scale = max(float(np.max(np.abs(rho_symbol.values))), 1e-300)
    if imag > 1e-6 * scale:
        raise ValueError("state symbol must be real within tolerance")
    return integrate(rho_symbol * obs_symbol)


def pair_singular_symbols(rho_s: ClassicalDensity, obs: Observable) -> complex:
    """Momentum-space-only pairing: sum over (H, P) with the cell measure.

    Never integrates over the conjugate coordinates; the full 2N-volume
    integral of two singular symbols diverges with the box size.
    """
    _require_same_spectral_grid(rho_s, obs)
    return complex(np.sum(rho_s.values * obs.singular) * rho_s.grid.cell)


def singular_symbol(rho: State, momentum_map: MomentumMap, out_grid: Grid) -> PhaseFunction:
    """rho(H(phi), P(phi)): the decohered part of the state as a phase-space density."""
    if momentum_map.grid != out_grid:
        raise ValueError("momentum map must be sampled on the output grid")
    return _compose_on_phase_space(rho.diagonal, rho.grid, momentum_map, label="rho_S")


def to_classical_density(rho: State) -> ClassicalDensity:
    """Reinterpret the diagonal over (H, P), renormalized to unit mass."""
    mass = rho.diagonal_mass
    if mass <= 0:
        raise ValueError("state has zero diagonal mass")
    return ClassicalDensity(rho.grid, rho.diagonal / mass)


def singular_basis_functional(grid: SpectralGrid, index) -> State:
    """Discrete basis functional at one node: diagonal indicator / cell.

    Evaluating an observable with it returns the singular kernel value at
    the node; it is itself an admissible (already decohered) state.
    """
    idx = (index,) if np.isscalar(index) else tuple(index)
    diagonal = np.zeros(grid.shape)
    diagonal[idx] = 1.0 / grid.cell
    return State(grid, diagonal, np.zeros(grid.shape * 2, dtype=complex))


def regular_basis_functional(grid: SpectralGrid, row, col) -> State:
    """Discrete regular-basis functional; a raw coefficient vector, not a state.

    Pairing it with an observable extracts the regular kernel entry at
    (row, col). Because the pairing transposes the observable indices,
    the coefficient sits at the swapped slot.
    """
    row_idx = (row,) if np.isscalar(row) else tuple(row)
    col_idx = (col,) if np.isscalar(col) else tuple(col)
    regular = np.zeros(grid.shape * 2, dtype=complex)
    regular[col_idx + row_idx] = 1.0 / grid.cell**2
    return State(grid, np.zeros(grid.shape), regular)
