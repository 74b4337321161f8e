"""Uniform phase-space grids, derivatives, brackets, and quadrature.

Phase space is R^(2N) with coordinates ordered (q_1..q_N, p_1..p_N).
Everything here is a pure function over immutable value types; grid-point
loops vectorize over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "PhasePoint",
    "Grid",
    "SymplecticForm",
    "PhaseFunction",
    "integrate",
    "partial_derivative",
    "poisson_bracket",
    "interior_slices",
    "interior_max_abs",
]

#: minimum points per axis; below this the 4th-order stencils degenerate
MIN_AXIS_COUNT = 8


@dataclass(frozen=True)
class PhasePoint:
    """A single point phi = (q_1..q_N, p_1..p_N)."""

    coords: tuple[float, ...]

    def __post_init__(self):
        if len(self.coords) < 2 or len(self.coords) % 2 != 0:
            raise ValueError("phase point needs 2N coordinates with N >= 1")

    @property
    def n_dof(self) -> int:
        return len(self.coords) // 2

    @property
    def q(self) -> tuple[float, ...]:
        return self.coords[: self.n_dof]

    @property
    def p(self) -> tuple[float, ...]:
        return self.coords[self.n_dof :]


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid over R^(2N).

    ``axes`` holds one (min, max, count) triple per coordinate, ordered
    (q_1..q_N, p_1..p_N).
    """

    axes: tuple[tuple[float, float, int], ...]

    def __post_init__(self):
        if len(self.axes) < 2 or len(self.axes) % 2 != 0:
            raise ValueError("grid needs 2N axes with N >= 1")
        for lo, hi, count in self.axes:
            if not hi > lo:
                raise ValueError(f"axis range must satisfy max > min, got [{lo}, {hi}]")
            if count < MIN_AXIS_COUNT:
                raise ValueError(f"axis count must be >= {MIN_AXIS_COUNT}, got {count}")
        # normalize entry types so Grid equality is well defined
        object.__setattr__(
            self,
            "axes",
            tuple((float(lo), float(hi), int(n)) for lo, hi, n in self.axes),
        )

    @classmethod
    def square(cls, lo: float, hi: float, count: int, n_dof: int = 1) -> "Grid":
        """Same (lo, hi, count) on every one of the 2N axes."""
        return cls(((lo, hi, count),) * (2 * n_dof))

    @classmethod
    def rectangle(cls, q_axis, p_axis) -> "Grid":
        """N = 1 grid from a (min, max, count) triple per coordinate."""
        return cls((tuple(q_axis), tuple(p_axis)))

    @property
    def n_dof(self) -> int:
        return len(self.axes) // 2

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n for _, _, n in self.axes)

    @property
    def n_points(self) -> int:
        return int(np.prod(self.shape))

    def spacing(self, axis: int) -> float:
        lo, hi, n = self.axes[axis]
        return (hi - lo) / (n - 1)

    def coordinate(self, axis: int) -> np.ndarray:
        lo, hi, n = self.axes[axis]
        return np.linspace(lo, hi, n)

    def mesh(self) -> tuple[np.ndarray, ...]:
        """Broadcast coordinate arrays, one per axis, shaped ``self.shape``."""
        return tuple(
            np.meshgrid(*(self.coordinate(a) for a in range(len(self.axes))), indexing="ij")
        )


@dataclass(frozen=True)
class SymplecticForm:
    """The constant block form [[0, I_N], [-I_N, 0]] pairing q_i with p_i."""

    n_dof: int

    def __post_init__(self):
        if self.n_dof < 1:
            raise ValueError("n_dof must be >= 1")

    @property
    def matrix(self) -> np.ndarray:
        n = self.n_dof
        m = np.zeros((2 * n, 2 * n))
        m[:n, n:] = np.eye(n)
        m[n:, :n] = -np.eye(n)
        return m

    def pairs(self) -> list[tuple[int, int, float]]:
        """Nonzero entries as (a, b, omega_ab); the bracket's axis pairs."""
        n = self.n_dof
        out = []
        for i in range(n):
            out.append((i, n + i, 1.0))
            out.append((n + i, i, -1.0))
        return out


@dataclass(frozen=True, eq=False)
class PhaseFunction:
    """Complex samples of a function on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("phase function samples must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, grid: Grid, fn, label: str = "") -> "PhaseFunction":
        """Sample ``fn(*mesh)`` on the grid; fn gets one array per axis."""
        values = np.broadcast_to(fn(*grid.mesh()), grid.shape)
        return cls(grid, np.asarray(values, dtype=complex), label)

    @classmethod
    def zeros(cls, grid: Grid, label: str = "") -> "PhaseFunction":
        return cls(grid, np.zeros(grid.shape, dtype=complex), label)

    def with_values(self, values: np.ndarray, label: str | None = None) -> "PhaseFunction":
        return PhaseFunction(self.grid, values, self.label if label is None else label)

    def __add__(self, other):
        if isinstance(other, PhaseFunction):
            _require_same_grid(self, other)
            return self.with_values(self.values + other.values)
        return self.with_values(self.values + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PhaseFunction):
            _require_same_grid(self, other)
            return self.with_values(self.values - other.values)
        return self.with_values(self.values - other)

    def __mul__(self, other):
        if isinstance(other, PhaseFunction):
            _require_same_grid(self, other)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)


def _require_same_grid(f: PhaseFunction, g: PhaseFunction):
    if f.grid != g.grid:
        raise ValueError("phase functions live on different grids")


def integrate(f: PhaseFunction) -> complex:
    """Trapezoidal quadrature of ``f`` over all 2N axes."""
    values = f.values
    if not np.all(np.isfinite(values)):
        raise ValueError("cannot integrate non-finite samples")
    for axis in reversed(range(len(f.grid.axes))):
        values = np.trapezoid(values, dx=f.grid.spacing(axis), axis=axis)
    return complex(values)


def _fornberg_weights(x0: float, nodes: np.ndarray, order: int) -> np.ndarray:
    """Finite-difference weights for the ``order``-th derivative at ``x0``.

    Fornberg's recursion; exact for polynomials of degree < len(nodes).
    """
    n = len(nodes)
    c = np.zeros((n, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


@lru_cache(maxsize=128)
def _difference_matrix(count: int, spacing: float, order: int) -> np.ndarray:
    """Dense 1-D differentiation matrix, 4th-order interior stencils.

    Interior rows use the shortest centered stencil with accuracy 4;
    rows too close to an edge use one-sided windows of order + 4 nodes
    (accuracy >= 4 there as well).
    """
    x = np.arange(count) * spacing
    half = (order + 1) // 2 + 1  # centered window half-width for accuracy 4
    central = 2 * half + 1
    sided = order + 4
    if count < max(central, sided):
        raise ValueError(f"axis count {count} too small for order-{order} stencils")
    d = np.zeros((count, count))
    for i in range(count):
        if i >= half and i < count - half:
            lo = i - half
            size = central
        else:
            lo = min(max(i - sided // 2, 0), count - sided)
            size = sided
        d[i, lo : lo + size] = _fornberg_weights(x[i], x[lo : lo + size], order)
    return d


def partial_derivative(f: PhaseFunction, axis: int, order: int = 1) -> PhaseFunction:
    """Finite-difference partial derivative along one grid axis.

    Central stencils of accuracy order 4 in the interior, one-sided near
    the boundary; ``order`` in 1..4.
    """
    if order not in (1, 2, 3, 4):
        raise ValueError(f"derivative order must be in 1..4, got {order}")
    if not 0 <= axis < len(f.grid.axes):
        raise ValueError(f"axis {axis} out of range for a {len(f.grid.axes)}-axis grid")
    d = _difference_matrix(f.grid.shape[axis], f.grid.spacing(axis), order)
    moved = np.moveaxis(f.values, axis, 0)
    flat = moved.reshape(f.grid.shape[axis], -1)
    out = np.moveaxis((d @ flat).reshape(moved.shape), 0, axis)
    return f.with_values(out, label=f.label)


def poisson_bracket(f: PhaseFunction, g: PhaseFunction) -> PhaseFunction:
    """{f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)."""
    _require_same_grid(f, g)
    form = SymplecticForm(f.grid.n_dof)
    total = np.zeros(f.grid.shape, dtype=complex)
    for a, b, w in form.pairs():
        total = total + w * partial_derivative(f, a).values * partial_derivative(g, b).values
    return f.with_values(total, label="")


def interior_slices(grid: Grid, fraction: float = 0.8) -> tuple[slice, ...]:
    """Index slices keeping the central ``fraction`` of each axis."""
    out = []
    for _, _, n in grid.axes:
        margin = int(round(n * (1.0 - fraction) / 2.0))
        out.append(slice(margin, n - margin))
    return tuple(out)


def interior_max_abs(f: PhaseFunction, fraction: float = 0.8) -> float:
    """Max |f| over the central ``fraction`` of every axis."""
    return float(np.max(np.abs(f.values[interior_slices(f.grid, fraction)])))
