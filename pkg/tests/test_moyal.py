"""Star-product and Moyal-bracket tests: truncation algebra and limits."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasedec.moyal import (
    StarOrder,
    classical_limit_check,
    moyal_bracket,
    star_product,
)
from phasedec.phase_space import (
    Grid,
    PhaseFunction,
    interior_max_abs,
    poisson_bracket,
)


@pytest.fixture(scope="module")
def grid():
    return Grid.square(-2.0, 2.0, 129)


def sample(grid, fn):
    return PhaseFunction.sample(grid, fn)


@pytest.fixture(scope="module")
def canonical(grid):
    q = sample(grid, lambda q, p: q)
    p = sample(grid, lambda q, p: p)
    h = sample(grid, lambda q, p: 0.5 * (q**2 + p**2))
    return q, p, h


class TestStarOrder:
    def test_bounds(self):
        StarOrder(0)
        StarOrder(6)
        with pytest.raises(ValueError):
            StarOrder(7)
        with pytest.raises(ValueError):
            StarOrder(-1)

    def test_coerce(self):
        assert StarOrder.coerce(3).max_order == 3
        assert StarOrder.coerce(StarOrder(4)).max_order == 4


class TestStarProduct:
    def test_constant_multiplies_exactly(self, grid, canonical):
        _, p, _ = canonical
        c = sample(grid, lambda q, p: 3.0 + 0 * q)
        out = star_product(c, p, hbar=0.7)
        assert float(np.max(np.abs(out.values - 3.0 * p.values))) < 1e-12

    def test_canonical_pair_single_correction(self, canonical):
        # q * p keeps exactly one term beyond the plain product: i hbar / 2
        q, p, _ = canonical
        hbar = 0.1
        out = star_product(q, p, hbar, order=2)
        expected = q.values * p.values + 0.5j * hbar
        assert float(np.max(np.abs(out.values - expected))) < 1e-12

    def test_quadratic_hamiltonian_terminates(self, grid, canonical):
        _, _, h = canonical
        hbar = 0.5
        out = star_product(h, h, hbar, order=2)
        expected = h * h - hbar**2 / 4.0
        assert interior_max_abs(out - expected) < 1e-8

    def test_order_zero_is_pointwise(self, canonical):
        q, p, _ = canonical
        out = star_product(q, p, hbar=1.0, order=0)
        assert float(np.max(np.abs(out.values - q.values * p.values))) < 1e-14

    def test_hermitian_symmetry(self, grid):
        # conj(f * g) == conj(g) * conj(f), term by term in the truncation
        rng = np.random.default_rng(7)
        coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
        f = sample(grid, lambda q, p: coeffs[0] * q**2 + coeffs[1] * p + coeffs[2] * q * p)
        g = sample(grid, lambda q, p: coeffs[3] * p**2 + coeffs[4] * q + coeffs[5] * q * p)
        lhs = np.conj(star_product(f, g, 0.3, order=4).values)
        fc = f.with_values(np.conj(f.values))
        gc = g.with_values(np.conj(g.values))
        rhs = star_product(gc, fc, 0.3, order=4).values
        scale = max(float(np.max(np.abs(lhs))), 1.0)
        assert float(np.max(np.abs(lhs - rhs))) < 1e-10 * scale

    def test_rejects_negative_hbar(self, canonical):
        q, p, _ = canonical
        with pytest.raises(ValueError):
            star_product(q, p, hbar=-0.1)

    def test_rejects_grid_mismatch(self, grid, canonical):
        q, _, _ = canonical
        other = sample(Grid.square(-2.0, 2.0, 65), lambda q, p: p)
        with pytest.raises(ValueError):
            star_product(q, other, hbar=0.1)


class TestMoyalBracket:
    @pytest.mark.parametrize("hbar", [0.1, 0.5, 1.0])
    def test_canonical_pair_all_hbar(self, canonical, hbar):
        q, p, _ = canonical
        out = moyal_bracket(q, p, hbar)
        assert float(np.max(np.abs(out.values - 1.0))) < 1e-10

    @pytest.mark.parametrize("hbar", [0.25, 0.5, 1.0])
    def test_quadratic_equals_poisson(self, canonical, hbar):
        q, _, h = canonical
        p = canonical[1]
        out = moyal_bracket(h, q, hbar)
        assert interior_max_abs(out + p) < 1e-8

    def test_hbar_zero_is_an_error(self, canonical):
        q, p, _ = canonical
        with pytest.raises(ValueError, match="poisson_bracket"):
            moyal_bracket(q, p, hbar=0.0)

    def test_antisymmetry_machine_precision(self, grid):
        f = sample(grid, lambda q, p: q**3 + np.sin(p))
        g = sample(grid, lambda q, p: p**2 * q)
        fg = moyal_bracket(f, g, 0.3, order=4)
        gf = moyal_bracket(g, f, 0.3, order=4)
        scale = max(interior_max_abs(fg), 1.0)
        assert float(np.max(np.abs(fg.values + gf.values))) < 1e-10 * scale

    def test_cubic_deviation_quarters_when_hbar_halves(self, grid):
        f = sample(grid, lambda q, p: q**3)
        g = sample(grid, lambda q, p: p**3)
        pb = poisson_bracket(f, g)
        errs = [
            interior_max_abs(moyal_bracket(f, g, hbar, order=3) - pb) for hbar in (0.4, 0.2)
        ]
        ratio = errs[0] / errs[1]
        assert abs(ratio - 4.0) < 0.5

    @settings(max_examples=10, deadline=None)
    @given(hbar=st.floats(0.05, 1.0))
    def test_degree_two_exactness_any_hbar(self, hbar):
        # quadratic arguments terminate the series at the Poisson term
        g = Grid.square(-2.0, 2.0, 65)
        f1 = sample(g, lambda q, p: q**2 + 0.5 * q * p)
        f2 = sample(g, lambda q, p: p**2 - q)
        mb = moyal_bracket(f1, f2, hbar, order=6)
        pb = poisson_bracket(f1, f2)
        assert interior_max_abs(mb - pb) < 1e-8


class TestTwoDegreesOfFreedom:
    def test_canonical_structure_in_r4(self):
        g = Grid.square(-1.5, 1.5, 21, n_dof=2)
        q1 = sample(g, lambda a, b, c, d: a)
        q2 = sample(g, lambda a, b, c, d: b)
        p1 = sample(g, lambda a, b, c, d: c)
        p2 = sample(g, lambda a, b, c, d: d)
        for hbar in (0.3, 1.0):
            assert float(np.max(np.abs(moyal_bracket(q1, p1, hbar).values - 1.0))) < 1e-10
            assert float(np.max(np.abs(moyal_bracket(q1, p2, hbar).values))) < 1e-10
            assert float(np.max(np.abs(moyal_bracket(q1, q2, hbar).values))) < 1e-10

    def test_isotropic_quadratic_terminates(self):
        # both degree pairs contribute to the second bidifferential term:
        # H * H = H^2 - hbar^2 / 2 for the isotropic quadratic in R^4
        g = Grid.square(-1.5, 1.5, 21, n_dof=2)
        h = sample(g, lambda a, b, c, d: 0.5 * (a * a + b * b + c * c + d * d))
        p1 = sample(g, lambda a, b, c, d: c)
        q1 = sample(g, lambda a, b, c, d: a)
        hbar = 0.5
        s = star_product(h, h, hbar, order=4)
        deviation = s.values - h.values * h.values
        assert float(np.max(np.abs(deviation - (-(hbar**2) / 2.0)))) < 1e-8
        assert interior_max_abs(moyal_bracket(h, q1, hbar) + p1) < 1e-8


class TestClassicalLimitCheck:
    def test_cubic_slopes(self, grid):
        f = sample(grid, lambda q, p: q**3)
        g = sample(grid, lambda q, p: p**3)
        rep = classical_limit_check(f, g, [0.4, 0.2, 0.1])
        assert 0.9 <= rep.product_slope <= 1.1
        assert 1.8 <= rep.bracket_slope <= 2.2

    def test_quadratic_product_slope(self, grid):
        # the first star correction to q^2 * p^2 is imaginary but still O(hbar)
        f = sample(grid, lambda q, p: q**2)
        g = sample(grid, lambda q, p: p**2)
        rep = classical_limit_check(f, g, [0.4, 0.2, 0.1])
        assert 0.9 <= rep.product_slope <= 1.1

    def test_commuting_functions_of_q_are_exact(self, grid):
        f = sample(grid, lambda q, p: np.sin(q))
        g = sample(grid, lambda q, p: q**2)
        rep = classical_limit_check(f, g, [0.4, 0.2, 0.1])
        assert rep.product_exact and rep.bracket_exact
        assert rep.product_slope is None and rep.bracket_slope is None

    def test_commuting_functions_of_h_second_order(self, grid):
        # both arguments functions of the same Hamiltonian: product deviation O(hbar^2)
        f = sample(grid, lambda q, p: 0.5 * (q**2 + p**2))
        g = sample(grid, lambda q, p: (0.5 * (q**2 + p**2)) ** 2)
        rep = classical_limit_check(f, g, [0.4, 0.2, 0.1])
        assert rep.product_slope >= 1.9

    def test_rejects_short_sequence(self, canonical):
        q, p, _ = canonical
        with pytest.raises(ValueError):
            classical_limit_check(q, p, [0.4, 0.2])

    def test_rejects_nondecreasing_sequence(self, canonical):
        q, p, _ = canonical
        with pytest.raises(ValueError):
            classical_limit_check(q, p, [0.1, 0.2, 0.4])
        with pytest.raises(ValueError):
            classical_limit_check(q, p, [0.4, 0.4, 0.2])
