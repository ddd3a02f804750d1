import math

import numpy as np
import pytest

from kstruve.errors import DomainError
from kstruve.kinetics import (
    FORCINGS,
    KineticProblem,
    adjudicate,
    classical_decay,
    solve_closed_form,
    solve_corollary_k1,
    volterra_oracle,
)
from kstruve.specfun import TruncationPolicy, mittag_leffler
from kstruve.transforms import TimeGrid, rl_fractional_integral

# Frozen with a 40-digit mpmath evaluation of the resummed series during the
# build (n0=d=mu=c=k=1, thm1 forcing, t = 0.5, sumudu_consistent variant).
KINETIC_THM1_NU1_T05 = 0.044416235956754749423
KINETIC_THM1_NU09_T05 = 0.048721866863959855229

POL = TruncationPolicy(max_terms=120, rel_tol=1e-16)


def _problem(**kw):
    base = dict(n0=1.0, d=1.0, nu=0.9, mu=1.0, c=1.0, k=1.0, forcing="thm1")
    base.update(kw)
    return KineticProblem(**base)


class TestKineticProblem:
    def test_forcings_enumerated(self):
        assert FORCINGS == ("thm1", "thm2", "thm3", "constant")

    @pytest.mark.parametrize(
        "kw",
        [
            dict(n0=0.0),
            dict(d=-1.0),
            dict(nu=0.0),
            dict(k=0.0),
            dict(mu=-1.6, k=1.0),
            dict(forcing="thm4"),
            dict(forcing="thm2", a=1.0, d=1.0),
            dict(forcing="thm2", a=-2.0),
        ],
    )
    def test_validation(self, kw):
        with pytest.raises(DomainError):
            _problem(**kw)

    def test_forcing_arguments(self):
        t = 0.3
        assert _problem(forcing="thm1", d=2.0).forcing_argument(t) == pytest.approx(
            (2.0 * t) ** 0.9
        )
        assert _problem(forcing="thm2", a=3.0).forcing_argument(t) == pytest.approx(
            (3.0 * t) ** 0.9
        )
        assert _problem(forcing="thm3").forcing_argument(t) == pytest.approx(t**0.9)
        with pytest.raises(DomainError):
            _problem(forcing="constant").forcing_argument(t)

    def test_forcing_at_zero(self):
        assert _problem().forcing_at_zero() == 0.0
        assert _problem(forcing="constant", n0=2.5).forcing_at_zero() == 2.5


class TestClassicalDecay:
    def test_values(self):
        assert classical_decay(2.0, 3.0, 0.0) == 2.0
        assert classical_decay(1.0, 1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)


class TestClosedForm:
    def test_frozen_values(self):
        grid = TimeGrid(t_max=0.5, n_points=50)
        p1 = _problem(nu=1.0)
        s1 = solve_closed_form(p1, grid, "sumudu_consistent", POL)
        assert s1.values[-1] == pytest.approx(KINETIC_THM1_NU1_T05, rel=1e-13)
        p9 = _problem(nu=0.9)
        s9 = solve_closed_form(p9, grid, "sumudu_consistent", POL)
        assert s9.values[-1] == pytest.approx(KINETIC_THM1_NU09_T05, rel=1e-13)

    def test_variants_differ(self):
        grid = TimeGrid(t_max=1.0, n_points=16)
        p = _problem()
        printed = solve_closed_form(p, grid, "as_printed", POL)
        consistent = solve_closed_form(p, grid, "sumudu_consistent", POL)
        assert not np.allclose(printed.values, consistent.values, rtol=1e-3)

    def test_unknown_variant(self):
        with pytest.raises(DomainError):
            solve_closed_form(_problem(), TimeGrid(t_max=1.0, n_points=4), "verbatim")

    def test_constant_forcing_is_mittag_leffler(self):
        grid = TimeGrid(t_max=1.0, n_points=20)
        p = _problem(forcing="constant", n0=2.0, d=1.5, nu=0.7)
        sol = solve_closed_form(p, grid, "sumudu_consistent", POL)
        for ti, vi in zip(grid.points(), sol.values):
            expect = 2.0 * mittag_leffler(0.7, 1.0, -((1.5 * ti) ** 0.7), POL)
            assert vi == pytest.approx(expect, rel=1e-12)

    def test_diagnostics_shapes(self):
        grid = TimeGrid(t_max=1.0, n_points=10)
        sol = solve_closed_form(_problem(), grid, "sumudu_consistent", POL)
        assert sol.terms_used.shape == (10,)
        assert sol.truncation_flag.shape == (10,)
        assert not sol.truncation_flag.any()  # 120 terms ample on (0, 1]
        assert sol.terms_used.max() <= POL.max_terms

    def test_truncation_flag_raised_when_budget_too_small(self):
        grid = TimeGrid(t_max=1.0, n_points=4)
        sol = solve_closed_form(_problem(), grid, "sumudu_consistent", TruncationPolicy(max_terms=2))
        assert sol.truncation_flag.any()

    def test_scales_linearly_in_n0(self):
        grid = TimeGrid(t_max=1.0, n_points=8)
        one = solve_closed_form(_problem(n0=1.0), grid, "sumudu_consistent", POL)
        three = solve_closed_form(_problem(n0=3.0), grid, "sumudu_consistent", POL)
        assert np.allclose(three.values, 3.0 * one.values, rtol=1e-14)


class TestCorollaryReduction:
    @pytest.mark.parametrize("forcing", ["thm1", "thm2", "thm3"])
    @pytest.mark.parametrize("nu", [0.5, 1.0, 1.5])
    def test_k1_reduction(self, forcing, nu):
        grid = TimeGrid(t_max=1.0, n_points=16)
        p = _problem(forcing=forcing, nu=nu, a=2.0)
        general = solve_closed_form(p, grid, "as_printed", POL)
        corollary = solve_corollary_k1(p, grid, POL)
        scale = float(np.max(np.abs(corollary.values))) or 1.0
        assert float(np.max(np.abs(general.values - corollary.values))) / scale <= 1e-14

    def test_requires_k1(self):
        with pytest.raises(DomainError):
            solve_corollary_k1(_problem(k=2.0), TimeGrid(t_max=1.0, n_points=4))

    def test_rejects_constant(self):
        with pytest.raises(DomainError):
            solve_corollary_k1(
                _problem(forcing="constant"), TimeGrid(t_max=1.0, n_points=4)
            )


class TestVolterraOracle:
    def test_residual_small(self):
        grid = TimeGrid(t_max=1.0, n_points=512)
        res = volterra_oracle(_problem(), grid)
        assert res.residual_norm <= 1e-12

    def test_constant_forcing_matches_mittag_leffler(self):
        # N = n0 - d^nu D^(-nu) N has the exact solution n0 E_nu(-(d t)^nu).
        # The solution has a t^nu cusp at the origin, so the discretization
        # converges slowly inside the first boundary layer; agreement is
        # measured past it (t >= 0.1).
        grid = TimeGrid(t_max=1.0, n_points=4096)
        t = grid.points()
        for nu in (0.3, 0.5, 0.9):
            p = _problem(forcing="constant", nu=nu)
            res = volterra_oracle(p, grid)
            exact = np.array([mittag_leffler(nu, 1.0, -(ti**nu), POL) for ti in t])
            err = np.abs(res.values - exact)
            assert float(err[t >= 0.1].max()) <= 1e-4
            assert float(err[-1]) <= 1e-5

    def test_order_one_is_exponential_decay_plus_forcing(self):
        grid = TimeGrid(t_max=1.0, n_points=4096)
        p = _problem(forcing="constant", nu=1.0, d=2.0)
        res = volterra_oracle(p, grid)
        exact = np.exp(-2.0 * grid.points())
        assert float(np.max(np.abs(res.values - exact))) <= 1e-6

    def test_linearity_in_n0(self):
        grid = TimeGrid(t_max=1.0, n_points=128)
        one = volterra_oracle(_problem(n0=1.0), grid)
        two = volterra_oracle(_problem(n0=2.0), grid)
        assert np.allclose(two.values, 2.0 * one.values, rtol=1e-12)

    def test_grid_convergence(self):
        # solution at shared nodes should converge as the grid refines
        p = _problem()
        coarse = volterra_oracle(p, TimeGrid(t_max=1.0, n_points=256))
        fine = volterra_oracle(p, TimeGrid(t_max=1.0, n_points=512))
        finest = volterra_oracle(p, TimeGrid(t_max=1.0, n_points=1024))
        d1 = abs(coarse.values[-1] - fine.values[-1])
        d2 = abs(fine.values[-1] - finest.values[-1])
        assert d2 < d1

    def test_checks_starting_value(self):
        with pytest.raises(DomainError):
            volterra_oracle(_problem(mu=-1.2, k=1.0), TimeGrid(t_max=1.0, n_points=8))


class TestAdjudicate:
    def test_consistent_variant_wins(self):
        grid = TimeGrid(t_max=1.0, n_points=256)
        report = adjudicate(_problem(), grid)
        assert report.agreeing == ("sumudu_consistent",)
        assert report.dev_consistent < 1e-3
        assert report.dev_printed > 0.1
        assert report.oracle_monotone_increasing

    def test_summary_mentions_both_variants(self):
        grid = TimeGrid(t_max=1.0, n_points=128)
        text = adjudicate(_problem(), grid).summary()
        assert "as_printed" in text
        assert "sumudu_consistent" in text
        assert "monotone" in text

    def test_tight_tolerance_rejects_both(self):
        grid = TimeGrid(t_max=1.0, n_points=64)
        report = adjudicate(_problem(), grid, tol=1e-15)
        assert report.agreeing == ()
