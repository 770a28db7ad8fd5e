"""Reconstruction, interface fluxes, CFL step, and the two-stage update."""
import numpy as np
import pytest

from kclfront import (
    BadParameter,
    Field,
    GridSpec,
    ModelKind,
    SchemeConfig,
    analytic_planar_solution,
    cfl_dt,
    conserved_from_primitives,
    fill_ghosts,
    flux_xi1,
    recover_primitives,
    reconstruct,
    rhs,
    rk2_step,
    source,
)
from kclfront.grid import BoundaryKind
from kclfront.scheme import kt_interface_flux

from kcl_helpers import uniform_field, unit_state


def smooth_periodic_field(n: int = 24, model: ModelKind = ModelKind.SRT) -> Field:
    """Flat-tangent field whose speed varies smoothly and periodically."""
    grid = GridSpec(
        n1=n, n2=n, xi1_min=0.0, xi1_max=1.0, xi2_min=0.0, xi2_max=1.0,
        bc_xi1=BoundaryKind.PERIODIC, bc_xi2=BoundaryKind.PERIODIC,
    )
    x1 = grid.centers(0)[:, None]
    x2 = grid.centers(1)[None, :]
    m = 1.2 + 0.05 * np.sin(2.0 * np.pi * x1) * np.cos(2.0 * np.pi * x2)
    w = np.zeros((n + 2 * grid.ghost, n + 2 * grid.ghost, 8))
    ii, jj = grid.interior
    w[ii, jj, 0] = 1.0
    w[ii, jj, 4] = 1.0
    kappa = (m - 1.0) ** 2 * np.exp(2.0 * (m - 1.0))
    w[ii, jj, 6] = kappa
    if model is ModelKind.SRT:
        w[ii, jj, 7] = np.exp(2.0 * (m - 1.0)) * 0.04
    fill_ghosts(w, grid)
    return Field(w, grid, 0.0)


class TestReconstruct:
    @pytest.mark.parametrize("limiter", ["cweno", "minmod"])
    def test_linear_data_exact(self, limiter):
        field = uniform_field(n1=10, n2=6, bc="extrapolation")
        x1 = np.arange(field.w.shape[0], dtype=float)
        field.w[..., 0] = 1.0 + 0.25 * x1[:, None]
        cfg = SchemeConfig(limiter=limiter)
        wl, wr = reconstruct(field, 0, cfg)
        centers = field.w[..., 0]
        expect_left = centers[:-1] + 0.125
        expect_right = centers[1:] - 0.125
        # Interior interfaces only; the one-sided boundary stencils differ.
        assert np.allclose(wl[2:-2, :, 0], expect_left[2:-2], atol=1e-12)
        assert np.allclose(wr[2:-2, :, 0], expect_right[2:-2], atol=1e-12)

    def test_minmod_flattens_extrema(self):
        field = uniform_field(n1=8, n2=4, bc="periodic")
        field.w[..., 6] = 0.05
        field.w[6, :, 6] = 0.07  # isolated ridge along xi1
        cfg = SchemeConfig(limiter="minmod")
        wl, wr = reconstruct(field, 0, cfg)
        # Faces bordering cell 6: the extremum cell contributes zero slope.
        assert np.allclose(wl[6, :, 6], 0.07, atol=1e-15)
        assert np.allclose(wr[5, :, 6], 0.07, atol=1e-15)

    def test_shapes_one_shorter_along_axis(self):
        field = uniform_field(n1=7, n2=5)
        cfg = SchemeConfig()
        for axis in (0, 1):
            wl, wr = reconstruct(field, axis, cfg)
            expect = list(field.w.shape)
            expect[axis] -= 1
            assert list(wl.shape) == expect
            assert list(wr.shape) == expect

    def test_unknown_limiter_refused(self):
        with pytest.raises(BadParameter):
            SchemeConfig(limiter="superbee")

    def test_bad_cfl_refused(self):
        for nu in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(BadParameter):
                SchemeConfig(cfl_nu=nu)


class TestInterfaceFlux:
    def test_consistency_on_equal_states(self):
        w = conserved_from_primitives(unit_state(), ModelKind.SRT)
        wl = np.tile(w, (4, 3, 1))
        f = kt_interface_flux(wl, wl.copy(), 0, ModelKind.SRT, SchemeConfig())
        expect = flux_xi1(recover_primitives(wl, ModelKind.SRT))
        assert np.allclose(f, expect, atol=1e-15)

    def test_jump_adds_dissipation(self):
        wa = conserved_from_primitives(unit_state(m=1.2), ModelKind.SRT)
        wb = conserved_from_primitives(unit_state(m=1.3), ModelKind.SRT)
        wl = np.tile(wa, (1, 1, 1))
        wr = np.tile(wb, (1, 1, 1))
        f = kt_interface_flux(wl, wr, 0, ModelKind.SRT, SchemeConfig())
        pa = recover_primitives(wl, ModelKind.SRT)
        pb = recover_primitives(wr, ModelKind.SRT)
        central = 0.5 * (flux_xi1(pa) + flux_xi1(pb))
        # The deviation from the central average acts against the jump.
        dev = f - central
        jump = wr - wl
        nz = np.abs(jump) > 0
        assert np.all(dev[nz] * jump[nz] < 0)


class TestSemiDiscrete:
    def test_uniform_no_gradient_is_steady(self):
        field = uniform_field(v=0.0)
        L = rhs(field, ModelKind.SRT)
        assert np.max(np.abs(L)) == 0.0

    def test_uniform_decay_sources_survive(self):
        field = uniform_field(v=0.2)
        L = rhs(field, ModelKind.SRT)
        assert np.max(np.abs(L[..., 0:6])) == 0.0
        assert np.allclose(L[..., 6], -0.0286430, atol=5e-8)
        assert np.allclose(L[..., 7], -0.0525122, atol=5e-8)
        s = source(unit_state(), ModelKind.SRT)
        assert np.allclose(L[..., 6], s[6], atol=1e-15)
        assert np.allclose(L[..., 7], s[7], atol=1e-15)

    def test_wavefront_model_uniform_is_steady(self):
        field = uniform_field(v=0.2, model=ModelKind.WNLRT)
        L = rhs(field, ModelKind.WNLRT)
        assert np.max(np.abs(L)) == 0.0


class TestCfl:
    def test_reference_time_step(self):
        field = uniform_field(n1=8, n2=8, h=0.1)
        dt = cfl_dt(field, SchemeConfig(cfl_nu=0.9), ModelKind.SRT)
        assert dt == pytest.approx(0.284605, abs=1e-6)

    def test_scales_with_cfl_number(self):
        field = uniform_field(n1=8, n2=8, h=0.1)
        dt = cfl_dt(field, SchemeConfig(cfl_nu=0.45), ModelKind.SRT)
        assert dt == pytest.approx(0.5 * 0.284605, abs=1e-6)

    def test_finest_direction_controls(self):
        field = uniform_field(n1=8, n2=8, h=0.1)
        grid = field.grid
        squeezed = GridSpec(
            n1=grid.n1, n2=grid.n2, xi1_min=0.0, xi1_max=8 * 0.1,
            xi2_min=0.0, xi2_max=8 * 0.05,
            bc_xi1=grid.bc_xi1, bc_xi2=grid.bc_xi2,
        )
        dt_fine = cfl_dt(Field(field.w, squeezed, 0.0), SchemeConfig(cfl_nu=0.9), ModelKind.SRT)
        assert dt_fine == pytest.approx(0.5 * 0.284605, abs=1e-6)


class TestStepping:
    def test_uniform_step_matches_two_stage_quadrature(self):
        field = uniform_field(v=0.2)
        dt = 0.2
        w0 = conserved_from_primitives(unit_state(), ModelKind.SRT)
        s0 = source(unit_state(), ModelKind.SRT)
        wstar = w0 + dt * s0
        pstar = recover_primitives(wstar, ModelKind.SRT)
        expect = 0.5 * (w0 + wstar + dt * source(pstar, ModelKind.SRT))
        stepped, _, _ = rk2_step(field, dt, ModelKind.SRT)
        ii, jj = field.grid.interior
        assert np.allclose(stepped.w[ii, jj], expect, rtol=1e-14, atol=1e-16)
        assert stepped.t == pytest.approx(0.2)

    def test_wavefront_uniform_state_is_fixed_point(self):
        field = uniform_field(v=0.2, model=ModelKind.WNLRT)
        stepped, _, _ = rk2_step(field, 0.3, ModelKind.WNLRT)
        assert np.array_equal(stepped.w, field.w)

    def test_flat_front_decay_is_second_order_in_time(self):
        exact = analytic_planar_solution(1.2, 0.2, 1.0)

        def m_error(dt: float) -> float:
            field = uniform_field(v=0.2)
            n = int(round(1.0 / dt))
            for _ in range(n):
                field, _, _ = rk2_step(field, dt, ModelKind.SRT)
            p = recover_primitives(field.w[field.grid.interior], ModelKind.SRT)
            return abs(float(p.M.ravel()[0]) - exact.m)

        e1, e2 = m_error(0.05), m_error(0.025)
        assert e1 < 1e-4
        assert e1 / e2 == pytest.approx(4.0, rel=0.25)

    def test_periodic_step_conserves_cell_sums(self):
        field = smooth_periodic_field(model=ModelKind.WNLRT)
        ii, jj = field.grid.interior
        before = field.w[ii, jj, :7].sum(axis=(0, 1))
        dt = 0.5 * cfl_dt(field, SchemeConfig(), ModelKind.WNLRT)
        stepped, _, _ = rk2_step(field, dt, ModelKind.WNLRT)
        after = stepped.w[ii, jj, :7].sum(axis=(0, 1))
        scale = np.maximum(np.abs(before), 1.0)
        assert np.max(np.abs(after - before) / scale) < 1e-13

    def test_smooth_speed_variation_stays_admissible(self):
        field = smooth_periodic_field(model=ModelKind.SRT)
        cfg = SchemeConfig()
        for _ in range(5):
            dt = cfl_dt(field, cfg, ModelKind.SRT)
            field, _, _ = rk2_step(field, dt, ModelKind.SRT, cfg)
        p = recover_primitives(field.w[field.grid.interior], ModelKind.SRT)
        assert np.all(p.M > 1.0)
        assert np.all(np.isfinite(field.w))
