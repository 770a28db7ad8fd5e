"""Staggered potentials: collocation, updates, and the telescoping constraint."""
import numpy as np
import pytest

from kclfront import (
    BadParameter,
    CtState,
    ModelKind,
    PathInconsistency,
    ScenarioConfig,
    ScenarioKind,
    SchemeConfig,
    apply_centers,
    build,
    center_interp,
    centered_divergence,
    cfl_dt,
    collocate_edges,
    divergence_field,
    init_potentials,
    potential_rate,
    rk2_step,
    update_potentials,
)
from kclfront.grid import BoundaryKind, GridSpec
from kclfront.scheme import compute_fluxes

from kcl_helpers import uniform_field


def corner_grid(n1=12, n2=9, bc="extrapolation"):
    kind = BoundaryKind(bc)
    return GridSpec(
        n1=n1, n2=n2, xi1_min=0.0, xi1_max=1.2, xi2_min=0.0, xi2_max=0.9,
        bc_xi1=kind, bc_xi2=kind,
    )


def smooth_potentials(grid):
    c1 = grid.corners(0)[:, None]
    c2 = grid.corners(1)[None, :]
    a = np.empty((grid.n1 + 1, grid.n2 + 1, 3))
    a[..., 0] = np.sin(2.0 * c1) * np.cos(c2)
    a[..., 1] = c1 * c2 + 0.3 * c1
    a[..., 2] = np.cos(c1 + 2.0 * c2)
    return a


class TestInitAndCollocate:
    def test_edges_round_trip_through_potentials(self):
        grid = corner_grid()
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        ct = init_potentials(gu, gv, grid)
        assert np.max(np.abs(ct.edge_gu - gu)) < 1e-12
        assert np.max(np.abs(ct.edge_gv - gv)) < 1e-12
        _, mx = divergence_field(ct)
        assert np.all(mx <= 1e-12)

    def test_inconsistent_edges_refused(self):
        grid = corner_grid()
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        gu[5, 3, 0] += 1e-3
        with pytest.raises(PathInconsistency):
            init_potentials(gu, gv, grid)

    def test_shape_mismatch_refused(self):
        grid = corner_grid()
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        with pytest.raises(BadParameter):
            init_potentials(gu[:-1], gv, grid)

    def test_linear_potential_gives_constant_edges_and_centers(self):
        grid = corner_grid()
        c1 = grid.corners(0)[:, None]
        c2 = grid.corners(1)[None, :]
        a = np.zeros((grid.n1 + 1, grid.n2 + 1, 3))
        a[..., 0] = 2.0 * c1 - 0.5 * c2
        gu, gv = collocate_edges(a, grid)
        assert np.allclose(gu[..., 0], 2.0, atol=1e-13)
        assert np.allclose(gv[..., 0], -0.5, atol=1e-13)
        ct = init_potentials(gu, gv, grid)
        cu, cv = center_interp(ct)
        assert np.allclose(cu[..., 0], 2.0, atol=1e-13)
        assert np.allclose(cv[..., 0], -0.5, atol=1e-13)
        assert cu.shape == (grid.n1, grid.n2, 3)
        assert cv.shape == (grid.n1, grid.n2, 3)

    def test_divergence_localizes_corrupted_edge(self):
        grid = corner_grid()
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        ct = init_potentials(gu, gv, grid)
        bad = ct.edge_gu.copy()
        bad[4, 3, 2] += 1.0
        div, _ = divergence_field(CtState(a=ct.a, edge_gu=bad, edge_gv=ct.edge_gv, grid=grid))
        hot = np.argwhere(np.abs(div[..., 2]) > 1e-10)
        assert sorted(map(tuple, hot)) == [(4, 2), (4, 3)]


class TestUpdates:
    def test_uniform_rate_moves_only_vertical_potential(self):
        field = uniform_field(n1=6, n2=5, v=0.0)
        cfg = SchemeConfig()
        f1, f2 = compute_fluxes(field, ModelKind.SRT, cfg)
        rate = potential_rate(f1, f2, field.grid)
        assert rate.shape == (7, 6, 3)
        assert np.allclose(rate[..., 2], 1.2, atol=1e-14)
        assert np.allclose(rate[..., 0:2], 0.0, atol=1e-14)

    def test_predictor_and_corrector_algebra(self):
        grid = corner_grid(6, 5)
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        base = init_potentials(gu, gv, grid)
        rate = np.random.default_rng(7).normal(size=base.a.shape)
        f1 = np.zeros((grid.n1 + 1, grid.n2 + 2, 8))
        f2 = np.zeros((grid.n1 + 2, grid.n2 + 1, 8))
        f1[..., 0:3] = -np.moveaxis(
            np.broadcast_to(np.zeros(3), f1[..., 0:3].shape[-1:]), 0, -1
        )
        pred = update_potentials(base, (f1, f2), 0.25, stage="predictor")
        assert np.allclose(pred.a, base.a + 0.25 * potential_rate(f1, f2, grid), atol=1e-15)
        corr = update_potentials(pred, (f1, f2), 0.25, stage="corrector", base=base)
        assert np.allclose(
            corr.a,
            0.5 * base.a + 0.5 * pred.a + 0.125 * potential_rate(f1, f2, grid),
            atol=1e-15,
        )
        assert rate.shape == base.a.shape

    def test_zero_dt_is_identity(self):
        grid = corner_grid(6, 5)
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        ct = init_potentials(gu, gv, grid)
        f1 = np.ones((grid.n1 + 1, grid.n2 + 2, 8))
        f2 = np.ones((grid.n1 + 2, grid.n2 + 1, 8))
        out = update_potentials(ct, (f1, f2), 0.0, stage="predictor")
        assert np.array_equal(out.a, ct.a)

    def test_corrector_requires_base(self):
        grid = corner_grid(6, 5)
        a = smooth_potentials(grid)
        gu, gv = collocate_edges(a, grid)
        ct = init_potentials(gu, gv, grid)
        f1 = np.zeros((grid.n1 + 1, grid.n2 + 2, 8))
        f2 = np.zeros((grid.n1 + 2, grid.n2 + 1, 8))
        with pytest.raises(BadParameter):
            update_potentials(ct, (f1, f2), 0.1, stage="corrector")
        with pytest.raises(BadParameter):
            update_potentials(ct, (f1, f2), 0.1, stage="midpoint")


class TestApplyCenters:
    def test_overwrites_tangents_only(self):
        cfg = ScenarioConfig(kind=ScenarioKind.DIP, n1=12, n2=12)
        field, _, ct = build(cfg)
        ii, jj = field.grid.interior
        keep = field.w[ii, jj, 6:8].copy()
        field.w[ii, jj, 0:6] = 123.0
        apply_centers(field, ct)
        cu, cv = center_interp(ct)
        assert np.allclose(field.w[ii, jj, 0:3], cu, atol=1e-15)
        assert np.allclose(field.w[ii, jj, 3:6], cv, atol=1e-15)
        assert np.array_equal(field.w[ii, jj, 6:8], keep)


class TestConstraintUnderStepping:
    def test_involution_preserved_with_transport(self):
        cfg = ScenarioConfig(kind=ScenarioKind.DIP, n1=16, n2=16)
        field, mesh, ct = build(cfg)
        sch = SchemeConfig()
        for _ in range(4):
            dt = cfl_dt(field, sch, cfg.model)
            field, ct, mesh = rk2_step(field, dt, cfg.model, sch, ct, mesh)
        _, mx = divergence_field(ct)
        assert np.all(mx <= 1e-12)

    def test_without_transport_no_involution_survives(self):
        # With transport the run carries an exact discrete involution
        # certificate; without it the only divergence estimate available
        # sits many orders of magnitude higher after a few steps.
        cfg = ScenarioConfig(kind=ScenarioKind.PERIODIC_PULSE, n1=32, n2=32)
        sch = SchemeConfig()

        field, mesh, ct = build(cfg)
        d0 = np.max(np.abs(centered_divergence(field.w, field.grid)))
        assert d0 <= 1e-10
        stag = 0.0
        for _ in range(10):
            dt = cfl_dt(field, sch, cfg.model)
            field, ct, mesh = rk2_step(field, dt, cfg.model, sch, ct, mesh)
            stag = max(stag, divergence_field(ct)[1].max())
        assert stag <= 1e-12

        field, mesh, _ = build(cfg)
        for _ in range(10):
            dt = cfl_dt(field, sch, cfg.model)
            field, _, mesh = rk2_step(field, dt, cfg.model, sch, None, mesh)
        d1 = np.max(np.abs(centered_divergence(field.w, field.grid)))
        assert d1 >= 1e-4
        assert d1 > 1e3 * max(stag, 1e-16)
