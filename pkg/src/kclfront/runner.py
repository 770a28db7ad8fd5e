"""Run driver: time loop, exact snapshot landing, and text outputs.

A run writes into its output directory:

* ``run_manifest.txt``  — key = value echo of the resolved settings,
  package version, and completion status.  No timestamps, so repeated
  runs of the same configuration are byte-identical.
* ``diagnostics.csv``   — one row at t = 0 and after every accepted
  step, columns ``t, m_max, m_min, v_max, v_min, height, div1_max,
  div2_max, div3_max, kink_count``.
* ``snapshots/t{time:012.6f}/`` — one directory per snapshot holding
  ``header.txt`` plus one whitespace-delimited text matrix per field
  component; every line is one fixed-xi2 row (xi1 varies fastest).

The time step is the CFL step clipped so the run lands exactly on each
snapshot time and on t_end.  If the state goes non-finite or recovery
fails mid-step, the run flushes the last good state as a final snapshot,
marks the manifest ``aborted``, and re-raises the error.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from ._version import __version__
from .config import RunConfig
from .errors import KclError, NoConvergence
from .front import (
    DiagnosticsRecord,
    FrontMesh,
    centered_divergence,
    diagnostics,
)
from .grid import GridSpec
from .scheme import Field, cfl_dt, rk2_step
from .scenarios import build, resolved_parameters
from .state import GU, GV, W7, W8, PrimitiveState, recover_primitives
from .transport import CtState, divergence_field

_LANDING_TOL = 1e-12
_MAX_STEPS = 5_000_000

_CSV_HEADER = (
    "t,m_max,m_min,v_max,v_min,height,div1_max,div2_max,div3_max,kink_count"
)


@dataclass
class RunResult:
    """In-memory summary of a completed run."""

    output_dir: Path
    records: list[DiagnosticsRecord]
    field: Field
    mesh: FrontMesh
    ct: CtState | None
    steps: int
    status: str


def _interior_primitives(field: Field, model, cfg) -> PrimitiveState:
    ii, jj = field.grid.interior
    return recover_primitives(
        field.w[ii, jj],
        model,
        newton_max_iter=cfg.newton_max_iter,
        newton_residual_tol=cfg.newton_residual_tol,
    )


def _div_max(field: Field, ct: CtState | None) -> np.ndarray:
    if ct is not None:
        return divergence_field(ct)[1]
    div = centered_divergence(field.w, field.grid)
    return np.max(np.abs(div), axis=(0, 1))


def _record(
    field: Field,
    mesh: FrontMesh,
    ct: CtState | None,
    cfg: RunConfig,
    prims: PrimitiveState,
) -> DiagnosticsRecord:
    return diagnostics(
        prims, mesh, field.grid, _div_max(field, ct), cfg.kink_threshold_deg
    )


def _csv_row(rec: DiagnosticsRecord) -> str:
    vals = [
        rec.t,
        rec.m_max,
        rec.m_min,
        rec.v_max,
        rec.v_min,
        rec.height,
        rec.div_max[0],
        rec.div_max[1],
        rec.div_max[2],
    ]
    return ",".join(f"{v:.17e}" for v in vals) + f",{rec.kink_count}"


def snapshot_dirname(t: float) -> str:
    """Canonical snapshot directory name for a simulation time."""
    return f"t{t:012.6f}"


def _write_snapshot(
    out: Path,
    cfg: RunConfig,
    field: Field,
    mesh: FrontMesh,
    ct: CtState | None,
    prims: PrimitiveState,
) -> None:
    snap = out / "snapshots" / snapshot_dirname(field.t)
    snap.mkdir(parents=True, exist_ok=True)
    ii, jj = field.grid.interior
    w = field.w[ii, jj]
    center_fields: dict[str, np.ndarray] = {
        "gu1": w[..., GU][..., 0],
        "gu2": w[..., GU][..., 1],
        "gu3": w[..., GU][..., 2],
        "gv1": w[..., GV][..., 0],
        "gv2": w[..., GV][..., 1],
        "gv3": w[..., GV][..., 2],
        "w7": w[..., W7],
        "w8": w[..., W8],
        "x1": mesh.x[..., 0],
        "x2": mesh.x[..., 1],
        "x3": mesh.x[..., 2],
        "m": prims.M,
        "calv": prims.calV,
    }
    corner_fields: dict[str, np.ndarray] = {}
    if ct is not None:
        corner_fields = {
            "a1": ct.a[..., 0],
            "a2": ct.a[..., 1],
            "a3": ct.a[..., 2],
        }
    grid = field.grid
    header = [
        f"time = {field.t:.17e}",
        f"model = {cfg.scenario.model.value}",
        f"n1 = {grid.n1}",
        f"n2 = {grid.n2}",
        f"xi1_min = {grid.xi1_min:.17e}",
        f"xi1_max = {grid.xi1_max:.17e}",
        f"xi2_min = {grid.xi2_min:.17e}",
        f"xi2_max = {grid.xi2_max:.17e}",
        "layout = one line per xi2 index; values along the line run over xi1",
        "components = " + " ".join(center_fields),
        "corner_components = " + " ".join(corner_fields),
    ]
    (snap / "header.txt").write_text("\n".join(header) + "\n")
    for name, arr in center_fields.items():
        np.savetxt(snap / f"{name}.txt", arr.T, fmt="%.17e")
    for name, arr in corner_fields.items():
        np.savetxt(snap / f"{name}.txt", arr.T, fmt="%.17e")


def _manifest_lines(cfg: RunConfig, grid: GridSpec, status: str, steps: int, final_t: float) -> list[str]:
    params = resolved_parameters(cfg.scenario)
    lines = [
        "format = kclfront-run/1",
        f"version = {__version__}",
    ]
    lines += [f"{key} = {value}" for key, value in params.items()]
    lines += [
        f"xi1_min = {grid.xi1_min!r}",
        f"xi1_max = {grid.xi1_max!r}",
        f"xi2_min = {grid.xi2_min!r}",
        f"xi2_max = {grid.xi2_max!r}",
        f"bc_xi1 = {grid.bc_xi1.value}",
        f"bc_xi2 = {grid.bc_xi2.value}",
        f"limiter = {cfg.scheme.limiter}",
        f"cfl_nu = {cfg.scheme.cfl_nu!r}",
        f"ct = {'on' if cfg.ct_enabled else 'off'}",
        f"t_end = {cfg.t_end!r}",
        f"snapshot_every = {cfg.snapshot_every!r}",
        f"kink_threshold_deg = {cfg.kink_threshold_deg!r}",
        f"status = {status}",
        f"steps = {steps}",
        f"final_t = {final_t!r}",
    ]
    return lines


def _snapshot_times(cfg: RunConfig) -> list[float]:
    times: list[float] = []
    if cfg.snapshot_every > 0.0:
        k = 1
        while k * cfg.snapshot_every < cfg.t_end * (1.0 - 1e-12):
            times.append(k * cfg.snapshot_every)
            k += 1
    times.append(cfg.t_end)
    return times


def run(cfg: RunConfig, log: Callable[[str], None] | None = None) -> RunResult:
    """Execute a configured run and write its outputs.

    Returns the in-memory end state alongside the on-disk artifacts.
    Raises the underlying error (after flushing outputs) if the state
    degenerates mid-run.
    """
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    field, mesh, ct = build(cfg.scenario)
    if not cfg.ct_enabled:
        ct = None
    model = cfg.scenario.model
    scheme = cfg.scheme

    rows: list[str] = [_CSV_HEADER]
    records: list[DiagnosticsRecord] = []

    prims = _interior_primitives(field, model, scheme)
    rec = _record(field, mesh, ct, cfg, prims)
    records.append(rec)
    rows.append(_csv_row(rec))
    _write_snapshot(out, cfg, field, mesh, ct, prims)

    steps = 0
    status = "completed"
    error: KclError | None = None
    tiny = _LANDING_TOL * max(1.0, cfg.t_end)
    try:
        for target in _snapshot_times(cfg):
            while field.t < target - tiny:
                dt_cfl = cfl_dt(field, scheme, model)
                remaining = target - field.t
                landing = dt_cfl >= remaining
                dt = remaining if landing else dt_cfl
                field, ct, mesh = rk2_step(
                    field, dt, model, cfg=scheme, ct=ct, mesh=mesh
                )
                if landing:
                    field.t = target
                    mesh.t = target
                steps += 1
                if steps > _MAX_STEPS:
                    raise NoConvergence(
                        f"time integration exceeded {_MAX_STEPS} steps"
                    )
                ii, jj = field.grid.interior
                if not np.isfinite(field.w[ii, jj]).all():
                    raise NoConvergence(
                        f"state became non-finite at t = {field.t:.6f}"
                    )
                prims = _interior_primitives(field, model, scheme)
                rec = _record(field, mesh, ct, cfg, prims)
                records.append(rec)
                rows.append(_csv_row(rec))
                if log is not None and steps % 25 == 0:
                    log(
                        f"step {steps}  t = {field.t:.6f}  dt = {dt:.3e}  "
                        f"M in [{rec.m_min:.6f}, {rec.m_max:.6f}]"
                    )
            _write_snapshot(out, cfg, field, mesh, ct, prims)
            if log is not None:
                log(f"snapshot written at t = {field.t:.6f}")
    except KclError as exc:
        status = f"aborted: {exc}"
        error = exc
        # Flush the last recoverable state so the artifacts stay usable.
        try:
            prims = _interior_primitives(field, model, scheme)
            _write_snapshot(out, cfg, field, mesh, ct, prims)
        except KclError:
            pass

    (out / "diagnostics.csv").write_text("\n".join(rows) + "\n")
    manifest = _manifest_lines(cfg, field.grid, status, steps, field.t)
    (out / "run_manifest.txt").write_text("\n".join(manifest) + "\n")
    if error is not None:
        raise error
    return RunResult(
        output_dir=out,
        records=records,
        field=field,
        mesh=mesh,
        ct=ct,
        steps=steps,
        status=status,
    )
