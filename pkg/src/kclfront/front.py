"""Physical front positions, ray advancement, and run diagnostics.

The front surface X(xi1, xi2, t) is sampled at the interior cell
centers and advanced along rays, d/dt X = M * N, with the same
two-stage Runge-Kutta combination as the conserved field.  Diagnostics
cover the speed and rear-gradient extrema, the front height
h(t) = max(x3) - min(x3), the solenoidal-constraint residual, and a
kink detector that counts normal-direction jumps along the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, EmptySection
from .grid import BoundaryKind, GridSpec
from .state import GU, GV, PrimitiveState


@dataclass
class FrontMesh:
    """Interior cell-center positions of the front, shape (n1, n2, 3)."""

    x: np.ndarray
    t: float = 0.0

    def copy(self) -> "FrontMesh":
        return FrontMesh(self.x.copy(), self.t)


def advance_front(
    mesh: FrontMesh, p0: PrimitiveState, p1: PrimitiveState, dt: float
) -> FrontMesh:
    """Move the mesh one step along rays using the two stage primitives.

    X^(1) = X^n + dt M^0 N^0 and X^(n+1) = 1/2 X^n + 1/2 X^(1)
    + 1/2 dt M^1 N^1, which collapses to X + dt/2 (M^0 N^0 + M^1 N^1).
    """
    v0 = p0.M[..., None] * p0.N
    v1 = p1.M[..., None] * p1.N
    return FrontMesh(x=mesh.x + 0.5 * dt * (v0 + v1), t=mesh.t + dt)


@dataclass(frozen=True)
class KinkReport:
    """Kink-face flags and the azimuthal line count at the mid row.

    flags_xi1[i, j] marks the face between cells (i, j) and (i+1, j);
    flags_xi2[i, j] the face between (i, j) and (i, j+1).  In a periodic
    xi2 direction flags_xi2 gains a final seam column.  `count` is the
    number of contiguous flagged runs encountered when walking the
    xi2-faces along the middle xi1 row (runs merging across the seam
    are counted once).
    """

    count: int
    flags_xi1: np.ndarray
    flags_xi2: np.ndarray


def _runs(flags: np.ndarray, wrap: bool) -> int:
    """Number of contiguous True runs in a 1-D boolean array."""
    if not flags.any():
        return 0
    starts = int(np.count_nonzero(flags & ~np.roll(flags, 1)))
    if not wrap and flags[0] and flags[-1]:
        # np.roll sees a wrapped run; an open walk splits it in two.
        starts += 1
    if wrap and starts == 0:
        return 1  # every face flagged: one closed run around the seam
    return starts


def detect_kinks(
    prims: PrimitiveState, grid: GridSpec, threshold_deg: float = 5.0
) -> KinkReport:
    """Flag faces where the unit normal turns by more than `threshold_deg`.

    `prims` must hold the interior primitives, shaped (n1, n2, ...).
    """
    if not 0.0 < threshold_deg < 90.0:
        raise BadParameter(f"threshold must be in (0, 90) degrees, got {threshold_deg}")
    n = prims.N
    cos_thr = np.cos(np.radians(threshold_deg))
    dot1 = np.einsum("ijk,ijk->ij", n[:-1, :], n[1:, :])
    flags1 = dot1 < cos_thr
    dot2 = np.einsum("ijk,ijk->ij", n[:, :-1], n[:, 1:])
    flags2 = dot2 < cos_thr
    wrap = grid.bc_xi2 == BoundaryKind.PERIODIC
    if wrap:
        seam = np.einsum("ik,ik->i", n[:, -1], n[:, 0]) < cos_thr
        flags2 = np.concatenate([flags2, seam[:, None]], axis=1)
    mid = prims.N.shape[0] // 2
    return KinkReport(
        count=_runs(flags2[mid], wrap), flags_xi1=flags1, flags_xi2=flags2
    )


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One diagnostics row: extrema, front height, constraint residual, kinks."""

    t: float
    m_max: float
    m_min: float
    v_max: float
    v_min: float
    height: float
    div_max: tuple[float, float, float]
    kink_count: int


def centered_divergence(w: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Solenoidal-constraint residual from cell values by central differences.

    Used when no staggered potentials are carried (the transport-free
    control); `w` is the padded conserved array with filled ghosts.
    Returns shape (n1, n2, 3).
    """
    g, n1, n2 = grid.ghost, grid.n1, grid.n2
    i = slice(g, g + n1)
    j = slice(g, g + n2)
    gv = w[..., GV]
    gu = w[..., GU]
    d_gv = (gv[g + 1 : g + n1 + 1, j] - gv[g - 1 : g + n1 - 1, j]) / (2.0 * grid.h1)
    d_gu = (gu[i, g + 1 : g + n2 + 1] - gu[i, g - 1 : g + n2 - 1]) / (2.0 * grid.h2)
    return d_gv - d_gu


def diagnostics(
    prims: PrimitiveState,
    mesh: FrontMesh,
    grid: GridSpec,
    div_max: np.ndarray,
    kink_threshold_deg: float = 5.0,
) -> DiagnosticsRecord:
    """Assemble one diagnostics record from interior primitives and the mesh."""
    report = detect_kinks(prims, grid, kink_threshold_deg)
    x3 = mesh.x[..., 2]
    return DiagnosticsRecord(
        t=mesh.t,
        m_max=float(np.max(prims.M)),
        m_min=float(np.min(prims.M)),
        v_max=float(np.max(prims.calV)),
        v_min=float(np.min(prims.calV)),
        height=float(np.max(x3) - np.min(x3)),
        div_max=tuple(float(v) for v in div_max),
        kink_count=report.count,
    )


def cross_section(mesh: FrontMesh, axis: int, value: float) -> np.ndarray:
    """Extract the lattice row or column of mesh points nearest a plane.

    The plane is {x[axis] = value} for axis in {0, 1, 2}.  Whole lattice
    rows (fixed xi1 index) and columns (fixed xi2 index) compete by mean
    distance to the plane; the winner is returned as an ordered polyline
    of shape (k, 3).  No interpolation across rows is performed.  If even
    the winning line sits farther from the plane than half the local
    transverse mesh spacing, EmptySection is raised.
    """
    if axis not in (0, 1, 2):
        raise BadParameter(f"axis must be 0, 1 or 2, got {axis}")
    coord = mesh.x[..., axis]
    row_dist = np.mean(np.abs(coord - value), axis=1)
    col_dist = np.mean(np.abs(coord - value), axis=0)
    i_best = int(np.argmin(row_dist))
    j_best = int(np.argmin(col_dist))

    def row_spacing(i: int) -> float:
        lo = max(i - 1, 0)
        hi = min(i + 1, coord.shape[0] - 1)
        return float(np.mean(np.abs(coord[hi] - coord[lo]))) / max(hi - lo, 1)

    def col_spacing(j: int) -> float:
        lo = max(j - 1, 0)
        hi = min(j + 1, coord.shape[1] - 1)
        return float(np.mean(np.abs(coord[:, hi] - coord[:, lo]))) / max(hi - lo, 1)

    best_row = (float(row_dist[i_best]), row_spacing(i_best))
    best_col = (float(col_dist[j_best]), col_spacing(j_best))
    slack = 1e-12
    row_ok = best_row[0] <= 0.5 * best_row[1] + slack
    col_ok = best_col[0] <= 0.5 * best_col[1] + slack
    if row_ok and (not col_ok or best_row[0] <= best_col[0]):
        return mesh.x[i_best, :, :]
    if col_ok:
        return mesh.x[:, j_best, :]
    raise EmptySection(
        f"no lattice line lies within half a cell of x[{axis}] = {value} "
        f"(best row {best_row[0]:.3e}, best column {best_col[0]:.3e})"
    )
