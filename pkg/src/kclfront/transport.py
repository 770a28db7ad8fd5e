"""Staggered-potential transport enforcing the geometric solenoidal constraint.

The tangent blocks of the conserved field satisfy the involution

    (G2 V_k)_xi1 - (G1 U_k)_xi2 = 0,   k = 1, 2, 3,

equivalently G1 U_k = (A_k)_xi1 and G2 V_k = (A_k)_xi2 for three scalar
potentials A_k evolving by d A_k / dt = M N_k.  Storing A_k at cell
corners (i+1/2, j+1/2) and *defining* the edge-collocated tangents as
potential difference quotients

    [G1 U_k]_{i,j+1/2}   = (A_k_{i+1/2,j+1/2} - A_k_{i-1/2,j+1/2}) / h1
    [G2 V_k]_{i+1/2,j}   = (A_k_{i+1/2,j+1/2} - A_k_{i+1/2,j-1/2}) / h2

makes the discrete cell-centre divergence telescope to zero identically.
Corner potentials advance with the rate

    dA_k/dt = 1/4 ( [M N_k] on the four incident faces ),

where the face values of M N_k are read off the numerical fluxes of the
finite-volume stage (negated, because the stored flux is -M*N), and the
cell-centred tangent blocks are overwritten each stage by averaging the
two adjacent edges.

Array conventions (interior cell indices i in [0, n1), j in [0, n2)):
    a:        (n1+1, n2+1, 3)  corner (i-1/2, j-1/2) at index [i, j]
    edge_gu:  (n1,   n2+1, 3)  [G1 U] at (i, j-1/2), index [i, j]
    edge_gv:  (n1+1, n2,   3)  [G2 V] at (i-1/2, j), index [i, j]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import BadParameter, PathInconsistency
from .grid import GridSpec
from .state import GU, GV

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .scheme import Field


@dataclass
class CtState:
    """Corner potentials plus the edge tangents currently derived from them."""

    a: np.ndarray
    edge_gu: np.ndarray
    edge_gv: np.ndarray
    grid: GridSpec


def collocate_edges(a: np.ndarray, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Edge tangents as potential difference quotients (edge_gu, edge_gv)."""
    edge_gu = np.diff(a, axis=0) / grid.h1
    edge_gv = np.diff(a, axis=1) / grid.h2
    return edge_gu, edge_gv


def with_potentials(ct: CtState, a: np.ndarray) -> CtState:
    """A new transport state with potentials `a` and freshly derived edges."""
    edge_gu, edge_gv = collocate_edges(a, ct.grid)
    return CtState(a=a, edge_gu=edge_gu, edge_gv=edge_gv, grid=ct.grid)


def init_potentials(
    initial_edge_gu: np.ndarray,
    initial_edge_gv: np.ndarray,
    grid: GridSpec,
    path_tol: float = 1e-8,
) -> CtState:
    """Build corner potentials by discrete path integration of edge data.

    The potential is gauged to zero at the first corner and accumulated
    along xi1 first, then xi2.  The opposite integration order must
    agree to `path_tol`; a larger discrepancy means the edge data is
    not curl-compatible and raises PathInconsistency.
    """
    n1, n2 = grid.n1, grid.n2
    if initial_edge_gu.shape != (n1, n2 + 1, 3) or initial_edge_gv.shape != (
        n1 + 1,
        n2,
        3,
    ):
        raise BadParameter(
            f"edge arrays must have shapes {(n1, n2 + 1, 3)} and {(n1 + 1, n2, 3)}, "
            f"got {initial_edge_gu.shape} and {initial_edge_gv.shape}"
        )
    a = np.zeros((n1 + 1, n2 + 1, 3))
    a[1:, 0] = np.cumsum(grid.h1 * initial_edge_gu[:, 0], axis=0)
    a[:, 1:] = a[:, :1] + np.cumsum(grid.h2 * initial_edge_gv, axis=1)

    b = np.zeros_like(a)
    b[0, 1:] = np.cumsum(grid.h2 * initial_edge_gv[0], axis=0)
    b[1:, :] = b[:1, :] + np.cumsum(grid.h1 * initial_edge_gu, axis=0)

    gap = float(np.max(np.abs(a - b)))
    if gap > path_tol:
        raise PathInconsistency(
            f"potential depends on integration path (max gap {gap:.3e} > {path_tol:.1e})"
        )
    edge_gu, edge_gv = collocate_edges(a, grid)
    return CtState(a=a, edge_gu=edge_gu, edge_gv=edge_gv, grid=grid)


def potential_rate(f1: np.ndarray, f2: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Corner rate dA_k/dt averaged from the four incident face fluxes.

    Expects the flux arrays of `compute_fluxes`: f1 of shape
    (n1+1, n2+2, 8) whose rows span one ghost row beyond the interior,
    and f2 of shape (n1+2, n2+1, 8) likewise for columns.  The stored
    fluxes carry -M*N, so they are negated to recover the face M N_k.
    """
    n1, n2 = grid.n1, grid.n2
    if f1.shape[:2] != (n1 + 1, n2 + 2) or f2.shape[:2] != (n1 + 2, n2 + 1):
        raise BadParameter(
            f"flux arrays must have leading shapes {(n1 + 1, n2 + 2)} and "
            f"{(n1 + 2, n2 + 1)}, got {f1.shape[:2]} and {f2.shape[:2]}"
        )
    mn1 = -f1[..., GU]
    mn2 = -f2[..., GV]
    return 0.25 * (mn1[:, :-1] + mn1[:, 1:] + mn2[:-1, :] + mn2[1:, :])


def update_potentials(
    ct: CtState,
    fluxes: tuple[np.ndarray, np.ndarray],
    dt: float,
    stage: str = "predictor",
    base: CtState | None = None,
) -> CtState:
    """Advance the potentials one TVD Runge-Kutta stage from stage fluxes.

    stage="predictor": A <- A + dt * rate.
    stage="corrector": A <- 1/2 base.A + 1/2 A + 1/2 dt * rate (requires `base`,
    the state the step started from).
    """
    rate = potential_rate(*fluxes, ct.grid)
    if stage == "predictor":
        return with_potentials(ct, ct.a + dt * rate)
    if stage == "corrector":
        if base is None:
            raise BadParameter("corrector stage needs the step's base state")
        return with_potentials(ct, 0.5 * base.a + 0.5 * ct.a + 0.5 * dt * rate)
    raise BadParameter(f"stage must be 'predictor' or 'corrector', got {stage!r}")


def center_interp(ct: CtState) -> tuple[np.ndarray, np.ndarray]:
    """Cell-centred tangent blocks by averaging the two adjacent edges.

    Returns (gu, gv), each shaped (n1, n2, 3).
    """
    gu = 0.5 * (ct.edge_gu[:, :-1] + ct.edge_gu[:, 1:])
    gv = 0.5 * (ct.edge_gv[:-1, :] + ct.edge_gv[1:, :])
    return gu, gv


def apply_centers(field: "Field", ct: CtState) -> None:
    """Overwrite the interior tangent slots (0-5) from the potentials."""
    gu, gv = center_interp(ct)
    interior = field.w[field.grid.interior]
    interior[..., GU] = gu
    interior[..., GV] = gv


def divergence_field(ct: CtState) -> tuple[np.ndarray, np.ndarray]:
    """Cell-centre divergence of (G2 V_k, -G1 U_k) from the edge tangents.

    Returns (div, max_abs) with div shaped (n1, n2, 3) and max_abs the
    per-component maximum magnitude, shape (3,).
    """
    div = (
        np.diff(ct.edge_gv, axis=0) / ct.grid.h1
        - np.diff(ct.edge_gu, axis=1) / ct.grid.h2
    )
    return div, np.max(np.abs(div), axis=(0, 1))
