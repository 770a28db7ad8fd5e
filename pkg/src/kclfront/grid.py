"""Structured cell-centered lattice in ray coordinates (xi1, xi2).

The solver works on a rectangle [xi1_min, xi1_max] x [xi2_min, xi2_max]
divided into n1 x n2 equal cells, surrounded by `ghost` layers of ghost
cells on every side.  Arrays carrying per-cell data have shape
(n1 + 2*ghost, n2 + 2*ghost, ncomp); axis 0 runs along xi1 and axis 1
along xi2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadParameter


class BoundaryKind(str, Enum):
    """Ghost-fill rule for one lattice direction."""

    PERIODIC = "periodic"
    EXTRAPOLATION = "extrapolation"


@dataclass(frozen=True)
class GridSpec:
    """Geometry and boundary tags of the computational lattice.

    Attributes:
        n1, n2: interior cell counts along xi1 and xi2.
        xi1_min, xi1_max, xi2_min, xi2_max: coordinate extents.
        bc_xi1, bc_xi2: boundary kind per direction.
        ghost: ghost-layer width in cells (the piecewise-linear
            reconstruction stencil needs at least two layers).
    """

    n1: int
    n2: int
    xi1_min: float
    xi1_max: float
    xi2_min: float
    xi2_max: float
    bc_xi1: BoundaryKind = BoundaryKind.EXTRAPOLATION
    bc_xi2: BoundaryKind = BoundaryKind.EXTRAPOLATION
    ghost: int = 2

    def __post_init__(self) -> None:
        if self.n1 < 4 or self.n2 < 4:
            raise BadParameter(f"need at least 4x4 cells, got {self.n1}x{self.n2}")
        if not (self.xi1_max > self.xi1_min and self.xi2_max > self.xi2_min):
            raise BadParameter("coordinate extents must have positive length")
        if self.ghost < 2:
            raise BadParameter(f"ghost width must be >= 2, got {self.ghost}")

    @property
    def h1(self) -> float:
        return (self.xi1_max - self.xi1_min) / self.n1

    @property
    def h2(self) -> float:
        return (self.xi2_max - self.xi2_min) / self.n2

    @property
    def shape(self) -> tuple[int, int]:
        """Padded per-cell array shape (without the component axis)."""
        return (self.n1 + 2 * self.ghost, self.n2 + 2 * self.ghost)

    @property
    def interior(self) -> tuple[slice, slice]:
        """Slices selecting the interior cells of a padded array."""
        g = self.ghost
        return (slice(g, g + self.n1), slice(g, g + self.n2))

    def centers(self, axis: int) -> np.ndarray:
        """Interior cell-center coordinates along the given axis (0 or 1)."""
        if axis == 0:
            lo, h, n = self.xi1_min, self.h1, self.n1
        elif axis == 1:
            lo, h, n = self.xi2_min, self.h2, self.n2
        else:
            raise BadParameter(f"axis must be 0 or 1, got {axis}")
        return lo + (np.arange(n) + 0.5) * h

    def corners(self, axis: int) -> np.ndarray:
        """The n+1 cell-boundary coordinates along the given axis (0 or 1)."""
        if axis == 0:
            lo, h, n = self.xi1_min, self.h1, self.n1
        elif axis == 1:
            lo, h, n = self.xi2_min, self.h2, self.n2
        else:
            raise BadParameter(f"axis must be 0 or 1, got {axis}")
        return lo + np.arange(n + 1) * h

    def alloc(self, ncomp: int) -> np.ndarray:
        """A zero-filled padded array with `ncomp` trailing components."""
        return np.zeros(self.shape + (ncomp,))

    def bc(self, axis: int) -> BoundaryKind:
        return self.bc_xi1 if axis == 0 else self.bc_xi2


def fill_ghosts(w: np.ndarray, grid: GridSpec) -> None:
    """Fill the ghost layers of a padded per-cell array in place.

    Periodic directions wrap the interior; extrapolation directions copy
    the outermost interior cell (zeroth order).  Axis 0 is filled first,
    then axis 1 over the full (already padded) extent, which also sets
    the corner blocks consistently.
    """
    g = grid.ghost
    for axis, n in ((0, grid.n1), (1, grid.n2)):
        ax = [slice(None)] * w.ndim

        def sl(s: slice) -> tuple:
            ax[axis] = s
            return tuple(ax)

        if grid.bc(axis) == BoundaryKind.PERIODIC:
            w[sl(slice(0, g))] = w[sl(slice(n, n + g))]
            w[sl(slice(n + g, n + 2 * g))] = w[sl(slice(g, 2 * g))]
        else:
            w[sl(slice(0, g))] = w[sl(slice(g, g + 1))]
            w[sl(slice(n + g, n + 2 * g))] = w[sl(slice(n + g - 1, n + g))]
