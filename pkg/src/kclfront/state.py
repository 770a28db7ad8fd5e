"""Conserved and primitive descriptions of the propagating front.

Per cell, the conserved 8-vector W is laid out as

    W[0:3] = G1*U      (metric-weighted first tangent)
    W[3:6] = G2*V      (metric-weighted second tangent)
    W[6]   = (M-1)^2 exp(2(M-1)) G1 G2 sin(Psi)   (front-energy density)
    W[7]   = exp(2(M-1)) G1 G2 V^2 sin(Psi)       (squared rear-gradient density)

where U, V are unit tangents to the front surface, G1, G2 the metric
factors, Psi the angle between U and V, M the non-dimensional normal
front speed, and calV >= 0 the scaled normal gradient of density just
behind the front.  The unit normal is N = (U x V)/sin(Psi).

Two model variants share the layout: the shock-front model (SRT)
evolves all eight components with decay source terms; the weakly
nonlinear wavefront model (WNLRT) is the homogeneous seven-equation
subsystem and neither reads nor writes W[7] or calV.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadParameter, DegenerateTangents, NoConvergence, NonPositiveEnergy

NCOMP = 8
GU = slice(0, 3)
GV = slice(3, 6)
W7 = 6
W8 = 7

#: States with sin(Psi) below this are treated as geometrically degenerate.
SIN_PSI_FLOOR = 1e-10
#: Recovery refuses front speeds this close to (or below) unity.
MACH_FLOOR = 1e-12

_EPS = np.finfo(float).eps


class ModelKind(str, Enum):
    """Which closure of the ray-coordinate conservation laws to evolve."""

    #: Shock front: eight equations, decay source terms active.
    SRT = "srt"
    #: Weakly nonlinear wavefront: seven homogeneous equations.
    WNLRT = "wnlrt"


@dataclass
class PrimitiveState:
    """Primitive fields; every attribute broadcasts over the cell shape.

    U, V, N have a trailing length-3 axis; the scalars G1, G2, M, calV,
    sin_psi, cos_psi have the bare cell shape.
    """

    U: np.ndarray
    V: np.ndarray
    N: np.ndarray
    G1: np.ndarray
    G2: np.ndarray
    M: np.ndarray
    calV: np.ndarray
    sin_psi: np.ndarray
    cos_psi: np.ndarray

    def __post_init__(self) -> None:
        for name in ("U", "V", "N", "G1", "G2", "M", "calV", "sin_psi", "cos_psi"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))


def solve_mach(kappa, max_iter: int = 100, residual_tol: float = 1e-14):
    """Invert (M-1)^2 exp(2(M-1)) = kappa for the unique root M in (1, inf).

    Safeguarded Newton iteration on y = M-1 in logarithmic form,
    g(y) = 2 log(y) + 2 y - log(kappa), which shares its root with
    theta(M) = (M-1)^2 exp(2(M-1)) - kappa but never overflows.  The
    initial guess is y0 = sqrt(kappa) (capped for very large kappa),
    where g(y0) = 2 sqrt(kappa) > 0, so the iteration approaches the
    root monotonically; a bisection fallback on the bracket
    [1e-16, y0 + 1] guards against any step leaving the bracket.

    Args:
        kappa: positive scalar or array.
        max_iter: iteration cap before NoConvergence is raised.
        residual_tol: verified residual bound |theta| <= residual_tol * max(1, kappa).

    Returns:
        M = 1 + y with the same shape as `kappa` (a float for scalar input).
    """
    k = np.asarray(kappa, dtype=float)
    scalar = k.ndim == 0
    k = np.atleast_1d(k)
    if not np.all(np.isfinite(k)) or np.any(k <= 0.0):
        raise NonPositiveEnergy("kappa must be positive and finite")

    ln_k = np.log(k)
    y = np.sqrt(k)
    # For very large kappa the root satisfies y < log(kappa)/2; starting
    # at sqrt(kappa) would make the first steps lose all precision.
    big = k > 10.0
    if np.any(big):
        y = np.where(big, 1.0 + 0.5 * ln_k, y)
    lo = np.full_like(y, 1e-16)
    hi = y + 1.0
    done = np.zeros(y.shape, dtype=bool)

    for _ in range(max_iter):
        g = 2.0 * np.log(y) + 2.0 * y - ln_k
        gt0 = ~done & (g > 0.0)
        lt0 = ~done & (g < 0.0)
        hi = np.where(gt0, np.minimum(hi, y), hi)
        lo = np.where(lt0, np.maximum(lo, y), lo)
        # Newton step: g / g' with g'(y) = 2/y + 2 = 2(1+y)/y.
        step = g * y / (2.0 * (1.0 + y))
        y_new = y - step
        fallback = ~np.isfinite(y_new) | (y_new <= lo) | (y_new >= hi)
        y_new = np.where(fallback, 0.5 * (lo + hi), y_new)
        # A vanishing step also triggers the bracket fallback (y - step
        # rounds back onto the bracket edge), so converged lanes must be
        # frozen at their current iterate before y_new is applied.
        newly_done = ~done & (
            (np.abs(step) <= 2.0 * _EPS * y) | (g == 0.0) | (hi - lo <= 2.0 * _EPS * lo)
        )
        y = np.where(done | newly_done, y, y_new)
        done |= newly_done
        if done.all():
            break
    if not done.all():
        raise NoConvergence(
            f"front-speed root solve: {int((~done).sum())} of {done.size} "
            f"entries unconverged after {max_iter} iterations"
        )

    # Two unguarded polish steps: the loop stops within a few ulps of the
    # root, which for very large kappa leaves a verification residual of
    # ~(1+y) eps kappa; near the root plain Newton is a contraction and
    # shaves those last ulps off for free.
    for _ in range(2):
        g = 2.0 * np.log(y) + 2.0 * y - ln_k
        y = y - g * y / (2.0 * (1.0 + y))

    theta = np.exp(2.0 * y + 2.0 * np.log(y)) - k
    bad = np.abs(theta) > residual_tol * np.maximum(1.0, k)
    if np.any(bad):
        # For very large kappa the theta expression itself cannot be
        # evaluated below ~eps * log(kappa) * kappa in doubles, so a root
        # accurate to the last ulp can still miss the bound above.  Accept
        # such lanes when the log-form residual sits inside its own
        # floating-point evaluation noise, which certifies the root is as
        # good as the arithmetic allows.
        g = 2.0 * np.log(y) + 2.0 * y - ln_k
        noise = 4.0 * _EPS * (2.0 * y + 2.0 * np.abs(np.log(y)) + np.abs(ln_k))
        bad &= np.abs(g) > np.maximum(noise, residual_tol)
        if np.any(bad):
            raise NoConvergence(
                f"front-speed root solve: residual check failed for "
                f"{int(bad.sum())} of {bad.size} entries"
            )
    m = 1.0 + y
    return float(m[0]) if scalar else m


def recover_primitives(
    w: np.ndarray,
    model: ModelKind,
    newton_max_iter: int = 100,
    newton_residual_tol: float = 1e-14,
) -> PrimitiveState:
    """Convert conserved cell values (..., 8) to primitive fields.

    G1 = |W[0:3]|, U = W[0:3]/G1 (and likewise G2, V); sin(Psi) is the
    norm of U x V, clamped to [0, 1] before any division; N is the unit
    cross product.  M solves (M-1)^2 exp(2(M-1)) = W[6]/(G1 G2 sin Psi),
    and in SRT mode calV is the nonnegative root of
    W[7] = exp(2(M-1)) G1 G2 calV^2 sin(Psi).

    Raises:
        DegenerateTangents: tangents vanish or sin(Psi) < 1e-10.
        NonPositiveEnergy: W[6] <= 0, or the recovered M <= 1 + 1e-12.
        NoConvergence: propagated from the root solve.
    """
    w = np.asarray(w, dtype=float)
    gu = w[..., GU]
    gv = w[..., GV]
    w7 = w[..., W7]

    G1 = np.sqrt(np.einsum("...k,...k->...", gu, gu))
    G2 = np.sqrt(np.einsum("...k,...k->...", gv, gv))
    if np.any(G1 <= 0.0) or np.any(G2 <= 0.0):
        raise DegenerateTangents("a metric-weighted tangent has zero length")
    U = gu / G1[..., None]
    V = gv / G2[..., None]

    cross = np.cross(U, V)
    sin_psi = np.sqrt(np.einsum("...k,...k->...", cross, cross))
    if np.any(sin_psi < SIN_PSI_FLOOR):
        raise DegenerateTangents(
            f"tangents are numerically parallel: min sin(Psi) = {sin_psi.min():.3e}"
        )
    N = cross / sin_psi[..., None]
    sin_psi = np.minimum(sin_psi, 1.0)
    cos_psi = np.einsum("...k,...k->...", U, V)

    if np.any(w7 <= 0.0):
        raise NonPositiveEnergy(f"front-energy density must be positive, min = {w7.min():.3e}")
    area = G1 * G2 * sin_psi
    kappa = w7 / area
    M = np.asarray(
        solve_mach(kappa, max_iter=newton_max_iter, residual_tol=newton_residual_tol)
    )
    if np.any(M <= 1.0 + MACH_FLOOR):
        raise NonPositiveEnergy(
            f"front-energy density too small for an admissible state: min M = {M.min():.16g}"
        )

    if model == ModelKind.SRT:
        w8 = w[..., W8]
        calV = np.sqrt(np.maximum(w8, 0.0) / (np.exp(2.0 * (M - 1.0)) * area))
    else:
        calV = np.zeros_like(M)

    return PrimitiveState(
        U=U, V=V, N=N, G1=G1, G2=G2, M=M, calV=calV, sin_psi=sin_psi, cos_psi=cos_psi
    )


def conserved_from_primitives(p: PrimitiveState, model: ModelKind) -> np.ndarray:
    """Exact inverse of recover_primitives; returns an array shaped (..., 8).

    In WNLRT mode the last slot is set to zero and calV is ignored.
    """
    G1 = np.asarray(p.G1, dtype=float)
    shape = np.broadcast_shapes(G1.shape, np.shape(p.M))
    w = np.zeros(shape + (NCOMP,))
    w[..., GU] = np.asarray(p.G1)[..., None] * p.U
    w[..., GV] = np.asarray(p.G2)[..., None] * p.V
    area = p.G1 * p.G2 * p.sin_psi
    y = np.asarray(p.M) - 1.0
    e2y = np.exp(2.0 * y)
    w[..., W7] = y * y * e2y * area
    if model == ModelKind.SRT:
        w[..., W8] = e2y * np.asarray(p.calV) ** 2 * area
    return w


def mach_from_amplitude(mu, epsilon: float, gamma: float, model: ModelKind):
    """Front speed from a leading-order amplitude perturbation `mu`.

    For the shock-front model M = 1 + epsilon*(gamma+1)/4 * mu; for the
    wavefront model m = 1 + epsilon*(gamma+1)/2 * mu (twice the offset).
    """
    if gamma <= 1.0:
        raise BadParameter(f"gamma must exceed 1, got {gamma}")
    factor = 4.0 if model == ModelKind.SRT else 2.0
    return 1.0 + epsilon * (gamma + 1.0) / factor * np.asarray(mu)
