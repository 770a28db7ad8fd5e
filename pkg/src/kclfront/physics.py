"""Fluxes, source terms, characteristic speeds, and the quasi-linear pencil.

The evolved system in divergence form is

    W_t + F1(W)_xi1 + F2(W)_xi2 = S(W),

where the signed fluxes carry -M*N (the underlying conservation laws
read (G1 U)_t - (M N)_xi1 = 0 and (G2 V)_t - (M N)_xi2 = 0):

    F1 = (-M*N, 0, 0, 0, 0, 0)   (slots 0-2 nonzero)
    F2 = (0, 0, 0, -M*N, 0, 0)   (slots 3-5 nonzero)
    S  = (0, ..., 0, s7, s8)     (SRT only; WNLRT is homogeneous)

with s7 = -2 M (M-1)^2 exp(2(M-1)) G1 G2 calV sin(Psi) and
s8 = -2 (M+1) exp(2(M-1)) G1 G2 calV^3 sin(Psi).  These are the unique
source strengths for which the balance laws of the scalar slots are the
conservation forms of the underlying ray transport equations
dM/dT = Omega_s (M-1) - calV (M-1) and
d calV/dT = Omega_s calV - 2 calV^2, with ray-tube area
A = G1 G2 sin(Psi) and mean curvature Omega_s = -A_t / (2 M A): a
uniform planar front then decays exactly along
calV(t) = calV0/(1 + 2 calV0 t), M(t) = 1 + (M0-1)(1 + 2 calV0 t)^-1/2.

The system is weakly hyperbolic for M > 1: in direction (e1, e2) the
eigenvalues are +-lambda_1 and zero with algebraic multiplicity six but
a five-dimensional eigenspace.  `assemble_pencil` builds the 8x8
quasi-linear pencil in the primitive variables
(U1, U2, V1, V2, M, G1, G2, calV) used to verify that structure; it is
never called in the time loop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, ImaginarySpeed, SingularFrame
from .state import GU, GV, NCOMP, W7, W8, ModelKind, PrimitiveState

#: Pencil assembly refuses frames with |U3| or |V3| below this.
FRAME_FLOOR = 1e-10
#: Pencil assembly refuses calV below this (one entry divides by calV).
CALV_FLOOR = 1e-12


def flux(p: PrimitiveState, axis: int) -> np.ndarray:
    """Signed physical flux in lattice direction `axis` (0 or 1), shape (..., 8).

    Slots 0-2 (axis 0) or 3-5 (axis 1) hold -M*N; all other slots are zero.
    """
    if axis not in (0, 1):
        raise BadParameter(f"axis must be 0 or 1, got {axis}")
    mn = -p.M[..., None] * p.N
    f = np.zeros(mn.shape[:-1] + (NCOMP,))
    f[..., GU if axis == 0 else GV] = mn
    return f


def flux_xi1(p: PrimitiveState) -> np.ndarray:
    """Signed flux along xi1: slots 0-2 hold -M*N."""
    return flux(p, 0)


def flux_xi2(p: PrimitiveState) -> np.ndarray:
    """Signed flux along xi2: slots 3-5 hold -M*N."""
    return flux(p, 1)


def source(p: PrimitiveState, model: ModelKind) -> np.ndarray:
    """Source vector S(W), shape (..., 8); identically zero for WNLRT."""
    s = np.zeros(np.shape(p.M) + (NCOMP,))
    if model == ModelKind.WNLRT:
        return s
    y = p.M - 1.0
    e2y = np.exp(2.0 * y)
    area = p.G1 * p.G2 * p.sin_psi
    s[..., W7] = -2.0 * p.M * y * y * e2y * area * p.calV
    s[..., W8] = -2.0 * (p.M + 1.0) * e2y * area * p.calV**3
    return s


def char_speed(p: PrimitiveState, e1, e2) -> np.ndarray:
    """The nonzero characteristic speed lambda_1 in unit direction (e1, e2):

        lambda_1 = sqrt( (M-1)/(2 sin^2 Psi) *
                         (e1^2/G1^2 - 2 e1 e2 cos(Psi)/(G1 G2) + e2^2/G2^2) ).

    Raises ImaginarySpeed if M < 1 anywhere (the square root turns imaginary).
    """
    if np.any(p.M < 1.0):
        raise ImaginarySpeed(f"characteristic speed imaginary: min M = {np.min(p.M):.6g}")
    quad = (
        e1 * e1 / p.G1**2
        - 2.0 * e1 * e2 * p.cos_psi / (p.G1 * p.G2)
        + e2 * e2 / p.G2**2
    )
    return np.sqrt((p.M - 1.0) / (2.0 * p.sin_psi**2) * quad)


def max_char_speed(p: PrimitiveState, axis: int) -> np.ndarray:
    """Spectral radius in lattice direction `axis`: sqrt((M-1)/2)/(sin(Psi) G_d)."""
    if axis not in (0, 1):
        raise BadParameter(f"axis must be 0 or 1, got {axis}")
    if np.any(p.M < 1.0):
        raise ImaginarySpeed(f"characteristic speed imaginary: min M = {np.min(p.M):.6g}")
    g_d = p.G1 if axis == 0 else p.G2
    return np.sqrt((p.M - 1.0) / 2.0) / (p.sin_psi * g_d)


@dataclass(frozen=True)
class PencilMatrix:
    """Dense 8x8 pencil e1*B1 + e2*B2 - lam*A with its evaluation direction."""

    matrix: np.ndarray
    e1: float
    e2: float
    lam: float


def assemble_pencil(p: PrimitiveState, e1: float, e2: float, lam: float) -> PencilMatrix:
    """Assemble the quasi-linear pencil at a single primitive state.

    The primitive ordering is (U1, U2, V1, V2, M, G1, G2, calV).  The
    assembly divides by U3, V3 and calV, so states with |U3| < 1e-10,
    |V3| < 1e-10 or calV < 1e-12 are refused (SingularFrame).  Intended
    for verification only, not for the time loop.
    """
    if abs(e1 * e1 + e2 * e2 - 1.0) > 1e-12:
        raise BadParameter("(e1, e2) must be a unit vector")
    U1, U2, U3 = (float(v) for v in np.reshape(p.U, 3))
    V1, V2, V3 = (float(v) for v in np.reshape(p.V, 3))
    N1, N2, _ = (float(v) for v in np.reshape(p.N, 3))
    G1, G2, M = float(p.G1), float(p.G2), float(p.M)
    calV = float(p.calV)
    sp, cp = float(p.sin_psi), float(p.cos_psi)
    if abs(U3) < FRAME_FLOOR or abs(V3) < FRAME_FLOOR:
        raise SingularFrame(f"assembly divides by U3={U3:.3e}, V3={V3:.3e}")
    if calV < CALV_FLOOR:
        raise SingularFrame(f"assembly divides by calV={calV:.3e}")
    cot = cp / sp

    A = np.zeros((8, 8))
    A[0, 0] = A[1, 1] = G1
    A[2, 2] = A[3, 3] = G2
    A[4, 0] = -(G1 * G2 * N2 * cot) / U3
    A[4, 1] = +(G1 * G2 * N1 * cot) / U3
    A[4, 2] = +(G1 * G2 * N2 * cot) / V3
    A[4, 3] = -(G1 * G2 * N1 * cot) / V3
    A[4, 4] = 2.0 * M / (M - 1.0) * G1 * G2
    A[4, 5] = G2
    A[4, 6] = G1
    A[5, 5] = A[6, 6] = 1.0
    A[7, 0:4] = A[4, 0:4]
    A[7, 4] = 2.0 * G1 * G2
    A[7, 5] = G2
    A[7, 6] = G1
    A[7, 7] = 2.0 * G1 * G2 / calV

    B1 = np.zeros((8, 8))
    B1[0, 0] = -(M / U3) * (U1 * U2 + N1 * N2) * cot
    B1[0, 1] = +(M / U3) * (U1 * U1 + N1 * N1 - 1.0) * cot
    B1[0, 2] = +(M / (V3 * sp)) * (U2 * V1 + N1 * N2 * cp)
    B1[0, 3] = -(M / (V3 * sp)) * (U1 * V1 + (N1 * N1 - 1.0) * cp)
    B1[0, 4] = -N1
    B1[1, 0] = -(M / U3) * (U2 * U2 + N2 * N2 - 1.0) * cot
    B1[1, 1] = +(M / U3) * (U1 * U2 + N1 * N2) * cot
    B1[1, 2] = +(M / (V3 * sp)) * (U2 * V2 + (N2 * N2 - 1.0) * cp)
    B1[1, 3] = -(M / (V3 * sp)) * (U1 * V2 + N1 * N2 * cp)
    B1[1, 4] = -N2
    B1[5, 0] = -(M / (U3 * sp)) * (V2 - U2 * cp)
    B1[5, 1] = +(M / (U3 * sp)) * (V1 - U1 * cp)

    B2 = np.zeros((8, 8))
    B2[2, 0] = -(M / (U3 * sp)) * (U1 * V2 + N1 * N2 * cp)
    B2[2, 1] = +(M / (U3 * sp)) * (U1 * V1 + (N1 * N1 - 1.0) * cp)
    B2[2, 2] = +(M / V3) * (V1 * V2 + N1 * N2) * cot
    B2[2, 3] = -(M / V3) * (V1 * V1 + N1 * N1 - 1.0) * cot
    B2[2, 4] = -N1
    B2[3, 0] = -(M / (U3 * sp)) * (U2 * V2 + (N2 * N2 - 1.0) * cp)
    B2[3, 1] = +(M / (U3 * sp)) * (U2 * V1 + N1 * N2 * cp)
    B2[3, 2] = +(M / V3) * (V2 * V2 + N2 * N2 - 1.0) * cot
    B2[3, 3] = -(M / V3) * (V1 * V2 + N1 * N2) * cot
    B2[3, 4] = -N2
    B2[6, 2] = +(M / (V3 * sp)) * (U2 - V2 * cp)
    B2[6, 3] = -(M / (V3 * sp)) * (U1 - V1 * cp)

    return PencilMatrix(
        matrix=e1 * B1 + e2 * B2 - lam * A, e1=float(e1), e2=float(e2), lam=float(lam)
    )
