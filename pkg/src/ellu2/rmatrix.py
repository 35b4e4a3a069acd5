"""Elliptic dynamical R-matrix on the tensor square of the two-dimensional module.

The matrix acts on span(e_+1, e_-1)^(x2) and preserves weight, so it is
determined by the scalars on e_+1 x e_+1 and e_-1 x e_-1 (both 1) and the
middle two-by-two block (a, b; c, d) in the basis (e_+1 x e_-1, e_-1 x e_+1).
The shifted Yang-Baxter equation on the tensor cube moves the dynamical
parameter by the weight of the spectator leg.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .theta import PoleError, ThetaContext, theta

__all__ = [
    "r_entries",
    "r_matrix",
    "middle_det",
    "middle_det_closed",
    "qdybe_residual",
]


def _guarded(value: complex, ctx: ThetaContext, label: str) -> complex:
    if abs(value) < ctx.zero_guard:
        raise PoleError(f"{label} below zero guard")
    return value


def r_entries(lam: complex, z: complex, ctx: ThetaContext) -> tuple[complex, complex, complex, complex]:
    """Middle-block entries (a, b, c, d) at dynamical parameter lam and spectral z."""
    q2 = ctx.qpow(2)
    th_q2z = _guarded(theta(q2 * z, ctx), ctx, "theta(q^2 z)")
    th_lp = _guarded(theta(ctx.qpow(2 * (lam + 1)), ctx), ctx, "theta(q^(2 lam + 2))")
    th_lm = _guarded(theta(ctx.qpow(-2 * (lam + 1)), ctx), ctx, "theta(q^(-2 lam - 2))")
    th_z = theta(z, ctx)
    th_q2 = theta(q2, ctx)
    a = th_z * theta(ctx.qpow(2 * (lam + 2)), ctx) / (th_q2z * th_lp)
    b = th_q2 * theta(ctx.qpow(-2 * (lam + 1)) * z, ctx) / (th_q2z * th_lm)
    c = th_q2 * theta(ctx.qpow(2 * (lam + 1)) * z, ctx) / (th_q2z * th_lp)
    d = th_z * theta(ctx.qpow(-2 * lam), ctx) / (th_q2z * th_lm)
    return a, b, c, d


def r_matrix(lam: complex, z: complex, ctx: ThetaContext) -> np.ndarray:
    """Four-by-four matrix in the basis (e+ e+, e+ e-, e- e+, e- e-)."""
    a, b, c, d = r_entries(lam, z, ctx)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    m[3, 3] = 1.0
    m[1, 1] = a
    m[1, 2] = b
    m[2, 1] = c
    m[2, 2] = d
    return m


def middle_det(lam: complex, z: complex, ctx: ThetaContext) -> complex:
    a, b, c, d = r_entries(lam, z, ctx)
    return a * d - b * c


def middle_det_closed(z: complex, ctx: ThetaContext) -> complex:
    """Closed form of the middle-block determinant, independent of lam."""
    q2 = ctx.qpow(2)
    return q2 * theta(z / q2, ctx) / _guarded(theta(z * q2, ctx), ctx, "theta(q^2 z)")


def _embed(
    rm_by_weight: dict[Optional[int], np.ndarray],
    legs: tuple[int, int],
    spectator: int,
    shifted: bool,
) -> np.ndarray:
    """Embed a two-leg matrix into the tensor cube, optionally branching on the
    spectator weight.  Leg bits are 0 for weight +1 and 1 for weight -1; basis
    index is the big-endian bit string (b1, b2, b3).
    """
    out = np.zeros((8, 8), dtype=complex)
    i, j = legs
    for col in range(8):
        bits_in = ((col >> 2) & 1, (col >> 1) & 1, col & 1)
        w_spec = 1 - 2 * bits_in[spectator]
        rm = rm_by_weight[w_spec if shifted else None]
        sub_col = 2 * bits_in[i] + bits_in[j]
        for sub_row in range(4):
            val = rm[sub_row, sub_col]
            if val == 0:
                continue
            bits_out = list(bits_in)
            bits_out[i] = (sub_row >> 1) & 1
            bits_out[j] = sub_row & 1
            row = (bits_out[0] << 2) | (bits_out[1] << 1) | bits_out[2]
            out[row, col] += val
    return out


def _leg_op(
    lam: complex,
    z: complex,
    legs: tuple[int, int],
    spectator: int,
    shifted: bool,
    ctx: ThetaContext,
) -> np.ndarray:
    if shifted:
        rms = {w: r_matrix(lam - w, z, ctx) for w in (+1, -1)}
    else:
        rms = {None: r_matrix(lam, z, ctx)}
    return _embed(rms, legs, spectator, shifted)


def qdybe_residual(
    lam: complex, z1: complex, z2: complex, z3: complex, ctx: ThetaContext
) -> float:
    """Max-norm relative residual of the shifted Yang-Baxter equation.

    Left side: R12 shifted by leg 3, then R13, then R23 shifted by leg 1.
    Right side: R23, then R13 shifted by leg 2, then R12.  Matrices compose
    right to left.
    """
    z12, z13, z23 = z1 / z2, z1 / z3, z2 / z3
    lhs = (
        _leg_op(lam, z12, (0, 1), 2, True, ctx)
        @ _leg_op(lam, z13, (0, 2), 1, False, ctx)
        @ _leg_op(lam, z23, (1, 2), 0, True, ctx)
    )
    rhs = (
        _leg_op(lam, z23, (1, 2), 0, False, ctx)
        @ _leg_op(lam, z13, (0, 2), 1, True, ctx)
        @ _leg_op(lam, z12, (0, 1), 2, False, ctx)
    )
    scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 1e-300)
    return float(np.max(np.abs(lhs - rhs)) / scale)
