"""Matrix elements of the symmetric-power corepresentations.

``t_word`` builds the (k, j) matrix element of the N-th symmetric power as an
explicit sum of generator words with dynamical coefficients; ``v_word`` is the
highest-column special case.  ``tau_closed`` and ``tau_tilde_closed`` give the
action of these elements (and their conjugates) on basis vectors in closed
form: a theta-product prefactor times a terminating very well poised balanced
series.  ``tau_product`` is an independent oracle built by composing the raw
single-letter actions.  ``gamma_factor`` supplies the diagonal normalization
appearing in the inversion identity, checked word by word in
``check_unitarity`` and ``check_inversion_words``.
"""

from __future__ import annotations

import numpy as np

from .rep import RepContext, apply_word, coef_a, coef_b, coef_c, coef_d, residual_between
from .series import vwp_sum
from .theta import (
    PoleError,
    ThetaContext,
    ThetaProduct,
    TrackedArg,
    elliptic_binomial,
    garg,
    qarg,
    theta,
)
from .words import (
    AlgebraElement,
    CoefficientFn,
    L_alpha,
    L_beta,
    L_delta,
    L_detinv,
    L_fl,
    L_fr,
    L_gamma,
    antipode,
    cf_from,
    coproduct,
    counit,
    star,
    word,
)

__all__ = [
    "v_word",
    "t_word",
    "tau_series_parts",
    "tau_tilde_series_parts",
    "tau_closed",
    "tau_tilde_closed",
    "tau_product",
    "gamma_factor",
    "inv_gamma_factor",
    "eval_tensor",
    "check_coproduct",
    "check_tensor_relation",
    "counit_structure",
    "check_counit_exact",
    "unitarity_words",
    "check_unitarity",
    "check_inversion_words",
    "linear_independence_ratio",
]


def v_word(N: int, k: int, z: complex, ctx: ThetaContext) -> AlgebraElement:
    """Product of N - k lowering then k diagonal-raising letters on a q^2 ladder."""
    if not 0 <= k <= N:
        raise ValueError("need 0 <= k <= N")
    letters = [L_gamma(z * ctx.qpow(2 * i)) for i in range(N - k)]
    letters += [L_alpha(z * ctx.qpow(2 * i)) for i in range(N - k, N)]
    return word(1.0, letters)


def _t_coefficient(N: int, k: int, j: int, l: int, ctx: ThetaContext) -> CoefficientFn | None:
    """Dynamical coefficient of the l-th summand, or None when exactly one."""
    r1_one = l == 0 or l == k
    r2_one = j - l == 0 or l == k + j - N
    if r1_one and r2_one:
        return None

    def fn(x: complex) -> complex:
        tp = ThetaProduct(ctx)
        tp.poch(garg(ctx.qpow(2 * (x + N - k - 2 * j + l + 2))), l)
        tp.poch(garg(ctx.qpow(2 * (x + N - 2 * j + 2))), l, inv=True)
        tp.poch(garg(ctx.qpow(2 * (x + l - j + 2))), j - l)
        tp.poch(garg(ctx.qpow(2 * (x + N - 2 * j - k + 2 * l + 2))), j - l, inv=True)
        return tp.value()

    return cf_from(fn, f"tcoef[{N};{k},{j};{l}]")


def t_word(N: int, k: int, j: int, z: complex, ctx: ThetaContext) -> AlgebraElement:
    """Matrix element (k, j) of the N-th symmetric power as a sum of words.

    Each summand carries an elliptic binomial pair, a dynamical coefficient in
    the right variable, and four blocks of generator letters on a q^2 ladder.
    The coefficient letter is omitted whenever it is identically one, so the
    diagonal elements have exactly one bare word surviving the counit.
    """
    if not (0 <= k <= N and 0 <= j <= N):
        raise ValueError("need 0 <= k, j <= N")
    q2 = lambda t: ctx.qpow(2 * t) * z
    out = AlgebraElement(())
    for l in range(max(0, k + j - N), min(k, j) + 1):
        scalar = elliptic_binomial(k, l, ctx) * elliptic_binomial(N - k, j - l, ctx)
        letters = []
        cfn = _t_coefficient(N, k, j, l, ctx)
        if cfn is not None:
            letters.append(L_fr(cfn))
        letters += [L_gamma(q2(t)) for t in range(N - k - 1, N - j - k + l - 1, -1)]
        letters += [L_delta(q2(t)) for t in range(N - j - k + l - 1, -1, -1)]
        letters += [L_alpha(q2(t)) for t in range(N - 1, N - l - 1, -1)]
        letters += [L_beta(q2(t)) for t in range(N - l - 1, N - k - 1, -1)]
        out = out + word(scalar, letters)
    return out


def tau_series_parts(
    N: int, k: int, j: int, m: int, lam: complex, z: complex, omega: complex, ctx: ThetaContext
) -> tuple[TrackedArg, list[TrackedArg], list[TrackedArg], TrackedArg, int]:
    """Series data (a1, numerators, denominators, merged base, order) for tau."""
    qp = ctx.qpow
    a1 = garg(qp(2 * (lam + N - 2 * j - k + 1)))
    numer = [
        qarg(-k),
        qarg(-j),
        garg(qp(2 * (lam - j + 1))),
        garg(qp(2 * (lam + N - 2 * j - omega + m + 1))),
        garg(qp(2 * (lam + N + 2 + m - 2 * j))),
        garg(z * qp(2 * (N - m - k) + omega + 1)),
        garg(qp(-2 * (m + k - 1) + omega - 1) / z),
    ]
    denom = [
        garg(qp(2 * (lam + N - 2 * j + 2))),
        garg(qp(2 * (lam + N - j - k + 2))),
        garg(qp(2 * (omega - m - k + 1))),
        qarg(-(m + k)),
        garg(qp(2 * (lam - 2 * j + m + 1) - omega + 1) / z),
        garg(z * qp(2 * (lam + N - 2 * j + m + 2) - omega - 1)),
    ]
    return a1, numer, denom, qarg(N - j - k + 1), min(k, j)


def tau_closed(
    N: int, k: int, j: int, m: int, lam: complex, z: complex, omega: complex, ctx: ThetaContext
) -> complex:
    """Coefficient of e_(m+k-j) in the action of the (k, j) matrix element on e_m."""
    if m < 0:
        raise ValueError("basis index must be >= 0")
    if m + k - j < 0:
        return 0.0 + 0.0j
    qp = ctx.qpow
    expo = (
        1.5 * k * (k - 1)
        + N * (N + 1)
        + 2.5 * j * (j + 1)
        + 2 * N * (lam - k - 2 * j)
        + m * (k - j)
        + 3 * j * k
        - 2 * k * lam
    )
    pref = ThetaProduct(ctx, (-1.0) ** (N - k) * qp(expo) * theta(qp(2), ctx) ** (k - j))
    pref.poch(garg(qp(-2 * (lam + 1))), j)
    pref.poch(qarg(m + k - j + 1), j)
    pref.poch(garg(qp(2 * (omega - m - k + 1))), j)
    pref.poch(garg(z * qp(2 * (lam + N - 2 * j + m + 2) - omega - 1)), j)
    pref.poch(qarg(1), j, inv=True)
    pref.poch(garg(qp(2 * (lam + N - k - 2 * j + 2))), j, inv=True)
    pref.poch(garg(qp(2 * (lam - j + 2))), j, inv=True)
    pref.poch(garg(z * qp(-2 * (lam - 2 * j + m + k) + omega - 1)), k)
    pref.poch(garg(qp(-2 * (lam + N - 2 * j))), k, inv=True)
    pref.poch(garg(qp(-2 * (lam + N - 2 * j - omega + m))), N - k - j)
    pref.poch(garg(z * qp(2 * (m + k) - omega + 1)), N - k - j)
    pref.poch(garg(qp(2 * (lam - j + 1))), N - k - j, inv=True)
    pref.poch(garg(z * qp(omega + 1)), N, inv=True)
    head = pref.value()
    if head == 0.0:
        return 0.0 + 0.0j
    a1, numer, denom, c, n = tau_series_parts(N, k, j, m, lam, z, omega, ctx)
    value, _, _ = vwp_sum(ctx, a1, numer, denom, n, merged=(c, j))
    return head * value


def tau_tilde_series_parts(
    N: int, k: int, j: int, m: int, lam: complex, z: complex, omega: complex, ctx: ThetaContext
) -> tuple[TrackedArg, list[TrackedArg], list[TrackedArg], TrackedArg, int]:
    """Series data for the conjugated matrix element action."""
    qp = ctx.qpow
    zb = complex(z).conjugate()
    a1 = garg(qp(2 * (lam - k + 1)))
    numer = [
        qarg(-k),
        qarg(-j),
        garg(qp(2 * (lam + j - N + 1))),
        garg(qp(2 * (lam - k - omega + m + j + 1))),
        garg(qp(2 * (lam + j + m - k + 2))),
        garg(zb * qp(2 * (N - m - j) + omega - 1)),
        garg(qp(-2 * (m + j - 1) + omega + 1) / zb),
    ]
    denom = [
        garg(qp(2 * (lam + 2))),
        garg(qp(2 * (lam - k + j + 2))),
        garg(qp(2 * (omega - m - j + 1))),
        qarg(-(m + j)),
        garg(qp(2 * (lam - k - N + m + j + 2) - omega + 1) / zb),
        garg(zb * qp(2 * (lam - k + m + j + 1) - omega - 1)),
    ]
    return a1, numer, denom, qarg(N - k - j + 1), min(k, j)


def tau_tilde_closed(
    N: int, k: int, j: int, m: int, lam: complex, z: complex, omega: complex, ctx: ThetaContext
) -> complex:
    """Coefficient of e_(m+j-k) in the action of the conjugated (k, j) element."""
    if m < 0:
        raise ValueError("basis index must be >= 0")
    if m + j - k < 0:
        return 0.0 + 0.0j
    qp = ctx.qpow
    zb = complex(z).conjugate()
    expo = (
        2 * j * j
        + 0.5 * k * (k - 1)
        - 0.5 * j * (j - 1)
        + k * (1 - m - j)
        + 2 * m * (N - j - k)
        + m * j
        + 2 * (N - k) * (lam - k + 1)
        - (N - k - j) * (N - k - j - 1)
    )
    pref = ThetaProduct(ctx, (-1.0) ** (N - j) * qp(expo) * theta(qp(2), ctx) ** (j - k))
    pref.poch(garg(qp(-2 * (lam - N + 2 * j + 1))), j)
    pref.poch(garg(qp(-2 * (lam + 2 * j - k + m) + omega + 1) / zb), j)
    pref.poch(qarg(1), j, inv=True)
    pref.poch(garg(qp(2 * (lam - k + 2))), j, inv=True)
    pref.poch(garg(qp(-2 * (lam + 2 * j - N))), j, inv=True)
    pref.poch(garg(qp(-2 * (N - k - 1) + omega + 1) / zb), j, inv=True)
    pref.poch(qarg(m + j - k + 1), k)
    pref.poch(garg(qp(2 * (omega - m - j + 1))), k)
    pref.poch(garg(qp(-2 * (N - 3 - lam + k - m - j) - omega - 1) / zb), k)
    pref.poch(garg(qp(2 * (lam - k + 2))), k, inv=True)
    pref.poch(garg(qp(-2 * (N - 1) + omega + 1) / zb), k, inv=True)
    pref.poch(garg(qp(-2 * (lam + j + m + 1 - k))), N - j - k)
    pref.poch(garg(qp(-2 * (N - k + m - 1) + omega + 1) / zb), N - j - k)
    pref.poch(garg(qp(2 * (lam + 2 - N + j))), N - j - k, inv=True)
    # The word-level oracle fixes the exponent in the last denominator slot
    # as -2(N-j-k-1); see the cross-check suite for the residual evidence.
    pref.poch(garg(qp(-2 * (N - j - k - 1) + omega + 1) / zb), N - j - k, inv=True)
    head = pref.value()
    if head == 0.0:
        return 0.0 + 0.0j
    a1, numer, denom, c, n = tau_tilde_series_parts(N, k, j, m, lam, z, omega, ctx)
    value, _, _ = vwp_sum(ctx, a1, numer, denom, n, merged=(c, j))
    return head * value


def tau_product(
    N: int, k: int, j: int, m: int, lam: complex, z: complex, omega: complex, ctx: ThetaContext
) -> complex:
    """Oracle for tau_closed built from products of single-letter coefficients."""
    if m < 0:
        raise ValueError("basis index must be >= 0")
    if m + k - j < 0:
        return 0.0 + 0.0j
    qp = ctx.qpow
    total = 0.0 + 0.0j
    for l in range(max(0, k + j - N), min(k, j) + 1):
        tp = ThetaProduct(
            ctx, elliptic_binomial(k, l, ctx) * elliptic_binomial(N - k, j - l, ctx)
        )
        tp.poch(garg(qp(2 * (lam + N - k - 2 * j + l + 2))), l)
        tp.poch(garg(qp(2 * (lam + N - 2 * j + 2))), l, inv=True)
        tp.poch(garg(qp(2 * (lam + l - j + 2))), j - l)
        tp.poch(garg(qp(2 * (lam + N - 2 * j - k + 2 * l + 2))), j - l, inv=True)
        coeff = tp.value()
        for n in range(j - l):
            coeff *= coef_c(
                m + k - l - n, lam - j + l + 1 + n, qp(2 * (n + N - k - j + l)) * z, omega, ctx
            )
        for n in range(N - j - k + l):
            coeff *= coef_d(
                m + k - l, lam + N - k - 2 * j + 2 * l - 1 - n, qp(2 * n) * z, omega, ctx
            )
        for n in range(l):
            coeff *= coef_a(
                m + k - l, lam + n + N - k - 2 * j + l + 1, qp(2 * (N - l + n)) * z, omega, ctx
            )
        for n in range(k - l):
            coeff *= coef_b(m + n, lam + N - 2 * j - 1 - n, qp(2 * (n + N - k)) * z, omega, ctx)
        total += coeff
    return total


def gamma_factor(N: int, k: int, x: complex, ctx: ThetaContext) -> complex:
    """Diagonal normalization in the inversion identity for level N."""
    if not 0 <= k <= N:
        raise ValueError("need 0 <= k <= N")
    qp = ctx.qpow
    tp = ThetaProduct(ctx, elliptic_binomial(N, k, ctx))
    tp.poch(garg(qp(2 * (x - k + 2))), k)
    tp.poch(garg(qp(2 * (x + N - 2 * k + 2))), k, inv=True)
    for i in range(N - k):
        tp.mul_scalar(qp(-(x + N - 2 * k - i)))
        tp.theta(garg(qp(-2 * (x + N - 2 * k - i + 1))), inv=True)
    for i in range(k):
        tp.mul_scalar(qp(-(x - k + i)))
        tp.theta(garg(qp(-2 * (x - k + i + 1))), inv=True)
    return tp.value()


def inv_gamma_factor(N: int, k: int, ctx: ThetaContext) -> CoefficientFn:
    """Reciprocal of gamma_factor as a coefficient function with pole guard."""

    def fn(x: complex) -> complex:
        v = gamma_factor(N, k, x, ctx)
        if abs(v) < ctx.zero_guard:
            raise PoleError("gamma factor below zero guard")
        return 1.0 / v

    return cf_from(fn, f"1/Gamma[{N};{k}]")


def gamma_cf(N: int, k: int, ctx: ThetaContext) -> CoefficientFn:
    return cf_from(lambda x: gamma_factor(N, k, x, ctx), f"Gamma[{N};{k}]")


def eval_tensor(
    pairs: list[tuple[complex, tuple, tuple]],
    m: int,
    n: int,
    rc1: RepContext,
    rc2: RepContext,
) -> dict[tuple[int, int], complex]:
    """Evaluate two-leg word pairs on e_m (x) e_n.

    The first leg sees the dynamical variable shifted by the weight of the
    second leg's output state; both contexts must share the base and the
    evaluation point.
    """
    from .rep import apply_word_states

    lam0 = rc1.lam0
    out: dict[tuple[int, int], complex] = {}
    for scalar, w1, w2 in pairs:
        states2 = apply_word_states(word(1.0, w2), n, rc2)
        if not states2:
            continue
        states1 = apply_word_states(word(1.0, w1), m, rc1)
        for n2, f2 in states2:
            right = f2(lam0)
            shift = lam0 - rc2.omega + 2 * n2
            for n1, f1 in states1:
                key = (n1, n2)
                out[key] = out.get(key, 0.0 + 0.0j) + scalar * f1(shift) * right
    return out


def check_coproduct(
    N: int, z: complex, m: int, n: int, rc1: RepContext, rc2: RepContext
) -> float:
    """Worst residual of the matrix-element coproduct rule over all (k, j)."""
    ctx = rc1.ctx
    worst = 0.0
    tws = {(a, b): t_word(N, a, b, z, ctx) for a in range(N + 1) for b in range(N + 1)}
    for k in range(N + 1):
        for j in range(N + 1):
            lhs = eval_tensor(coproduct(tws[(k, j)]), m, n, rc1, rc2)
            rhs: dict[tuple[int, int], complex] = {}
            for s in range(N + 1):
                pairs = [
                    (s1 * s2, w1, w2)
                    for s1, w1 in tws[(k, s)].terms
                    for s2, w2 in tws[(s, j)].terms
                ]
                for key, val in eval_tensor(pairs, m, n, rc1, rc2).items():
                    rhs[key] = rhs.get(key, 0.0 + 0.0j) + val
            worst = max(worst, _dict_residual(lhs, rhs))
    return worst


def check_tensor_relation(
    lhs: AlgebraElement,
    rhs: AlgebraElement,
    m: int,
    n: int,
    rc1: RepContext,
    rc2: RepContext,
) -> float:
    """Residual of a defining relation evaluated in a tensor of two actions."""
    return _dict_residual(
        eval_tensor(coproduct(lhs), m, n, rc1, rc2),
        eval_tensor(coproduct(rhs), m, n, rc1, rc2),
    )


def _dict_residual(lhs: dict, rhs: dict) -> float:
    keys = set(lhs) | set(rhs)
    if not keys:
        return 0.0
    diff = max(abs(lhs.get(key, 0.0) - rhs.get(key, 0.0)) for key in keys)
    scale = max(
        max((abs(v) for v in lhs.values()), default=0.0),
        max((abs(v) for v in rhs.values()), default=0.0),
        1e-300,
    )
    return diff / scale


def counit_structure(el: AlgebraElement) -> list[tuple[complex, bool, int]]:
    """Counit entries reduced to (scalar, coefficient-is-one, shift)."""
    return [(scalar, fn.is_one, shift) for scalar, fn, shift in counit(el)]


def check_counit_exact(N: int, z: complex, ctx: ThetaContext) -> list[str]:
    """Structural counit check for all matrix elements at level N.

    Off-diagonal elements must vanish identically; diagonal ones must reduce
    to exactly the shift by N - 2k with unit coefficient.  Returns a list of
    failure descriptions, empty on success.
    """
    bad: list[str] = []
    for k in range(N + 1):
        for j in range(N + 1):
            entries = counit_structure(t_word(N, k, j, z, ctx))
            if k != j:
                if entries:
                    bad.append(f"t[{N};{k},{j}] has surviving counit terms")
                continue
            if len(entries) != 1:
                bad.append(f"t[{N};{k},{k}] has {len(entries)} counit terms")
                continue
            scalar, is_one, shift = entries[0]
            if scalar != 1.0 or not is_one or shift != N - 2 * k:
                bad.append(
                    f"t[{N};{k},{k}] counit is {scalar} * T[{shift}] (is_one={is_one})"
                )
    return bad


def unitarity_words(
    N: int, k: int, j: int, z: complex, ctx: ThetaContext
) -> tuple[AlgebraElement, AlgebraElement]:
    """Both sides of the inversion identity for a single matrix element."""
    zb = complex(z).conjugate()
    zr = ctx.qpow(-2 * (N - 2)) / zb
    lhs = word(1.0, (L_fr(gamma_cf(N, k, ctx)),)) * star(
        antipode(t_word(N, k, j, z, ctx), ctx), ctx
    )
    dets = [L_detinv(ctx.qpow(-2 * i) / zb) for i in range(N)]
    rhs = (
        word(1.0, (L_fl(gamma_cf(N, j, ctx)),))
        * t_word(N, j, k, zr, ctx)
        * word(1.0, tuple(dets))
    )
    return lhs, rhs


def check_unitarity(N: int, k: int, j: int, z: complex, m: int, rc: RepContext) -> float:
    lhs, rhs = unitarity_words(N, k, j, z, rc.ctx)
    return residual_between(apply_word(lhs, m, rc), apply_word(rhs, m, rc))


def check_inversion_words(
    N: int, k: int, l: int, z: complex, m: int, rc: RepContext
) -> float:
    """Word-level biorthogonality: summed conjugate pairs give delta(k, l) on e_m."""
    ctx = rc.ctx
    zb = complex(z).conjugate()
    zr = ctx.qpow(-2 * (N - 2)) / zb
    dets = tuple(L_detinv(ctx.qpow(-2 * i) / zb) for i in range(N))
    acc: dict[int, complex] = {}
    scale = 1e-300
    for j in range(N + 1):
        el = (
            star(t_word(N, j, l, z, ctx), ctx)
            * word(1.0, (L_fl(gamma_cf(N, j, ctx)), L_fr(inv_gamma_factor(N, k, ctx))))
            * t_word(N, j, k, zr, ctx)
            * word(1.0, dets)
        )
        for idx, val in apply_word(el, m, rc).items():
            acc[idx] = acc.get(idx, 0.0 + 0.0j) + val
            scale = max(scale, abs(val))
    target = {m: 1.0 + 0.0j} if k == l else {}
    keys = set(acc) | set(target)
    diff = max((abs(acc.get(i, 0.0) - target.get(i, 0.0)) for i in keys), default=0.0)
    if k == l:
        scale = max(scale, 1.0)
    return diff / scale


def linear_independence_ratio(
    N: int,
    lam: complex,
    omega: complex,
    ctx: ThetaContext,
    points: list[tuple[complex, int]],
) -> float:
    """Smallest over largest singular value of a sampled coefficient matrix.

    Rows are (spectral point, basis index) samples, columns are the N + 1
    highest-row matrix elements evaluated on that sample; a ratio bounded away
    from zero certifies linear independence of the column functions.
    """
    rc = RepContext(omega, lam, ctx)
    rows = []
    for z, m in points:
        row = []
        for j in range(N + 1):
            got = apply_word(t_word(N, N, j, z, ctx), m, rc)
            row.append(got.get(m + N - j, 0.0 + 0.0j))
        rows.append(row)
    mat = np.array(rows, dtype=complex)
    svals = np.linalg.svd(mat, compute_uv=False)
    if svals[0] == 0.0:
        return 0.0
    return float(svals[-1] / svals[0])
