"""Terminating very-well-poised series: evaluators, balance, transformation."""

import numpy as np
import pytest

from ellu2.series import (
    SeriesSpec,
    bailey_g,
    check_bailey,
    eval_omega,
    eval_omega_termwise,
)
from ellu2.theta import PoleError, garg, qarg


def balanced_spec(ctx, rng, n):
    """Random balanced level-nine spec: five free uppers plus a forced sixth."""
    a1 = complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5))
    uppers = [complex(rng.uniform(0.5, 1.5), rng.uniform(-0.5, 0.5)) for _ in range(5)]
    sixth = a1**3 * ctx.qpow(4 + 2 * n) / np.prod(uppers)
    free = tuple(garg(u) for u in uppers) + (garg(complex(sixth)),)
    return SeriesSpec(garg(a1), free + (qarg(-n),), 6, ctx)


def test_spec_validation(ctx):
    with pytest.raises(ValueError):
        SeriesSpec(garg(1.1), (), 0, ctx)
    with pytest.raises(ValueError):
        SeriesSpec(garg(1.1), (qarg(-2),), 1, ctx)
    with pytest.raises(ValueError):
        SeriesSpec(garg(1.1), (garg(0.5), qarg(-2)), 0, ctx)
    with pytest.raises(ValueError):
        SeriesSpec(garg(1.1), (garg(0.5), qarg(2)), 1, ctx)
    spec = SeriesSpec(garg(1.1), (garg(0.5), qarg(-2)), 1, ctx)
    assert spec.termination_index == 2
    assert spec.level == 4


def test_zero_order_series_is_one(ctx, rng):
    spec = balanced_spec(ctx, rng, 0)
    assert abs(eval_omega(spec).value - 1.0) <= 1e-14


def test_ratio_matches_termwise_oracle(ctx, rng):
    for _ in range(6):
        spec = balanced_spec(ctx, rng, 4)
        got = eval_omega(spec)
        assert got.warnings == ()
        assert got.terms == 5
        assert got.max_term_magnitude >= 1.0
        brute = eval_omega_termwise(spec)
        scale = got.max_term_magnitude + abs(brute)
        assert abs(got.value - brute) <= 1e-11 * scale


def test_upper_permutation_invariance(ctx, rng):
    spec = balanced_spec(ctx, rng, 5)
    base = eval_omega(spec).value
    free = spec.upper[:6]
    for perm in ([1, 0, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0], [2, 0, 5, 1, 3, 4]):
        shuffled = tuple(free[i] for i in perm) + (spec.upper[6],)
        got = eval_omega(SeriesSpec(spec.a1, shuffled, 6, ctx)).value
        assert abs(got - base) <= 1e-12 * max(abs(base), 1.0)


def test_balance_warning_numeric(ctx, rng):
    spec = balanced_spec(ctx, rng, 3)
    skew = (garg(spec.upper[0].generic * 1.01),) + spec.upper[1:]
    warned = eval_omega(SeriesSpec(spec.a1, skew, 6, ctx))
    assert warned.warnings and "unbalanced" in warned.warnings[0]


def test_balance_check_exact_for_tracked_powers(ctx):
    free = (qarg(2), qarg(1), qarg(1), qarg(1), qarg(0), qarg(1))
    spec = SeriesSpec(qarg(1), free + (qarg(-1),), 6, ctx)
    assert spec.balancing_warning() is None
    bad = SeriesSpec(qarg(1), (qarg(3),) + free[1:] + (qarg(-1),), 6, ctx)
    warning = bad.balancing_warning()
    assert warning is not None and "exact exponent defect" in warning


def test_pole_in_denominator_raises(ctx, rng):
    spec = balanced_spec(ctx, rng, 3)
    a1 = spec.a1.generic
    poisoned = (garg(a1 * ctx.qpow(2)),) + spec.upper[1:]
    with pytest.raises(PoleError):
        eval_omega(SeriesSpec(spec.a1, poisoned, 6, ctx))


def test_bailey_g_product_constraint(ctx):
    a, b, c, d, e, f = 1.1, 0.9 + 0.2j, 1.3, 0.7 - 0.1j, 1.2, 0.8
    n = 3
    g = bailey_g(a, b, c, d, e, f, n, ctx)
    assert abs(b * c * d * e * f * g - a**3 * ctx.qpow(2 * (n + 2))) <= 1e-13


def test_bailey_transformation_small_orders(ctx, rng):
    seen = 0
    for n in range(5):
        while True:
            vals = [complex(rng.uniform(0.6, 1.6), rng.uniform(-0.4, 0.4)) for _ in range(6)]
            try:
                report = check_bailey(*vals, n, ctx)
            except PoleError:
                continue
            if report.condition <= 1e6:
                break
        seen += 1
        assert report.residual <= 1e-9
        direct = abs(report.lhs - report.rhs) / (abs(report.lhs) + abs(report.rhs))
        assert abs(report.residual - direct) <= 1e-12
    assert seen == 5


def test_bailey_order_zero_trivial(ctx):
    report = check_bailey(1.1, 0.9, 1.2, 0.8, 1.3, 0.7, 0, ctx)
    assert abs(report.lhs - 1.0) <= 1e-14
    assert report.residual <= 1e-13
