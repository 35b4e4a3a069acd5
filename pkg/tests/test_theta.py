"""Theta evaluation, Pochhammer products, and tracked-argument bookkeeping."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellu2.theta import (
    PoleError,
    ThetaContext,
    ThetaProduct,
    elliptic_binomial,
    garg,
    pochhammer,
    pochhammer_ratio,
    qarg,
    theta,
    theta_multi,
    theta_vec,
)


def brute_theta(z, p, factors=500):
    """Direct partial product, the independent reference for theta values."""
    acc = 1.0 + 0.0j
    for j in range(factors):
        acc *= (1.0 - z * p**j) * (1.0 - p ** (j + 1) / z)
    return acc


nonzero_z = st.complex_numbers(
    min_magnitude=0.2, max_magnitude=5.0, allow_nan=False, allow_infinity=False
)


def test_theta_matches_long_product():
    ctx = ThetaContext(0.1, 0.7)
    ref = brute_theta(2.0 + 0.0j, 0.1)
    assert abs(theta(2.0 + 0.0j, ctx) - ref) <= 1e-14 * abs(ref)


@pytest.mark.parametrize("mag", [1e-8, 1e-4, 1.0, 1e4, 1e8])
@pytest.mark.parametrize("p", [0.05, 0.12, 0.3])
def test_theta_accurate_across_magnitudes(mag, p):
    ctx = ThetaContext(p, 0.7)
    z = mag * (0.83 + 0.41j)
    ref = brute_theta(z, p)
    assert abs(theta(z, ctx) - ref) <= 1e-13 * abs(ref)


def test_theta_exact_zeros(ctx):
    assert theta(1.0 + 0.0j, ctx) == 0
    for k in (1, 2, 5):
        assert theta(complex(ctx.p**k), ctx) == 0
        assert theta(complex(ctx.p**-k), ctx) == 0


@settings(max_examples=40, deadline=None)
@given(nonzero_z)
def test_theta_quasi_periodicity(z):
    ctx = ThetaContext(0.15, 0.7)
    base = theta(z, ctx)
    shifted = -base / z
    scale = max(abs(base), abs(shifted), 1e-300)
    assert abs(theta(ctx.p * z, ctx) - shifted) <= 1e-12 * scale
    assert abs(theta(1.0 / z, ctx) - shifted) <= 1e-12 * scale


@settings(max_examples=25, deadline=None)
@given(nonzero_z, nonzero_z, nonzero_z, nonzero_z)
def test_theta_three_term_relation(x, y, z, w):
    ctx = ThetaContext(0.18, 0.7)
    t1 = theta_multi((x * y, x / y, z * w, z / w), ctx)
    t2 = theta_multi((x * w, x / w, z * y, z / y), ctx)
    t3 = (z / y) * theta_multi((x * z, x / z, y * w, y / w), ctx)
    scale = max(abs(t1), abs(t2), abs(t3), 1e-300)
    assert abs(t1 - t2 - t3) <= 1e-11 * scale


def test_theta_vec_matches_scalar(ctx, rng):
    zs = [complex(a, b) for a, b in rng.uniform(0.3, 2.0, size=(8, 2))]
    vec = theta_vec(zs, ctx)
    for zi, vi in zip(zs, vec):
        ref = theta(zi, ctx)
        assert abs(vi - ref) <= 1e-14 * abs(ref)


def test_theta_multi_is_factorwise():
    ctx = ThetaContext(0.2, 0.7)
    got = theta_multi((0.3, 1.7), ctx)
    ref = theta(0.3 + 0.0j, ctx) * theta(1.7 + 0.0j, ctx)
    assert abs(got - ref) <= 1e-14 * abs(ref)
    assert theta_multi((), ctx) == 1


def test_pochhammer_empty_and_splitting(ctx):
    a = garg(0.7 + 0.3j)
    assert pochhammer(a, 0, ctx) == 1
    for n, m in [(1, 1), (2, 3), (4, 2)]:
        whole = pochhammer(a, n + m, ctx)
        split = pochhammer(a, n, ctx) * pochhammer(a.shifted(n), m, ctx)
        assert abs(whole - split) <= 1e-13 * abs(whole)


def test_pochhammer_negative_length_reflection(ctx):
    a = garg(1.3 - 0.4j)
    lhs = pochhammer(a, -2, ctx)
    rhs = 1.0 / (theta(a.value(ctx) * ctx.qpow(-2), ctx) * theta(a.value(ctx) * ctx.qpow(-4), ctx))
    assert abs(lhs - rhs) <= 1e-13 * abs(rhs)


def test_pochhammer_exact_zero_detection(ctx):
    assert pochhammer(qarg(0), 1, ctx) == 0
    assert pochhammer(qarg(0), 4, ctx) == 0
    assert pochhammer(qarg(-3), 4, ctx) == 0
    assert pochhammer(qarg(-3), 3, ctx) != 0


def test_pochhammer_ratio_cancels_shared_zero(ctx):
    a = qarg(-2)
    got = pochhammer_ratio(a, 4, 3, ctx)
    ref = theta(ctx.qpow(2), ctx)
    assert abs(got - ref) <= 1e-14 * abs(ref)
    with pytest.raises(ValueError):
        pochhammer_ratio(a, 2, 3, ctx)


def test_pochhammer_ratio_matches_quotient(ctx):
    a = garg(0.9 + 0.2j)
    got = pochhammer_ratio(a, 5, 2, ctx)
    ref = pochhammer(a, 5, ctx) / pochhammer(a, 2, ctx)
    assert abs(got - ref) <= 1e-13 * abs(ref)


def test_elliptic_binomial_endpoints_and_ratio(ctx):
    assert elliptic_binomial(4, 0, ctx) == 1
    assert elliptic_binomial(4, 4, ctx) == 1
    assert elliptic_binomial(3, 5, ctx) == 0
    assert elliptic_binomial(3, -1, ctx) == 0
    for k, l in [(4, 2), (5, 1), (6, 3)]:
        ref = pochhammer(qarg(k - l + 1), l, ctx) / pochhammer(qarg(1), l, ctx)
        got = elliptic_binomial(k, l, ctx)
        assert abs(got - ref) <= 1e-13 * abs(ref)


def test_elliptic_binomial_symmetry(ctx):
    for k in range(2, 7):
        for l in range(k + 1):
            lhs = elliptic_binomial(k, l, ctx)
            rhs = elliptic_binomial(k, k - l, ctx)
            assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs))


def test_theta_product_zero_guard(ctx):
    tp = ThetaProduct(ctx)
    tp.theta(garg(1.0 + 1e-14), inv=True)
    with pytest.raises(PoleError):
        tp.value()
    tp2 = ThetaProduct(ctx)
    tp2.theta(qarg(0), inv=False)
    tp2.theta(garg(0.5), inv=True)
    assert tp2.value() == 0
    with pytest.raises(PoleError):
        ThetaProduct(ctx).theta(qarg(0), inv=True)


def test_theta_product_interleaves_large_rows():
    # Forty numerator thetas at huge arguments overflow on their own; pairing
    # them against comparable denominators must keep the quotient finite.
    ctx = ThetaContext(0.1, 0.7)
    tp = ThetaProduct(ctx)
    big = garg(1e7 + 3e6j)
    for _ in range(40):
        tp.theta(big)
        tp.theta(garg(1.0001 * big.generic), inv=True)
    out = tp.value()
    assert np.isfinite(out.real) and np.isfinite(out.imag)


def test_scalar_and_counts(ctx):
    tp = ThetaProduct(ctx, 2.0).mul_scalar(3.0)
    tp.theta(garg(0.4), count=2)
    ref = 6.0 * theta(0.4 + 0.0j, ctx) ** 2
    assert abs(tp.value() - ref) <= 1e-13 * abs(ref)
    tp2 = ThetaProduct(ctx)
    tp2.theta(garg(0.4), count=-2)
    ref2 = 1.0 / theta(0.4 + 0.0j, ctx) ** 2
    assert abs(tp2.value() - ref2) <= 1e-13 * abs(ref2)
