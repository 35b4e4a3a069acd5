"""Corepresentation matrix elements: oracle tower, coproduct, unitarity."""

import numpy as np

from ellu2.corep import (
    check_coproduct,
    check_counit_exact,
    check_inversion_words,
    check_tensor_relation,
    check_unitarity,
    gamma_cf,
    gamma_factor,
    inv_gamma_factor,
    linear_independence_ratio,
    t_word,
    tau_closed,
    tau_product,
    tau_tilde_closed,
)
from ellu2.rep import RepContext, apply_word, relation_inventory
from ellu2.words import star


def draw_rc(ctx, rng):
    om = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
    lam0 = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
    z = rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return RepContext(om, lam0, ctx), z


def spread(vals):
    scale = max(max(abs(v) for v in vals), 1e-300)
    return max(abs(a - b) for a in vals for b in vals) / scale


def test_matrix_element_tower(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    lam0, om = rc.lam0, rc.omega
    for N in range(1, 4):
        for k in range(N + 1):
            for j in range(N + 1):
                tw = t_word(N, k, j, z, ctx)
                for m in range(3):
                    vals = [
                        apply_word(tw, m, rc).get(m + k - j, 0.0 + 0.0j),
                        tau_product(N, k, j, m, lam0, z, om, ctx),
                        tau_closed(N, k, j, m, lam0, z, om, ctx),
                    ]
                    assert spread(vals) <= 1e-10


def test_conjugate_tower(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    for N in range(1, 3):
        for k in range(N + 1):
            for j in range(N + 1):
                sw = star(t_word(N, k, j, z, ctx), ctx)
                for m in range(3):
                    vals = [
                        apply_word(sw, m, rc).get(m + j - k, 0.0 + 0.0j),
                        tau_tilde_closed(N, k, j, m, rc.lam0, z, rc.omega, ctx),
                    ]
                    assert spread(vals) <= 1e-10


def test_level_one_is_the_generator_matrix(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    from ellu2.rep import coef_a, coef_b, coef_c, coef_d

    m = 2
    table = {(0, 0): coef_d, (0, 1): coef_c, (1, 0): coef_b, (1, 1): coef_a}
    for (k, j), fn in table.items():
        got = tau_closed(1, k, j, m, rc.lam0, z, rc.omega, ctx)
        ref = fn(m, rc.lam0, z, rc.omega, ctx)
        assert abs(got - ref) <= 1e-12 * max(abs(ref), 1e-300)


def test_coproduct_two_leg_expansion(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    rc2 = RepContext(draw_rc(ctx, rng)[0].omega, rc.lam0, ctx)
    worst = 0.0
    for N in range(1, 3):
        for m in range(2):
            for n in range(2):
                worst = max(worst, check_coproduct(N, z, m, n, rc, rc2))
    assert worst <= 1e-9


def test_tensor_action_preserves_relations(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    rc2 = RepContext(draw_rc(ctx, rng)[0].omega, rc.lam0, ctx)
    z1, z2 = draw_rc(ctx, rng)[1], draw_rc(ctx, rng)[1]
    worst = 0.0
    for name, lhs, rhs in relation_inventory(z1, z2, ctx)[:4]:
        for m in range(2):
            for n in range(2):
                worst = max(worst, check_tensor_relation(lhs, rhs, m, n, rc, rc2))
    assert worst <= 1e-10


def test_counit_structure_exact(ctx, rng):
    _, z = draw_rc(ctx, rng)
    for N in range(1, 6):
        assert check_counit_exact(N, z, ctx) == []


def test_unitarity_small_levels(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    worst = 0.0
    for N in range(1, 3):
        for k in range(N + 1):
            for j in range(N + 1):
                for m in range(3):
                    worst = max(worst, check_unitarity(N, k, j, z, m, rc))
    assert worst <= 1e-9


def test_inversion_sums(ctx, rng):
    rc, z = draw_rc(ctx, rng)
    worst = 0.0
    for N in range(1, 3):
        for k in range(N + 1):
            for l in range(N + 1):
                for m in range(3):
                    worst = max(worst, check_inversion_words(N, k, l, z, m, rc))
    assert worst <= 1e-8


def test_linear_independence_of_top_row(ctx, rng):
    rc, _ = draw_rc(ctx, rng)
    points = [
        (rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0, 2 * np.pi)), int(rng.integers(0, 3)))
        for _ in range(6)
    ]
    for N in range(1, 4):
        ratio = linear_independence_ratio(N, rc.lam0, rc.omega, ctx, points[: N + 3])
        assert ratio > 1e-8


def test_gamma_factor_inverse_pair(ctx, rng):
    x = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
    for N in range(1, 4):
        for k in range(N + 1):
            direct = gamma_factor(N, k, x, ctx)
            via_cf = gamma_cf(N, k, ctx)(x)
            assert abs(direct - via_cf) <= 1e-12 * max(abs(direct), 1e-300)
            product = direct * inv_gamma_factor(N, k, ctx)(x)
            assert abs(product - 1.0) <= 1e-11
