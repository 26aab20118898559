"""Circle-rule construction, exactness, and companion-structure checks."""
import cmath
import math

import numpy as np
import pytest

from circle_hilbert import (
    InvalidN,
    LaurentPolynomial,
    QuadratureRule,
    RuleKind,
    RuleMismatch,
    Tau,
    TauNotUnimodular,
    apply_rule,
    averaged_apply,
    build_anti_szego,
    build_szego,
    check_interlace,
    estimate_error,
    eval_laurent,
    eval_para_orthogonal,
    hessenberg,
    tau_prescribed,
)

LONG_PI = np.longdouble(np.pi) + np.longdouble(1.2246467991473532e-16)


def monomial(k: int) -> LaurentPolynomial:
    return LaurentPolynomial.from_terms({k: 1.0})


def angle_set_close(angles, expected, tol=1e-12):
    expected = np.sort(np.asarray(expected, dtype=float))
    got = np.sort(np.asarray(angles, dtype=float))
    return got.shape == expected.shape and np.max(np.abs(got - expected)) <= tol


# -- construction -------------------------------------------------------------


def test_szego_nodes_fourth_roots_of_minus_one():
    from fractions import Fraction

    rule = build_szego(4, 1)
    assert angle_set_close(rule.node_angles, [-3 * math.pi / 4, -math.pi / 4, math.pi / 4, 3 * math.pi / 4])
    assert rule.weight == Fraction(1, 4)


def test_szego_single_node_at_zero():
    rule = build_szego(1, -1)
    assert angle_set_close(rule.node_angles, [0.0])


def test_szego_contains_prescribed_node():
    theta_p = math.pi / 16 + math.pi / 64
    rule = build_szego(16, tau_prescribed(theta_p, 16))
    assert np.min(np.abs(rule.node_angles - theta_p)) <= 1e-12


def test_anti_szego_nodes_fourth_roots_of_plus_one():
    rule = build_anti_szego(4, 1)
    assert angle_set_close(rule.node_angles, [-math.pi / 2, 0.0, math.pi / 2, math.pi])


def test_anti_szego_square_roots_of_minus_one():
    rule = build_anti_szego(2, -1)
    assert angle_set_close(rule.node_angles, [-math.pi / 2, math.pi / 2])


def test_invalid_sizes():
    with pytest.raises(InvalidN):
        build_szego(0, 1)
    with pytest.raises(InvalidN):
        build_anti_szego(-3, 1)
    with pytest.raises(InvalidN):
        tau_prescribed(0.0, 0)
    with pytest.raises(InvalidN):
        hessenberg(1, 1)


def test_tau_must_be_unimodular():
    with pytest.raises(TauNotUnimodular):
        build_szego(4, 1.5)
    with pytest.raises(TauNotUnimodular):
        Tau.from_complex(0.999999 + 0j)
    # within the 1e-12 band is accepted
    build_szego(4, 1.0 + 1e-13)


def test_rule_invariants_random_tau():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 17, 256, 4096):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        for rule in (build_szego(n, tau), build_anti_szego(n, tau)):
            a = rule.node_angles
            assert a.shape == (n,)
            assert len(np.unique(a)) == n
            assert np.all(np.diff(a) > 0)
            assert a.min() > -math.pi and a.max() <= math.pi
            gaps = np.diff(np.concatenate([a, a[:1] + 2 * np.pi]))
            assert np.max(np.abs(gaps - 2 * np.pi / n)) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 64, 4096])
def test_node_equation_residual(n):
    """e^{i n theta_k} = -tau (szego) resp. +tau (anti), within 1e-12."""
    rng = np.random.default_rng(n + 1)
    alpha = float(rng.uniform(-math.pi, math.pi))
    for rule, shift in ((build_szego(n, Tau(alpha)), LONG_PI), (build_anti_szego(n, Tau(alpha)), np.longdouble(0))):
        ph = np.longdouble(n) * rule.node_angles.astype(np.longdouble) - np.longdouble(alpha) - shift
        ph = np.remainder(ph, 2 * LONG_PI)
        ph = np.minimum(ph, 2 * LONG_PI - ph)
        assert float(2 * np.sin(ph / 2).max()) <= 1e-12


def test_node_angles_are_read_only():
    rule = build_szego(4, 1)
    with pytest.raises(ValueError):
        rule.node_angles[0] = 0.0


# -- prescribed tau -----------------------------------------------------------


def test_tau_prescribed_examples():
    assert abs(tau_prescribed(0.0, 4).value - (-1)) < 1e-12
    assert abs(tau_prescribed(math.pi / 16, 16).value - 1) < 1e-12
    assert abs(tau_prescribed(math.pi / 16, 8).value - (-1j)) < 1e-12


# -- application --------------------------------------------------------------


def test_apply_rule_constant_is_exactly_one():
    rule = build_szego(4, 1)
    assert apply_rule(rule, lambda th: np.ones_like(th)) == 1.0 + 0.0j


def test_apply_rule_monomials():
    rule = build_szego(4, 1)
    assert abs(apply_rule(rule, monomial(2))) <= 1e-13
    assert abs(apply_rule(rule, monomial(4)) - (-1)) <= 1e-13


def test_apply_rule_propagates_integrand_failure():
    from circle_hilbert import DomainError, builtin, compile_integrand, parse

    f = compile_integrand(parse("ln(1 + cos(theta))"))
    rule = build_anti_szego(4, 1)  # contains theta = pi, where 1 + cos = 0
    with pytest.raises(DomainError):
        apply_rule(rule, f)


LN_MEAN_F1 = math.log((1.5 + math.sqrt(2)) / 2)  # (1/2pi) int ln(3/2 + cos/2)
LN_MEAN_F2 = math.log(4.0)  # (1/2pi) int ln(5 + 4 cos)


def f1(th):
    return np.log(1.5 + 0.5 * np.cos(th))


def f2(th):
    return np.log(5.0 + 4.0 * np.cos(th))


def test_averaged_rule_closed_forms():
    rng = np.random.default_rng(5)
    for _ in range(4):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        szego, anti = build_szego(8, tau), build_anti_szego(8, tau)
        assert abs(averaged_apply(szego, anti, monomial(4)) - 0) <= 1e-13
        assert abs(averaged_apply(szego, anti, f1) - LN_MEAN_F1) <= 1e-12
        assert abs(averaged_apply(szego, anti, f2) - LN_MEAN_F2) <= 2e-6


def test_averaged_apply_exact_at_degree_n():
    szego, anti = build_szego(4, 1), build_anti_szego(4, 1)
    assert abs(averaged_apply(szego, anti, monomial(4))) <= 1e-13


def test_rule_mismatch_detection():
    szego = build_szego(4, 1)
    anti_wrong_n = build_anti_szego(8, 1)
    anti_wrong_tau = build_anti_szego(4, -1)
    with pytest.raises(RuleMismatch):
        averaged_apply(szego, anti_wrong_n, monomial(0))
    with pytest.raises(RuleMismatch):
        averaged_apply(szego, anti_wrong_tau, monomial(0))
    with pytest.raises(RuleMismatch):
        estimate_error(szego, szego, monomial(0))  # not a (szego, anti) pair


def test_estimate_error_examples():
    rng = np.random.default_rng(17)
    for n in (3, 8, 20):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        szego, anti = build_szego(n, tau), build_anti_szego(n, tau)
        assert abs(estimate_error(szego, anti, monomial(n)) - tau.value) <= 1e-13
        assert estimate_error(szego, anti, lambda th: np.ones_like(th)) == 0.0


def test_estimate_error_matches_table_magnitudes():
    """At n=8 on the log integrand, the estimate and the true error agree to
    two significant digits (|R| ~ 4.88e-4 against |e| ~ 4.87e-4)."""
    tau = Tau(2 * math.pi / 3)
    szego, anti = build_szego(8, tau), build_anti_szego(8, tau)
    estimate = estimate_error(szego, anti, f2)
    true_error = LN_MEAN_F2 - apply_rule(szego, f2)
    assert abs(estimate) == pytest.approx(4.88e-4, rel=0.01)
    assert abs(true_error) == pytest.approx(4.87e-4, rel=0.01)
    assert abs(abs(estimate) - abs(true_error)) <= 0.05 * abs(true_error)


def test_estimator_is_rearranged_average():
    f = f2
    for n in (4, 16):
        szego, anti = build_szego(n, Tau(0.3)), build_anti_szego(n, Tau(0.3))
        lhs = estimate_error(szego, anti, f)
        rhs = averaged_apply(szego, anti, f) - apply_rule(szego, f)
        scale = max(1.0, abs(apply_rule(szego, f)), abs(averaged_apply(szego, anti, f)))
        assert abs(lhs - rhs) <= 1e-15 * scale


# -- exactness sweep ----------------------------------------------------------


def test_exactness_and_boundary_degree():
    rng = np.random.default_rng(23)
    for n in (1, 2, 3, 5, 16, 64):
        for _ in range(5):
            tau = Tau(float(rng.uniform(-math.pi, math.pi)))
            szego, anti = build_szego(n, tau), build_anti_szego(n, tau)
            ks = np.arange(-(n - 1), n)
            z_s = np.exp(1j * szego.node_angles)
            z_a = np.exp(1j * anti.node_angles)
            vals_s = (z_s[None, :] ** ks[:, None]).mean(axis=1)
            vals_a = (z_a[None, :] ** ks[:, None]).mean(axis=1)
            target = (ks == 0).astype(complex)
            assert np.max(np.abs(vals_s - target)) <= 1e-13
            assert np.max(np.abs(vals_a - target)) <= 1e-13
            # boundary degree: opposite signed errors that cancel on average
            assert abs(apply_rule(szego, monomial(n)) + tau.value) <= 1e-13
            assert abs(apply_rule(anti, monomial(n)) - tau.value) <= 1e-13


# -- interlacing --------------------------------------------------------------


def test_interlace_trivial_cases():
    assert check_interlace(build_szego(4, 1), build_anti_szego(4, 1)) is True
    assert check_interlace(build_szego(4, 1), build_szego(4, 1)) is False
    with pytest.raises(RuleMismatch):
        check_interlace(build_szego(4, 1), build_anti_szego(8, 1))


def test_interlace_by_direct_arc_enumeration():
    a = build_szego(6, -1j)
    b = build_anti_szego(6, -1j)
    # independent check: walk the merged circular order and require alternation
    merged = sorted([(t, "a") for t in a.node_angles] + [(t, "b") for t in b.node_angles])
    labels = [lab for _, lab in merged]
    assert all(labels[i] != labels[(i + 1) % len(labels)] for i in range(len(labels)))
    assert check_interlace(a, b) is True


def test_interlace_offset_is_pi_over_n():
    rng = np.random.default_rng(3)
    for n in (1, 2, 9, 64):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        a, b = build_szego(n, tau), build_anti_szego(n, tau)
        assert check_interlace(a, b)
        gaps = np.abs(a.node_angles[:, None] - b.node_angles[None, :])
        gaps = np.minimum(gaps, 2 * np.pi - gaps)
        assert abs(float(np.min(gaps, axis=1).max()) - math.pi / n) <= 1e-12
        assert abs(float(np.min(gaps, axis=1).min()) - math.pi / n) <= 1e-12


# -- companion matrix ---------------------------------------------------------


def test_hessenberg_shape_n2():
    m = hessenberg(2, 1).entries
    assert np.array_equal(m, np.array([[0, -1], [1, 0]], dtype=complex))


def test_hessenberg_power_and_unitarity():
    m3 = hessenberg(3, 1j).entries
    assert np.max(np.abs(np.linalg.matrix_power(m3, 3) + 1j * np.eye(3))) <= 1e-12
    m5 = hessenberg(5, cmath.exp(0.7j)).entries
    assert np.max(np.abs(m5.conj().T @ m5 - np.eye(5))) <= 1e-12


def test_hessenberg_characteristic_polynomial_vanishes_at_nodes():
    rng = np.random.default_rng(29)
    for n in (2, 5, 32, 64):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        for z in np.exp(1j * build_szego(n, tau).node_angles):
            assert abs(eval_para_orthogonal(n, tau, z)) <= 1e-12


def test_eval_para_orthogonal_examples():
    assert abs(eval_para_orthogonal(4, 1, cmath.exp(1j * math.pi / 4))) <= 1e-12
    assert abs(eval_para_orthogonal(1, -1, 0) - (-1)) <= 1e-15  # tau reconstructed from its angle
    assert abs(eval_para_orthogonal(3, 1j, 1) - (1 + 1j)) <= 1e-15


# -- Laurent polynomials ------------------------------------------------------


def test_eval_laurent_examples():
    p = LaurentPolynomial.from_terms({1: 1.0})
    assert eval_laurent(p, 0.0) == pytest.approx(1.0)
    p = LaurentPolynomial.from_terms({1: 1.0, -1: 1.0})
    assert eval_laurent(p, math.pi / 3) == pytest.approx(1.0)
    p = LaurentPolynomial.from_terms({1: 1j, -1: -1j})
    assert eval_laurent(p, math.pi / 2) == pytest.approx(-2.0)


def test_laurent_matches_direct_sum_on_circle():
    rng = np.random.default_rng(31)
    c = rng.normal(size=7) + 1j * rng.normal(size=7)
    p = LaurentPolynomial(c)
    for th in rng.uniform(-math.pi, math.pi, 5):
        z = cmath.exp(1j * th)
        direct = sum(c[k + 3] * z**k for k in range(-3, 4))
        assert eval_laurent(p, th) == pytest.approx(direct, abs=1e-13)
