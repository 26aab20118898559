"""Fast self-contained property checks, runnable via `circle-hilbert selftest`.

Each check returns None on success or a short failure description.  The
anti-Gauss check resolves `reference.anti_gauss` dynamically so a broken
weight assignment (for instance the endpoint/interior swap) is caught here.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from . import expr, reference
from .angles import normalize_angle
from .hilbert import (
    hilbert_anti_prescribed,
    hilbert_averaged,
    hilbert_naive,
    hilbert_prescribed,
)
from .quadrature import (
    LaurentPolynomial,
    Tau,
    apply_rule,
    averaged_apply,
    build_anti_szego,
    build_szego,
    check_interlace,
    estimate_error,
    eval_para_orthogonal,
    hessenberg,
    tau_prescribed,
)

_RNG_SEED = 20240601


def chebyshev_moment(k: int) -> Fraction:
    """(1/2pi) * integral of x^k / sqrt(1-x^2) over [-1,1], by the Wallis recurrence."""
    if k % 2:
        return Fraction(0)
    value = Fraction(1, 2)
    for m in range(2, k + 1, 2):
        value *= Fraction(m - 1, m)
    return value


def _monomial(k: int):
    return LaurentPolynomial.from_terms({k: 1.0})


def _check_normalization() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    for x in rng.uniform(-50, 50, 200):
        y = normalize_angle(float(x))
        if not (-math.pi < y <= math.pi):
            return f"normalize({x}) = {y} out of range"
        if normalize_angle(y) != y:
            return f"normalize not idempotent at {x}"
    return None


def _check_node_equations() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    long = np.longdouble
    pi_l = long(np.pi) + long(1.2246467991473532e-16)
    for n in (1, 2, 3, 16, 257, 1024, 4096):
        alpha = float(rng.uniform(-math.pi, math.pi))
        for build, sign in ((build_szego, 1.0), (build_anti_szego, -1.0)):
            rule = build(n, Tau(alpha))
            # residual in extended precision so the n*theta product itself
            # does not eat the tolerance at large n
            ph = long(n) * rule.node_angles.astype(long) - long(alpha) - (pi_l if sign > 0 else long(0))
            ph = np.remainder(ph, 2 * pi_l)
            ph = np.minimum(ph, 2 * pi_l - ph)
            worst = float(2 * np.sin(ph / 2).max())
            if worst > 1e-12:
                return f"node equation residual {worst:.2e} at n={n}, kind={build.__name__}"
    return None


def _check_exactness() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    for n in (1, 2, 3, 8, 33, 64):
        for _ in range(3):
            tau = Tau(float(rng.uniform(-math.pi, math.pi)))
            szego = build_szego(n, tau)
            anti = build_anti_szego(n, tau)
            for k in range(-(n - 1), n):
                target = 1.0 if k == 0 else 0.0
                for rule in (szego, anti):
                    if abs(apply_rule(rule, _monomial(k)) - target) > 1e-13:
                        return f"exactness failed at n={n}, k={k}"
            zn = _monomial(n)
            if abs(apply_rule(szego, zn) + tau.value) > 1e-13:
                return f"S_n(z^n) != -tau at n={n}"
            if abs(apply_rule(anti, zn) - tau.value) > 1e-13:
                return f"anti rule (z^n) != +tau at n={n}"
            for k in range(-n, n + 1):
                target = 1.0 if k == 0 else 0.0
                if abs(averaged_apply(szego, anti, _monomial(k)) - target) > 1e-13:
                    return f"averaged rule not exact at n={n}, k={k}"
    return None


def _check_interlacing() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    for n in (1, 2, 5, 32, 257):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        a = build_szego(n, tau)
        b = build_anti_szego(n, tau)
        if not check_interlace(a, b):
            return f"interlacing failed at n={n}"
        gaps = np.abs(a.node_angles[:, None] - b.node_angles[None, :])
        gaps = np.minimum(gaps, 2 * np.pi - gaps)
        if abs(float(gaps.min()) - math.pi / n) > 1e-12:
            return f"node offset != pi/n at n={n}"
    return None


def _check_hessenberg() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    for n in (2, 3, 7, 32):
        tau = Tau(float(rng.uniform(-math.pi, math.pi)))
        m = hessenberg(n, tau).entries
        if np.max(np.abs(m.conj().T @ m - np.eye(n))) > 1e-12:
            return f"companion matrix not unitary at n={n}"
        if np.max(np.abs(np.linalg.matrix_power(m, n) + tau.value * np.eye(n))) > 1e-12:
            return f"M^n != -tau*I at n={n}"
        for z in np.exp(1j * build_szego(n, tau).node_angles):
            if abs(eval_para_orthogonal(n, tau, z)) > 1e-12:
                return f"characteristic polynomial does not vanish at a node (n={n})"
    return None


def _check_estimator_consistency() -> str | None:
    f = expr.compile_integrand(expr.builtin("f2"))
    for n in (4, 8, 16):
        szego = build_szego(n, Tau(0.4))
        anti = build_anti_szego(n, Tau(0.4))
        lhs = estimate_error(szego, anti, f)
        rhs = averaged_apply(szego, anti, f) - apply_rule(szego, f)
        scale = max(abs(apply_rule(szego, f)), 1.0)
        if abs(lhs - rhs) > 1e-15 * scale:
            return f"estimator != averaged - szego at n={n}"
    return None


def _check_chebyshev_moments() -> str | None:
    for n in range(1, 9):
        rule = reference.gauss_chebyshev(n)
        for k in range(2 * n):
            got = reference.apply_interval(rule, lambda x, k=k: x**k)
            if abs(got - float(chebyshev_moment(k))) > 1e-14:
                return f"Gauss-Chebyshev moment x^{k} wrong at n={n}"
    return None


def _check_anti_gauss_defining_property() -> str | None:
    for n in range(2, 9):
        companion = reference.anti_gauss(n)
        gauss = reference.gauss_chebyshev(n)
        for k in range(2 * n + 2):
            lhs = reference.apply_interval(companion, lambda x, k=k: x**k)
            rhs = 2 * float(chebyshev_moment(k)) - reference.apply_interval(
                gauss, lambda x, k=k: x**k
            )
            if abs(lhs - rhs) > 1e-14:
                return f"companion rule fails 2I - G on x^{k} at n={n}"
    return None


def _check_circle_interval_equivalence() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    for n in (2, 3, 5, 8):
        coeffs = rng.uniform(-1, 1, 2 * n)  # degree 2n-1
        F = np.polynomial.Polynomial(coeffs)
        f = lambda th: 0.5 * F(np.cos(th))
        lhs = apply_rule(build_szego(2 * n, Tau(0.0)), f)
        rhs = reference.apply_interval(reference.gauss_chebyshev(n), F)
        if abs(lhs - rhs) > 1e-13:
            return f"Szego(2n) != Gauss-Chebyshev(n) at n={n}"
        coeffs = rng.uniform(-1, 1, 2 * n + 2)  # degree 2n+1
        F = np.polynomial.Polynomial(coeffs)
        f = lambda th: 0.5 * F(np.cos(th))
        lhs = apply_rule(build_anti_szego(2 * n, Tau(0.0)), f)
        rhs = reference.apply_interval(reference.anti_gauss(n), F)
        if abs(lhs - rhs) > 1e-13:
            return f"anti-Szego(2n) != companion(n+1) at n={n}"
    return None


def _check_prescribed_guard() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    f = expr.compile_integrand(expr.builtin("f0"))
    for n in (1, 4, 16, 128):
        phi = float(rng.uniform(-math.pi, math.pi))
        result = hilbert_prescribed(f, phi, n)
        if result.guard.min_distance < math.pi / (4 * n) - 1e-12:
            return f"prescribed node guard violated at n={n}"
    return None


def _check_constant_annihilation() -> str | None:
    f = lambda th: np.full(np.shape(th), 2.5 - 1.25j)
    for n in (1, 3, 8):
        if hilbert_prescribed(f, 0.3, n).value != 0:
            return "prescribed evaluator nonzero on a constant"
        if hilbert_naive(f, 0.3, n) != 0:
            return "naive evaluator nonzero on a constant"
    return None


def _check_averaging_identity() -> str | None:
    f = expr.compile_integrand(expr.builtin("f0"))
    for n in (4, 16):
        szego = hilbert_prescribed(f, 0.7, n).value
        anti = hilbert_anti_prescribed(f, 0.7, n).value
        if hilbert_averaged(f, 0.7, n).value != 0.5 * (szego + anti):
            return f"averaged value not the exact mean at n={n}"
    return None


def _check_parser_round_trip() -> str | None:
    for name in sorted(expr.CATALOG):
        tree = expr.builtin(name)
        printed = expr.pretty(tree)
        if expr.pretty(expr.parse(printed)) != printed:
            return f"printer round-trip failed for {name}"
    return None


def _check_catalog_identity() -> str | None:
    rng = np.random.default_rng(_RNG_SEED)
    f1 = expr.compile_integrand(expr.builtin("f1"))
    for th in rng.uniform(-math.pi, math.pi, 100):
        direct = np.log(1 + np.cos(th) + np.sin(th / 2) ** 2)
        if abs(f1(np.asarray(th)) - direct) > 1e-14:
            return f"catalog f1 disagrees with its defining form at theta={th}"
    return None


def _check_mean_integral_closed_forms() -> str | None:
    f1 = expr.compile_integrand(expr.builtin("f1"))
    f2 = expr.compile_integrand(expr.builtin("f2"))
    if abs(reference.mean_integral_ref(f1, 4096) - math.log((1.5 + math.sqrt(2)) / 2)) > 1e-12:
        return "trapezoidal reference wrong on f1"
    if abs(reference.mean_integral_ref(f2, 4096) - math.log(4)) > 1e-12:
        return "trapezoidal reference wrong on f2"
    return None


def _check_pv_concordance() -> str | None:
    f = expr.compile_integrand(expr.builtin("f0"))
    for phi in (0.37, -2.1):
        gap = abs(reference.pv_oracle(f, phi) - hilbert_averaged(f, phi, 64).value)
        if gap > 1e-9:
            return f"pv integrator and averaged evaluator disagree by {gap:.2e} at phi={phi}"
    return None


CHECKS: tuple[tuple[str, Callable[[], str | None]], ...] = (
    ("angle normalization", _check_normalization),
    ("node equations", _check_node_equations),
    ("rule exactness", _check_exactness),
    ("interlacing", _check_interlacing),
    ("companion matrix", _check_hessenberg),
    ("error estimator consistency", _check_estimator_consistency),
    ("chebyshev moments", _check_chebyshev_moments),
    ("companion defining property", _check_anti_gauss_defining_property),
    ("circle-interval equivalence", _check_circle_interval_equivalence),
    ("prescribed node guard", _check_prescribed_guard),
    ("constant annihilation", _check_constant_annihilation),
    ("averaging identity", _check_averaging_identity),
    ("parser round trip", _check_parser_round_trip),
    ("catalog identity", _check_catalog_identity),
    ("mean integral closed forms", _check_mean_integral_closed_forms),
    ("pv concordance", _check_pv_concordance),
)


def run_selftest(write=print) -> int:
    """Run every check; print one PASS/FAIL line each; return 0 iff all pass."""
    failures = 0
    for name, check in CHECKS:
        try:
            problem = check()
        except Exception as exc:  # a crash counts as a failure, not an abort
            problem = f"raised {type(exc).__name__}: {exc}"
        if problem is None:
            write(f"PASS  {name}")
        else:
            failures += 1
            write(f"FAIL  {name}: {problem}")
    return 0 if failures == 0 else 1
