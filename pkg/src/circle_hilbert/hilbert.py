"""Pointwise evaluation of the circular Hilbert transform.

With the singularity subtracted, the transform at phi is the proper integral

    (1/2pi) * integral of [f(e^{i theta}) - f(e^{i phi})] / tan((theta-phi)/2)

over (-pi, pi], and any circle rule can be applied to the integrand.  Doing
so naively breaks down whenever a node drifts close to phi, so the
production evaluators prescribe the node theta_p = phi + pi/(4n): the Szego
rule then keeps all nodes at least pi/(4n) away from phi and the companion
anti-Szego rule at least 3pi/(4n).  Averaging the two gives the most
accurate value, and half their difference is an a-posteriori error estimate.

Everything here is pure; grid evaluation is order-independent, and the
summation inside one rule application is exactly rounded (fsum), so results
are reproducible bit for bit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .angles import normalize_angles
from .errors import GridEvalError, InvalidN, NodeTooCloseToSingularity
from .quadrature import (
    Integrand,
    QuadratureRule,
    RuleKind,
    Tau,
    TauLike,
    as_tau,
    build_anti_szego,
    build_szego,
    fsum_complex,
    integrand_values,
    tau_prescribed,
)

#: Below this cyclic node distance a nonzero subtracted quotient is pure noise.
NAIVE_DISTANCE_FLOOR = 1e-13


class Mode(enum.Enum):
    NAIVE_SZEGO = "naive"
    NAIVE_ANTI = "naive-anti"
    PRESCRIBED_SZEGO = "szego"
    PRESCRIBED_ANTI = "anti"
    AVERAGED = "averaged"


@dataclass(frozen=True)
class SingularityGuard:
    """Smallest cyclic node distance from phi, with the mode's guaranteed floor."""

    min_distance: float
    threshold: float


@dataclass(frozen=True)
class HilbertResult:
    value: complex
    error_estimate: complex | None
    n: int
    phi: float
    mode: Mode
    guard: SingularityGuard


def _subtracted_sum(
    f: Integrand, phi: float, rule: QuadratureRule, floor: float | None = None
) -> tuple[complex, float]:
    """Rule applied to the subtracted integrand; also returns min node distance.

    Terms whose numerator is exactly zero contribute zero (so constants give
    an exact 0 even when a node coincides with phi).  With `floor` set, a
    node closer than that to phi with a *nonzero* numerator raises instead
    of polluting the sum.
    """
    theta = rule.node_angles
    gaps = normalize_angles(theta - phi)  # wrap before halving keeps tan well conditioned
    min_distance = float(np.min(np.abs(gaps)))
    f_phi = complex(np.asarray(f(np.asarray(phi, dtype=float)), dtype=complex))
    numerators = integrand_values(f, theta) - f_phi
    live = numerators != 0
    if floor is not None:
        contaminated = live & (np.abs(gaps) < floor)
        if np.any(contaminated):
            raise NodeTooCloseToSingularity(
                phi, float(np.min(np.abs(gaps[contaminated]))), floor
            )
    terms = np.zeros_like(numerators)
    terms[live] = numerators[live] / np.tan(gaps[live] / 2.0)
    return fsum_complex(terms) / rule.n, min_distance


def _naive_eval(
    f: Integrand, phi: float, n: int, tau: TauLike, kind: RuleKind
) -> tuple[complex, float]:
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    build = build_szego if kind is RuleKind.SZEGO else build_anti_szego
    rule = build(n, as_tau(tau))
    return _subtracted_sum(f, phi, rule, floor=NAIVE_DISTANCE_FLOOR)


def hilbert_naive(
    f: Integrand,
    phi: float,
    n: int,
    tau: TauLike = 1,
    kind: RuleKind = RuleKind.SZEGO,
) -> complex:
    """Subtracted-singularity sum over a plain rule, with no node placement.

    Raises NodeTooCloseToSingularity when a node comes within 1e-13 rad of
    phi; above that floor the value is returned as computed, unstable or not.
    """
    value, _ = _naive_eval(f, phi, n, tau, kind)
    return value


@dataclass(frozen=True)
class _PrescribedPair:
    szego: QuadratureRule
    anti: QuadratureRule
    value_szego: complex
    value_anti: complex
    dist_szego: float
    dist_anti: float

    @property
    def estimate(self) -> complex:
        return 0.5 * (self.value_anti - self.value_szego)


def _prescribed_pair(f: Integrand, phi: float, n: int) -> _PrescribedPair:
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    tau = tau_prescribed(phi + math.pi / (4 * n), n)
    szego = build_szego(n, tau)
    anti = build_anti_szego(n, tau)
    vs, ds = _subtracted_sum(f, phi, szego)
    va, da = _subtracted_sum(f, phi, anti)
    return _PrescribedPair(szego, anti, vs, va, ds, da)


def hilbert_prescribed(f: Integrand, phi: float, n: int) -> HilbertResult:
    """Szego evaluation with the node prescribed at phi + pi/(4n)."""
    pair = _prescribed_pair(f, phi, n)
    guard = SingularityGuard(pair.dist_szego, math.pi / (4 * n))
    return HilbertResult(pair.value_szego, pair.estimate, n, phi, Mode.PRESCRIBED_SZEGO, guard)


def hilbert_anti_prescribed(f: Integrand, phi: float, n: int) -> HilbertResult:
    """Anti-Szego companion of :func:`hilbert_prescribed`; nodes stay 3pi/(4n) away."""
    pair = _prescribed_pair(f, phi, n)
    guard = SingularityGuard(pair.dist_anti, 3 * math.pi / (4 * n))
    return HilbertResult(pair.value_anti, pair.estimate, n, phi, Mode.PRESCRIBED_ANTI, guard)


def hilbert_averaged(f: Integrand, phi: float, n: int) -> HilbertResult:
    """Mean of the two prescribed evaluations, with the half-difference estimate."""
    pair = _prescribed_pair(f, phi, n)
    guard = SingularityGuard(min(pair.dist_szego, pair.dist_anti), math.pi / (4 * n))
    value = 0.5 * (pair.value_szego + pair.value_anti)
    return HilbertResult(value, pair.estimate, n, phi, Mode.AVERAGED, guard)


def full_transform(f: Integrand, phi: float, n: int) -> complex:
    """Averaged transform value plus i times the averaged mean integral.

    Both parts reuse one evaluation of f per node of the prescribed pair.
    """
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    tau = tau_prescribed(phi + math.pi / (4 * n), n)
    szego = build_szego(n, tau)
    anti = build_anti_szego(n, tau)
    f_phi = complex(np.asarray(f(np.asarray(phi, dtype=float)), dtype=complex))

    def parts(rule: QuadratureRule) -> tuple[complex, complex]:
        values = integrand_values(f, rule.node_angles)
        gaps = normalize_angles(rule.node_angles - phi)
        hilbert = fsum_complex((values - f_phi) / np.tan(gaps / 2.0)) / rule.n
        mean = fsum_complex(values) / rule.n
        return hilbert, mean

    hs, ms = parts(szego)
    ha, ma = parts(anti)
    return 0.5 * (hs + ha) + 1j * (0.5 * (ms + ma))


_EVALUATORS = {
    Mode.PRESCRIBED_SZEGO: hilbert_prescribed,
    Mode.PRESCRIBED_ANTI: hilbert_anti_prescribed,
    Mode.AVERAGED: hilbert_averaged,
}


def eval_grid(
    f: Integrand,
    phis: Sequence[float],
    n: int,
    modes: Iterable[Mode],
    tau: TauLike = 1,
) -> list[HilbertResult]:
    """One result per (phi, mode), in phi-major order.

    Failures are re-raised as GridEvalError naming the offending angle.
    The naive modes use `tau` (default 1).
    """
    if len(phis) == 0:
        raise ValueError("phis must be nonempty")
    modes = list(modes)
    out: list[HilbertResult] = []
    for phi in phis:
        phi = float(phi)
        for mode in modes:
            try:
                if mode in _EVALUATORS:
                    out.append(_EVALUATORS[mode](f, phi, n))
                else:
                    kind = RuleKind.SZEGO if mode is Mode.NAIVE_SZEGO else RuleKind.ANTI_SZEGO
                    value, dist = _naive_eval(f, phi, n, tau, kind)
                    guard = SingularityGuard(dist, NAIVE_DISTANCE_FLOOR)
                    out.append(HilbertResult(value, None, n, phi, mode, guard))
            except Exception as exc:
                raise GridEvalError(phi, mode, exc) from exc
    return out
