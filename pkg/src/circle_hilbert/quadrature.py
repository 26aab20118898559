"""Szego and anti-Szego quadrature for the normalized mean integral on the circle.

The n-point Szego rule for (1/2pi) * integral of f(e^{i theta}) d theta has
nodes at the zeros of z^n + tau (|tau| = 1) and equal weights 1/n; it is
exact on Laurent polynomials of degree up to n-1.  The companion anti-Szego
rule uses the zeros of z^n - tau and makes the opposite error on degree-n
terms, so the two rules bracket the integral and their mean

    (1/2) * (anti + szego)

is exact one degree higher, while half their difference estimates the Szego
rule's error.  Fixing tau = -e^{i n theta_p} forces e^{i theta_p} to be a
node (the Szego-Radau choice), which is what the Hilbert-transform layer
uses to keep nodes away from its singularity.

All rule types here are frozen and safe to share across workers; every
operation is a pure function of its arguments.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from .angles import (
    PI,
    PI_LO,
    TWO_PI,
    cyclic_distance,
    normalize_angle,
    phase_division_angles,
    scaled_angle_mod_2pi,
)
from .errors import InvalidN, RuleMismatch, TauNotUnimodular

#: Anything callable on an ndarray of angles theta, returning values of
#: f(e^{i theta}) broadcastable to theta's shape (real or complex).
Integrand = Callable[[np.ndarray], "np.ndarray | complex | float"]

_UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class Tau:
    """Unimodular rule parameter, stored as its argument so |tau| = 1 exactly."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", normalize_angle(float(self.alpha)))

    @classmethod
    def from_complex(cls, value: complex) -> "Tau":
        value = complex(value)
        if abs(abs(value) - 1.0) > _UNIMODULAR_TOL:
            raise TauNotUnimodular(f"|tau| = {abs(value)!r} is not 1 within 1e-12")
        return cls(cmath.phase(value))

    @property
    def value(self) -> complex:
        return cmath.exp(1j * self.alpha)

    def negated(self) -> "Tau":
        return Tau(self.alpha + PI)


TauLike = Union[Tau, complex, float, int]


def as_tau(tau: TauLike) -> Tau:
    if isinstance(tau, Tau):
        return tau
    return Tau.from_complex(tau)


class RuleKind(enum.Enum):
    SZEGO = "szego"
    ANTI_SZEGO = "anti-szego"


@dataclass(frozen=True)
class QuadratureRule:
    """Equal-weight rule with n uniformly spaced node angles in (-pi, pi].

    Szego nodes satisfy e^{i n theta_k} = -tau, anti-Szego nodes
    e^{i n theta_k} = +tau.  The weight is kept as the exact rational 1/n
    and expanded to floating point only when the rule is applied.
    """

    kind: RuleKind
    n: int
    tau: Tau
    node_angles: np.ndarray = field(repr=False)
    weight: Fraction

    def __post_init__(self):
        self.node_angles.flags.writeable = False

    def nodes(self) -> np.ndarray:
        """Node coordinates e^{i theta_k} on the unit circle."""
        return np.exp(1j * self.node_angles)


def _build(kind: RuleKind, n: int, tau: TauLike) -> QuadratureRule:
    if n < 1:
        raise InvalidN(f"rule size must be >= 1, got {n}")
    tau = as_tau(tau)
    if kind is RuleKind.SZEGO:
        # n*theta = alpha + pi (mod 2pi): zeros of z^n + tau
        base = (tau.alpha, PI, PI_LO)
    else:
        # n*theta = alpha (mod 2pi): zeros of z^n - tau
        base = (tau.alpha,)
    angles = phase_division_angles(base, n)
    return QuadratureRule(kind=kind, n=n, tau=tau, node_angles=angles, weight=Fraction(1, n))


def build_szego(n: int, tau: TauLike) -> QuadratureRule:
    """n-point Szego rule with nodes at the zeros of z^n + tau."""
    return _build(RuleKind.SZEGO, n, tau)


def build_anti_szego(n: int, tau: TauLike) -> QuadratureRule:
    """n-point anti-Szego rule with nodes at the zeros of z^n - tau."""
    return _build(RuleKind.ANTI_SZEGO, n, tau)


def tau_prescribed(theta_p: float, n: int) -> Tau:
    """Parameter tau = -e^{i n theta_p}, making e^{i theta_p} a Szego node."""
    if n < 1:
        raise InvalidN(f"rule size must be >= 1, got {n}")
    return Tau(scaled_angle_mod_2pi(theta_p, n, extra=(PI, PI_LO)))


def integrand_values(f: Integrand, theta: np.ndarray) -> np.ndarray:
    """Evaluate an integrand on an array of angles, broadcasting scalars."""
    values = np.asarray(f(theta), dtype=complex)
    if values.shape != theta.shape:
        values = np.broadcast_to(values, theta.shape)
    return values


def fsum_complex(values: np.ndarray) -> complex:
    """Exactly rounded sum of a complex array (real and imaginary parts)."""
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def apply_rule(rule: QuadratureRule, f: Integrand) -> complex:
    """(1/n) * sum of f(e^{i theta_k}) over the rule's nodes."""
    total = fsum_complex(integrand_values(f, rule.node_angles))
    return total / rule.n


def _check_pair(szego: QuadratureRule, anti: QuadratureRule) -> None:
    if szego.kind is not RuleKind.SZEGO or anti.kind is not RuleKind.ANTI_SZEGO:
        raise RuleMismatch("expected a (szego, anti-szego) pair")
    if szego.n != anti.n:
        raise RuleMismatch(f"rule sizes differ: {szego.n} != {anti.n}")
    if szego.tau.alpha != anti.tau.alpha:
        raise RuleMismatch("rules do not share the same tau")


def averaged_apply(szego: QuadratureRule, anti: QuadratureRule, f: Integrand) -> complex:
    """Mean of the anti-Szego and Szego results; exact on degree-n Laurent terms."""
    _check_pair(szego, anti)
    return 0.5 * (apply_rule(anti, f) + apply_rule(szego, f))


def estimate_error(szego: QuadratureRule, anti: QuadratureRule, f: Integrand) -> complex:
    """Half the anti-Szego minus Szego difference: an estimate of the Szego error."""
    _check_pair(szego, anti)
    return 0.5 * (apply_rule(anti, f) - apply_rule(szego, f))


def eval_para_orthogonal(n: int, tau: TauLike, z: complex) -> complex:
    """z^n + tau, whose zeros on the circle are the Szego nodes."""
    return z**n + as_tau(tau).value


@dataclass(frozen=True)
class HessenbergMatrix:
    """Unitary companion matrix whose eigenvalues are the Szego nodes.

    The first row is (0, ..., 0, -tau); rows 2..n carry the identity block
    in columns 1..n-1.  Its characteristic polynomial is z^n + tau, and
    M^n = -tau * I.
    """

    n: int
    tau: Tau
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries.flags.writeable = False


def hessenberg(n: int, tau: TauLike) -> HessenbergMatrix:
    if n < 2:
        raise InvalidN(f"companion matrix needs n >= 2, got {n}")
    tau = as_tau(tau)
    m = np.zeros((n, n), dtype=complex)
    m[0, n - 1] = -tau.value
    m[1:, : n - 1] = np.eye(n - 1)
    return HessenbergMatrix(n=n, tau=tau, entries=m)


def check_interlace(a: QuadratureRule, b: QuadratureRule) -> bool:
    """True iff each cyclic arc between consecutive nodes of `a` contains
    exactly one node of `b`, strictly inside."""
    if a.n != b.n:
        raise RuleMismatch(f"node counts differ: {a.n} != {b.n}")
    ta = a.node_angles
    tb = b.node_angles
    if np.isin(tb, ta).any():
        return False
    # arc index of each b-node among a's sorted angles (arc i spans
    # (ta[i-1], ta[i]), with arc 0 wrapping past the seam)
    arcs = np.searchsorted(ta, tb) % a.n
    return len(np.unique(arcs)) == a.n


@dataclass(frozen=True)
class LaurentPolynomial:
    """sum of c_k z^k for k = -m..m; callable as an integrand in theta."""

    coeffs: np.ndarray = field(repr=False)  # ordered k = -m..m

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coefficients must be a 1-d array of odd length")
        object.__setattr__(self, "coeffs", c)
        self.coeffs.flags.writeable = False

    @classmethod
    def from_terms(cls, terms: dict[int, complex]) -> "LaurentPolynomial":
        m = max((abs(k) for k in terms), default=0)
        c = np.zeros(2 * m + 1, dtype=complex)
        for k, v in terms.items():
            c[k + m] = v
        return cls(c)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        ks = np.arange(-self.degree, self.degree + 1)
        return np.exp(1j * np.multiply.outer(theta, ks)) @ self.coeffs


def eval_laurent(p: LaurentPolynomial, theta: float) -> complex:
    """sum of c_k e^{i k theta}."""
    return complex(p(np.asarray(theta, dtype=float)))
