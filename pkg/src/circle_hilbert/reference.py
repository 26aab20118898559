"""Independent cross-checks: interval rules on [-1,1], a brute-force principal
value integrator, and a spectrally accurate mean-integral reference.

The interval rules target the Chebyshev-weighted integral in its
1/(2pi)-normalized form

    I(g) = (1/2pi) * integral of g(x)/sqrt(1-x^2) over [-1, 1],

so I(1) = 1/2 and every rule's weights sum to 1/2.  The (n+1)-point
companion rule at the extrema cos(j*pi/n) is fixed by the defining property
rule(g) = 2*I(g) - gauss(g) on polynomials up to degree 2n+1, which forces
weights 1/(4n) at the two endpoints and 1/(2n) inside.  (Assigning the
larger weight to the endpoints instead fails the defining property already
for g = 1 at n = 2: the weights then sum to 5/8, not 1/2.)

None of this shares code with the circle-rule construction; nodes here come
from plain cosine evaluations and the integrators below use their own panel
machinery, so these routines can serve as oracles for the quadrature and
hilbert modules.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidN, NoConvergence
from .quadrature import Integrand, fsum_complex, integrand_values


class IntervalKind(enum.Enum):
    GAUSS_CHEBYSHEV = "gauss-chebyshev"
    ANTI_GAUSS = "anti-gauss"


@dataclass(frozen=True)
class IntervalRule:
    kind: IntervalKind
    node_xs: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.node_xs.flags.writeable = False
        self.weights.flags.writeable = False


def gauss_chebyshev(n: int) -> IntervalRule:
    """n nodes cos((2j-1)pi/(2n)), equal normalized weights 1/(2n)."""
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    j = np.arange(n, 0, -1)  # descending j gives ascending cos
    xs = np.cos((2 * j - 1) * np.pi / (2 * n))
    ws = np.full(n, 1.0 / (2 * n))
    return IntervalRule(IntervalKind.GAUSS_CHEBYSHEV, xs, ws)


def anti_gauss(n: int) -> IntervalRule:
    """n+1 nodes cos(j*pi/n), j = 0..n; weights 1/(4n) at +-1, 1/(2n) inside."""
    if n < 2:
        raise InvalidN(f"companion rule needs n >= 2, got {n}")
    j = np.arange(n, -1, -1)
    xs = np.cos(j * np.pi / n)
    ws = np.full(n + 1, 1.0 / (2 * n))
    ws[0] = ws[-1] = 1.0 / (4 * n)
    return IntervalRule(IntervalKind.ANTI_GAUSS, xs, ws)


def apply_interval(rule: IntervalRule, F) -> complex:
    """sum of w_j F(x_j)."""
    values = np.asarray(F(rule.node_xs), dtype=complex)
    if values.shape != rule.node_xs.shape:
        values = np.broadcast_to(values, rule.node_xs.shape)
    return fsum_complex(rule.weights * values)


def mean_integral_ref(f: Integrand, m: int) -> complex:
    """m-point periodic trapezoidal value of (1/2pi) * integral of f(e^{i theta}).

    Spectrally accurate for smooth periodic f.  Uses its own equispaced
    angles, independent of the circle-rule node generator.
    """
    if m < 1:
        raise InvalidN(f"m must be >= 1, got {m}")
    theta = -np.pi + 2.0 * np.pi * np.arange(m) / m
    return fsum_complex(integrand_values(f, theta)) / m


# -- brute-force principal value integrator ---------------------------------

_PATCH_HALF_WIDTH = 1e-3  # rad; Taylor remainder of the patch stays O(h^3)
_DERIV_STEP = 1e-5
_GL_POINTS = 8
_MAX_PANELS = 1 << 16


def _scalar(f: Integrand, theta: float) -> complex:
    return complex(np.asarray(f(np.asarray(theta, dtype=float)), dtype=complex))


def _first_derivative(f: Integrand, phi: float, h: float = _DERIV_STEP) -> complex:
    """Richardson-extrapolated central difference of theta -> f(e^{i theta})."""
    d_h = (_scalar(f, phi + h) - _scalar(f, phi - h)) / (2 * h)
    d_h2 = (_scalar(f, phi + h / 2) - _scalar(f, phi - h / 2)) / h
    return (4 * d_h2 - d_h) / 3


def _third_difference(f: Integrand, phi: float, h: float) -> complex:
    return (
        _scalar(f, phi + 2 * h)
        - 2 * _scalar(f, phi + h)
        + 2 * _scalar(f, phi - h)
        - _scalar(f, phi - 2 * h)
    ) / (2 * h**3)


def _third_derivative(f: Integrand, phi: float, h: float = 4e-3) -> complex:
    d_h = _third_difference(f, phi, h)
    d_h2 = _third_difference(f, phi, h / 2)
    return (4 * d_h2 - d_h) / 3


def pv_oracle(f: Integrand, phi: float, tol: float = 1e-11) -> complex:
    """Adaptive composite quadrature of the subtracted Hilbert integrand.

    The removable singularity is patched on |theta - phi| < 1e-3 by the
    local Taylor model c0 + c1*u + c2*u^2 of the quotient, whose even terms
    integrate to 2*h*c0 + (2/3)*h^3*c2; c0 = 2 f'(phi) is the limit value,
    estimated by Richardson-extrapolated central differences (step 1e-5).
    Outside the patch, Gauss-Legendre panels over u in [h, 2pi - h] are
    doubled until two successive refinements agree within `tol`.
    """
    phi = float(phi)
    f_phi = _scalar(f, phi)
    d1 = _first_derivative(f, phi)
    c0 = 2.0 * d1
    c2 = _third_derivative(f, phi) / 3.0 - d1 / 6.0
    h = _PATCH_HALF_WIDTH
    window = (2 * h * c0 + (2.0 / 3.0) * h**3 * c2) / (2 * np.pi)

    gl_x, gl_w = np.polynomial.legendre.leggauss(_GL_POINTS)
    a, b = h, 2 * np.pi - h

    def refine(panels: int) -> complex:
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * (edges[1] - edges[0])
        mid = 0.5 * (edges[:-1] + edges[1:])
        u = (mid[:, None] + half * gl_x[None, :]).ravel()
        w = np.tile(gl_w * half, panels)
        values = (integrand_values(f, phi + u) - f_phi) / np.tan(u / 2.0)
        return fsum_complex(w * values) / (2 * np.pi)

    panels = 8
    previous = refine(panels)
    while panels < _MAX_PANELS:
        panels *= 2
        current = refine(panels)
        if abs(current - previous) <= tol:
            return window + current
        previous = current
    raise NoConvergence(
        f"panel refinement stalled at {panels} panels (phi={phi!r}, tol={tol:g})"
    )
