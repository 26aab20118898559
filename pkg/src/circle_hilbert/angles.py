"""Angle arithmetic on the circle, normalized to the half-open interval (-pi, pi].

All angles in this package live in (-pi, pi], with the seam resolved
deterministically to +pi.  Quadrature nodes are *generated* as angles, never
recovered from complex coordinates, so that the defining phase relations
(e.g. n*theta = arg(-tau) mod 2*pi) hold to within about one ulp of the
stored double.  Plain double arithmetic is not enough for that: the residual
of exp(i*n*theta_k) against the rule parameter is amplified by n, and at
n = 4096 a half-ulp placement error already costs ~9e-13.  The node
generator below therefore evaluates (base + 2*pi*j)/n with an exact
double-double representation of 2*pi and a corrected division, keeping the
amplified residual under 1e-12 for n up to 4096.
"""
from __future__ import annotations

import math

import numpy as np

TWO_PI = 6.283185307179586
# 2*pi - TWO_PI, so TWO_PI + TWO_PI_LO carries 2*pi to ~1e-32
TWO_PI_LO = 2.4492935982947064e-16
PI = 3.141592653589793
PI_LO = 1.2246467991473532e-16

_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp split constant


def _split(x: float) -> tuple[float, float]:
    c = _SPLITTER * x
    hi = c - (c - x)
    return hi, x - hi


_TP_HI, _TP_LO = _split(TWO_PI)


def normalize_angle(x: float) -> float:
    """Reduce x modulo 2*pi into (-pi, pi]; idempotent on its own output."""
    r = math.remainder(x, TWO_PI)
    if r <= -PI:
        r += TWO_PI
    return r


def normalize_angles(x: np.ndarray) -> np.ndarray:
    """Vector version of :func:`normalize_angle`."""
    y = np.remainder(np.asarray(x, dtype=float) + PI, TWO_PI) - PI
    y[y <= -PI] += TWO_PI
    return y


def cyclic_distance(a: float, b: float) -> float:
    """Shortest angular distance between a and b, in [0, pi]."""
    return abs(normalize_angle(a - b))


def cyclic_distances(a: np.ndarray, b: float) -> np.ndarray:
    return np.abs(normalize_angles(np.asarray(a, dtype=float) - b))


def _angle_at(base_terms: tuple[float, ...], j: int, n: int) -> float:
    """(sum(base_terms) + 2*pi*j)/n with ~0.5 ulp total error.

    base_terms and the split products j*2pi are summed exactly by fsum;
    the division by n is then refined with one Newton correction so the
    quotient is correctly rounded.  Exactness of j*_TP_HI and j*_TP_LO
    requires |j| below 2**26.
    """
    terms = list(base_terms)
    terms.extend((j * _TP_HI, j * _TP_LO, j * TWO_PI_LO))
    q = math.fsum(terms) / n
    qh, ql = _split(q)
    terms.extend((-(qh * n), -(ql * n)))
    r = math.fsum(terms)
    return q + r / n


def phase_division_angles(base_terms: tuple[float, ...], n: int) -> np.ndarray:
    """Sorted angles {(B + 2*pi*j)/n mod 2*pi : j integer}, B = sum(base_terms).

    These are the n distinct solutions of n*theta = B (mod 2*pi), each
    normalized into (-pi, pi] and accurate to about one ulp.
    """
    out = np.empty(n)
    for i in range(n):
        j = i - n // 2
        t = _angle_at(base_terms, j, n)
        while t > PI:
            j -= n
            t = _angle_at(base_terms, j, n)
        while t <= -PI:
            j += n
            t = _angle_at(base_terms, j, n)
        out[i] = t
    out.sort()
    return out


def scaled_angle_mod_2pi(theta: float, n: int, extra: tuple[float, ...] = ()) -> float:
    """(n*theta + sum(extra)) reduced into (-pi, pi], with compensated arithmetic.

    Used to place n*theta_p + pi accurately when a node is prescribed; the
    plain product n*theta loses up to eps*n*pi of phase before reduction.
    """
    th, tl = _split(theta)
    terms = [n * th, n * tl, *extra]
    s = math.fsum(terms)
    m = round(s / TWO_PI)
    for shift in (m, m + 1, m - 1):
        r = math.fsum(terms + [-(shift * _TP_HI), -(shift * _TP_LO), -(shift * TWO_PI_LO)])
        if -PI < r <= PI:
            return r
    # |s| within one period of a seam; the loop above always terminates for
    # finite inputs, this is unreachable in practice
    return normalize_angle(s)
