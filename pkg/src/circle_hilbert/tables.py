"""Grid-error and convergence-study protocol shared by the CLI subcommands.

A study evaluates the prescribed-node transforms on an equispaced grid of
100 angles in [-pi, pi) (half-open, so the periodic seam is not counted
twice), measures discrete max-norm errors against a self-convergent
reference (the averaged evaluator at a large n_ref, 1024 by default), and
alongside them tracks the plain mean-integral errors of the Szego and
anti-Szego rules at a fixed tau together with the half-difference estimate.

The built-in examples pin the fixed tau per integrand (catalog below); for
ad-hoc studies it defaults to 1.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NoConvergence
from .hilbert import _prescribed_pair, hilbert_naive
from .quadrature import (
    Integrand,
    RuleKind,
    Tau,
    as_tau,
    averaged_apply,
    apply_rule,
    build_anti_szego,
    build_szego,
)

PHI_GRID_SIZE = 100
DEFAULT_N_REF = 1024
#: Max allowed disagreement between the reference and its half-resolution run.
REFERENCE_CONVERGENCE_TOL = 1e-6

CSV_HEADER = "n,eps,eps_anti,eps_avg,rn_max,e_mean,e_mean_anti,e_mean_avg,Rn"


def phi_grid(count: int = PHI_GRID_SIZE) -> np.ndarray:
    """count equispaced angles in the half-open interval [-pi, pi)."""
    return -np.pi + 2.0 * np.pi * np.arange(count) / count


@dataclass(frozen=True)
class ConvergenceRow:
    """Per-n grid errors (max norm over the phi grid) and mean-integral errors."""

    n: int
    eps: float
    eps_anti: float
    eps_avg: float
    rn_max: float
    e_mean: complex
    e_mean_anti: complex
    e_mean_avg: complex
    big_r: complex


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of one convergence study."""

    source: str
    n_list: tuple[int, ...]
    phis: tuple[float, ...]
    n_ref: int
    tau_mean: Tau
    output_format: str = "text"
    out_path: str | None = None

    def __post_init__(self):
        if not self.n_list:
            raise ValueError("n_list must be nonempty")
        if self.n_ref <= max(self.n_list):
            raise ValueError(
                f"n_ref ({self.n_ref}) must exceed every study size (max {max(self.n_list)})"
            )


def reference_values(f: Integrand, phis: Sequence[float], n_ref: int) -> np.ndarray:
    """Averaged-evaluator values at n_ref, checked against n_ref/2 for convergence."""
    full = np.array([_averaged_value(f, phi, n_ref) for phi in phis])
    if n_ref >= 4:
        half = np.array([_averaged_value(f, phi, n_ref // 2) for phi in phis])
        drift = float(np.max(np.abs(full - half)))
        if drift > REFERENCE_CONVERGENCE_TOL:
            raise NoConvergence(
                f"reference at n={n_ref} still moving by {drift:.3e} "
                f"against n={n_ref // 2}"
            )
    return full


def _averaged_value(f: Integrand, phi: float, n: int) -> complex:
    pair = _prescribed_pair(f, float(phi), n)
    return 0.5 * (pair.value_szego + pair.value_anti)


def convergence_rows(f: Integrand, config: RunConfig) -> list[ConvergenceRow]:
    phis = config.phis
    ref = reference_values(f, phis, config.n_ref)
    tau = config.tau_mean
    mean_ref = averaged_apply(
        build_szego(config.n_ref, tau), build_anti_szego(config.n_ref, tau), f
    )
    rows = []
    for n in config.n_list:
        eps = eps_anti = eps_avg = rn_max = 0.0
        for phi, hf in zip(phis, ref):
            pair = _prescribed_pair(f, float(phi), n)
            avg = 0.5 * (pair.value_szego + pair.value_anti)
            eps = max(eps, abs(pair.value_szego - hf))
            eps_anti = max(eps_anti, abs(pair.value_anti - hf))
            eps_avg = max(eps_avg, abs(avg - hf))
            rn_max = max(rn_max, abs(pair.estimate))
        szego = build_szego(n, tau)
        anti = build_anti_szego(n, tau)
        s = apply_rule(szego, f)
        s_anti = apply_rule(anti, f)
        rows.append(
            ConvergenceRow(
                n=n,
                eps=eps,
                eps_anti=eps_anti,
                eps_avg=eps_avg,
                rn_max=rn_max,
                e_mean=mean_ref - s,
                e_mean_anti=mean_ref - s_anti,
                e_mean_avg=mean_ref - 0.5 * (s + s_anti),
                big_r=0.5 * (s_anti - s),
            )
        )
    return rows


# -- built-in example studies -------------------------------------------------

#: Fixed tau used for the mean-integral columns of each example study.
EXAMPLE_TAU: dict[int, complex] = {
    1: 1,
    2: -1,
    3: cmath.exp(2j * math.pi / 3),
    4: 1,
    5: 1,
}

EXAMPLE_FUNCTION = {1: "f0", 2: "f1", 3: "f2", 4: "f3", 5: "f4"}

EXAMPLE_N_LISTS: dict[int, tuple[int, ...]] = {
    1: (4, 8, 16),
    2: (4, 8, 16),
    3: (4, 8, 16, 32),
    4: (4, 8, 16, 32, 64, 128, 256),
    5: (8, 16, 32, 64, 128, 256),
}

#: Example 1 additionally tabulates raw values at these singular points.
EXAMPLE1_PHIS = (math.pi / 16, math.pi / 32)
EXAMPLE1_N_LIST = (4, 8, 16, 32, 64, 128, 256)


@dataclass(frozen=True)
class ValueRow:
    """Raw evaluator values at one (phi, n); None marks a guarded naive failure."""

    phi: float
    n: int
    naive_szego: complex | None
    naive_anti: complex | None
    prescribed_szego: complex
    prescribed_anti: complex


def example1_value_rows(f: Integrand) -> list[ValueRow]:
    rows = []
    for phi in EXAMPLE1_PHIS:
        for n in EXAMPLE1_N_LIST:
            naive: list[complex | None] = []
            for kind in (RuleKind.SZEGO, RuleKind.ANTI_SZEGO):
                try:
                    naive.append(hilbert_naive(f, phi, n, tau=as_tau(1), kind=kind))
                except Exception:
                    naive.append(None)
            pair = _prescribed_pair(f, phi, n)
            rows.append(
                ValueRow(phi, n, naive[0], naive[1], pair.value_szego, pair.value_anti)
            )
    return rows
