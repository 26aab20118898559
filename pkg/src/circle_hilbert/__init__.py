"""Szego and anti-Szego quadrature on the unit circle, prescribed-node rules
for the circular Hilbert transform, averaged rules with a-posteriori error
estimates, and the supporting oracles and integrand mini-language."""

from .angles import cyclic_distance, normalize_angle
from .errors import (
    CircleHilbertError,
    DomainError,
    ExprSyntaxError,
    GridEvalError,
    InvalidN,
    NoConvergence,
    NodeTooCloseToSingularity,
    RuleMismatch,
    TauNotUnimodular,
    UnknownBuiltin,
    UnknownIdentifier,
)
from .expr import builtin, compile_integrand, eval_expr, parse, pretty
from .hilbert import (
    HilbertResult,
    Mode,
    SingularityGuard,
    eval_grid,
    full_transform,
    hilbert_anti_prescribed,
    hilbert_averaged,
    hilbert_naive,
    hilbert_prescribed,
)
from .quadrature import (
    HessenbergMatrix,
    Integrand,
    LaurentPolynomial,
    QuadratureRule,
    RuleKind,
    Tau,
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
from .reference import (
    IntervalKind,
    IntervalRule,
    anti_gauss,
    apply_interval,
    gauss_chebyshev,
    mean_integral_ref,
    pv_oracle,
)

__all__ = [
    "CircleHilbertError",
    "DomainError",
    "ExprSyntaxError",
    "GridEvalError",
    "HessenbergMatrix",
    "HilbertResult",
    "Integrand",
    "IntervalKind",
    "IntervalRule",
    "InvalidN",
    "LaurentPolynomial",
    "Mode",
    "NoConvergence",
    "NodeTooCloseToSingularity",
    "QuadratureRule",
    "RuleKind",
    "RuleMismatch",
    "SingularityGuard",
    "Tau",
    "TauNotUnimodular",
    "UnknownBuiltin",
    "UnknownIdentifier",
    "anti_gauss",
    "apply_interval",
    "apply_rule",
    "averaged_apply",
    "build_anti_szego",
    "build_szego",
    "builtin",
    "check_interlace",
    "compile_integrand",
    "cyclic_distance",
    "estimate_error",
    "eval_expr",
    "eval_grid",
    "eval_laurent",
    "eval_para_orthogonal",
    "full_transform",
    "gauss_chebyshev",
    "hessenberg",
    "hilbert_anti_prescribed",
    "hilbert_averaged",
    "hilbert_naive",
    "hilbert_prescribed",
    "mean_integral_ref",
    "normalize_angle",
    "parse",
    "pretty",
    "pv_oracle",
    "tau_prescribed",
]

__version__ = "0.1.0"
