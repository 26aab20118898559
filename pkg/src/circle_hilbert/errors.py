"""Exception hierarchy shared by the quadrature, transform, and CLI layers."""
from __future__ import annotations


class CircleHilbertError(Exception):
    """Base class for all errors raised by this package."""


class InvalidN(CircleHilbertError):
    """The requested number of quadrature points is out of range."""


class TauNotUnimodular(CircleHilbertError):
    """A complex rule parameter deviates from the unit circle by more than 1e-12."""


class RuleMismatch(CircleHilbertError):
    """Two rules that must share size or parameter do not."""


class NodeTooCloseToSingularity(CircleHilbertError):
    """A quadrature node lies within the hard floor distance of the evaluation point."""

    def __init__(self, phi: float, distance: float, floor: float):
        self.phi = phi
        self.distance = distance
        self.floor = floor
        super().__init__(
            f"node at cyclic distance {distance:.3e} rad from phi={phi!r} "
            f"(floor {floor:.1e})"
        )


class NoConvergence(CircleHilbertError):
    """Iterative refinement stalled before reaching the requested tolerance."""


class GridEvalError(CircleHilbertError):
    """Evaluation failed at one point of a grid; carries the offending angle."""

    def __init__(self, phi: float, mode: object, cause: Exception):
        self.phi = phi
        self.mode = mode
        super().__init__(f"evaluation failed at phi={phi!r} (mode {mode}): {cause}")


class ExprError(CircleHilbertError):
    """Base class for integrand-expression errors."""


class ExprSyntaxError(ExprError):
    """Malformed expression source; carries position and the expected token set."""

    def __init__(self, position: int, message: str, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        suffix = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"syntax error at position {position}: {message}{suffix}")


class UnknownIdentifier(ExprError):
    """An identifier does not resolve to a known function or variable."""

    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown identifier {name!r} at position {position}")


class UnknownBuiltin(ExprError):
    """Requested built-in integrand name is not in the catalog."""


class DomainError(ExprError):
    """Evaluation hit a point outside a function's domain (e.g. ln(0))."""
