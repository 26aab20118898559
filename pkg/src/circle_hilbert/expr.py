"""Mini-language for integrands theta -> f(e^{i theta}), plus the built-in catalog.

Grammar (recursive descent, `^` right-associative, unary minus binding
tighter than the left operand of `^`):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' factor)?
    unary  := '-' unary | atom
    atom   := number | 'theta' | 'i' | ident '(' expr ')' | '(' expr ')'

Evaluation is complex throughout: `abs` returns the modulus embedded in the
complex plane (so abs(...)^p is an ordinary real power and stays real), `ln`
is the principal branch and only ln(0) is an error, `re`/`im`/`conj` act
componentwise.  The variable is the angle `theta`; a caller wanting the
circle coordinate writes cos(theta) + i*sin(theta).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ExprSyntaxError, UnknownBuiltin, UnknownIdentifier

FUNCTIONS = ("sin", "cos", "tan", "exp", "ln", "abs", "sqrt", "re", "im", "conj")


class TokenKind(enum.Enum):
    NUMBER = "number"
    IDENT = "ident"
    OP = "op"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    pos: int


_SINGLE = {"(": TokenKind.LPAREN, ")": TokenKind.RPAREN, ",": TokenKind.COMMA}
_OPS = "+-*/^"
_DIGITS = "0123456789"  # ASCII only; str.isdigit accepts unicode digits float() rejects


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    i, size = 0, len(src)
    while i < size:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i))
            i += 1
        elif ch in _OPS:
            tokens.append(Token(TokenKind.OP, ch, i))
            i += 1
        elif ch in _DIGITS:
            start = i
            while i < size and src[i] in _DIGITS:
                i += 1
            if i < size and src[i] == "." and i + 1 < size and src[i + 1] in _DIGITS:
                i += 1
                while i < size and src[i] in _DIGITS:
                    i += 1
            if i < size and src[i] in "eE":
                j = i + 1
                if j < size and src[j] in "+-":
                    j += 1
                if j < size and src[j] in _DIGITS:
                    i = j
                    while i < size and src[i] in _DIGITS:
                        i += 1
            tokens.append(Token(TokenKind.NUMBER, src[start:i], start))
        elif ch.isalpha() or ch == "_":
            start = i
            while i < size and (src[i].isalnum() or src[i] == "_"):
                i += 1
            tokens.append(Token(TokenKind.IDENT, src[start:i], start))
        else:
            raise ExprSyntaxError(i, f"unexpected character {ch!r}")
    return tokens


# -- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, ImagUnit, Var, Neg, BinOp, Call]


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, expected: tuple[str, ...]) -> ExprSyntaxError:
        tok = self.peek()
        pos = tok.pos if tok is not None else len(self.src)
        return ExprSyntaxError(pos, message, expected)

    def parse(self) -> Expr:
        if not self.tokens:
            raise ExprSyntaxError(0, "empty expression", ("expression",))
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprSyntaxError(tok.pos, f"unexpected {tok.text!r} after expression")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while (tok := self.peek()) and tok.kind is TokenKind.OP and tok.text in "+-":
            self.advance()
            node = BinOp(tok.text, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while (tok := self.peek()) and tok.kind is TokenKind.OP and tok.text in "*/":
            self.advance()
            node = BinOp(tok.text, node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.unary()
        tok = self.peek()
        if tok and tok.kind is TokenKind.OP and tok.text == "^":
            self.advance()
            node = BinOp("^", node, self.factor())
        return node

    def unary(self) -> Expr:
        tok = self.peek()
        if tok and tok.kind is TokenKind.OP and tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.fail("unexpected end of input", ("number", "theta", "i", "function", "("))
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Num(float(tok.text))
        if tok.kind is TokenKind.IDENT:
            self.advance()
            if tok.text == "theta":
                return Var()
            if tok.text == "i":
                return ImagUnit()
            if tok.text not in FUNCTIONS:
                raise UnknownIdentifier(tok.text, tok.pos)
            self.expect(TokenKind.LPAREN, "(")
            arg = self.expr()
            self.expect(TokenKind.RPAREN, ")")
            return Call(tok.text, arg)
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            node = self.expr()
            self.expect(TokenKind.RPAREN, ")")
            return node
        raise self.fail(f"unexpected {tok.text!r}", ("number", "theta", "i", "function", "("))

    def expect(self, kind: TokenKind, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            raise self.fail(f"expected {text!r}", (text,))
        return self.advance()


def parse(src: str) -> Expr:
    """Parse an integrand expression; raises ExprSyntaxError or UnknownIdentifier."""
    return _Parser(src).parse()


# -- evaluation --------------------------------------------------------------


def _as_complex_array(x) -> np.ndarray:
    return np.asarray(x, dtype=complex)


def _principal(v: np.ndarray) -> np.ndarray:
    """Clear negative-zero imaginary parts so branch cuts resolve upward
    (ln(-1) = i pi, sqrt(-1) = i) even after unary negation of reals."""
    return np.where(v.imag == 0.0, v.real + 0.0j, v)


def _apply_function(name: str, v: np.ndarray) -> np.ndarray:
    if name == "sin":
        return np.sin(v)
    if name == "cos":
        return np.cos(v)
    if name == "tan":
        return np.tan(v)
    if name == "exp":
        return np.exp(v)
    if name == "ln":
        if np.any(v == 0):
            raise DomainError("ln(0) is undefined")
        return np.log(_principal(v))
    if name == "abs":
        return _as_complex_array(np.abs(v))
    if name == "sqrt":
        return np.sqrt(_principal(v))
    if name == "re":
        return _as_complex_array(v.real)
    if name == "im":
        return _as_complex_array(v.imag)
    return np.conj(v)  # conj


def _pow(base: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    base = _principal(base)
    zero = base == 0
    if not np.any(zero):
        return base**exponent
    if np.any(zero & (exponent.real < 0)):
        raise DomainError("zero base with negative exponent")
    # 0^w with Re(w) > 0 is 0, 0^0 is 1; numpy's complex power yields nan here
    out = np.where(zero, 0.0 + 0.0j, np.where(zero, 1.0 + 0.0j, base) ** exponent)
    return np.where(zero & (exponent == 0), 1.0 + 0.0j, out)


def _eval(node: Expr, theta: np.ndarray) -> np.ndarray:
    if isinstance(node, Num):
        return np.broadcast_to(_as_complex_array(node.value), theta.shape)
    if isinstance(node, ImagUnit):
        return np.broadcast_to(_as_complex_array(1j), theta.shape)
    if isinstance(node, Var):
        return _as_complex_array(theta)
    if isinstance(node, Neg):
        return -_eval(node.operand, theta)
    if isinstance(node, Call):
        return _apply_function(node.func, _eval(node.arg, theta))
    left = _eval(node.left, theta)
    right = _eval(node.right, theta)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        if np.any(right == 0):
            raise DomainError("division by zero")
        return left / right
    return _pow(left, right)  # ^


def eval_expr(e: Expr, theta) -> complex:
    """Value of the expression at a single angle, under complex arithmetic."""
    return complex(_eval(e, np.asarray(float(theta))))


def compile_integrand(e: Expr):
    """Vectorized closure suitable as an Integrand for the quadrature layer."""

    def f(theta: np.ndarray) -> np.ndarray:
        return _eval(e, np.asarray(theta, dtype=float))

    return f


# -- pretty printing ---------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _print(node: Expr) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, ImagUnit):
        return "i"
    if isinstance(node, Var):
        return "theta"
    if isinstance(node, Neg):
        inner = _print(node.operand)
        if isinstance(node.operand, BinOp):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Call):
        return f"{node.func}({_print(node.arg)})"
    p = _PRECEDENCE[node.op]
    left = _print(node.left)
    right = _print(node.right)
    if node.op == "^":
        if isinstance(node.left, BinOp):
            left = f"({left})"
        if isinstance(node.right, BinOp) and node.right.op != "^":
            right = f"({right})"
    else:
        if isinstance(node.left, BinOp) and _PRECEDENCE[node.left.op] < p:
            left = f"({left})"
        if isinstance(node.right, BinOp) and _PRECEDENCE[node.right.op] <= p:
            right = f"({right})"
    return f"{left} {node.op} {right}" if p == 1 else f"{left}{node.op}{right}"


def pretty(e: Expr) -> str:
    """Canonical source form; parse(pretty(e)) prints back to the same string."""
    return _print(e)


# -- built-in catalog --------------------------------------------------------

CATALOG: dict[str, str] = {
    "f0": "exp(2*cos(theta))",
    "f1": "ln(3/2 + cos(theta)/2)",
    "f2": "ln(5 + 4*cos(theta))",
    "f3": "abs(1 + cos(theta))^(5/2)",
    "f4": "abs(sin(theta))^(7/2)",
}


def builtin(name: str) -> Expr:
    """Parsed catalog integrand; raises UnknownBuiltin for anything else."""
    try:
        source = CATALOG[name]
    except KeyError:
        raise UnknownBuiltin(f"no built-in named {name!r}; known: {sorted(CATALOG)}") from None
    return parse(source)
