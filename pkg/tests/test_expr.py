"""Parser, evaluator, printer round-trip, and catalog identities."""
import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circle_hilbert import (
    DomainError,
    ExprSyntaxError,
    UnknownBuiltin,
    UnknownIdentifier,
    builtin,
    compile_integrand,
    eval_expr,
    parse,
    pretty,
)
from circle_hilbert.expr import BinOp, Call, ImagUnit, Neg, Num, Var, tokenize


# -- tokenizer ----------------------------------------------------------------


def test_tokens_tile_the_nonspace_input():
    src = "exp(2 * cos(theta)) - 1.5e-3 ^ i"
    toks = tokenize(src)
    flat = [i for t in toks for i in range(t.pos, t.pos + len(t.text))]
    expected = [i for i, ch in enumerate(src) if not ch.isspace()]
    assert flat == expected


def test_tokenizer_rejects_strange_bytes():
    with pytest.raises(ExprSyntaxError) as info:
        tokenize("2 + $")
    assert info.value.position == 4


# -- parser -------------------------------------------------------------------


def test_parse_catalog_f0_shape():
    tree = parse("exp(2*cos(theta))")
    assert isinstance(tree, Call) and tree.func == "exp"
    assert isinstance(tree.arg, BinOp) and tree.arg.op == "*"
    assert isinstance(tree.arg.right, Call) and isinstance(tree.arg.right.arg, Var)


def test_parse_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse("2*(")
    assert info.value.position == 3
    assert info.value.expected


def test_power_is_root_of_abs_expression():
    tree = parse("abs(1 + cos(theta))^(5/2)")
    assert isinstance(tree, BinOp) and tree.op == "^"
    assert isinstance(tree.left, Call) and tree.left.func == "abs"


def test_power_right_associative_and_unary_binding():
    tree = parse("2^3^2")
    assert tree.op == "^" and isinstance(tree.right, BinOp) and tree.right.op == "^"
    assert eval_expr(tree, 0.0) == pytest.approx(512.0)
    # unary minus binds tighter than the left operand of ^
    assert eval_expr(parse("-2^2"), 0.0) == pytest.approx(4.0)
    assert eval_expr(parse("2^-1"), 0.0) == pytest.approx(0.5)


def test_unknown_identifier_is_parse_time():
    with pytest.raises(UnknownIdentifier):
        parse("foo(theta)")
    with pytest.raises(UnknownIdentifier):
        parse("2 + bar")


# -- evaluation ---------------------------------------------------------------


def test_eval_examples():
    assert eval_expr(parse("exp(2*cos(theta))"), 0.0) == pytest.approx(math.e**2)
    assert eval_expr(parse("ln(3/2 + cos(theta)/2)"), math.pi) == pytest.approx(0.0, abs=1e-15)
    assert eval_expr(parse("abs(sin(theta))^(7/2)"), math.pi / 2) == pytest.approx(1.0)


def test_eval_complex_semantics():
    assert eval_expr(parse("i*i"), 0.0) == pytest.approx(-1.0)
    assert eval_expr(parse("sqrt(-1)"), 0.0) == pytest.approx(1j)
    # principal branch: no error on negative reals
    assert eval_expr(parse("ln(-1)"), 0.0) == pytest.approx(1j * math.pi)
    assert eval_expr(parse("conj(i)"), 0.0) == pytest.approx(-1j)
    assert eval_expr(parse("re(theta + i)"), 0.7) == pytest.approx(0.7)
    assert eval_expr(parse("im(theta + 2*i)"), 0.7) == pytest.approx(2.0)


def test_eval_domain_errors():
    with pytest.raises(DomainError):
        eval_expr(parse("ln(0)"), 0.0)
    with pytest.raises(DomainError):
        eval_expr(parse("1/(1 - 1)"), 0.0)


def test_abs_power_is_real():
    f = compile_integrand(parse("abs(1 + cos(theta))^(5/2)"))
    values = f(np.linspace(-math.pi, math.pi, 64))
    assert np.max(np.abs(values.imag)) == 0.0
    assert np.all(values.real >= 0)


def test_vectorized_matches_scalar():
    f = compile_integrand(parse("exp(2*cos(theta)) + i*sin(theta)"))
    thetas = np.linspace(-3, 3, 17)
    vec = f(thetas)
    for t, v in zip(thetas, vec):
        assert v == eval_expr(parse("exp(2*cos(theta)) + i*sin(theta)"), t)


# -- catalog ------------------------------------------------------------------


def test_builtin_values():
    assert eval_expr(builtin("f1"), 0.0) == pytest.approx(math.log(2))
    assert eval_expr(builtin("f2"), math.pi) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(UnknownBuiltin):
        builtin("f9")


def test_catalog_identity_f1_two_forms():
    rng = np.random.default_rng(57)
    f1 = compile_integrand(builtin("f1"))
    thetas = rng.uniform(-math.pi, math.pi, 1000)
    direct = np.log(1 + np.cos(thetas) + np.sin(thetas / 2) ** 2)
    assert np.max(np.abs(f1(thetas) - direct)) <= 1e-15


def test_catalog_totality_on_the_circle():
    thetas = np.linspace(-math.pi, math.pi, 1001)
    for name in ("f0", "f1", "f2", "f3", "f4"):
        values = compile_integrand(builtin(name))(thetas)
        assert np.all(np.isfinite(values))


# -- printer round-trip --------------------------------------------------------


def test_round_trip_catalog():
    for name in ("f0", "f1", "f2", "f3", "f4"):
        printed = pretty(builtin(name))
        assert pretty(parse(printed)) == printed


def _random_tree(rng, depth):
    choice = rng.integers(0, 6 if depth > 0 else 3)
    if choice == 0:
        return Num(float(abs(round(rng.normal() * 100) / 16)))
    if choice == 1:
        return Var()
    if choice == 2:
        return ImagUnit()
    if choice == 3:
        return Neg(_random_tree(rng, depth - 1))
    if choice == 4:
        op = ["+", "-", "*", "/", "^"][rng.integers(0, 5)]
        return BinOp(op, _random_tree(rng, depth - 1), _random_tree(rng, depth - 1))
    fn = ["sin", "cos", "tan", "exp", "ln", "abs", "sqrt", "re", "im", "conj"][rng.integers(0, 10)]
    return Call(fn, _random_tree(rng, depth - 1))


def test_round_trip_random_trees():
    rng = np.random.default_rng(91)
    for _ in range(200):
        printed = pretty(_random_tree(rng, 4))
        assert pretty(parse(printed)) == printed


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=40))
def test_parser_never_panics(src):
    try:
        parse(src)
    except (ExprSyntaxError, UnknownIdentifier) as exc:
        assert 0 <= exc.position <= len(src)


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="0123456789.eE+-*/^() thetaicosn", max_size=30))
def test_parser_never_panics_dense_alphabet(src):
    try:
        parse(src)
    except (ExprSyntaxError, UnknownIdentifier) as exc:
        assert 0 <= exc.position <= len(src)
