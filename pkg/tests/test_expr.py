import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hgauss.expr import (
    ArityError,
    Binary,
    EvaluationDomainError,
    ExpressionSyntaxError,
    Jet3,
    Num,
    UnknownIdentifierError,
    Var,
    eval_jet3,
    evaluate,
    parse,
    to_text,
)
from hgauss.harness.oracle import fd_jet3
from hgauss.harness.randomf import random_functions
from hgauss.surface import _GRAPH_TEXT

SCHERK = "x*y/2 + k*(ln(y+sqrt(1+y^2)) + y*sqrt(1+y^2))"


def _leaves(node):
    if isinstance(node, Binary):
        return _leaves(node.left) + _leaves(node.right)
    if hasattr(node, "arg"):
        return _leaves(node.arg)
    return 1


class TestParse:
    def test_product_quotient(self):
        e = parse("x*y/2")
        assert e.root == Binary("/", Binary("*", Var("x"), Var("y")), Num(2.0))
        assert _leaves(e.root) == 3

    def test_scherk_with_parameter(self):
        e = parse(SCHERK, parameters=["k"])
        assert e.parameters == ("k",)
        assert math.isclose(e.value(0.0, 0.0, {"k": 1.0}), 0.0, abs_tol=1e-15)

    def test_incomplete_product(self):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse("x*")
        assert info.value.position == 2
        assert "offset 2" in str(info.value)

    @pytest.mark.parametrize("text,pos", [("(x+1", 4), ("x y", 2), ("2*$", 2), ("x^2^3", 3)])
    def test_syntax_positions(self, text, pos):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse(text)
        assert info.value.position == pos

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError):
            parse("x + k")
        with pytest.raises(UnknownIdentifierError):
            parse("foo(x)")

    def test_arity(self):
        with pytest.raises(ArityError):
            parse("sin(x, y)")
        with pytest.raises(ArityError):
            parse("sqrt + 1")

    def test_unary_minus_binds_looser_than_power(self):
        assert parse("-x^2").value(3.0, 0.0) == -9.0
        assert parse("2^-1").value(0.0, 0.0) == 0.5

    @pytest.mark.parametrize("text", [
        "x*y/2", SCHERK, "-(x-y)^3/(1+x^2)", "x - (y - 1)", "x/(y/2)", "(-x)^2", "-x^2",
        "2^-x", "coth(x+3)*tanh(-y)", "exp(-x*y) - -y", "1.5e-3*x", "x^0.5 + y^2.5",
    ])
    def test_round_trip(self, text):
        e = parse(text, parameters=["k"])
        again = parse(to_text(e.root), parameters=["k"])
        assert again.root == e.root


class TestJet:
    def test_xy_half(self):
        j = eval_jet3(parse("x*y/2"), 1.0, 2.0)
        assert j == Jet3(1.0, 1.0, 0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0)

    @pytest.mark.parametrize("c", [0.0, 3.5, -2.0, 1e6])
    def test_constant(self, c):
        j = eval_jet3(parse(repr(c) if c >= 0 else f"-{-c!r}"), 0.7, -0.2)
        assert j.f == c
        assert np.all(j.as_array()[1:] == 0.0)

    def test_asinh_at_zero(self):
        j = eval_jet3(parse("ln(y+sqrt(1+y^2))"), 0.0, 0.0)
        assert j.f == 0.0 and j.f_y == 1.0 and j.f_yy == 0.0
        assert j.f_yyy == pytest.approx(-1.0, abs=1e-15)

    def test_x3y(self):
        j = eval_jet3(parse("x^3*y"), 1.0, 1.0)
        assert (j.f_x, j.f_xx, j.f_xxx, j.f_xxy, j.f_xyy) == (3.0, 6.0, 6.0, 6.0, 0.0)

    @pytest.mark.parametrize("text,x,y", [
        ("ln(x)", 0.0, 1.0), ("sqrt(x)", -1.0, 0.0), ("1/(x-y)", 2.0, 2.0),
        ("coth(x)", 0.0, 0.0), ("x^0.5", -2.0, 0.0), ("(x-1)^-2", 1.0, 0.0),
    ])
    def test_domain_errors(self, text, x, y):
        e = parse(text)
        with pytest.raises(EvaluationDomainError) as info:
            eval_jet3(e, x, y)
        assert info.value.node is not None
        with pytest.raises(ArithmeticError):
            e.compile().jets([x], [y])

    def test_value_matches_tree_walker(self):
        for text in random_functions(3, 10):
            e = parse(text)
            for x, y in [(0.3, -0.7), (1.1, 0.4)]:
                assert eval_jet3(e, x, y).f == pytest.approx(evaluate(e, x, y), rel=1e-14, abs=1e-14)

    def test_parameter_binding(self):
        e = parse("a*x + b*y + c", parameters=["a", "b", "c"])
        j = eval_jet3(e, 2.0, 3.0, {"a": 1.0, "b": -1.0, "c": 0.5})
        assert (j.f, j.f_x, j.f_y) == (-0.5, 1.0, -1.0)


def _check_fd(e, params, x, y):
    fn = lambda a, b: evaluate(e, a, b, params)  # noqa: E731
    exact = eval_jet3(e, x, y, params).as_array()
    h = 4e-3
    coarse = fd_jet3(fn, x, y, h).as_array()
    fine = fd_jet3(fn, x, y, h / 2).as_array()
    scale = np.maximum(1.0, np.abs(exact))
    e1, e2 = np.abs(coarse - exact), np.abs(fine - exact)
    big = e1 > 1e-5 * scale
    # observed order 2 where truncation dominates roundoff
    assert np.all((e1[big] / e2[big] > 3.0) & (e1[big] / e2[big] < 5.0))
    rich = (4 * fine - coarse) / 3
    assert np.all(np.abs(rich - exact) <= 1e-6 * scale)


@pytest.mark.parametrize("name", sorted(_GRAPH_TEXT))
def test_catalog_expressions_vs_fd(name):
    params = {"a": 1.0, "b": 2.0, "c": 0.5, "k": 0.8}
    e = parse(_GRAPH_TEXT[name], parameters=[p for p in params if p in _GRAPH_TEXT[name]])
    for x, y in [(0.4, -0.3), (-1.2, 1.5)]:
        _check_fd(e, params, x, y)


@pytest.mark.parametrize("seed", range(10))
def test_random_expressions_vs_fd(seed):
    for text in random_functions(seed, 2):
        _check_fd(parse(text), {}, 0.37, -0.61)


_point = st.floats(-1.5, 1.5, allow_nan=False)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.floats(-3, 3), st.floats(-3, 3), _point, _point)
def test_linearity(seed, alpha, beta, x, y):
    t1, t2 = random_functions(seed, 2)
    combo = parse(f"({alpha!r})*({t1}) + ({beta!r})*({t2})")
    lhs = eval_jet3(combo, x, y).as_array()
    rhs = alpha * eval_jet3(parse(t1), x, y).as_array() + beta * eval_jet3(parse(t2), x, y).as_array()
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), _point, _point)
def test_product_rule(seed, x, y):
    t1, t2 = random_functions(seed, 2)
    a, b = eval_jet3(parse(t1), x, y), eval_jet3(parse(t2), x, y)
    p = eval_jet3(parse(f"({t1})*({t2})"), x, y)
    assert p.f_x == pytest.approx(a.f * b.f_x + a.f_x * b.f, rel=1e-12, abs=1e-12)
    assert p.f_y == pytest.approx(a.f * b.f_y + a.f_y * b.f, rel=1e-12, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), _point, _point)
def test_composition_vs_fd(seed, x, y):
    # exp o polynomial exercises the univariate composition rule at order 3
    (t,) = random_functions(seed * 2, 1)
    e = parse(f"exp(({t})/4)")
    _check_fd(e, {}, x, y)
