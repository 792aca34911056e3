import math
from functools import lru_cache

import numpy as np
import pytest
from brackpy.sym import (
    Binary,
    Const,
    DomainError,
    Expr,
    ExprSyntaxError,
    Pow,
    UnboundVariableError,
    Unary,
    Var,
    differentiate,
    eval_expr,
    is_variable_name,
    parse,
    to_string,
    variables,
)
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st


class TestParse:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1 + 2*3", 7.0),
            ("-2^2", -4.0),
            ("2^-1", 0.5),
            ("2*3^2", 18.0),
            ("1 - 2 - 3", -4.0),
            ("8/2/2", 2.0),
            ("2^3^2", 64.0),
            ("+3", 3.0),
            ("2*pi", 2 * math.pi),
            ("1.5e1 + .5", 15.5),
            ("sqrt(16) + cos(0)", 5.0),
        ],
    )
    def test_precedence(self, text: str, expected: float):
        assert eval_expr(parse(text), {}) == pytest.approx(expected, rel=1e-15)

    def test_constant_folding(self):
        assert isinstance(parse("2*(3 + 4)"), Const)
        assert parse("u1") == Var("u1")

    @pytest.mark.parametrize(
        "text,offset",
        [
            ("1 +", 4),
            ("(u1", 4),
            ("u1^u2", 4),
            ("u1 u2", 4),
            ("2 $ 3", 3),
        ],
    )
    def test_syntax_error_offset(self, text: str, offset: int):
        with pytest.raises(ExprSyntaxError, match="Syntax error") as e:
            parse(text)
        assert e.value.offset == offset
        assert e.value.text == text

    def test_unknown_function(self):
        with pytest.raises(ExprSyntaxError, match="one of the functions"):
            parse("foo(u1)")

    def test_function_without_call(self):
        with pytest.raises(ExprSyntaxError, match=r"`\(`"):
            parse("sin + 1")

    @pytest.mark.parametrize("text", ["", "   "])
    def test_empty(self, text: str):
        with pytest.raises(ValueError, match="non-empty string"):
            parse(text)

    def test_to_string_reparses(self):
        e = parse("-u1^2 + sin(u2)/(1 + x3) - 2^-0.5")
        e2 = parse(to_string(e))

        assert variables(e2) == variables(e)
        b ={"u1": 0.3, "u2": 1.1, "x3": 2.0}
        assert eval_expr(e2, b) == eval_expr(e, b)


class TestEvaluate:
    def test_unbound(self):
        with pytest.raises(UnboundVariableError, match="x1") as e:
            eval_expr(parse("u1 + x1"), {"u1": 1.0})
        assert e.value.name == "x1"
        assert isinstance(e.value, KeyError)

    def test_domain_error_subtree(self):
        e = parse("1 + log(u1 - 3)")
        with pytest.raises(DomainError, match="log of non-positive") as err:
            eval_expr(e, {"u1": 1.0})
        assert err.value.subtree == to_string(parse("log(u1 - 3)"))

    @pytest.mark.parametrize("text", ["1/u1", "u1^-2", "sqrt(u1 - 1)", "u1^0.5 - 3"])
    def test_domain(self, text: str):
        with pytest.raises(DomainError):
            eval_expr(parse(text), {"u1": 0.0})

    def test_variables(self):
        assert variables(parse("u1*x2 + sin(u2)")) == frozenset({"u1", "u2", "x2"})
        assert variables(parse("pi")) == frozenset()

    @pytest.mark.parametrize("name,expected", [("u1", True), ("u3", False), ("x10", True), ("x0", False), ("y", False)])
    def test_is_variable_name(self, name: str, expected: bool):
        assert is_variable_name(name) is expected


class TestDifferentiate:
    @pytest.mark.parametrize(
        "text,v,point,expected",
        [
            ("sin(u1)*u2", "u1", (0.3, 2.0), 2 * math.cos(0.3)),
            ("sqrt(u1)", "u1", (4.0, 0.0), 0.25),
            ("u1/(1 + u2)", "u2", (3.0, 1.0), -0.75),
            ("exp(u1*u2)", "u2", (2.0, 0.5), 2 * math.exp(1.0)),
            ("log(u1)", "u1", (2.0, 0.0), 0.5),
            ("tanh(u1)", "u1", (0.7, 0.0), 1 - math.tanh(0.7) ** 2),
            ("u1^2.5", "u1", (4.0, 0.0), 2.5 * 8.0),
            ("u2", "u1", (1.0, 1.0), 0.0),
        ],
    )
    def test_values(self, text: str, v: str, point: tuple, expected: float):
        de = differentiate(parse(text), v)
        np.testing.assert_allclose(eval_expr(de, {"u1": point[0], "u2": point[1]}), expected, rtol=1e-14, atol=1e-15)

    def test_invalid_variable(self):
        with pytest.raises(ValueError, match="variable name"):
            differentiate(parse("u1"), "y")

    def test_ambient_variable(self):
        de = differentiate(parse("1/x3^2"), "x3")
        assert eval_expr(de, {"x3": 2.0}) == pytest.approx(-0.25)


def _wrap(template: str, *args: st.SearchStrategy[str]) -> st.SearchStrategy[str]:
    return st.tuples(*args).map(lambda xs: template.format(*xs))


_LEAVES = st.one_of(
    st.sampled_from(["u1", "u2"]),
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False).map(repr),
)


@lru_cache(maxsize=None)
def _texts(depth: int) -> st.SearchStrategy[str]:
    """Expression text whose parse tree is at most ``depth`` deep; every subexpression stays inside its domain."""
    if depth == 0:
        return _LEAVES
    a = _texts(depth - 1)
    options = [
        _LEAVES,
        _wrap("sin({})", a),
        _wrap("cos({})", a),
        _wrap("tanh({})", a),
        _wrap("(-{})", a),
        _wrap("({})^2", a),
        _wrap("({} + {})", a, a),
        _wrap("({} - {})", a, a),
        _wrap("({} * {})", a, a),
    ]
    if depth >= 2:
        options.append(_wrap("exp(sin({}))", _texts(depth - 2)))
    if depth >= 3:
        b = _texts(depth - 3)
        options += [
            _wrap("log(2 + cos({}))", b),
            _wrap("sqrt(2 + sin({}))", b),
            _wrap("tan(0.5*sin({}))", b),
            _wrap("(2 + sin({}))^-1.5", b),
            _wrap("({} / (2 + cos({})))", a, b),
        ]
    return st.one_of(*options)


def _depth(e: Expr) -> int:
    if isinstance(e, Unary):
        return 1 + _depth(e.arg)
    if isinstance(e, Pow):
        return 1 + _depth(e.base)
    if isinstance(e, Binary):
        return 1 + max(_depth(e.left), _depth(e.right))
    return 0


class TestRandomTrees:
    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(text=_texts(6))
    def test_round_trip(self, text: str):
        e = parse(text)

        assert _depth(e) <= 6
        assert parse(to_string(e)) == e

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(
        text=_texts(6),
        u1=st.floats(min_value=-1.0, max_value=1.0),
        u2=st.floats(min_value=-1.0, max_value=1.0),
        v=st.sampled_from(["u1", "u2"]),
    )
    def test_central_differences(self, text: str, u1: float, u2: float, v: str):
        h = 1e-5
        e = parse(text)
        at = {"u1": u1, "u2": u2}
        plus, minus = dict(at), dict(at)
        plus[v] += h
        minus[v] -= h

        f_plus, f_minus = eval_expr(e, plus), eval_expr(e, minus)
        fd = (f_plus - f_minus) / (2 * h)
        de = eval_expr(differentiate(e, v), at)
        # rounding of the two evaluations is amplified by 1 / h
        rounding = 64 * np.finfo(np.float64).eps * max(abs(f_plus), abs(f_minus)) / h

        assert abs(fd - de) <= 1e-6 * (1 + abs(de)) + rounding
