"""Analytic expressions: parsing, printing, symbolic differentiation and evaluation."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Union

from brackpy.sym._scalar import FUNCTIONS, DomainError, power, value_of

__all__ = [
    "Expr",
    "Const",
    "Var",
    "Unary",
    "Binary",
    "Pow",
    "ExprSyntaxError",
    "UnboundVariableError",
    "parse",
    "to_string",
    "variables",
    "differentiate",
    "evaluate",
    "eval_expr",
    "is_variable_name",
]

_VARIABLE = re.compile(r"^(u[12]|x[1-9][0-9]*)$")
_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<name>[A-Za-z_][A-Za-z0-9_]*)
    |(?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)
_NAMED_CONSTANTS = {"pi": math.pi}


class ExprSyntaxError(ValueError):
    """Malformed expression text."""

    def __init__(self, text: str, offset: int, expected: str):
        super().__init__(f"Syntax error at offset `{offset}` in `{text}`: expected {expected}.")
        self.text = text
        self.offset = offset
        self.expected = expected


class UnboundVariableError(KeyError):
    """A variable of the expression has no value."""

    def __init__(self, name: str):
        super().__init__(f"Variable `{name}` is not bound.")
        self.name = name

    def __str__(self) -> str:
        return str(self.args[0])


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    fn: str  # one of `FUNCTIONS` or "neg"
    arg: Expr


@dataclass(frozen=True)
class Binary:
    op: str  # one of "+", "-", "*", "/"
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: float


Expr = Union[Const, Var, Unary, Binary, Pow]

_ZERO, _ONE = Const(0.0), Const(1.0)


def is_variable_name(name: str) -> bool:
    """Whether ``name`` is one of ``u1``, ``u2``, ``x1``, ``x2``, ..."""
    return bool(_VARIABLE.match(name))


# smart constructors: constant folding plus 0/1 identities
def _fold(node: Expr) -> Expr:
    try:
        return Const(value_of(evaluate(node, {})))
    except (DomainError, OverflowError):
        return node


def const(value: float) -> Const:
    return Const(float(value))


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Unary) and a.fn == "neg":
        return a.arg
    return Unary("neg", a)


def call(fn: str, a: Expr) -> Expr:
    if fn == "neg":
        return neg(a)
    if fn not in FUNCTIONS:
        raise ValueError(f"Expected `fn` to be one of `{sorted(FUNCTIONS)}`, found `{fn}`.")
    node = Unary(fn, a)
    return _fold(node) if isinstance(a, Const) else node


def add(a: Expr, b: Expr) -> Expr:
    if a == _ZERO:
        return b
    if b == _ZERO:
        return a
    node = Binary("+", a, b)
    return _fold(node) if isinstance(a, Const) and isinstance(b, Const) else node


def sub(a: Expr, b: Expr) -> Expr:
    if b == _ZERO:
        return a
    if a == _ZERO:
        return neg(b)
    node = Binary("-", a, b)
    return _fold(node) if isinstance(a, Const) and isinstance(b, Const) else node


def mul(a: Expr, b: Expr) -> Expr:
    if a == _ZERO or b == _ZERO:
        return _ZERO
    if a == _ONE:
        return b
    if b == _ONE:
        return a
    node = Binary("*", a, b)
    return _fold(node) if isinstance(a, Const) and isinstance(b, Const) else node


def div(a: Expr, b: Expr) -> Expr:
    if b == _ONE:
        return a
    if a == _ZERO and b != _ZERO:
        return _ZERO
    node = Binary("/", a, b)
    return _fold(node) if isinstance(a, Const) and isinstance(b, Const) else node


def pow_(a: Expr, c: float) -> Expr:
    c = float(c)
    if c == 0:
        return _ONE
    if c == 1:
        return a
    node = Pow(a, c)
    return _fold(node) if isinstance(a, Const) else node


_BINARY: dict[str, Callable[[Expr, Expr], Expr]] = {"+": add, "-": sub, "*": mul, "/": div}


class _Parser:
    """Recursive descent over the token stream; offsets are 1-based."""

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None:
                raise ExprSyntaxError(text, pos + 1, "a number, a name, an operator or a parenthesis")
            if match.lastgroup != "ws":
                self.tokens.append((match.lastgroup, match.group(), pos + 1))  # type: ignore[arg-type]
            pos = match.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return "end", "", len(self.text) + 1

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, tok, offset = self.peek()
        if kind != "op" or tok != value:
            raise ExprSyntaxError(self.text, offset, f"`{value}`")
        self.i += 1

    def parse(self) -> Expr:
        expr = self.expr()
        kind, tok, offset = self.peek()
        if kind != "end":
            raise ExprSyntaxError(self.text, offset, "an operator or the end of input")
        return expr

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            _, op, _ = self.next()
            left = _BINARY[op](left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, _ = self.next()
            left = _BINARY[op](left, self.unary())
        return left

    def unary(self) -> Expr:
        kind, tok, _ = self.peek()
        if kind == "op" and tok == "-":
            self.next()
            return neg(self.unary())
        if kind == "op" and tok == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        while self.peek()[:2] == ("op", "^"):
            self.next()
            offset = self.peek()[2]
            sign = 1.0
            kind, tok, _ = self.peek()
            if kind == "op" and tok in "+-":
                self.next()
                sign = -1.0 if tok == "-" else 1.0
            exponent = self.primary()
            if not isinstance(exponent, Const):
                raise ExprSyntaxError(self.text, offset, "a constant exponent")
            base = pow_(base, sign * exponent.value)
        return base

    def primary(self) -> Expr:
        kind, tok, offset = self.next()
        if kind == "number":
            return Const(float(tok))
        if kind == "name":
            if self.peek()[:2] == ("op", "("):
                if tok not in FUNCTIONS:
                    raise ExprSyntaxError(self.text, offset, f"one of the functions `{sorted(FUNCTIONS)}`")
                self.next()
                arg = self.expr()
                self.expect(")")
                return call(tok, arg)
            if tok in _NAMED_CONSTANTS:
                return Const(_NAMED_CONSTANTS[tok])
            if tok in FUNCTIONS:
                raise ExprSyntaxError(self.text, self.peek()[2], "`(`")
            return Var(tok)
        if kind == "op" and tok == "(":
            expr = self.expr()
            self.expect(")")
            return expr
        raise ExprSyntaxError(self.text, offset, "a number, a name or `(`")


def parse(text: str) -> Expr:
    """
    Parse an analytic expression.

    Operators are ``+ - * / ^`` with the usual precedence, ``^`` binding tighter than unary minus.
    All binary operators are left-associative and exponents must be constants.
    Variables are not validated here; an unbound variable is reported at evaluation.

    Parameters
    ----------
    text
        Expression text, e.g. ``'2*(1+0.5*cos(u1))'``.

    Returns
    -------
    The expression tree, with constant subtrees folded.

    Raises
    ------
    ExprSyntaxError
        If the text does not follow the grammar. The error carries the 1-based ``offset`` and an ``expected``
        description.
    """
    if not isinstance(text, str) or not text.strip():
        raise ValueError(f"Expected `text` to be a non-empty string, found `{text!r}`.")
    return _Parser(text).parse()


def to_string(e: Expr) -> str:
    """Print an expression fully parenthesized, such that :func:`parse` reads it back."""
    if isinstance(e, Const):
        return repr(e.value) if e.value >= 0 else f"(-{-e.value!r})"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        if e.fn == "neg":
            return f"(-{to_string(e.arg)})"
        return f"{e.fn}({to_string(e.arg)})"
    if isinstance(e, Binary):
        return f"({to_string(e.left)} {e.op} {to_string(e.right)})"
    if isinstance(e, Pow):
        return f"({to_string(e.base)} ^ {e.exponent!r})"
    raise TypeError(f"Expected an expression node, found `{type(e).__name__}`.")


def variables(e: Expr) -> frozenset[str]:
    """Names of all variables in the tree."""
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, Unary):
        return variables(e.arg)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Pow):
        return variables(e.base)
    return frozenset()


def differentiate(e: Expr, v: str) -> Expr:
    """
    Differentiate symbolically.

    Parameters
    ----------
    e
        Expression.
    v
        Variable name, one of ``u1``, ``u2``, ``x1``, ...

    Returns
    -------
    Expression of the exact partial derivative ``de/dv``.
    """
    if not is_variable_name(v):
        raise ValueError(f"Expected `v` to be a variable name like `u1` or `x3`, found `{v}`.")
    return _diff(e, v)


def _diff(e: Expr, v: str) -> Expr:
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Var):
        return _ONE if e.name == v else _ZERO
    if isinstance(e, Pow):
        da = _diff(e.base, v)
        if da == _ZERO:
            return _ZERO
        return mul(mul(const(e.exponent), pow_(e.base, e.exponent - 1)), da)
    if isinstance(e, Binary):
        a, b = e.left, e.right
        da, db = _diff(a, v), _diff(b, v)
        if e.op == "+":
            return add(da, db)
        if e.op == "-":
            return sub(da, db)
        if e.op == "*":
            return add(mul(da, b), mul(a, db))
        # quotient rule written so that the domain matches the original node
        return sub(div(da, b), div(mul(a, db), pow_(b, 2)))
    if isinstance(e, Unary):
        a = e.arg
        da = _diff(a, v)
        if da == _ZERO:
            return _ZERO
        fn = e.fn
        if fn == "neg":
            return neg(da)
        if fn == "sin":
            outer = call("cos", a)
        elif fn == "cos":
            outer = neg(call("sin", a))
        elif fn == "tan":
            outer = div(_ONE, pow_(call("cos", a), 2))
        elif fn == "sinh":
            outer = call("cosh", a)
        elif fn == "cosh":
            outer = call("sinh", a)
        elif fn == "tanh":
            outer = sub(_ONE, pow_(call("tanh", a), 2))
        elif fn == "exp":
            outer = e
        elif fn == "log":
            return div(da, a)
        elif fn == "sqrt":
            return div(da, mul(const(2.0), e))
        else:
            raise NotImplementedError(f"Derivative of `{fn}` is not yet implemented.")
        return mul(outer, da)
    raise TypeError(f"Expected an expression node, found `{type(e).__name__}`.")


def evaluate(e: Expr, bindings: Mapping[str, Any]) -> Any:
    """
    Evaluate over any scalar supporting ``+ - * /`` and the elementary functions of :mod:`brackpy.sym`.

    Parameters
    ----------
    e
        Expression.
    bindings
        Values of the variables, real numbers or :class:`brackpy.sym.Jet2`.

    Returns
    -------
    Value of the same scalar type as the bindings.

    Raises
    ------
    UnboundVariableError
        If a variable of ``e`` is missing from ``bindings``.
    DomainError
        If a function is applied outside of its domain, reporting the offending subtree.
    """
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return bindings[e.name]
        except KeyError:
            raise UnboundVariableError(e.name) from None
    try:
        if isinstance(e, Unary):
            a = evaluate(e.arg, bindings)
            return -a if e.fn == "neg" else FUNCTIONS[e.fn](a)
        if isinstance(e, Pow):
            return power(evaluate(e.base, bindings), e.exponent)
        if isinstance(e, Binary):
            a, b = evaluate(e.left, bindings), evaluate(e.right, bindings)
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            if value_of(b) == 0:
                raise DomainError("division by zero")
            return a / b
    except DomainError as err:
        if err.subtree is not None:
            raise
        raise DomainError(err.reason, subtree=to_string(e)) from None
    raise TypeError(f"Expected an expression node, found `{type(e).__name__}`.")


def eval_expr(e: Expr, bindings: Mapping[str, float]) -> float:
    """Evaluate in IEEE double precision."""
    return float(value_of(evaluate(e, {k: float(v) for k, v in bindings.items()})))
