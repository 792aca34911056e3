"""Elementary functions dispatched on the scalar type."""
from __future__ import annotations

import math
from functools import singledispatch
from numbers import Integral, Real
from typing import Any, Callable

__all__ = [
    "DomainError",
    "FUNCTIONS",
    "sin",
    "cos",
    "tan",
    "sinh",
    "cosh",
    "tanh",
    "exp",
    "log",
    "sqrt",
    "power",
    "value_of",
]


class DomainError(ArithmeticError):
    """An elementary function was applied outside of its domain."""

    def __init__(self, msg: str, subtree: str | None = None):
        super().__init__(msg if subtree is None else f"{msg} in `{subtree}`")
        self.reason = msg
        self.subtree = subtree


def _unary(name: str, real: Callable[[float], float]) -> Callable[[Any], Any]:
    @singledispatch
    def fun(x: Any) -> Any:
        raise TypeError(f"Function `{name}` is not defined for `{type(x).__name__}`.")

    @fun.register(Real)
    def _(x: Real) -> float:
        return real(float(x))

    fun.__name__ = fun.__qualname__ = name
    fun.__doc__ = f"Compute ``{name}`` of a real number or a jet."
    return fun


def _log(x: float) -> float:
    if x <= 0:
        raise DomainError(f"log of non-positive value `{x!r}`")
    return math.log(x)


def _sqrt(x: float) -> float:
    if x < 0:
        raise DomainError(f"sqrt of negative value `{x!r}`")
    return math.sqrt(x)


sin = _unary("sin", math.sin)
cos = _unary("cos", math.cos)
tan = _unary("tan", math.tan)
sinh = _unary("sinh", math.sinh)
cosh = _unary("cosh", math.cosh)
tanh = _unary("tanh", math.tanh)
exp = _unary("exp", math.exp)
log = _unary("log", _log)
sqrt = _unary("sqrt", _sqrt)

FUNCTIONS: dict[str, Callable[[Any], Any]] = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
}


def is_integral(c: float) -> bool:
    """Whether a constant exponent is a whole number."""
    return float(c).is_integer()


@singledispatch
def power(x: Any, c: float) -> Any:
    """Raise ``x`` to a constant power; non-integer powers are ``exp(c * log(x))``."""
    raise TypeError(f"Function `power` is not defined for `{type(x).__name__}`.")


@power.register(Real)
def _(x: Real, c: float) -> float:
    x = float(x)
    if is_integral(c):
        if x == 0 and c < 0:
            raise DomainError("division by zero")
        return x ** int(c)
    return math.exp(c * _log(x))


@singledispatch
def value_of(x: Any) -> float:
    """Return the plain value of a scalar."""
    raise TypeError(f"Expected a real number or a jet, found `{type(x).__name__}`.")


@value_of.register(Real)
def _(x: Real) -> float:
    return float(x)


@value_of.register(Integral)
def _(x: Integral) -> float:
    return float(x)
