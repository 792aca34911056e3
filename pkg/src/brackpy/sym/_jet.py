"""Second-order jets in the two surface parameters."""
from __future__ import annotations

import math
from numbers import Real
from typing import Any, Mapping, Sequence

import numpy as np

from brackpy._utils import NDArrayA
from brackpy.sym import _scalar as sc
from brackpy.sym._expr import Expr, evaluate
from brackpy.sym._scalar import DomainError

__all__ = ["Jet2", "seed", "eval_jet", "jet_array", "values", "slot"]

_NAN = float("nan")


class Jet2:
    """
    Value of a function of ``(u1, u2)`` with its first and second partial derivatives.

    Arithmetic follows the truncated Taylor rules, so every slot stays exact up to roundoff.
    A first-order jet carries `NaN` in the second-order slots.
    """

    __slots__ = ("val", "d1", "d2", "d11", "d12", "d22")

    def __init__(
        self,
        val: float,
        d1: float = 0.0,
        d2: float = 0.0,
        d11: float = 0.0,
        d12: float = 0.0,
        d22: float = 0.0,
    ):
        self.val = float(val)
        self.d1 = float(d1)
        self.d2 = float(d2)
        self.d11 = float(d11)
        self.d12 = float(d12)
        self.d22 = float(d22)

    @classmethod
    def constant(cls, c: float) -> Jet2:
        """Jet of a constant, all derivative slots are zero."""
        return cls(c)

    @classmethod
    def first_order(cls, val: float, d1: float, d2: float) -> Jet2:
        """Jet whose second derivatives are unknown."""
        return cls(val, d1, d2, _NAN, _NAN, _NAN)

    def partial(self, a: int) -> Jet2:
        """First-order jet of ``d/du_a`` for ``a`` in ``(0, 1)``."""
        if a == 0:
            return Jet2.first_order(self.d1, self.d11, self.d12)
        if a == 1:
            return Jet2.first_order(self.d2, self.d12, self.d22)
        raise ValueError(f"Expected `a` to be `0` or `1`, found `{a}`.")

    def grad(self) -> tuple[float, float]:
        return self.d1, self.d2

    @property
    def is_first_order(self) -> bool:
        return math.isnan(self.d11)

    def _chain(self, f: float, f1: float, f2: float) -> Jet2:
        # d_i = f' a_i,  d_ij = f' a_ij + f'' a_i a_j
        return Jet2(
            f,
            f1 * self.d1,
            f1 * self.d2,
            f1 * self.d11 + f2 * self.d1 * self.d1,
            f1 * self.d12 + f2 * self.d1 * self.d2,
            f1 * self.d22 + f2 * self.d2 * self.d2,
        )

    @staticmethod
    def _coerce(other: Any) -> Jet2 | None:
        if isinstance(other, Jet2):
            return other
        if isinstance(other, Real):
            return Jet2(float(other))
        return None

    def __add__(self, other: Any) -> Jet2:
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Jet2(
            self.val + b.val,
            self.d1 + b.d1,
            self.d2 + b.d2,
            self.d11 + b.d11,
            self.d12 + b.d12,
            self.d22 + b.d22,
        )

    __radd__ = __add__

    def __neg__(self) -> Jet2:
        return Jet2(-self.val, -self.d1, -self.d2, -self.d11, -self.d12, -self.d22)

    def __pos__(self) -> Jet2:
        return self

    def __sub__(self, other: Any) -> Jet2:
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other: Any) -> Jet2:
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other: Any) -> Jet2:
        if isinstance(other, Real):
            c = float(other)
            return Jet2(c * self.val, c * self.d1, c * self.d2, c * self.d11, c * self.d12, c * self.d22)
        if not isinstance(other, Jet2):
            return NotImplemented
        a, b = self, other
        return Jet2(
            a.val * b.val,
            a.d1 * b.val + a.val * b.d1,
            a.d2 * b.val + a.val * b.d2,
            a.d11 * b.val + 2 * a.d1 * b.d1 + a.val * b.d11,
            a.d12 * b.val + a.d1 * b.d2 + a.d2 * b.d1 + a.val * b.d12,
            a.d22 * b.val + 2 * a.d2 * b.d2 + a.val * b.d22,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> Jet2:
        if self.val == 0:
            raise DomainError("division by zero")
        inv = 1.0 / self.val
        return self._chain(inv, -inv * inv, 2 * inv * inv * inv)

    def __truediv__(self, other: Any) -> Jet2:
        if isinstance(other, Real):
            if other == 0:
                raise DomainError("division by zero")
            return self * (1.0 / float(other))
        if not isinstance(other, Jet2):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other: Any) -> Jet2:
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b * self.reciprocal()

    def __pow__(self, c: Any) -> Jet2:
        if not isinstance(c, Real):
            return NotImplemented
        c = float(c)
        if c == 0:
            return Jet2(1.0)
        if c == 1:
            return self
        if c == 2:
            return self * self
        if not c.is_integer():
            return (c * self.log()).exp()
        if self.val == 0 and c < 0:
            raise DomainError("division by zero")
        x = self.val
        return self._chain(x**c, c * x ** (c - 1), c * (c - 1) * x ** (c - 2))

    def sin(self) -> Jet2:
        s, c = math.sin(self.val), math.cos(self.val)
        return self._chain(s, c, -s)

    def cos(self) -> Jet2:
        s, c = math.sin(self.val), math.cos(self.val)
        return self._chain(c, -s, -c)

    def tan(self) -> Jet2:
        t = math.tan(self.val)
        sec2 = 1.0 + t * t
        return self._chain(t, sec2, 2 * t * sec2)

    def sinh(self) -> Jet2:
        s, c = math.sinh(self.val), math.cosh(self.val)
        return self._chain(s, c, s)

    def cosh(self) -> Jet2:
        s, c = math.sinh(self.val), math.cosh(self.val)
        return self._chain(c, s, c)

    def tanh(self) -> Jet2:
        t = math.tanh(self.val)
        sech2 = 1.0 - t * t
        return self._chain(t, sech2, -2 * t * sech2)

    def exp(self) -> Jet2:
        e = math.exp(self.val)
        return self._chain(e, e, e)

    def log(self) -> Jet2:
        if self.val <= 0:
            raise DomainError(f"log of non-positive value `{self.val!r}`")
        inv = 1.0 / self.val
        return self._chain(math.log(self.val), inv, -inv * inv)

    def sqrt(self) -> Jet2:
        """Square root. Unlike scalar evaluation, zero is rejected: the derivative is unbounded there."""
        if self.val < 0:
            raise DomainError(f"sqrt of negative value `{self.val!r}`")
        if self.val == 0:
            raise DomainError("sqrt at `0.0` has no derivative")
        s = math.sqrt(self.val)
        return self._chain(s, 0.5 / s, -0.25 / (s * self.val))

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return self.val, self.d1, self.d2, self.d11, self.d12, self.d22

    def __repr__(self) -> str:
        return (
            f"Jet2(val={self.val!r}, d1={self.d1!r}, d2={self.d2!r}, "
            f"d11={self.d11!r}, d12={self.d12!r}, d22={self.d22!r})"
        )


for _name in ("sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt"):
    getattr(sc, _name).register(Jet2)(getattr(Jet2, _name))


@sc.power.register(Jet2)
def _(x: Jet2, c: float) -> Jet2:
    return x**c


@sc.value_of.register(Jet2)
def _(x: Jet2) -> float:
    return x.val


def seed(u: Sequence[float], index: int) -> Jet2:
    """
    Coordinate jet of ``u[index]`` at the point ``u``.

    Parameters
    ----------
    u
        Point ``(u1, u2)``.
    index
        `0` for ``u1`` and `1` for ``u2``.

    Returns
    -------
    Jet with unit first derivative in the seeded direction.
    """
    if index not in (0, 1):
        raise ValueError(f"Expected `index` to be `0` or `1`, found `{index}`.")
    return Jet2(u[index], float(index == 0), float(index == 1))


def eval_jet(e: Expr, u: Sequence[float], extra: Mapping[str, Jet2] | None = None) -> Jet2:
    """
    Evaluate an expression as a jet at ``u``.

    ``u1`` and ``u2`` are bound to coordinate jets; ``extra`` binds further variables, e.g. ``x1, ..., xm``
    to the embedding jets when evaluating an ambient metric along the surface.

    Parameters
    ----------
    e
        Expression.
    u
        Point ``(u1, u2)``.
    extra
        Additional jet-valued bindings.

    Returns
    -------
    The jet of ``e`` at ``u``.
    """
    bindings: dict[str, Any] = {"u1": seed(u, 0), "u2": seed(u, 1)}
    if extra is not None:
        bindings.update(extra)
    res = evaluate(e, bindings)
    return res if isinstance(res, Jet2) else Jet2.constant(res)


def jet_array(shape: int | tuple[int, ...], fill: float = 0.0) -> NDArrayA:
    """Object array filled with constant jets."""
    arr = np.empty(shape, dtype=object)
    for ix in np.ndindex(arr.shape):
        arr[ix] = Jet2.constant(fill)
    return arr


def slot(arr: NDArrayA | Sequence[Any], name: str = "val") -> NDArrayA:
    """Extract one slot of an array of jets (or reals) as a float array."""
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=np.float64)
    for ix in np.ndindex(arr.shape):
        x = arr[ix]
        out[ix] = getattr(x, name) if isinstance(x, Jet2) else (float(x) if name == "val" else 0.0)
    return out


def values(arr: NDArrayA | Sequence[Any]) -> NDArrayA:
    """Plain values of an array of jets."""
    return slot(arr, "val")
