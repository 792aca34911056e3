from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from brackpy._constants._constants import DensityMode
from brackpy._utils import NDArrayA
from brackpy.geo._ambient import AmbientManifold
from brackpy.sym._expr import Expr, parse, to_string, variables

__all__ = ["Density", "SurfaceSpec", "GridSpec", "DegenerateSurfaceError", "DensityError"]

_SURFACE_VARS = frozenset({"u1", "u2"})
_MAX_COUNT = 10_000


class DegenerateSurfaceError(ValueError):
    """The tangent plane or the normal frame degenerates at a point."""

    def __init__(self, msg: str, u: Sequence[float]):
        super().__init__(f"{msg} at `u = ({u[0]!r}, {u[1]!r})`.")
        self.u = tuple(u)


class DensityError(ValueError):
    """The bracket density vanishes at a point."""

    def __init__(self, u: Sequence[float], value: float):
        super().__init__(f"Expected a non-vanishing density, found `{value!r}` at `u = ({u[0]!r}, {u[1]!r})`.")
        self.u = tuple(u)
        self.value = value


@dataclass(frozen=True)
class Density:
    """Density of the bracket: ``sqrt(g)``, the constant `1` or an expression in ``u1, u2``."""

    mode: DensityMode
    expr: Expr | None = None

    def __post_init__(self) -> None:
        if (self.mode == DensityMode.CUSTOM) != (self.expr is not None):
            raise ValueError("Expected an expression exactly for a custom density.")
        if self.expr is not None:
            unknown = variables(self.expr) - _SURFACE_VARS
            if unknown:
                raise ValueError(f"Expected the density to depend on `u1, u2` only, found `{sorted(unknown)}`.")

    @classmethod
    def create(cls, value: Union[str, Expr, Density, DensityMode]) -> Density:
        """
        Interpret a density option.

        ``'sqrt_g'``, ``'one'`` (alias ``'unit'``) and ``'1'`` name the built-in densities, any other text is
        parsed as an expression.
        """
        if isinstance(value, Density):
            return value
        if isinstance(value, DensityMode):
            return cls(value)
        if isinstance(value, str):
            text = value.strip().strip('"').strip()
            try:
                mode = DensityMode(text)
            except ValueError:
                return cls(DensityMode.CUSTOM, parse(text))
            return cls(mode)
        return cls(DensityMode.CUSTOM, value)

    def __str__(self) -> str:
        return to_string(self.expr) if self.expr is not None else self.mode.s


@dataclass(frozen=True)
class SurfaceSpec:
    """Embedding ``x^i(u1, u2)`` of a surface into an ambient manifold, with the bracket density."""

    ambient: AmbientManifold
    embedding: tuple[Expr, ...]
    density: Density = Density(DensityMode.SQRT_G)
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.embedding) != self.ambient.m:
            raise ValueError(
                f"Expected `{self.ambient.m}` embedding expressions for a `{self.ambient.m}`-dimensional ambient, "
                f"found `{len(self.embedding)}`."
            )
        for k, e in enumerate(self.embedding):
            unknown = variables(e) - _SURFACE_VARS
            if unknown:
                raise ValueError(f"Expected `x{k + 1}` to depend on `u1, u2` only, found `{sorted(unknown)}`.")

    @property
    def m(self) -> int:
        return self.ambient.m

    @property
    def p(self) -> int:
        """Codimension."""
        return self.ambient.m - 2

    def with_density(self, density: Union[str, Expr, Density, DensityMode]) -> SurfaceSpec:
        return SurfaceSpec(self.ambient, self.embedding, Density.create(density), self.label)


@dataclass(frozen=True)
class GridSpec:
    """Closed uniform grid in the parameter plane, endpoints included."""

    u1: tuple[float, float, int]
    u2: tuple[float, float, int]

    def __post_init__(self) -> None:
        for name, (lo, hi, n) in (("u1", self.u1), ("u2", self.u2)):
            if not lo < hi:
                raise ValueError(f"Expected `{name}.min < {name}.max`, found `{lo}` and `{hi}`.")
            if not 2 <= n <= _MAX_COUNT:
                raise ValueError(f"Expected `{name}.count` to be in `[2, {_MAX_COUNT}]`, found `{n}`.")

    @property
    def shape(self) -> tuple[int, int]:
        return self.u1[2], self.u2[2]

    def points(self) -> NDArrayA:
        """Grid points in row-major order, ``u1`` outer."""
        a = np.linspace(*self.u1[:2], num=self.u1[2])
        b = np.linspace(*self.u2[:2], num=self.u2[2])
        return np.array([(s, t) for s in a for t in b], dtype=np.float64)
