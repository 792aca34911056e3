"""Internal constants not exposed to the user."""
from __future__ import annotations

from types import MappingProxyType
from typing import Any, Callable, Mapping

_SEP = "_"


class cprop:
    def __init__(self, f: Callable[..., str]):
        self.f = f

    def __get__(self, obj: Any, owner: Any) -> str:
        return self.f(owner)


class Key:
    class report:
        @cprop
        def name(cls) -> str:
            return "name"

        @cprop
        def max_abs_dev(cls) -> str:
            return "max_abs_dev"

        @cprop
        def u1(cls) -> str:
            return "u1"

        @cprop
        def u2(cls) -> str:
            return "u2"

        @cprop
        def tolerance(cls) -> str:
            return "tolerance"

        @cprop
        def passed(cls) -> str:
            return "passed"

        @classmethod
        def columns(cls) -> list[str]:
            return [cls.name, cls.max_abs_dev, cls.u1, cls.u2, cls.tolerance, cls.passed]

    class meta:
        @cprop
        def label(cls) -> str:
            return "label"

        @cprop
        def rho(cls) -> str:
            return "rho"

        @cprop
        def grid(cls) -> str:
            return "grid"

        @cprop
        def n_points(cls) -> str:
            return "n_points"

        @cprop
        def n_skipped(cls) -> str:
            return "n_skipped"

        @cprop
        def skipped(cls) -> str:
            return "skipped"

    class table:
        @classmethod
        def k(cls, route: str) -> str:
            return f"K{_SEP}{route}"

        @classmethod
        def h_norm(cls, route: str) -> str:
            return f"H_norm{_SEP}{route}"

        @classmethod
        def columns(cls) -> list[str]:
            return [
                "u1",
                "u2",
                cls.k("classical"),
                cls.k("poisson"),
                cls.k("nested"),
                cls.h_norm("classical"),
                cls.h_norm("poisson"),
                "sqrt_g",
                "rho",
            ]


# default tolerance per check, overridable by name from the command line
TOLERANCES: Mapping[str, float] = MappingProxyType(
    {
        "frame_orthonormal": 1e-10,
        "h_symmetric": 1e-8,
        "jacobi_identity": 1e-8,
        "p_antisymmetric": 1e-12,
        "images_tangent": 1e-9,
        "p_squared": 1e-9,
        "compound_components": 1e-9,
        "trace_chain": 1e-9,
        "trace_square_chain": 1e-9,
        "trace_squares": 1e-9,
        "b_weingarten": 1e-9,
        "k_poisson": 1e-9,
        "k_flat": 1e-10,
        "h_poisson": 1e-9,
        "h_flat": 1e-9,
        "normal_connection": 1e-9,
        "weingarten": 1e-8,
        "gauss_rewrite": 1e-8,
        "complex_structure": 1e-9,
        "kahler_bracket": 1e-12,
        "projected_normals": 1e-8,
        "z_tangent": 1e-9,
        "z_identity": 1e-9,
        "z_idempotent": 1e-9,
        "z_trace": 1e-9,
        "z_eigenvalues": 1e-7,
        "z_orthogonal": 1e-8,
        "z_span": 1e-8,
        "s_trace_scaling": 1e-8,
        "k_nested": 1e-8,
        "h_nested": 1e-8,
        "rho_independence": 1e-8,
        "simplified_path": 1e-12,
    }
)
