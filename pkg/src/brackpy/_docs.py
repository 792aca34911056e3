from __future__ import annotations

from textwrap import dedent
from typing import Any, Callable

from docrep import DocstringProcessor


def inject_docs(**kwargs: Any) -> Callable[..., Any]:  # noqa: D103
    # taken from scanpy
    def decorator(obj: Any) -> Any:
        obj.__doc__ = dedent(obj.__doc__).format(**kwargs)
        return obj

    def decorator2(obj: Any) -> Any:
        obj.__doc__ = dedent(kwargs["__doc__"])
        return obj

    if isinstance(kwargs.get("__doc__", None), str) and len(kwargs) == 1:
        return decorator2

    return decorator


_fp = """\
fp
    Classical data at a surface point, see :func:`brackpy.geo.frame_at`."""
_spec = """\
spec
    Surface specification: ambient manifold, embedding, density and label."""
_grid = """\
grid
    Sampling grid in the ``(u1, u2)`` parameter plane."""
_normal_index = """\
A
    0-based index of the normal vector ``N_A``."""
_tangent_X = """\
X
    Tangent vector given by its 2 components ``(X^1, X^2)`` in the basis ``e_1, e_2``."""
_rho = """\
rho
    Density of the bracket. Valid options are:

        - `'sqrt_g'` - square root of the determinant of the induced metric.
        - `'one'` - constant density `1`.
        - any expression in ``u1`` and ``u2``, either as text or as a parsed expression."""
_tolerances = """\
tolerances
    Overrides of the default tolerances, keyed by check name. The key `'all'` overrides every check."""
_parallelize = """\
n_jobs
    Number of parallel jobs.
backend
    Parallelization backend to use. See :class:`joblib.Parallel` for available options.
show_progress_bar
    Whether to show the progress bar or not."""
_ambient_vector_ret = """\
    Ambient vector as an array of shape ``(m,)``."""
_tangent_map_ret = """\
    :class:`brackpy.pb.TangentMap` with the contravariant components and the base point."""

d = DocstringProcessor(
    fp=_fp,
    spec=_spec,
    grid=_grid,
    normal_index=_normal_index,
    tangent_X=_tangent_X,
    rho=_rho,
    tolerances=_tolerances,
    parallelize=_parallelize,
    ambient_vector_ret=_ambient_vector_ret,
    tangent_map_ret=_tangent_map_ret,
)
