"""Complex structure of the surface in terms of ``P``."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from brackpy._constants._constants import DensityMode
from brackpy._docs import d
from brackpy._utils import NDArrayA
from brackpy.geo._classical import DROP_TOL, FramePoint, density_jet, tangent_components, tangent_vector
from brackpy.geo._surface import DegenerateSurfaceError, Density
from brackpy.la._tensor import gram_schmidt
from brackpy.pb._maps import TangentMap, bracket, p_map
from brackpy.sym._jet import Jet2

__all__ = [
    "complex_structure_map",
    "complex_structure_poisson",
    "projection",
    "kahler_bracket",
    "kahler_form",
    "projected_normal_frame",
]


def complex_structure_map(fp: FramePoint) -> TangentMap:
    """Tangent map ``J_M = rho / sqrt(g) P``."""
    return p_map(fp) * (fp.rho.val / fp.sqrt_g)


@d.dedent
def complex_structure_poisson(fp: FramePoint, X: Sequence[float]) -> NDArrayA:
    """
    Apply ``J_M(X) = rho / sqrt(g) P(X)``.

    On tangent vectors ``J_M`` is the complex structure of the surface; normal vectors are mapped to `0`.

    Parameters
    ----------
    %(fp)s
    X
        Ambient vector.

    Returns
    -------
    %(ambient_vector_ret)s
    """
    return complex_structure_map(fp)(X)


@d.dedent
def projection(fp: FramePoint, X: Sequence[float]) -> NDArrayA:
    """
    Orthogonal projection ``-J_M^2(X)`` of an ambient vector onto the tangent plane.

    Parameters
    ----------
    %(fp)s
    X
        Ambient vector.

    Returns
    -------
    %(ambient_vector_ret)s
    """
    J = complex_structure_map(fp)
    return -J(J(X))


def kahler_bracket(fp: FramePoint, f: Jet2, h: Jet2) -> float:
    """Bracket induced by the Kahler form, i.e. :func:`brackpy.pb.bracket` with ``rho = sqrt(g)``."""
    return bracket(f, h, density_jet(Density(DensityMode.SQRT_G), fp.u, fp.g_jets))


def kahler_form(fp: FramePoint, X: Sequence[float], Y: Sequence[float]) -> float:
    """Kahler form ``g(X, J Y)`` of tangent components ``X^a, Y^a``, with ``J`` taken from ``J_M``."""
    JY = tangent_components(fp, complex_structure_poisson(fp, tangent_vector(fp, Y)))
    return float(np.asarray(X, dtype=np.float64) @ fp.g_ab @ JY)


@d.dedent
def projected_normal_frame(fp: FramePoint) -> NDArrayA:
    """
    Normal frame obtained by removing the tangent part of the coordinate frame.

    The vectors ``d_k + J_M^2(d_k)`` are orthonormalized with Gram-Schmidt with respect to the ambient metric.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    Array of shape ``(p, m)`` with the ``gbar``-orthonormal normals.

    Raises
    ------
    DegenerateSurfaceError
        If the Gram-Schmidt procedure does not yield exactly ``p`` vectors.
    """
    J = complex_structure_map(fp)
    Y = np.eye(fp.m) + J.mixed @ J.mixed  # columns are the projected coordinate vectors
    frame = gram_schmidt(list(Y.T), fp.gbar, drop_tol=DROP_TOL)
    if len(frame) != fp.p:
        raise DegenerateSurfaceError(f"Expected `{fp.p}` projected normals, found `{len(frame)}`", fp.u)
    return np.array(frame, dtype=np.float64)
