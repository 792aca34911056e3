"""Curvatures, normal connection, Weingarten and Gauss formulas in terms of brackets."""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from brackpy._constants._constants import DensityMode, NormalTermSign
from brackpy._docs import d, inject_docs
from brackpy._utils import NDArrayA
from brackpy.geo._classical import FramePoint, ambient_derivative_tangent, tangent_vector
from brackpy.pb._maps import _bracket_matrix, compound_maps, s_map, traces

__all__ = [
    "gaussian_curvature_poisson",
    "gaussian_curvature_flat",
    "gaussian_curvature_sqrt_g",
    "mean_curvature_poisson",
    "mean_curvature_flat",
    "mean_curvature_sqrt_g",
    "normal_connection",
    "weingarten_reconstruct",
    "gauss_formula_rewrite",
]


def _require_euclidean(fp: FramePoint, name: str) -> None:
    if not fp.is_euclidean:
        raise ValueError(f"Expected a euclidean ambient for `{name}`, found a curved one.")


def _require_sqrt_g(fp: FramePoint, name: str) -> None:
    if fp.density.mode != DensityMode.SQRT_G:
        raise ValueError(f"Expected density `{DensityMode.SQRT_G.s}` for `{name}`, found `{fp.density}`.")


def _factor(fp: FramePoint) -> float:
    """``rho^2 / g``."""
    return fp.rho.val**2 / fp.g


@d.dedent
def gaussian_curvature_poisson(fp: FramePoint) -> float:
    """
    Gaussian curvature ``K = gbar(R(e1, e2) e2, e1) / g - rho^2 / (2 g) sum_A Tr S_A^2``.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    The Gaussian curvature.
    """
    tr = sum(traces(s_map(fp, A) ** 2)[0] for A in range(fp.p))
    return fp.ambient_term / fp.g - 0.5 * _factor(fp) * tr


def gaussian_curvature_flat(fp: FramePoint) -> float:
    """
    Gaussian curvature in ``R^m``, ``K = -rho^2 / (2 g) sum_A {x^i, n_A^j} {x^j, n_A^i}``.

    Raises
    ------
    ValueError
        If the ambient is not euclidean.
    """
    _require_euclidean(fp, "gaussian_curvature_flat")
    total = 0.0
    for A in range(fp.p):
        xn = _bracket_matrix(fp.x_jets, fp.normal_jets[A], fp.rho)
        total += float(np.sum(xn * xn.T))
    return -0.5 * _factor(fp) * total


def gaussian_curvature_sqrt_g(fp: FramePoint) -> float:
    """Gaussian curvature for ``rho = sqrt(g)``, where the prefactor ``rho^2 / g`` is `1`."""
    _require_sqrt_g(fp, "gaussian_curvature_sqrt_g")
    tr = sum(traces(s_map(fp, A) ** 2)[0] for A in range(fp.p))
    return fp.ambient_term / fp.g - 0.5 * tr


@d.dedent
def mean_curvature_poisson(fp: FramePoint) -> NDArrayA:
    """
    Mean curvature vector ``H = rho^2 / (2 g) sum_A (Tr B_A) N_A``.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    %(ambient_vector_ret)s
    """
    _, B = compound_maps(fp)
    tr = np.array([traces(b)[0] for b in B])
    return 0.5 * _factor(fp) * (tr @ fp.normals)


def mean_curvature_flat(fp: FramePoint) -> NDArrayA:
    """
    Mean curvature vector in ``R^m`` with ``Tr B_A = {x^i, x^j} {x^j, n_A^i}``.

    Raises
    ------
    ValueError
        If the ambient is not euclidean.
    """
    _require_euclidean(fp, "mean_curvature_flat")
    P = _bracket_matrix(fp.x_jets, fp.x_jets, fp.rho)
    tr = np.array(
        [float(np.sum(P * _bracket_matrix(fp.x_jets, fp.normal_jets[A], fp.rho).T)) for A in range(fp.p)]
    )
    return 0.5 * _factor(fp) * (tr @ fp.normals)


def mean_curvature_sqrt_g(fp: FramePoint) -> NDArrayA:
    """Mean curvature vector for ``rho = sqrt(g)``."""
    _require_sqrt_g(fp, "mean_curvature_sqrt_g")
    _, B = compound_maps(fp)
    tr = np.array([traces(b)[0] for b in B])
    return 0.5 * (tr @ fp.normals)


@d.dedent
def normal_connection(fp: FramePoint, A: int, B: int, X: Sequence[float]) -> float:
    """
    Normal connection ``(D_X)_AB = gbar(N_A, D_X N_B) = rho^2 / g gbar(B_A(N_B), X)``.

    Parameters
    ----------
    %(fp)s
    %(normal_index)s
    B
        0-based index of the normal vector ``N_B``.
    %(tangent_X)s

    Returns
    -------
    The connection coefficient, antisymmetric in ``A, B``.
    """
    _, maps = compound_maps(fp)
    return _factor(fp) * float(maps[A](fp.normals[B]) @ fp.gbar @ tangent_vector(fp, X))


@d.dedent
@inject_docs(n=NormalTermSign)
def weingarten_reconstruct(
    fp: FramePoint,
    A: int,
    X: Sequence[float],
    sign: Union[str, NormalTermSign] = NormalTermSign.MINUS,
) -> NDArrayA:
    """
    Covariant derivative ``D_X N_A`` of a normal from Weingarten's formula in terms of ``B_A``.

    ``D_X N_A = rho^2 / g (-B_A(X) + s sum_B gbar(B_A(N_B), X) N_B)``.

    Parameters
    ----------
    %(fp)s
    %(normal_index)s
    %(tangent_X)s
    sign
        Sign ``s`` of the normal term. Valid options are:

            - `{n.MINUS.s!r}` - ``s = -1``, agrees with differentiating the normal frame.
            - `{n.PLUS.s!r}` - ``s = +1``.

    Returns
    -------
    %(ambient_vector_ret)s
    """
    sign = NormalTermSign(sign)
    s = -1.0 if sign == NormalTermSign.MINUS else 1.0
    _, maps = compound_maps(fp)
    Xv = tangent_vector(fp, X)
    BX = maps[A](Xv)
    coeffs = np.array([float(maps[A](N) @ fp.gbar @ Xv) for N in fp.normals])
    return _factor(fp) * (-BX + s * (coeffs @ fp.normals))


@d.dedent
def gauss_formula_rewrite(fp: FramePoint, X: Sequence[float], b: int) -> NDArrayA:
    """
    Induced covariant derivative ``D_X e_b = Dbar_X e_b - rho^2 / g sum_A gbar(B_A(X), e_b) N_A``.

    Parameters
    ----------
    %(fp)s
    %(tangent_X)s
    b
        0-based index of the tangent field ``e_b``.

    Returns
    -------
    %(ambient_vector_ret)s
    """
    _, maps = compound_maps(fp)
    Xv = tangent_vector(fp, X)
    coeffs = np.array([float(B(Xv) @ fp.gbar @ fp.e[b]) for B in maps])
    return ambient_derivative_tangent(fp, X, b) - _factor(fp) * (coeffs @ fp.normals)
