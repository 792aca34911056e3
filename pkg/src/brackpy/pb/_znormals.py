"""Normal frames built from brackets of the embedding coordinates, and the nested-bracket curvatures."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import factorial
from typing import Sequence, Union

import numpy as np
from scanpy import logging as logg

from brackpy._constants._constants import NestedArrangement
from brackpy._docs import d, inject_docs
from brackpy._utils import NDArrayA
from brackpy.geo._classical import DROP_TOL, FramePoint
from brackpy.geo._surface import DegenerateSurfaceError
from brackpy.la._eigen import sym_eigen
from brackpy.la._tensor import gram_schmidt, levi_civita_array, orthonormal_coframe
from brackpy.pb._maps import _bracket_matrix, bracket, bracket_jet1, s_operator
from brackpy.sym._expr import Expr, parse
from brackpy.sym._jet import Jet2, eval_jet

__all__ = [
    "MultiIndex",
    "ZFrame",
    "MAX_MULTI_INDICES",
    "multi_indices",
    "distinct_index_sets",
    "z_vectors",
    "z_vector",
    "z_frame",
    "z_gram_schmidt_frame",
    "s_trace_scaling",
    "k_nested",
    "h_nested",
]

MultiIndex = tuple[int, ...]

MAX_MULTI_INDICES = 64
Z_IDENTITY_TOL = 1e-9
_EIGEN_CUT = 0.5


def multi_indices(m: int) -> list[MultiIndex]:
    """All 1-based multi-indices of length ``m - 3`` in lexicographic order."""
    return list(product(range(1, m + 1), repeat=m - 3))


def distinct_index_sets(m: int) -> list[MultiIndex]:
    """
    Sorted multi-indices with distinct entries.

    Each of them labels one Z-vector up to sign; there are ``C(m, 3)`` of them.
    """
    return list(combinations(range(1, m + 1), m - 3))


@lru_cache(maxsize=8)
def _eps_contracted(m: int) -> NDArrayA:
    """``E[j, k, l, i, m, n] = sum_I eps_jklI eps_imnI``."""
    eps = levi_civita_array(m).astype(np.float64)
    rest = list(range(3, m))
    out = np.tensordot(eps, eps, axes=(rest, rest))
    out.setflags(write=False)
    return out


def _check_size(m: int) -> int:
    n = m ** (m - 3)
    if n > MAX_MULTI_INDICES:
        raise ValueError(f"Expected at most `{MAX_MULTI_INDICES}` multi-indices, found `{n}` for `m = {m}`.")
    return n


def _z_prefactor(fp: FramePoint) -> float:
    return fp.rho.val / (2.0 * np.sqrt(fp.g * factorial(fp.p - 1)))


def _z_orthonormal(fp: FramePoint) -> tuple[NDArrayA, NDArrayA]:
    """Z-vectors in the ``gbar``-orthonormal frame, columns indexed by multi-index, and the coframe factor."""
    m = fp.m
    C = orthonormal_coframe(fp.gbar)
    Phat = C.T @ _bracket_matrix(fp.x_jets, fp.x_jets, fp.rho) @ C
    zhat = _z_prefactor(fp) * np.tensordot(levi_civita_array(m).astype(np.float64), Phat, axes=([1, 2], [0, 1]))
    return zhat.reshape(m, -1), C


@d.dedent
def z_vectors(fp: FramePoint) -> NDArrayA:
    """
    All Z-vectors ``Z_I = rho / (2 sqrt(g (p - 1)!)) gbar^ij eps_jklI {x^k, x^l} d_i``.

    The Levi-Civita symbol is applied in the ``gbar``-orthonormal frame given by the Cholesky factor of the metric,
    so that for ``M = R^m`` this is the plain coordinate formula.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    Array of shape ``(m, m^(p - 1))`` with the ambient components of ``Z_I`` as columns, in the order of
    :func:`multi_indices`.
    """
    zhat, C = _z_orthonormal(fp)
    return np.linalg.solve(C.T, zhat)


@d.dedent
def z_vector(fp: FramePoint, I: Sequence[int]) -> NDArrayA:
    """
    Z-vector of a single multi-index.

    Parameters
    ----------
    %(fp)s
    I
        1-based multi-index of length ``p - 1``.

    Returns
    -------
    %(ambient_vector_ret)s
    """
    I = tuple(int(i) for i in I)
    if len(I) != fp.p - 1 or any(not 1 <= i <= fp.m for i in I):
        raise ValueError(f"Expected a multi-index of length `{fp.p - 1}` with entries in `[1, {fp.m}]`, found `{I}`.")
    flat = int(np.ravel_multi_index(tuple(i - 1 for i in I), (fp.m,) * len(I))) if I else 0
    return z_vectors(fp)[:, flat]


@dataclass(frozen=True, eq=False)
class ZFrame:
    """Z-vectors, their Gram matrix over multi-indices and the resulting orthonormal normal frame."""

    multi_indices: list[MultiIndex]
    z: NDArrayA = field(repr=False)
    zmatrix: NDArrayA = field(repr=False)
    eigenvalues: NDArrayA
    eigenvectors: NDArrayA = field(repr=False)
    nhat: NDArrayA = field(repr=False)
    identity_residual: float

    def z_of(self, I: Sequence[int]) -> NDArrayA:
        return self.z[:, self.multi_indices.index(tuple(I))]


@d.dedent
def z_frame(fp: FramePoint, check_identity: bool = True) -> ZFrame:
    """
    Normal frame from the eigenvectors of ``Z_I^J = gbar(Z_I, Z_J)``.

    The matrix is built over all ``m^(p - 1)`` multi-indices. It is a projector of rank ``p``, and the vectors
    ``N_I = E_I^J Z_J`` of the eigenvectors with eigenvalue above `0.5` form an orthonormal normal frame.

    Parameters
    ----------
    %(fp)s
    check_identity
        Whether to raise if ``Z^i_K Z^jK = gbar^ij + rho^2 / g (P^2)^ij`` is violated. The residual is always stored
        in :attr:`ZFrame.identity_residual`.

    Returns
    -------
    The frame.

    Raises
    ------
    ValueError
        If there are more than `64` multi-indices, or if the identity
        ``Z^i_K Z^jK = gbar^ij + rho^2 / g (P^2)^ij`` is violated beyond `1e-9`.
    DegenerateSurfaceError
        If the number of eigenvalues above `0.5` is not ``p``.
    """
    _check_size(fp.m)
    zhat, C = _z_orthonormal(fp)
    zmatrix = zhat.T @ zhat
    zmatrix = 0.5 * (zmatrix + zmatrix.T)

    z = np.linalg.solve(C.T, zhat)
    P = _bracket_matrix(fp.x_jets, fp.x_jets, fp.rho)
    expected = fp.gbar_inv + (fp.rho.val**2 / fp.g) * (P @ fp.gbar @ P)
    residual = float(np.max(np.abs(z @ z.T - expected)))
    if check_identity and residual > Z_IDENTITY_TOL * (1.0 + float(np.max(np.abs(fp.gbar_inv)))):
        raise ValueError(f"Expected `Z Z^T = gbar^-1 + rho^2 / g P^2`, found deviation `{residual:.3e}`.")

    mu, E = sym_eigen(zmatrix)
    keep = mu > _EIGEN_CUT
    if int(np.sum(keep)) != fp.p:
        raise DegenerateSurfaceError(f"Expected `{fp.p}` unit eigenvalues, found `{int(np.sum(keep))}`", fp.u)
    nhat = (z @ E[:, keep]).T

    return ZFrame(
        multi_indices=multi_indices(fp.m),
        z=z,
        zmatrix=zmatrix,
        eigenvalues=mu,
        eigenvectors=E,
        nhat=nhat,
        identity_residual=residual,
    )


def z_gram_schmidt_frame(fp: FramePoint) -> NDArrayA:
    """Normal frame from Gram-Schmidt applied to the Z-vectors in multi-index order, shape ``(p, m)``."""
    frame = gram_schmidt(list(z_vectors(fp).T), fp.gbar, drop_tol=DROP_TOL)
    if len(frame) != fp.p:
        raise DegenerateSurfaceError(f"Expected `{fp.p}` normals from the Z-vectors, found `{len(frame)}`", fp.u)
    return np.array(frame, dtype=np.float64)


def _as_jet(fp: FramePoint, f: Union[str, Expr, Jet2, float]) -> Jet2:
    if isinstance(f, Jet2):
        return f
    if isinstance(f, (int, float)):
        return Jet2.constant(f)
    return eval_jet(parse(f) if isinstance(f, str) else f, fp.u)


@d.dedent
def s_trace_scaling(
    fp: FramePoint,
    N: Sequence[Jet2],
    N2: Sequence[Jet2],
    f: Union[str, Expr, Jet2, float],
    h: Union[str, Expr, Jet2, float],
) -> tuple[float, float]:
    """
    Both sides of ``Tr S(f N) S(h N') = f h Tr S(N) S(N')`` for normal fields ``N, N'``.

    Parameters
    ----------
    %(fp)s
    N
        First normal field as jets, e.g. ``fp.normal_jets[0]``.
    N2
        Second normal field as jets.
    f
        First function of ``u1, u2``.
    h
        Second function of ``u1, u2``.

    Returns
    -------
    The left-hand side, computed from the jets of the products ``f N`` and ``h N'``, and the right-hand side.
    """
    fj, hj = _as_jet(fp, f), _as_jet(fp, h)
    lhs = s_operator(fp, [fj * n for n in N]).compose(s_operator(fp, [hj * n for n in N2]))
    rhs = s_operator(fp, N).compose(s_operator(fp, N2))
    return float(np.trace(lhs.mixed)), fj.val * hj.val * float(np.trace(rhs.mixed))


def _nested_brackets(fp: FramePoint) -> NDArrayA:
    """``Q[i, k, l] = {x^i, {x^k, x^l}}``."""
    m, rho = fp.m, fp.rho
    Q = np.zeros((m, m, m))
    for k in range(m):
        for l in range(k + 1, m):
            inner = bracket_jet1(fp.x_jets[k], fp.x_jets[l], rho)
            for i in range(m):
                Q[i, k, l] = bracket(fp.x_jets[i], inner, rho)
                Q[i, l, k] = -Q[i, k, l]
    return Q


def _nested_prefactor(fp: FramePoint) -> float:
    return fp.rho.val**4 / (8.0 * fp.g**2 * factorial(fp.p - 1))


def _require_euclidean(fp: FramePoint, name: str) -> None:
    if not fp.is_euclidean:
        raise ValueError(f"Expected a euclidean ambient for `{name}`, found a curved one.")


@d.dedent
@inject_docs(n=NestedArrangement)
def k_nested(fp: FramePoint, arrangement: Union[str, NestedArrangement] = NestedArrangement.STANDARD) -> float:
    """
    Gaussian curvature in ``R^m`` from nested brackets of the embedding coordinates.

    ``K = -rho^4 / (8 g^2 (p - 1)!) sum eps_jklI eps_imnI Q_ikl Q_jmn`` with ``Q_ikl = (x^i, (x^k, x^l))``.

    Parameters
    ----------
    %(fp)s
    arrangement
        Index placement of the first nested bracket. Valid options are:

            - `{n.STANDARD.s!r}` - ``Q_ikl Q_jmn``, reproduces the Gaussian curvature.
            - `{n.SHIFTED.s!r}` - ``Q_ijk Q_jmn``, kept for comparison only.

    Returns
    -------
    The Gaussian curvature.

    Raises
    ------
    ValueError
        If the ambient is not euclidean.
    """
    _require_euclidean(fp, "k_nested")
    arrangement = NestedArrangement(arrangement)
    Q = _nested_brackets(fp)
    E = _eps_contracted(fp.m)
    if arrangement == NestedArrangement.STANDARD:
        total = np.einsum("jklimn,ikl,jmn->", E, Q, Q)
    else:
        logg.debug(f"Using the `{arrangement.s}` arrangement of the nested brackets")
        total = np.einsum("jklimn,ijk,jmn->", E, Q, Q)
    return -_nested_prefactor(fp) * float(total)


@d.dedent
def h_nested(fp: FramePoint) -> NDArrayA:
    """
    Mean curvature vector in ``R^m`` from nested brackets of the embedding coordinates.

    ``H^a = rho^4 / (8 g^2 (p - 1)!) sum eps_iklI eps_amnI P_ij Q_jkl P_mn`` with ``P_ij = (x^i, x^j)``.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    %(ambient_vector_ret)s

    Raises
    ------
    ValueError
        If the ambient is not euclidean.
    """
    _require_euclidean(fp, "h_nested")
    P = _bracket_matrix(fp.x_jets, fp.x_jets, fp.rho)
    Q = _nested_brackets(fp)
    E = _eps_contracted(fp.m)
    return _nested_prefactor(fp) * np.einsum("iklamn,ij,jkl,mn->a", E, P, Q, P)
