"""Small dense linear algebra, generic over real and jet scalars."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Any, Sequence

import numpy as np

from brackpy._utils import NDArrayA
from brackpy.sym._jet import values
from brackpy.sym._scalar import sqrt, value_of

__all__ = [
    "levi_civita",
    "levi_civita_array",
    "det",
    "inverse",
    "inner",
    "gram_schmidt",
    "orthonormal_coframe",
    "normal_projector",
    "projector_distance",
]

_MAX_INV_DIM = 8


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def levi_civita(indices: Sequence[int]) -> int:
    """
    Levi-Civita symbol.

    Parameters
    ----------
    indices
        Sequence of length ``m`` with entries in ``1, ..., m``.

    Returns
    -------
    Sign of the permutation, or `0` if an index is repeated.
    """
    m = len(indices)
    for i in indices:
        if not 1 <= i <= m:
            raise ValueError(f"Expected all indices to be in `[1, {m}]`, found `{i}`.")
    if len(set(indices)) != m:
        return 0
    return _permutation_sign(indices)


@lru_cache(maxsize=8)
def _levi_civita_array(m: int) -> NDArrayA:
    eps = np.zeros((m,) * m, dtype=np.int8)
    for perm in permutations(range(m)):
        eps[perm] = _permutation_sign(perm)
    eps.setflags(write=False)
    return eps


def levi_civita_array(m: int) -> NDArrayA:
    """Dense Levi-Civita symbol of rank ``m`` with 0-based axes."""
    if m < 1:
        raise ValueError(f"Expected `m` to be positive, found `{m}`.")
    return _levi_civita_array(m)


def det(a: NDArrayA) -> Any:
    """Determinant of a ``2 x 2`` or ``3 x 3`` matrix of reals or jets."""
    a = np.asarray(a)
    if a.shape == (2, 2):
        return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if a.shape == (3, 3):
        return (
            a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
            - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
            + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
        )
    raise ValueError(f"Expected a `2 x 2` or `3 x 3` matrix, found shape `{a.shape}`.")


def inverse(a: NDArrayA) -> NDArrayA:
    """
    Invert a small square matrix by Gauss-Jordan elimination with partial pivoting.

    Parameters
    ----------
    a
        Matrix of dimension at most `8` with real or jet entries.

    Returns
    -------
    The inverse, with the same dtype as ``a``.

    Raises
    ------
    ValueError
        If the matrix is numerically singular, ``|det| < 1e-13 * scale``.
    """
    a = np.asarray(a)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"Expected a square matrix, found shape `{a.shape}`.")
    if n > _MAX_INV_DIM:
        raise ValueError(f"Expected dimension to be at most `{_MAX_INV_DIM}`, found `{n}`.")

    vals = np.vectorize(value_of, otypes=[float])(a) if a.dtype == object else a.astype(np.float64)
    scale = float(np.prod(np.max(np.abs(vals), axis=1)))

    work = a.copy() if a.dtype == object else a.astype(np.float64)
    res = np.eye(n, dtype=np.float64).astype(work.dtype)
    det_val = 1.0
    for col in range(n):
        piv = col + int(np.argmax([abs(value_of(work[r, col])) for r in range(col, n)]))
        if piv != col:
            work[[col, piv]] = work[[piv, col]]
            res[[col, piv]] = res[[piv, col]]
            det_val = -det_val
        p = work[col, col]
        det_val *= value_of(p)
        if value_of(p) == 0:
            break
        work[col] = work[col] / p
        res[col] = res[col] / p
        for r in range(n):
            if r != col:
                f = work[r, col]
                work[r] = work[r] - f * work[col]
                res[r] = res[r] - f * res[col]

    if not abs(det_val) >= 1e-13 * scale or scale == 0:
        raise ValueError(f"Expected a non-singular matrix, found `|det| = {abs(det_val):.3e}` at scale `{scale:.3e}`.")
    return res


def inner(v: NDArrayA, w: NDArrayA, g: NDArrayA) -> Any:
    """Bilinear form ``g(v, w) = v^i g_ij w^j``."""
    return np.asarray(v) @ np.asarray(g) @ np.asarray(w)


def gram_schmidt(vectors: Sequence[NDArrayA], g: NDArrayA, drop_tol: float = 1e-8) -> list[NDArrayA]:
    """
    Orthonormalize vectors with respect to a metric.

    Modified Gram-Schmidt with one reorthogonalization pass. Works over reals and jets.

    Parameters
    ----------
    vectors
        Input vectors, processed in the given order.
    g
        Symmetric positive definite metric.
    drop_tol
        Vectors whose residual norm after projection is below this value are skipped.

    Returns
    -------
    The kept vectors, ``g``-orthonormal.

    Raises
    ------
    ValueError
        If a residual has a negative squared norm beyond roundoff, i.e. the metric is indefinite.
    """
    out: list[NDArrayA] = []
    for v in vectors:
        w = np.array(v, copy=True)
        for _ in range(2):
            for q in out:
                w = w - inner(q, w, g) * q
        n2 = inner(w, w, g)
        n2v = value_of(n2)
        if n2v < -(drop_tol**2):
            raise ValueError(f"Expected a positive squared norm, found `{n2v}`. Is the metric indefinite?")
        if n2v < drop_tol**2:
            continue
        out.append(w / sqrt(n2))
    return out


def orthonormal_coframe(g: NDArrayA) -> NDArrayA:
    """
    Lower Cholesky factor ``C`` with ``g = C C^T``.

    The columns of ``C^{-T}`` are a ``g``-orthonormal frame.
    """
    try:
        return np.linalg.cholesky(np.asarray(g, dtype=np.float64))
    except np.linalg.LinAlgError as e:
        raise ValueError("Expected a positive definite metric.") from e


def normal_projector(vectors: Sequence[NDArrayA], g: NDArrayA) -> NDArrayA:
    """
    Matrix of the ``g``-orthogonal projector onto the span of ``g``-orthonormal vectors.

    Returns ``sum_k v_k (g v_k)^T``, acting on contravariant components.
    """
    g = values(g)
    proj = np.zeros_like(g)
    for v in vectors:
        v = values(v)
        proj += np.outer(v, g @ v)
    return proj


def projector_distance(v1: Sequence[NDArrayA], v2: Sequence[NDArrayA], g: NDArrayA) -> float:
    """Largest absolute entry of the difference of the projectors onto two spans."""
    return float(np.max(np.abs(normal_projector(v1, g) - normal_projector(v2, g))))
