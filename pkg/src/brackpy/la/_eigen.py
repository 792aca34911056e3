from __future__ import annotations

import numpy as np
from numba import njit

from brackpy._utils import NDArrayA

__all__ = ["ConvergenceError", "sym_eigen"]

_MAX_DIM = 64
_MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Iterative solver did not converge."""

    def __init__(self, msg: str, residual: float):
        super().__init__(msg)
        self.residual = residual


@njit
def _off_norm(a: NDArrayA) -> float:
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return np.sqrt(s)


@njit
def _jacobi(a: NDArrayA, tol: float, max_sweeps: int) -> tuple[NDArrayA, NDArrayA, float, int]:
    """Cyclic Jacobi sweeps; returns the rotated matrix, the accumulated rotations and the off-diagonal norm."""
    n = a.shape[0]
    v = np.eye(n)
    target = tol * np.sqrt(np.sum(a * a))
    off = _off_norm(a)
    sweep = 0
    while off > target and sweep < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp, akq = a[k, p], a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p, k], a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k, p], v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
        sweep += 1
        off = _off_norm(a)
    return a, v, off, sweep


def sym_eigen(a: NDArrayA, tol: float = 1e-12) -> tuple[NDArrayA, NDArrayA]:
    """
    Eigen decomposition of a small real symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a
        Symmetric matrix, dimension at most `64`.
    tol
        Sweeps stop once the off-diagonal norm is below ``tol`` times the Frobenius norm.

    Returns
    -------
    Eigenvalues sorted in descending order and the matrix with the orthonormal eigenvectors as columns.
    The sign of each eigenvector is fixed by making its largest-magnitude component positive.

    Raises
    ------
    ValueError
        If ``a`` is not square, too large or not symmetric.
    ConvergenceError
        If the sweeps did not converge.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"Expected a square matrix, found shape `{a.shape}`.")
    n = a.shape[0]
    if not 1 <= n <= _MAX_DIM:
        raise ValueError(f"Expected dimension to be in `[1, {_MAX_DIM}]`, found `{n}`.")
    norm = np.linalg.norm(a)
    asym = np.max(np.abs(a - a.T))
    if asym > 1e-12 * max(norm, 1.0):
        raise ValueError(f"Expected a symmetric matrix, found asymmetry `{asym:.3e}`.")
    a = 0.5 * (a + a.T)

    d, v, off, _ = _jacobi(a, tol, _MAX_SWEEPS)
    if off > tol * norm:
        raise ConvergenceError(f"Jacobi sweeps did not converge in `{_MAX_SWEEPS}` sweeps.", residual=float(off))

    mu = np.diag(d).copy()
    order = np.argsort(-mu, kind="stable")
    mu, v = mu[order], v[:, order]
    for k in range(n):
        if v[np.argmax(np.abs(v[:, k])), k] < 0:
            v[:, k] = -v[:, k]
    return mu, v
