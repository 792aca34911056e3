"""Ambient Riemannian manifold given by metric expressions in ``x1, ..., xm``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence, Union

import numpy as np

from brackpy._docs import d
from brackpy._utils import NDArrayA
from brackpy.la._tensor import inverse, orthonormal_coframe
from brackpy.sym._expr import Const, Expr, differentiate, evaluate, parse, to_string, variables

__all__ = [
    "AmbientManifold",
    "metric_at",
    "metric_jet",
    "christoffel",
    "riemann_tensor",
    "riemann_term",
]

_MIN_DIM, _MAX_DIM = 3, 6

Table = tuple[tuple[Expr, ...], ...]


def _coords(m: int) -> list[str]:
    return [f"x{k + 1}" for k in range(m)]


@dataclass(frozen=True)
class AmbientManifold:
    """
    Ambient manifold with metric ``g_ij`` given as expressions.

    Use :meth:`euclidean` or :meth:`from_entries` to construct it; the symbolic first and second derivatives of
    every metric entry are computed once at construction.
    """

    m: int
    metric: Table
    is_euclidean: bool = False
    dmetric: tuple[tuple[tuple[Expr, ...], ...], ...] = field(default=(), repr=False, compare=False)
    d2metric: tuple[tuple[tuple[tuple[Expr, ...], ...], ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        if not _MIN_DIM <= self.m <= _MAX_DIM:
            raise ValueError(f"Expected `m` to be in `[{_MIN_DIM}, {_MAX_DIM}]`, found `{self.m}`.")
        if len(self.metric) != self.m or any(len(row) != self.m for row in self.metric):
            raise ValueError(f"Expected the metric table to be `{self.m} x {self.m}`.")
        coords = set(_coords(self.m))
        for i in range(self.m):
            for j in range(self.m):
                unknown = variables(self.metric[i][j]) - coords
                if unknown:
                    raise ValueError(f"Expected metric entry `g.{i + 1}.{j + 1}` to depend on `{sorted(coords)}` only, found `{sorted(unknown)}`.")
                if to_string(self.metric[i][j]) != to_string(self.metric[j][i]):
                    raise ValueError(f"Expected a symmetric metric table, entries `({i + 1}, {j + 1})` differ.")
        if self.is_euclidean or self.dmetric:
            return
        names = _coords(self.m)
        dg = tuple(tuple(tuple(differentiate(e, x) for x in names) for e in row) for row in self.metric)
        d2g = tuple(tuple(tuple(tuple(differentiate(de, x) for x in names) for de in drow) for drow in row) for row in dg)
        object.__setattr__(self, "dmetric", dg)
        object.__setattr__(self, "d2metric", d2g)

    @classmethod
    def euclidean(cls, m: int) -> AmbientManifold:
        """Flat ``R^m`` with the identity metric."""
        one, zero = Const(1.0), Const(0.0)
        table = tuple(tuple(one if i == j else zero for j in range(m)) for i in range(m))
        return cls(m=m, metric=table, is_euclidean=True)

    @classmethod
    def from_entries(cls, m: int, entries: Mapping[tuple[int, int], Union[Expr, str]]) -> AmbientManifold:
        """
        Build the metric from 1-based entries ``(i, j) -> expression``.

        Missing entries are `0` and the table is completed symmetrically.

        Parameters
        ----------
        m
            Dimension.
        entries
            Metric entries, either parsed or as text.

        Returns
        -------
        The manifold.
        """
        table: list[list[Expr]] = [[Const(0.0)] * m for _ in range(m)]
        seen: dict[tuple[int, int], str] = {}
        for (i, j), e in entries.items():
            if not (1 <= i <= m and 1 <= j <= m):
                raise ValueError(f"Expected metric indices in `[1, {m}]`, found `({i}, {j})`.")
            expr = parse(e) if isinstance(e, str) else e
            key = (min(i, j), max(i, j))
            text = to_string(expr)
            if key in seen and seen[key] != text:
                raise ValueError(f"Conflicting metric entries for `({key[0]}, {key[1]})`: `{seen[key]}` and `{text}`.")
            seen[key] = text
            table[i - 1][j - 1] = table[j - 1][i - 1] = expr
        return cls(m=m, metric=tuple(map(tuple, table)))

    def _bindings(self, x: Sequence[Any]) -> dict[str, Any]:
        if len(x) != self.m:
            raise ValueError(f"Expected a point with `{self.m}` coordinates, found `{len(x)}`.")
        return dict(zip(_coords(self.m), x))

    def derivatives_at(self, x: Sequence[float]) -> tuple[NDArrayA, NDArrayA, NDArrayA]:
        """
        Metric with its first and second derivatives at ``x``.

        Returns
        -------
        ``g[i, j]``, ``dg[i, j, k] = d_k g_ij`` and ``d2g[i, j, k, l] = d_l d_k g_ij``.
        """
        m = self.m
        g = self.evaluate_metric(x)
        if self.is_euclidean:
            return g, np.zeros((m,) * 3), np.zeros((m,) * 4)
        b = self._bindings([float(v) for v in x])
        dg = np.array([[[float(evaluate(e, b)) for e in col] for col in row] for row in self.dmetric])
        d2g = np.array([[[[float(evaluate(e, b)) for e in c2] for c2 in col] for col in row] for row in self.d2metric])
        return g, dg, d2g

    def evaluate_metric(self, x: Sequence[float]) -> NDArrayA:
        if self.is_euclidean:
            self._bindings(x)
            return np.eye(self.m)
        b = self._bindings([float(v) for v in x])
        return np.array([[float(evaluate(e, b)) for e in row] for row in self.metric])


def _check_metric(g: NDArrayA) -> None:
    scale = max(1.0, float(np.max(np.abs(g))))
    if np.max(np.abs(g - g.T)) > 1e-12 * scale:
        raise ValueError("Expected the evaluated metric to be symmetric.")
    orthonormal_coframe(g)


def metric_at(M: AmbientManifold, x: Sequence[float]) -> tuple[NDArrayA, NDArrayA]:
    """
    Ambient metric and its inverse at ``x``.

    Parameters
    ----------
    M
        Ambient manifold.
    x
        Ambient point.

    Returns
    -------
    ``g_ij`` and ``g^ij`` as ``(m, m)`` arrays.

    Raises
    ------
    brackpy.sym.DomainError
        If a metric entry is not defined at ``x``.
    ValueError
        If the metric is not positive definite at ``x``.
    """
    g = M.evaluate_metric(x)
    _check_metric(g)
    return g, (np.eye(M.m) if M.is_euclidean else inverse(g))


def metric_jet(M: AmbientManifold, x_jets: Sequence[Any]) -> NDArrayA:
    """Metric entries as jets along the surface, with ``x1, ..., xm`` bound to the embedding jets."""
    if M.is_euclidean:
        from brackpy.sym._jet import jet_array

        g = jet_array((M.m, M.m))
        for i in range(M.m):
            g[i, i] = g[i, i] + 1.0
        return g
    b = M._bindings(x_jets)
    out = np.empty((M.m, M.m), dtype=object)
    for i in range(M.m):
        for j in range(M.m):
            out[i, j] = evaluate(M.metric[i][j], b)
    return out


def _christoffel_parts(M: AmbientManifold, x: Sequence[float]) -> tuple[NDArrayA, NDArrayA, NDArrayA, NDArrayA]:
    g, dg, d2g = M.derivatives_at(x)
    _check_metric(g)
    ginv = np.eye(M.m) if M.is_euclidean else inverse(g)
    # first kind: gamma1[l, j, k] = 1/2 (d_j g_lk + d_k g_lj - d_l g_jk)
    gamma1 = 0.5 * (np.einsum("lkj->ljk", dg) + dg - np.einsum("jkl->ljk", dg))
    dgamma1 = 0.5 * (np.einsum("lkjn->ljkn", d2g) + d2g - np.einsum("jkln->ljkn", d2g))
    gamma = np.einsum("il,ljk->ijk", ginv, gamma1)
    dginv = -np.einsum("ia,abn,bl->iln", ginv, dg, ginv)
    dgamma = np.einsum("iln,ljk->ijkn", dginv, gamma1) + np.einsum("il,ljkn->ijkn", ginv, dgamma1)
    return g, ginv, gamma, dgamma


def christoffel(M: AmbientManifold, x: Sequence[float]) -> NDArrayA:
    """
    Christoffel symbols of the second kind.

    Parameters
    ----------
    M
        Ambient manifold.
    x
        Ambient point.

    Returns
    -------
    Array ``gamma[i, j, k]`` holding ``Gamma^i_jk``, symmetric in ``j, k``.
    """
    return _christoffel_parts(M, x)[2]


def riemann_tensor(M: AmbientManifold, x: Sequence[float]) -> NDArrayA:
    """
    Riemann tensor ``R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj``.

    With this convention ``R(X, Y) Z = R^i_jkl Z^j X^k Y^l d_i``.
    """
    if M.is_euclidean:
        return np.zeros((M.m,) * 4)
    _, _, gamma, dgamma = _christoffel_parts(M, x)
    return (
        np.einsum("iljk->ijkl", dgamma)
        - np.einsum("ikjl->ijkl", dgamma)
        + np.einsum("ikm,mlj->ijkl", gamma, gamma)
        - np.einsum("ilm,mkj->ijkl", gamma, gamma)
    )


@d.dedent
def riemann_term(M: AmbientManifold, x: Sequence[float], e1: NDArrayA, e2: NDArrayA) -> float:
    """
    Ambient curvature term ``g(R(e1, e2) e2, e1)``.

    Parameters
    ----------
    M
        Ambient manifold.
    x
        Ambient point.
    e1
        First ambient vector.
    e2
        Second ambient vector.

    Returns
    -------
    The fully contracted curvature; for orthonormal ``e1, e2`` this is the sectional curvature.
    """
    if M.is_euclidean:
        return 0.0
    g = M.evaluate_metric(x)
    R = riemann_tensor(M, x)
    e1, e2 = np.asarray(e1, dtype=np.float64), np.asarray(e2, dtype=np.float64)
    return float(np.einsum("pi,ijkl,p,j,k,l->", g, R, e1, e2, e1, e2))
