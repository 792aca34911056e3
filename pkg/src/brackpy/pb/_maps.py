"""Poisson brackets and the maps ``P``, ``S_A``, ``A_A`` and ``B_A``."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from brackpy._docs import d
from brackpy._utils import NDArrayA
from brackpy.geo._classical import FramePoint
from brackpy.sym._jet import Jet2

__all__ = [
    "bracket",
    "bracket_jet1",
    "TangentMap",
    "p_map",
    "s_operator",
    "s_map",
    "compound_maps",
    "compound_components",
    "traces",
    "RESTRICTION_TOL",
]

RESTRICTION_TOL = 1e-7


def _check_density(rho: Jet2) -> float:
    if rho.val == 0:
        raise ValueError("Expected a non-vanishing density, found `0`.")
    return 1.0 / rho.val


def bracket(f: Jet2, h: Jet2, rho: Jet2) -> float:
    """
    Poisson bracket ``{f, h} = (d_1 f d_2 h - d_2 f d_1 h) / rho``.

    Parameters
    ----------
    f
        First function, only the first derivatives are used.
    h
        Second function, only the first derivatives are used.
    rho
        Density.

    Returns
    -------
    Value of the bracket.
    """
    return (f.d1 * h.d2 - f.d2 * h.d1) * _check_density(rho)


def bracket_jet1(f: Jet2, h: Jet2, rho: Jet2) -> Jet2:
    """
    Poisson bracket with its first derivatives, for brackets of brackets.

    Needs the second derivatives of ``f`` and ``h`` and the first derivatives of ``rho``.
    """
    _check_density(rho)
    return (f.partial(0) * h.partial(1) - f.partial(1) * h.partial(0)) * rho.reciprocal()


def _bracket_matrix(f: Sequence[Jet2], h: Sequence[Jet2], rho: Jet2) -> NDArrayA:
    inv = _check_density(rho)
    f1 = np.array([a.d1 for a in f])
    f2 = np.array([a.d2 for a in f])
    h1 = np.array([a.d1 for a in h])
    h2 = np.array([a.d2 for a in h])
    return (np.outer(f1, h2) - np.outer(f2, h1)) * inv


@dataclass(frozen=True, eq=False)
class TangentMap:
    """
    Map ``TM -> TM`` given by contravariant components ``T^ij``.

    The map acts by lowering the second index, ``T(X)^i = T^ij gbar_jk X^k``.
    """

    contra: NDArrayA
    fp: FramePoint = field(repr=False)

    @cached_property
    def mixed(self) -> NDArrayA:
        """Components ``T^i_k = T^ij gbar_jk``."""
        return self.contra @ self.fp.gbar

    def __call__(self, X: NDArrayA) -> NDArrayA:
        return self.mixed @ np.asarray(X, dtype=np.float64)

    def compose(self, other: TangentMap) -> TangentMap:
        """The map ``self(other(X))``."""
        return TangentMap(self.mixed @ other.contra, self.fp)

    @property
    def T(self) -> TangentMap:
        """Transpose ``T^T(X) = gbar_ik T^kj X^i d_j``."""
        return TangentMap(self.contra.T.copy(), self.fp)

    def __neg__(self) -> TangentMap:
        return TangentMap(-self.contra, self.fp)

    def __mul__(self, c: float) -> TangentMap:
        return TangentMap(float(c) * self.contra, self.fp)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TangentMap:
        if n != 2:
            raise NotImplementedError(f"Power `{n}` of a tangent map is not yet implemented.")
        return self.compose(self)


@d.dedent
def p_map(fp: FramePoint) -> TangentMap:
    """
    Bracket tensor ``P^ij = {x^i, x^j}``.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    %(tangent_map_ret)s
    """
    return TangentMap(_bracket_matrix(fp.x_jets, fp.x_jets, fp.rho), fp)


@d.dedent
def s_operator(fp: FramePoint, X: Sequence[Jet2]) -> TangentMap:
    """
    Map ``S(X)^ij = {x^i, X^j} + P^ik Gamma^j_kl X^l`` of a vector field along the surface.

    Parameters
    ----------
    %(fp)s
    X
        Ambient vector field as jets, e.g. a normal vector ``N_A``.

    Returns
    -------
    %(tangent_map_ret)s
    """
    P = _bracket_matrix(fp.x_jets, fp.x_jets, fp.rho)
    Xv = np.array([x.val if isinstance(x, Jet2) else float(x) for x in X])
    Xj = [x if isinstance(x, Jet2) else Jet2.constant(x) for x in X]
    contra = _bracket_matrix(fp.x_jets, Xj, fp.rho) + np.einsum("ik,jkl,l->ij", P, fp.gamma, Xv)
    return TangentMap(contra, fp)


@d.dedent
def s_map(fp: FramePoint, A: int) -> TangentMap:
    """
    Map ``S_A = S(N_A)``.

    Parameters
    ----------
    %(fp)s
    %(normal_index)s

    Returns
    -------
    %(tangent_map_ret)s
    """
    return s_operator(fp, fp.normal_jets[A])


@d.dedent
def compound_maps(fp: FramePoint) -> tuple[list[TangentMap], list[TangentMap]]:
    """
    Compound maps ``A_A = -P S_A^T`` and ``B_A = P S_A``.

    Parameters
    ----------
    %(fp)s

    Returns
    -------
    The lists ``[A_1, ..., A_p]`` and ``[B_1, ..., B_p]``.
    """
    P = p_map(fp)
    S = [s_map(fp, A) for A in range(fp.p)]
    return [-P.compose(s.T) for s in S], [P.compose(s) for s in S]


def compound_components(fp: FramePoint, A: int) -> tuple[NDArrayA, NDArrayA]:
    """
    Mixed components ``(A_A)^i_k`` and ``(B_A)^i_k`` from the expanded bracket sums.

    Independent of :func:`compound_maps`, used to validate the matrix compositions.
    """
    gb, gamma, rho = fp.gbar, fp.gamma, fp.rho
    N = fp.normal_jets[A]
    n = np.array([x.val for x in N])
    P = _bracket_matrix(fp.x_jets, fp.x_jets, rho)
    xn = _bracket_matrix(fp.x_jets, N, rho)  # {x^i, n^j}
    nx = _bracket_matrix(N, fp.x_jets, rho)  # {n^i, x^j}
    a = np.einsum("ij,jJ,JK,Kk->ik", P, gb, nx, gb) + np.einsum(
        "ij,jJ,Jlm,m,lK,Kk->ik", P, gb, gamma, n, P, gb
    )
    b = np.einsum("ij,jJ,JK,Kk->ik", P, gb, xn, gb) + np.einsum(
        "ij,jJ,Jl,Klm,m,Kk->ik", P, gb, P, gamma, n, gb
    )
    return a, b


def traces(t: TangentMap, tol: float = RESTRICTION_TOL) -> tuple[float, float]:
    """
    Both traces of a map with tangent image.

    Parameters
    ----------
    t
        Tangent map.
    tol
        Relative tolerance for the normal part of ``t(e_b)``.

    Returns
    -------
    ``Tr t = t^i_i`` and ``tr t = t^a_a``, the trace of the restriction to the tangent plane, computed by
    expanding ``t(e_b)`` in the basis ``e_a`` via ``g^ac gbar(t(e_b), e_c)``.

    Raises
    ------
    ValueError
        If ``t(e_b)`` has a normal part larger than ``tol * (1 + |t(e_b)|)``.
    """
    fp = t.fp
    Tr = float(np.trace(t.mixed))
    images = t.mixed @ fp.e.T  # columns t(e_b)
    comps = fp.g_inv @ (fp.e @ fp.gbar @ images)  # comps[a, b]
    normal = images - fp.e.T @ comps
    for b in range(2):
        size = float(np.sqrt(max(images[:, b] @ fp.gbar @ images[:, b], 0.0)))
        res = float(np.sqrt(max(normal[:, b] @ fp.gbar @ normal[:, b], 0.0)))
        if res > tol * (1.0 + size):
            raise ValueError(f"Expected the image of `e_{b + 1}` to be tangent, found normal part `{res:.3e}`.")
    return Tr, float(np.trace(comps))
