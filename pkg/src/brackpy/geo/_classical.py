"""Classical surface geometry: frames, second fundamental forms and curvatures, carried in jets."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np
from scanpy import logging as logg

from brackpy._constants._constants import DensityMode
from brackpy._docs import d
from brackpy._utils import NDArrayA
from brackpy.geo._ambient import christoffel, metric_at, metric_jet, riemann_term
from brackpy.geo._surface import DegenerateSurfaceError, Density, DensityError, SurfaceSpec
from brackpy.la._tensor import det, gram_schmidt, inner, inverse
from brackpy.sym._expr import Expr
from brackpy.sym._jet import Jet2, eval_jet, jet_array, slot, values

__all__ = [
    "FramePoint",
    "frame_at",
    "density_jet",
    "classical_gaussian_curvature",
    "classical_mean_curvature",
    "classical_complex_structure",
    "covariant_derivative_normal",
    "ambient_derivative_tangent",
    "induced_christoffel",
    "induced_covariant_derivative",
    "tangent_vector",
    "tangent_components",
]

DEGENERACY_TOL = 1e-10
DROP_TOL = 1e-8
_DENSITY_TOL = 1e-12

# eps^{ab} with eps^{12} = +1
EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True, eq=False)
class FramePoint:
    """
    Classical data of the surface at one parameter point.

    Vectors are ambient component arrays. Jet-valued fields are object arrays of :class:`brackpy.sym.Jet2`;
    the tangent vectors, the induced metric and the normal frame are first-order jets.
    """

    u: tuple[float, float]
    x_jets: NDArrayA = field(repr=False)
    e_jets: NDArrayA = field(repr=False)
    gbar: NDArrayA = field(repr=False)
    gbar_inv: NDArrayA = field(repr=False)
    gamma: NDArrayA = field(repr=False)
    g_jets: NDArrayA = field(repr=False)
    normal_jets: NDArrayA = field(repr=False)
    h: NDArrayA = field(repr=False)
    ambient_term: float
    rho: Jet2
    density: Density
    is_euclidean: bool

    @property
    def m(self) -> int:
        return self.x_jets.shape[0]

    @property
    def p(self) -> int:
        return self.normal_jets.shape[0]

    @cached_property
    def x(self) -> NDArrayA:
        return values(self.x_jets)

    @cached_property
    def e(self) -> NDArrayA:
        """Tangent vectors ``e_a``, shape ``(2, m)``."""
        return values(self.e_jets)

    @cached_property
    def normals(self) -> NDArrayA:
        """Orthonormal normal frame ``N_A``, shape ``(p, m)``."""
        return values(self.normal_jets)

    @cached_property
    def g_ab(self) -> NDArrayA:
        return values(self.g_jets)

    @cached_property
    def g_inv(self) -> NDArrayA:
        return inverse(self.g_ab)

    @cached_property
    def g(self) -> float:
        return float(det(self.g_ab))

    @cached_property
    def sqrt_g(self) -> float:
        return float(np.sqrt(self.g))

    @cached_property
    def W(self) -> NDArrayA:
        """Weingarten maps ``(W_A)^a_b = g^ac h_A,cb``, shape ``(p, 2, 2)``."""
        return np.einsum("ac,Acb->Aab", self.g_inv, self.h)

    @cached_property
    def K(self) -> float:
        return classical_gaussian_curvature(self)

    @cached_property
    def H(self) -> NDArrayA:
        return classical_mean_curvature(self)

    def dnormal(self, A: int) -> NDArrayA:
        """Partial derivatives ``d_a N_A``, shape ``(2, m)``."""
        return np.stack([slot(self.normal_jets[A], "d1"), slot(self.normal_jets[A], "d2")])

    def with_density(self, density: Union[str, Expr, Density, DensityMode]) -> FramePoint:
        """Same point with a different bracket density."""
        density = Density.create(density)
        return dataclasses.replace(self, density=density, rho=density_jet(density, self.u, self.g_jets))


def density_jet(density: Density, u: Sequence[float], g_jets: NDArrayA) -> Jet2:
    """
    Jet of the bracket density at ``u``.

    Raises
    ------
    DensityError
        If the density vanishes.
    """
    if density.mode == DensityMode.SQRT_G:
        rho = det(g_jets).sqrt()
    elif density.mode == DensityMode.UNIT:
        rho = Jet2.constant(1.0)
    else:
        rho = eval_jet(density.expr, u)
    if not abs(rho.val) > _DENSITY_TOL:
        raise DensityError(u, rho.val)
    return rho


@d.dedent
def frame_at(spec: SurfaceSpec, u: Sequence[float]) -> FramePoint:
    """
    Compute the classical frame data at a parameter point.

    The normal frame is obtained by Gram-Schmidt over jets applied to ``e_1, e_2, d/dx^1, ..., d/dx^m`` with
    respect to the ambient metric along the surface; vectors with residual norm below `1e-8` are skipped.

    Parameters
    ----------
    %(spec)s
    u
        Point ``(u1, u2)``.

    Returns
    -------
    The frame point.

    Raises
    ------
    DegenerateSurfaceError
        If ``sqrt(g) < 1e-10`` or fewer than ``p`` normals survive Gram-Schmidt.
    DensityError
        If the density vanishes at ``u``.
    """
    u = (float(u[0]), float(u[1]))
    M, m, p = spec.ambient, spec.m, spec.p
    logg.debug(f"Computing frame of `{spec.label or 'surface'}` at `u={u}`")

    x_jets = np.array([eval_jet(e, u) for e in spec.embedding], dtype=object)
    e_jets = np.array([[xi.partial(a) for xi in x_jets] for a in range(2)], dtype=object)
    x = values(x_jets)

    gbar, gbar_inv = metric_at(M, x)
    gbar_jets = metric_jet(M, x_jets)
    g_jets = np.array([[inner(e_jets[a], e_jets[b], gbar_jets) for b in range(2)] for a in range(2)], dtype=object)

    g = float(det(values(g_jets)))
    if not (g > 0 and np.sqrt(g) >= DEGENERACY_TOL):
        raise DegenerateSurfaceError("Degenerate tangent plane", u)

    coord = []
    for k in range(m):
        v = jet_array(m)
        v[k] = Jet2.constant(1.0)
        coord.append(v)
    frame = gram_schmidt([e_jets[0], e_jets[1], *coord], gbar_jets, drop_tol=DROP_TOL)
    if len(frame) != m:
        raise DegenerateSurfaceError(f"Expected `{p}` normals from Gram-Schmidt, found `{len(frame) - 2}`", u)
    normal_jets = np.array(frame[2:], dtype=object).reshape(p, m)

    gamma = christoffel(M, x)
    e = values(e_jets)
    h = np.empty((p, 2, 2))
    for A in range(p):
        dN = np.stack([slot(normal_jets[A], "d1"), slot(normal_jets[A], "d2")])
        N = values(normal_jets[A])
        for b in range(2):
            nabla = dN[b] + np.einsum("ijk,j,k->i", gamma, e[b], N)
            for a in range(2):
                h[A, a, b] = -float(e[a] @ gbar @ nabla)

    return FramePoint(
        u=u,
        x_jets=x_jets,
        e_jets=e_jets,
        gbar=gbar,
        gbar_inv=gbar_inv,
        gamma=gamma,
        g_jets=g_jets,
        normal_jets=normal_jets,
        h=h,
        ambient_term=riemann_term(M, x, e[0], e[1]),
        rho=density_jet(spec.density, u, g_jets),
        density=spec.density,
        is_euclidean=M.is_euclidean,
    )


def classical_gaussian_curvature(fp: FramePoint) -> float:
    """Gauss equation ``K = g(R(e1, e2) e2, e1) / g + sum_A det(h_A) / g``."""
    return fp.ambient_term / fp.g + sum(float(det(h)) for h in fp.h) / fp.g


def classical_mean_curvature(fp: FramePoint) -> NDArrayA:
    """Mean curvature vector ``H = 1/2 sum_A tr(W_A) N_A``."""
    return 0.5 * np.einsum("A,Ai->i", np.trace(fp.W, axis1=1, axis2=2), fp.normals)


def classical_complex_structure(fp: FramePoint, X: Sequence[float]) -> NDArrayA:
    """Rotation of tangent components ``J(X)^a = eps^ac g_cb X^b / sqrt(g)``."""
    return EPS2 @ fp.g_ab @ np.asarray(X, dtype=np.float64) / fp.sqrt_g


def tangent_vector(fp: FramePoint, X: Sequence[float]) -> NDArrayA:
    """Ambient vector ``X^a e_a``."""
    return np.asarray(X, dtype=np.float64) @ fp.e


def tangent_components(fp: FramePoint, Y: NDArrayA) -> NDArrayA:
    """Components ``g^ac gbar(Y, e_c)`` of the tangential part of ``Y``."""
    return fp.g_inv @ (fp.e @ fp.gbar @ np.asarray(Y, dtype=np.float64))


def covariant_derivative_normal(fp: FramePoint, A: int, X: Sequence[float]) -> NDArrayA:
    """Ambient covariant derivative ``X^a (d_a N_A + Gamma(e_a, N_A))`` from the frame jets."""
    X = np.asarray(X, dtype=np.float64)
    N = fp.normals[A]
    nabla = fp.dnormal(A) + np.einsum("ijk,aj,k->ai", fp.gamma, fp.e, N)
    return X @ nabla


def ambient_derivative_tangent(fp: FramePoint, X: Sequence[float], b: int) -> NDArrayA:
    """Ambient covariant derivative of ``e_b`` along ``X``, from the second derivatives of the embedding."""
    X = np.asarray(X, dtype=np.float64)
    xi = fp.x_jets
    d2 = np.array(
        [
            [slot(xi, "d11"), slot(xi, "d12")],
            [slot(xi, "d12"), slot(xi, "d22")],
        ]
    )  # d2[a, b, i] = d_a d_b x^i
    nabla = d2[:, b, :] + np.einsum("ijk,aj,k->ai", fp.gamma, fp.e, fp.e[b])
    return X @ nabla


def induced_christoffel(fp: FramePoint) -> NDArrayA:
    """Christoffel symbols ``G^c_ab`` of the induced metric, from the jets of ``g_ab``."""
    dg = np.stack([slot(fp.g_jets, "d1"), slot(fp.g_jets, "d2")], axis=-1)  # dg[a, b, c] = d_c g_ab
    gamma1 = 0.5 * (np.einsum("dba->dab", dg) + np.einsum("dab->dab", dg) - np.einsum("abd->dab", dg))
    return np.einsum("cd,dab->cab", fp.g_inv, gamma1)


def induced_covariant_derivative(fp: FramePoint, X: Sequence[float], b: int) -> NDArrayA:
    """Ambient vector ``X^a G^c_ab e_c`` of the induced Levi-Civita connection."""
    X = np.asarray(X, dtype=np.float64)
    gamma = induced_christoffel(fp)
    return np.einsum("a,ca,ci->i", X, gamma[:, :, b], fp.e)
