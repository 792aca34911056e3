"""Per-point evaluation of every identity, and the point digest."""
from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Sequence

import numpy as np
from scanpy import logging as logg

from brackpy._constants._constants import DensityMode
from brackpy._constants._pkg_constants import TOLERANCES
from brackpy._docs import d
from brackpy._utils import NDArrayA
from brackpy.geo._classical import (
    FramePoint,
    classical_complex_structure,
    covariant_derivative_normal,
    frame_at,
    induced_covariant_derivative,
    tangent_vector,
)
from brackpy.geo._surface import SurfaceSpec
from brackpy.la._tensor import det, projector_distance
from brackpy.pb import _complex as cx
from brackpy.pb import _maps as mp
from brackpy.pb import _theorems as th
from brackpy.pb import _znormals as zn
from brackpy.sym._expr import parse
from brackpy.sym._jet import eval_jet

__all__ = ["PointChecks", "evaluate_point", "point_digest"]

# fixed test functions, so that reports are reproducible
_JACOBI_TRIPLES = (
    ("u1*u2 + 0.5*u1^2", "u2^2 - 0.3*u1", "0.2*u1^2*u2 + u2"),
    ("sin(u1)*u2", "u1^3 - u2", "cos(u2) + u1*u2^2"),
)
_SCALING_PAIRS = (("u1", "sin(u2)"), ("1 + u1*u2", "cos(u1)"), ("0", "u2"), ("1", "1"))
RHO_SWEEP = ("sqrt_g", "one", "1 + u1^2 + u2^2")

_UNIT = (np.array([1.0, 0.0]), np.array([0.0, 1.0]))
_NAN = float("nan")


def _max(x: Any) -> float:
    x = np.abs(np.asarray(x, dtype=np.float64))
    return float(np.max(x)) if x.size else 0.0


def _rel(a: Any, b: Any) -> float:
    """Deviation scaled by the magnitude of the reference ``b``."""
    return _max(np.asarray(a, dtype=np.float64) - b) / (1.0 + _max(b))


class PointChecks:
    """
    Deviations of every identity at one surface point.

    Each public method named after a key of :data:`brackpy._constants._pkg_constants.TOLERANCES` returns the
    deviation of that identity, or `NaN` if it does not apply at this point (e.g. flat-space formulas in a curved
    ambient).
    """

    def __init__(self, fp: FramePoint):
        self.fp = fp

    @cached_property
    def P(self) -> mp.TangentMap:
        return mp.p_map(self.fp)

    @cached_property
    def S(self) -> list[mp.TangentMap]:
        return [mp.s_map(self.fp, A) for A in range(self.fp.p)]

    @cached_property
    def AB(self) -> tuple[list[mp.TangentMap], list[mp.TangentMap]]:
        return mp.compound_maps(self.fp)

    @cached_property
    def factor(self) -> float:
        """``g / rho^2``."""
        return self.fp.g / self.fp.rho.val**2

    @cached_property
    def zframe(self) -> zn.ZFrame | None:
        if self.fp.m ** (self.fp.p - 1) > zn.MAX_MULTI_INDICES:
            return None
        return zn.z_frame(self.fp, check_identity=False)

    @cached_property
    def K_poisson(self) -> float:
        return th.gaussian_curvature_poisson(self.fp)

    @cached_property
    def H_poisson(self) -> NDArrayA:
        return th.mean_curvature_poisson(self.fp)

    def _oracle_connection(self, A: int, B: int, X: NDArrayA) -> float:
        fp = self.fp
        return float(fp.normals[A] @ fp.gbar @ covariant_derivative_normal(fp, B, X))

    def frame_orthonormal(self) -> float:
        fp = self.fp
        return max(
            _max(fp.normals @ fp.gbar @ fp.normals.T - np.eye(fp.p)),
            _max(fp.normals @ fp.gbar @ fp.e.T),
        )

    def h_symmetric(self) -> float:
        return _max(self.fp.h - np.swapaxes(self.fp.h, 1, 2))

    def jacobi_identity(self) -> float:
        fp, rho = self.fp, self.fp.rho
        dev = 0.0
        for triple in _JACOBI_TRIPLES:
            f, g, h = (eval_jet(parse(t), fp.u) for t in triple)
            terms = [
                mp.bracket(f, mp.bracket_jet1(g, h, rho), rho),
                mp.bracket(g, mp.bracket_jet1(h, f, rho), rho),
                mp.bracket(h, mp.bracket_jet1(f, g, rho), rho),
            ]
            dev = max(dev, abs(sum(terms)) / (1.0 + sum(map(abs, terms))))
        return dev

    def p_antisymmetric(self) -> float:
        return _max(self.P.contra + self.P.contra.T)

    def images_tangent(self) -> float:
        fp = self.fp
        return max(_max(fp.normals @ fp.gbar @ t.mixed) for t in (self.P, *self.S))

    def p_squared(self) -> float:
        fp = self.fp
        P2 = (self.P**2).mixed
        return _rel(fp.e @ P2.T, -self.factor * fp.e)

    def compound_components(self) -> float:
        A, B = self.AB
        dev = 0.0
        for k in range(self.fp.p):
            a, b = mp.compound_components(self.fp, k)
            dev = max(dev, _rel(A[k].mixed, a), _rel(B[k].mixed, b))
        return dev

    def trace_chain(self) -> float:
        A, B = self.AB
        dev = 0.0
        for k in range(self.fp.p):
            ref = self.factor * float(np.trace(self.fp.W[k]))
            dev = max(dev, _rel([*mp.traces(B[k]), *mp.traces(A[k])], ref))
        return dev

    def trace_square_chain(self) -> float:
        A, B = self.AB
        dev = 0.0
        for k in range(self.fp.p):
            ref = self.factor**2 * float(np.trace(self.fp.W[k] @ self.fp.W[k]))
            dev = max(dev, _rel([*mp.traces(B[k] ** 2), *mp.traces(A[k] ** 2)], ref))
        return dev

    def trace_squares(self) -> float:
        fp = self.fp
        dev = _rel(mp.traces(self.P**2), -2.0 * self.factor)
        for k, s in enumerate(self.S):
            dev = max(dev, _rel(mp.traces(s**2), -2.0 / fp.rho.val**2 * float(det(fp.h[k]))))
        return dev

    def b_weingarten(self) -> float:
        fp = self.fp
        _, B = self.AB
        dev = 0.0
        for k in range(fp.p):
            # columns W(e_b) = W^a_b e_a
            ref = self.factor * (fp.W[k].T @ fp.e)
            dev = max(dev, _rel(fp.e @ B[k].mixed.T, ref))
        return dev

    def k_poisson(self) -> float:
        return abs(self.K_poisson - self.fp.K)

    def k_flat(self) -> float:
        if not self.fp.is_euclidean:
            return _NAN
        return abs(th.gaussian_curvature_flat(self.fp) - self.fp.K)

    def h_poisson(self) -> float:
        return _max(self.H_poisson - self.fp.H)

    def h_flat(self) -> float:
        if not self.fp.is_euclidean:
            return _NAN
        return _max(th.mean_curvature_flat(self.fp) - self.fp.H)

    def normal_connection(self) -> float:
        p, dev = self.fp.p, 0.0
        for X in _UNIT:
            for A in range(p):
                for B in range(p):
                    value = th.normal_connection(self.fp, A, B, X)
                    other = th.normal_connection(self.fp, B, A, X)
                    dev = max(dev, abs(value - self._oracle_connection(A, B, X)), abs(value + other))
        return dev

    def weingarten(self) -> float:
        fp = self.fp
        return max(
            _max(th.weingarten_reconstruct(fp, A, X) - covariant_derivative_normal(fp, A, X))
            for A in range(fp.p)
            for X in _UNIT
        )

    def gauss_rewrite(self) -> float:
        fp = self.fp
        dev = 0.0
        for X in _UNIT:
            for b in range(2):
                res = th.gauss_formula_rewrite(fp, X, b)
                dev = max(dev, _max(res - induced_covariant_derivative(fp, X, b)), _max(fp.normals @ fp.gbar @ res))
        return dev

    def complex_structure(self) -> float:
        fp = self.fp
        J = cx.complex_structure_map(fp)
        dev = 0.0
        for b, X in enumerate(_UNIT):
            e = fp.e[b]
            dev = max(
                dev,
                _max(J(e) - tangent_vector(fp, classical_complex_structure(fp, X))),
                _max(cx.projection(fp, e) - e),
                _max(J(J(e)) + e),
            )
        for N in fp.normals:
            dev = max(dev, _max(cx.projection(fp, N)))
        return max(dev, abs(cx.kahler_form(fp, _UNIT[1], _UNIT[0]) + fp.sqrt_g) / (1.0 + fp.sqrt_g))

    def kahler_bracket(self) -> float:
        fp, dev = self.fp, 0.0
        scale = fp.rho.val / fp.sqrt_g
        for i, j in combinations(range(fp.m), 2):
            ref = cx.kahler_bracket(fp, fp.x_jets[i], fp.x_jets[j])
            dev = max(dev, _rel(mp.bracket(fp.x_jets[i], fp.x_jets[j], fp.rho) * scale, ref))
        return dev

    def projected_normals(self) -> float:
        fp = self.fp
        frame = cx.projected_normal_frame(fp)
        return max(projector_distance(frame, fp.normals, fp.gbar), _max(frame @ fp.gbar @ fp.e.T))

    def _z(self, fn: Callable[[zn.ZFrame], float]) -> float:
        return _NAN if self.zframe is None else fn(self.zframe)

    def z_tangent(self) -> float:
        return self._z(lambda zf: _max(self.fp.e @ self.fp.gbar @ zf.z))

    def z_identity(self) -> float:
        return self._z(lambda zf: zf.identity_residual)

    def z_idempotent(self) -> float:
        return self._z(lambda zf: _max(zf.zmatrix @ zf.zmatrix - zf.zmatrix))

    def z_trace(self) -> float:
        return self._z(lambda zf: abs(float(np.trace(zf.zmatrix)) - self.fp.p))

    def z_eigenvalues(self) -> float:
        return self._z(lambda zf: _max(np.minimum(np.abs(zf.eigenvalues), np.abs(zf.eigenvalues - 1.0))))

    def z_orthogonal(self) -> float:
        return self._z(lambda zf: _max(zf.nhat @ self.fp.gbar @ zf.nhat.T - np.eye(self.fp.p)))

    def z_span(self) -> float:
        return self._z(lambda zf: projector_distance(zf.nhat, self.fp.normals, self.fp.gbar))

    def s_trace_scaling(self) -> float:
        fp, dev = self.fp, 0.0
        for f, h in _SCALING_PAIRS:
            for A in range(fp.p):
                for B in range(fp.p):
                    lhs, rhs = zn.s_trace_scaling(fp, fp.normal_jets[A], fp.normal_jets[B], f, h)
                    dev = max(dev, abs(lhs - rhs) / (1.0 + abs(rhs)))
        return dev

    def k_nested(self) -> float:
        if not self.fp.is_euclidean:
            return _NAN
        return abs(zn.k_nested(self.fp) - self.fp.K)

    def h_nested(self) -> float:
        if not self.fp.is_euclidean:
            return _NAN
        return _max(zn.h_nested(self.fp) - self.fp.H)

    def rho_independence(self) -> float:
        fp = self.fp
        points = [fp.with_density(rho) for rho in RHO_SWEEP]
        K = [th.gaussian_curvature_poisson(q) for q in points]
        H = [th.mean_curvature_poisson(q) for q in points]
        W = [np.array([th.weingarten_reconstruct(q, A, X) for A in range(fp.p) for X in _UNIT]) for q in points]
        N = [cx.projected_normal_frame(q) for q in points]
        Z = None if self.zframe is None else [zn.z_frame(q, check_identity=False).nhat for q in points]
        dev = 0.0
        for k in range(1, len(points)):
            dev = max(
                dev,
                abs(K[k] - K[0]),
                _max(H[k] - H[0]),
                _max(W[k] - W[0]),
                projector_distance(N[k], N[0], fp.gbar),
            )
            if Z is not None:
                dev = max(dev, projector_distance(Z[k], Z[0], fp.gbar))
            if fp.is_euclidean:
                dev = max(dev, abs(zn.k_nested(points[k]) - zn.k_nested(points[0])))
                dev = max(dev, _max(zn.h_nested(points[k]) - zn.h_nested(points[0])))
        return dev

    def simplified_path(self) -> float:
        fp = self.fp.with_density(DensityMode.SQRT_G)
        K = th.gaussian_curvature_poisson(fp)
        return max(
            abs(th.gaussian_curvature_sqrt_g(fp) - K) / (1.0 + abs(K)),
            _rel(th.mean_curvature_sqrt_g(fp), th.mean_curvature_poisson(fp)),
        )


@d.dedent
def evaluate_point(spec: SurfaceSpec, u: Sequence[float], checks: Sequence[str] | None = None) -> dict[str, float]:
    """
    Evaluate identities at one point.

    Parameters
    ----------
    %(spec)s
    u
        Point ``(u1, u2)``.
    checks
        Names of the checks to run. If `None`, run all of them in the order of the default tolerances.

    Returns
    -------
    Deviation per check; `NaN` marks a check that does not apply. A check whose computation fails with
    a numerical error is reported with an infinite deviation.

    Raises
    ------
    brackpy.geo.DegenerateSurfaceError
        If the frame cannot be computed at ``u``.
    brackpy.geo.DensityError
        If the density vanishes at ``u``.
    """
    names = list(TOLERANCES) if checks is None else list(checks)
    unknown = sorted(set(names) - set(TOLERANCES))
    if unknown:
        raise KeyError(f"Unknown checks `{unknown}`, valid options are: `{list(TOLERANCES)}`.")

    pc = PointChecks(frame_at(spec, u))
    out: dict[str, float] = {}
    for name in names:
        try:
            out[name] = float(getattr(pc, name)())
        except (ValueError, ArithmeticError) as e:
            logg.debug(f"Check `{name}` failed at `u={tuple(u)}`. Reason: `{e}`")
            out[name] = float("inf")
    return out


@d.dedent
def point_digest(spec: SurfaceSpec, u: Sequence[float]) -> dict[str, Any]:
    """
    Collect the classical and bracket data at one point.

    Parameters
    ----------
    %(spec)s
    u
        Point ``(u1, u2)``.

    Returns
    -------
    Ordered mapping with the embedding point, the induced metric, the normal frame, the second fundamental forms,
    the Weingarten maps, the Gaussian curvature from all routes, the mean curvature vector, both traces of
    ``P^2``, ``S_A^2`` and ``B_A``, and the eigenvalues of the Z-matrix. Unavailable entries are `None`.

    Raises
    ------
    brackpy.geo.DegenerateSurfaceError
        If the frame cannot be computed at ``u``.
    """
    fp = frame_at(spec, u)
    pc = PointChecks(fp)
    _, B = pc.AB
    out: dict[str, Any] = {
        "u": np.asarray(fp.u),
        "x": fp.x,
        "g_ab": fp.g_ab,
        "g": fp.g,
        "sqrt_g": fp.sqrt_g,
        "rho": fp.rho.val,
        "normals": fp.normals,
        "h": fp.h,
        "W": fp.W,
        "K_classical": fp.K,
        "K_poisson": pc.K_poisson,
        "K_nested": zn.k_nested(fp) if fp.is_euclidean else None,
        "H_classical": fp.H,
        "H_poisson": pc.H_poisson,
        "traces_P2": np.array(mp.traces(pc.P**2)),
        "traces_S2": np.array([mp.traces(s**2) for s in pc.S]),
        "traces_B": np.array([mp.traces(b) for b in B]),
    }
    zf = pc.zframe
    out["z_eigenvalues"] = None if zf is None else zf.eigenvalues
    return out
