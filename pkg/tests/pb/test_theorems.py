import math

import numpy as np
import pytest
from brackpy._constants._constants import NormalTermSign
from brackpy.geo import (
    FramePoint,
    SurfaceSpec,
    covariant_derivative_normal,
    frame_at,
    induced_covariant_derivative,
)
from brackpy.pb import (
    gauss_formula_rewrite,
    gaussian_curvature_flat,
    gaussian_curvature_poisson,
    gaussian_curvature_sqrt_g,
    mean_curvature_flat,
    mean_curvature_poisson,
    mean_curvature_sqrt_g,
    normal_connection,
    weingarten_reconstruct,
)

UNIT = (np.array([1.0, 0.0]), np.array([0.0, 1.0]))


class TestGaussianCurvature:
    def test_sphere(self, fp_sphere: FramePoint):
        assert gaussian_curvature_poisson(fp_sphere) == pytest.approx(0.25, rel=1e-10)
        assert gaussian_curvature_flat(fp_sphere) == pytest.approx(0.25, rel=1e-10)
        assert gaussian_curvature_sqrt_g(fp_sphere) == pytest.approx(0.25, rel=1e-10)

    @pytest.mark.parametrize("u1,expected", [(0.0, 1 / 3), (math.pi, -1.0)])
    def test_torus(self, torus: SurfaceSpec, u1: float, expected: float):
        fp = frame_at(torus, (u1, 1.0))

        assert gaussian_curvature_poisson(fp) == pytest.approx(expected, abs=1e-10)
        assert gaussian_curvature_flat(fp) == pytest.approx(expected, abs=1e-10)

    def test_matches_classical(self, frame_point: FramePoint):
        assert gaussian_curvature_poisson(frame_point) == pytest.approx(frame_point.K, abs=1e-9)

    def test_horosphere(self, fp_horosphere: FramePoint):
        assert gaussian_curvature_poisson(fp_horosphere) == pytest.approx(0.0, abs=1e-10)
        with pytest.raises(ValueError, match="euclidean ambient"):
            gaussian_curvature_flat(fp_horosphere)

    @pytest.mark.parametrize("rho", ["one", "1 + u1^2 + u2^2", "exp(u2)"])
    def test_density_independent(self, fp_torus: FramePoint, rho: str):
        assert gaussian_curvature_poisson(fp_torus.with_density(rho)) == pytest.approx(
            gaussian_curvature_poisson(fp_torus), abs=1e-10
        )

    def test_sqrt_g_requires_density(self, fp_sphere_custom: FramePoint):
        with pytest.raises(ValueError, match="Expected density `sqrt_g`"):
            gaussian_curvature_sqrt_g(fp_sphere_custom)
        with pytest.raises(ValueError, match="Expected density `sqrt_g`"):
            mean_curvature_sqrt_g(fp_sphere_custom)


class TestMeanCurvature:
    def test_sphere(self, fp_sphere: FramePoint, fp_sphere_custom: FramePoint):
        for fp in (fp_sphere, fp_sphere_custom):
            H = mean_curvature_poisson(fp)
            assert np.linalg.norm(H) == pytest.approx(0.5, rel=1e-10)
            np.testing.assert_allclose(H, fp.H, atol=1e-10)
        np.testing.assert_allclose(mean_curvature_sqrt_g(fp_sphere), fp_sphere.H, atol=1e-10)

    def test_catenoid(self, fp_catenoid: FramePoint):
        np.testing.assert_allclose(mean_curvature_poisson(fp_catenoid), 0.0, atol=1e-10)
        np.testing.assert_allclose(mean_curvature_flat(fp_catenoid), 0.0, atol=1e-10)

    def test_clifford(self, fp_clifford: FramePoint):
        H = mean_curvature_poisson(fp_clifford)

        assert np.linalg.norm(H) == pytest.approx(1 / math.sqrt(2), rel=1e-10)
        np.testing.assert_allclose(mean_curvature_flat(fp_clifford), H, atol=1e-10)

    def test_matches_classical(self, frame_point: FramePoint):
        np.testing.assert_allclose(mean_curvature_poisson(frame_point), frame_point.H, atol=1e-9)

    def test_flat_requires_euclidean(self, fp_horosphere: FramePoint):
        with pytest.raises(ValueError, match="euclidean ambient"):
            mean_curvature_flat(fp_horosphere)


class TestConnection:
    def test_antisymmetric(self, fp_graph: FramePoint):
        for X in UNIT:
            for A in range(2):
                for B in range(2):
                    assert normal_connection(fp_graph, A, B, X) == pytest.approx(
                        -normal_connection(fp_graph, B, A, X), abs=1e-10
                    )

    def test_matches_frame(self, frame_point: FramePoint):
        fp = frame_point
        for X in UNIT:
            for A in range(fp.p):
                for B in range(fp.p):
                    expected = fp.normals[A] @ fp.gbar @ covariant_derivative_normal(fp, B, X)
                    assert normal_connection(fp, A, B, X) == pytest.approx(expected, abs=1e-9)

    def test_codimension_one_vanishes(self, fp_sphere: FramePoint):
        assert normal_connection(fp_sphere, 0, 0, UNIT[0]) == pytest.approx(0.0, abs=1e-12)


class TestWeingarten:
    def test_matches_frame(self, frame_point: FramePoint):
        fp = frame_point
        for X in UNIT:
            for A in range(fp.p):
                np.testing.assert_allclose(
                    weingarten_reconstruct(fp, A, X), covariant_derivative_normal(fp, A, X), atol=1e-8
                )

    def test_plus_sign(self, fp_graph: FramePoint):
        worst = 0.0
        for X in UNIT:
            minus = weingarten_reconstruct(fp_graph, 0, X, sign=NormalTermSign.MINUS)
            plus = weingarten_reconstruct(fp_graph, 0, X, sign="plus")
            conn = np.array([normal_connection(fp_graph, 0, B, X) for B in range(2)])

            np.testing.assert_allclose(plus - minus, 2 * conn @ fp_graph.normals, atol=1e-10)
            worst = max(worst, float(np.max(np.abs(plus - covariant_derivative_normal(fp_graph, 0, X)))))
        # the graph has a non-trivial normal connection, so the plus sign is off
        assert worst > 1e-6

    def test_plus_sign_codimension_one(self, fp_sphere: FramePoint):
        np.testing.assert_allclose(
            weingarten_reconstruct(fp_sphere, 0, UNIT[1], sign="plus"),
            weingarten_reconstruct(fp_sphere, 0, UNIT[1]),
            atol=1e-12,
        )

    def test_invalid_sign(self, fp_sphere: FramePoint):
        with pytest.raises(ValueError, match="Invalid option"):
            weingarten_reconstruct(fp_sphere, 0, UNIT[0], sign="foo")


class TestGaussFormula:
    def test_matches_induced(self, frame_point: FramePoint):
        fp = frame_point
        for X in UNIT:
            for b in range(2):
                res = gauss_formula_rewrite(fp, X, b)
                np.testing.assert_allclose(res, induced_covariant_derivative(fp, X, b), atol=1e-8)
                np.testing.assert_allclose(fp.normals @ fp.gbar @ res, 0.0, atol=1e-8)

    @pytest.mark.parametrize("fixture", ["fp_graph", "fp_torus", "fp_horosphere"])
    @pytest.mark.parametrize("rho", ["one", "1 + u1^2 + u2^2"])
    def test_density_independent(self, request: pytest.FixtureRequest, fixture: str, rho: str):
        fp0: FramePoint = request.getfixturevalue(fixture)
        fp = fp0.with_density(rho)

        for X in UNIT:
            for b in range(2):
                np.testing.assert_allclose(
                    gauss_formula_rewrite(fp, X, b), induced_covariant_derivative(fp0, X, b), atol=1e-8
                )
