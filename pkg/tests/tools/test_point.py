import math

import numpy as np
import pytest
from brackpy._constants._pkg_constants import TOLERANCES
from brackpy.geo import DegenerateSurfaceError, Density, FramePoint, SurfaceSpec, frame_at
from brackpy.pb import _znormals as zn
from brackpy.tl import PointChecks, evaluate_point, point_digest
from brackpy.tl._point import RHO_SWEEP

from tests.conftest import CLIFFORD_U, HOROSPHERE_U, SPHERE_U

_FLAT_ONLY = ("k_flat", "h_flat", "k_nested", "h_nested")


class TestEvaluatePoint:
    def test_all_checks(self, sphere: SurfaceSpec):
        res = evaluate_point(sphere, SPHERE_U)

        assert list(res) == list(TOLERANCES)
        for name, dev in res.items():
            assert 0.0 <= dev <= TOLERANCES[name], name

    def test_subset(self, torus: SurfaceSpec):
        res = evaluate_point(torus, (0.5, 0.5), ["k_poisson", "jacobi_identity"])

        assert list(res) == ["k_poisson", "jacobi_identity"]

    def test_unknown_check(self, sphere: SurfaceSpec):
        with pytest.raises(KeyError, match="Unknown checks"):
            evaluate_point(sphere, SPHERE_U, ["k_poisson", "foo"])

    def test_curved_ambient(self, horosphere: SurfaceSpec):
        res = evaluate_point(horosphere, HOROSPHERE_U)

        for name in _FLAT_ONLY:
            assert math.isnan(res[name]), name
        for name, dev in res.items():
            if name not in _FLAT_ONLY:
                assert dev <= TOLERANCES[name], name

    def test_degenerate(self, sphere: SurfaceSpec):
        with pytest.raises(DegenerateSurfaceError):
            evaluate_point(sphere, (0.0, 1.0))

    def test_oversize_z_checks(self, surface_r6: SurfaceSpec):
        res = evaluate_point(surface_r6, (0.4, 0.7), ["z_span", "z_trace", "k_nested"])

        assert math.isnan(res["z_span"])
        assert math.isnan(res["z_trace"])
        assert res["k_nested"] <= TOLERANCES["k_nested"]


class TestPointChecks:
    def test_every_tolerance_has_a_check(self):
        for name in TOLERANCES:
            assert callable(getattr(PointChecks, name, None)), name

    def test_cached(self, fp_graph: FramePoint):
        pc = PointChecks(fp_graph)

        assert pc.P is pc.P
        assert pc.factor == pytest.approx(fp_graph.g / fp_graph.rho.val**2)
        assert len(pc.S) == 2

    def test_rho_independence_sweeps_z_frame(self, fp_graph: FramePoint, mocker):
        spy = mocker.spy(zn, "z_frame")
        pc = PointChecks(fp_graph)

        assert pc.rho_independence() < TOLERANCES["rho_independence"]
        assert spy.call_count == 1 + len(RHO_SWEEP)
        assert {str(c.args[0].density) for c in spy.call_args_list} == {str(Density.create(r)) for r in RHO_SWEEP}

    def test_rho_independence_oversize(self, surface_r6: SurfaceSpec, mocker):
        spy = mocker.spy(zn, "z_frame")

        assert PointChecks(frame_at(surface_r6, (0.4, 0.7))).rho_independence() < TOLERANCES["rho_independence"]
        assert spy.call_count == 0


class TestPointDigest:
    def test_sphere(self, sphere: SurfaceSpec):
        dg = point_digest(sphere, SPHERE_U)

        assert list(dg) == [
            "u",
            "x",
            "g_ab",
            "g",
            "sqrt_g",
            "rho",
            "normals",
            "h",
            "W",
            "K_classical",
            "K_poisson",
            "K_nested",
            "H_classical",
            "H_poisson",
            "traces_P2",
            "traces_S2",
            "traces_B",
            "z_eigenvalues",
        ]
        np.testing.assert_allclose(dg["u"], SPHERE_U)
        assert dg["g"] == pytest.approx(12.0, rel=1e-12)
        assert dg["rho"] == pytest.approx(math.sqrt(12.0), rel=1e-12)
        np.testing.assert_allclose(np.linalg.norm(dg["x"]), 2.0, rtol=1e-12)
        for key in ("K_classical", "K_poisson", "K_nested"):
            assert dg[key] == pytest.approx(0.25, rel=1e-8), key
        np.testing.assert_allclose(np.linalg.norm(dg["H_poisson"]), 0.5, rtol=1e-10)
        np.testing.assert_allclose(dg["traces_P2"], [-2.0, -2.0], rtol=1e-12)
        assert dg["traces_S2"].shape == (1, 2)
        assert dg["traces_B"].shape == (1, 2)
        np.testing.assert_allclose(dg["z_eigenvalues"], [1.0], rtol=1e-10)

    def test_clifford(self, clifford_torus: SurfaceSpec):
        dg = point_digest(clifford_torus, CLIFFORD_U)

        assert dg["normals"].shape == (2, 4)
        assert dg["h"].shape == (2, 2, 2)
        assert dg["K_poisson"] == pytest.approx(0.0, abs=1e-10)
        np.testing.assert_allclose(dg["z_eigenvalues"], [1.0, 1.0, 0.0, 0.0], atol=1e-10)

    def test_curved(self, horosphere: SurfaceSpec):
        dg = point_digest(horosphere, HOROSPHERE_U)

        assert dg["K_nested"] is None
        assert dg["K_poisson"] == pytest.approx(0.0, abs=1e-10)

    def test_oversize(self, surface_r6: SurfaceSpec):
        assert point_digest(surface_r6, (0.4, 0.7))["z_eigenvalues"] is None
