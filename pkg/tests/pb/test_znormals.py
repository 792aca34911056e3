import math

import numpy as np
import pytest
from brackpy._constants._constants import NestedArrangement
from brackpy.geo import FramePoint, SurfaceSpec, frame_at
from brackpy.la import projector_distance
from brackpy.pb import (
    distinct_index_sets,
    h_nested,
    k_nested,
    multi_indices,
    s_trace_scaling,
    z_frame,
    z_gram_schmidt_frame,
    z_vector,
    z_vectors,
)
from brackpy.pb._znormals import MAX_MULTI_INDICES


class TestMultiIndices:
    @pytest.mark.parametrize("m,n", [(3, 1), (4, 4), (5, 25), (6, 216)])
    def test_multi_indices(self, m: int, n: int):
        idx = multi_indices(m)

        assert len(idx) == n
        assert idx == sorted(idx)
        assert all(len(I) == m - 3 for I in idx)

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_distinct_index_sets(self, m: int):
        sets = distinct_index_sets(m)

        assert len(sets) == math.comb(m, 3)
        assert all(len(set(I)) == len(I) == m - 3 for I in sets)

    def test_small(self):
        assert multi_indices(3) == [()]
        assert multi_indices(4) == [(1,), (2,), (3,), (4,)]
        assert distinct_index_sets(5)[:2] == [(1, 2), (1, 3)]


class TestZVectors:
    def test_codimension_one_is_unit_normal(self, fp_sphere_custom: FramePoint):
        fp = fp_sphere_custom
        z = z_vector(fp, ())

        assert z @ fp.gbar @ z == pytest.approx(1.0, rel=1e-10)
        np.testing.assert_allclose(fp.e @ fp.gbar @ z, 0.0, atol=1e-10)
        assert abs(z @ fp.gbar @ fp.normals[0]) == pytest.approx(1.0, rel=1e-10)

    def test_repeated_index_vanishes(self, fp_clifford: FramePoint):
        z = z_vectors(fp_clifford)

        assert z.shape == (4, 4)
        for k in range(4):
            # eps vanishes once the free index repeats the multi-index
            assert z[k, k] == pytest.approx(0.0, abs=1e-14)

    def test_z_vector_index(self, fp_clifford: FramePoint):
        np.testing.assert_array_equal(z_vector(fp_clifford, (3,)), z_vectors(fp_clifford)[:, 2])

    @pytest.mark.parametrize("I", [(), (1, 2), (5,), (0,)])
    def test_z_vector_invalid(self, fp_clifford: FramePoint, I: tuple):
        with pytest.raises(ValueError, match="multi-index of length `1`"):
            z_vector(fp_clifford, I)

    def test_curved_ambient(self, fp_horosphere: FramePoint):
        z = z_vector(fp_horosphere, ())

        assert z @ fp_horosphere.gbar @ z == pytest.approx(1.0, rel=1e-10)
        assert abs(z @ fp_horosphere.gbar @ fp_horosphere.normals[0]) == pytest.approx(1.0, rel=1e-10)


class TestZFrame:
    def test_clifford(self, fp_clifford: FramePoint):
        zf = z_frame(fp_clifford)

        np.testing.assert_allclose(zf.eigenvalues, [1.0, 1.0, 0.0, 0.0], atol=1e-10)
        np.testing.assert_allclose(np.trace(zf.zmatrix), 2.0, rtol=1e-10)
        np.testing.assert_allclose(zf.zmatrix @ zf.zmatrix, zf.zmatrix, atol=1e-10)
        np.testing.assert_allclose(zf.nhat @ fp_clifford.gbar @ zf.nhat.T, np.eye(2), atol=1e-10)
        assert projector_distance(zf.nhat, fp_clifford.normals, fp_clifford.gbar) < 1e-8
        assert zf.identity_residual < 1e-10
        np.testing.assert_array_equal(zf.z_of((2,)), zf.z[:, 1])

    def test_frames(self, frame_point: FramePoint):
        fp = frame_point
        zf = z_frame(fp)

        assert len(zf.multi_indices) == fp.m ** (fp.p - 1)
        np.testing.assert_allclose(fp.e @ fp.gbar @ zf.z, 0.0, atol=1e-9)
        assert projector_distance(zf.nhat, fp.normals, fp.gbar) < 1e-8
        assert projector_distance(z_gram_schmidt_frame(fp), fp.normals, fp.gbar) < 1e-8

    def test_oversize(self, surface_r6: SurfaceSpec):
        fp = frame_at(surface_r6, (0.4, 0.7))

        assert fp.m ** (fp.p - 1) > MAX_MULTI_INDICES
        with pytest.raises(ValueError, match="at most `64` multi-indices"):
            z_frame(fp)
        assert z_vectors(fp).shape == (6, 216)

    @pytest.mark.parametrize("rho", ["one", "1 + u1^2 + u2^2", "exp(u2)"])
    def test_density_independent(self, fp_graph: FramePoint, rho: str):
        zf = z_frame(fp_graph)
        other = z_frame(fp_graph.with_density(rho))

        assert projector_distance(other.nhat, zf.nhat, fp_graph.gbar) < 1e-8
        np.testing.assert_allclose(other.eigenvalues, zf.eigenvalues, atol=1e-9)


class TestSTraceScaling:
    @pytest.mark.parametrize("f,h", [("u1", "sin(u2)"), ("1 + u1*u2", "cos(u1)"), (2.0, "u2^2")])
    def test_identity(self, fp_graph: FramePoint, f, h):
        N = fp_graph.normal_jets
        for A in range(2):
            for B in range(2):
                lhs, rhs = s_trace_scaling(fp_graph, N[A], N[B], f, h)
                assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-8)

    def test_zero_function(self, fp_sphere: FramePoint):
        N = fp_sphere.normal_jets[0]
        lhs, rhs = s_trace_scaling(fp_sphere, N, N, "0", "u2")

        assert rhs == 0.0
        assert lhs == pytest.approx(0.0, abs=1e-12)


class TestNested:
    def test_sphere(self, fp_sphere: FramePoint):
        assert k_nested(fp_sphere) == pytest.approx(0.25, rel=1e-8)

    def test_matches_classical(self, frame_point: FramePoint):
        if not frame_point.is_euclidean:
            pytest.skip("Nested brackets need a flat ambient.")
        assert k_nested(frame_point) == pytest.approx(frame_point.K, abs=1e-8)
        np.testing.assert_allclose(h_nested(frame_point), frame_point.H, atol=1e-8)

    def test_clifford(self, fp_clifford: FramePoint):
        assert k_nested(fp_clifford) == pytest.approx(0.0, abs=1e-8)
        assert np.linalg.norm(h_nested(fp_clifford)) == pytest.approx(1 / math.sqrt(2), rel=1e-8)

    def test_shifted_arrangement_differs(self, fp_sphere: FramePoint):
        K = k_nested(fp_sphere, arrangement=NestedArrangement.SHIFTED)

        assert np.isfinite(K)
        assert abs(K - 0.25) > 1e-3
        assert k_nested(fp_sphere, arrangement="standard") == pytest.approx(0.25, rel=1e-8)

    def test_invalid_arrangement(self, fp_sphere: FramePoint):
        with pytest.raises(ValueError, match="Invalid option"):
            k_nested(fp_sphere, arrangement="foo")

    def test_requires_euclidean(self, fp_horosphere: FramePoint):
        with pytest.raises(ValueError, match="euclidean ambient"):
            k_nested(fp_horosphere)
        with pytest.raises(ValueError, match="euclidean ambient"):
            h_nested(fp_horosphere)

    @pytest.mark.parametrize("rho", ["one", "1 + u1^2 + u2^2"])
    def test_density_independent(self, fp_graph: FramePoint, rho: str):
        fp = fp_graph.with_density(rho)

        assert k_nested(fp) == pytest.approx(k_nested(fp_graph), abs=1e-8)
        np.testing.assert_allclose(h_nested(fp), h_nested(fp_graph), atol=1e-8)
