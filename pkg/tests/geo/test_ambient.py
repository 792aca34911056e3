import numpy as np
import pytest
from brackpy.geo import AmbientManifold, christoffel, metric_at, metric_jet, riemann_tensor, riemann_term
from brackpy.sym import Jet2, slot, values

HYPERBOLIC = {(1, 1): "1/x3^2", (2, 2): "1/x3^2", (3, 3): "1/x3^2"}


@pytest.fixture(scope="module")
def hyperbolic() -> AmbientManifold:
    return AmbientManifold.from_entries(3, HYPERBOLIC)


class TestAmbientManifold:
    def test_euclidean(self):
        M = AmbientManifold.euclidean(4)
        g, ginv = metric_at(M, np.zeros(4))

        assert M.is_euclidean
        np.testing.assert_array_equal(g, np.eye(4))
        np.testing.assert_array_equal(ginv, np.eye(4))
        np.testing.assert_array_equal(christoffel(M, np.zeros(4)), np.zeros((4, 4, 4)))
        assert riemann_term(M, np.zeros(4), np.eye(4)[0], np.eye(4)[1]) == 0.0

    @pytest.mark.parametrize("m", [2, 7])
    def test_invalid_dimension(self, m: int):
        with pytest.raises(ValueError, match=r"\[3, 6\]"):
            AmbientManifold.euclidean(m)

    def test_missing_entries_are_zero(self):
        M = AmbientManifold.from_entries(3, {(1, 1): "1", (2, 2): "1", (3, 3): "1", (1, 2): "0.5"})

        np.testing.assert_array_equal(M.evaluate_metric([0.0, 0.0, 0.0]), [[1, 0.5, 0], [0.5, 1, 0], [0, 0, 1]])

    def test_conflicting_entries(self):
        with pytest.raises(ValueError, match="Conflicting"):
            AmbientManifold.from_entries(3, {(1, 2): "x1", (2, 1): "x2"})

    def test_foreign_variable(self):
        with pytest.raises(ValueError, match="depend on"):
            AmbientManifold.from_entries(3, {(1, 1): "u1", (2, 2): "1", (3, 3): "1"})

    def test_wrong_point(self, hyperbolic: AmbientManifold):
        with pytest.raises(ValueError, match="`3` coordinates"):
            hyperbolic.evaluate_metric([1.0, 1.0])

    def test_not_positive_definite(self):
        M = AmbientManifold.from_entries(3, {(1, 1): "1", (2, 2): "-1", (3, 3): "1"})

        with pytest.raises(ValueError, match="positive definite"):
            metric_at(M, [0.0, 0.0, 0.0])


class TestHyperbolic:
    def test_metric(self, hyperbolic: AmbientManifold):
        g, ginv = metric_at(hyperbolic, [0.3, -1.0, 2.0])

        np.testing.assert_allclose(g, 0.25 * np.eye(3))
        np.testing.assert_allclose(ginv, 4.0 * np.eye(3))

    @pytest.mark.parametrize("z", [1.0, 2.5])
    def test_christoffel(self, hyperbolic: AmbientManifold, z: float):
        # Gamma^i_jk = -(delta_ij delta_k3 + delta_ik delta_j3 - delta_jk delta_i3) / z
        d = np.eye(3)
        expected = -(np.einsum("ij,k->ijk", d, d[2]) + np.einsum("ik,j->ijk", d, d[2]) - np.einsum("jk,i->ijk", d, d[2]))
        gamma = christoffel(hyperbolic, [0.1, 0.2, z])

        np.testing.assert_allclose(gamma, expected / z, atol=1e-14)
        np.testing.assert_allclose(gamma, np.swapaxes(gamma, 1, 2))

    @pytest.mark.parametrize("z", [1.0, 2.0, 0.5])
    def test_sectional_curvature(self, hyperbolic: AmbientManifold, z: float):
        e1, e2 = z * np.eye(3)[0], z * np.eye(3)[2]  # unit vectors at height z

        assert riemann_term(hyperbolic, [0.0, 0.0, z], e1, e2) == pytest.approx(-1.0, rel=1e-12)

    def test_riemann_symmetries(self, hyperbolic: AmbientManifold):
        x = [0.1, 0.2, 1.3]
        g = hyperbolic.evaluate_metric(x)
        R = np.einsum("im,mjkl->ijkl", g, riemann_tensor(hyperbolic, x))  # all indices down

        np.testing.assert_allclose(R, -np.swapaxes(R, 2, 3), atol=1e-12)
        np.testing.assert_allclose(R, -np.swapaxes(R, 0, 1), atol=1e-12)
        np.testing.assert_allclose(R, np.einsum("ijkl->klij", R), atol=1e-12)

    def test_metric_jet(self, hyperbolic: AmbientManifold):
        x = [Jet2(0.0), Jet2(0.0), Jet2(2.0, 1.0, 0.0)]
        g = metric_jet(hyperbolic, x)

        np.testing.assert_allclose(values(g), 0.25 * np.eye(3))
        np.testing.assert_allclose(slot(g, "d1"), -0.25 * np.eye(3))  # d/du1 x3^-2 = -2 x3^-3


class TestSkewMetric:
    ENTRIES = {
        (1, 1): "2 + sin(x2)",
        (2, 2): "1 + x1^2",
        (3, 3): "exp(x1)",
        (1, 2): "0.3*x3",
        (1, 3): "0.2*x1*x2",
        (2, 3): "0.1*cos(x3)",
    }

    def test_christoffel_matches_differences(self):
        M = AmbientManifold.from_entries(3, self.ENTRIES)
        x = np.array([0.4, -0.3, 0.7])
        h = 1e-5

        g, ginv = metric_at(M, x)
        # dg[l, j, k] = d_l g_jk
        dg = np.stack([(metric_at(M, x + h * e)[0] - metric_at(M, x - h * e)[0]) / (2 * h) for e in np.eye(3)])
        lowered = 0.5 * (np.einsum("jlk->ljk", dg) + np.einsum("klj->ljk", dg) - dg)
        expected = np.einsum("il,ljk->ijk", ginv, lowered)

        assert abs(g[0, 1]) > 0.1
        np.testing.assert_allclose(christoffel(M, x), expected, atol=1e-8)
