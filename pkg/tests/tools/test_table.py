from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from brackpy._constants._pkg_constants import Key
from brackpy.geo import GridSpec, SurfaceSpec
from brackpy.tl import curvature_table, write_table

from tests.conftest import SMALL_GRID


class TestCurvatureTable:
    def test_sphere(self, sphere: SurfaceSpec):
        df = curvature_table(sphere, SMALL_GRID, n_jobs=1)

        assert list(df.columns) == Key.table.columns()
        assert len(df) == 9
        assert df.attrs["n_skipped"] == 0
        np.testing.assert_allclose(df[["u1", "u2"]].to_numpy(), SMALL_GRID.points())
        for route in ("classical", "poisson", "nested"):
            np.testing.assert_allclose(df[Key.table.k(route)], 0.25, rtol=1e-8)
        for route in ("classical", "poisson"):
            np.testing.assert_allclose(df[Key.table.h_norm(route)], 0.5, rtol=1e-8)
        np.testing.assert_allclose(df["rho"], df["sqrt_g"])

    def test_catenoid(self, catenoid: SurfaceSpec):
        df = curvature_table(catenoid, SMALL_GRID, n_jobs=1)

        np.testing.assert_allclose(df[Key.table.k("poisson")], -1.0 / np.cosh(df["u1"]) ** 4, rtol=1e-8)
        np.testing.assert_allclose(df[Key.table.h_norm("poisson")], 0.0, atol=1e-8)

    def test_curved(self, horosphere: SurfaceSpec):
        df = curvature_table(horosphere, SMALL_GRID, n_jobs=1)

        assert df[Key.table.k("nested")].isna().all()
        np.testing.assert_allclose(df[Key.table.k("poisson")], 0.0, atol=1e-10)

    def test_custom_density(self, torus: SurfaceSpec):
        df = curvature_table(torus.with_density("one"), SMALL_GRID, n_jobs=1)
        ref = curvature_table(torus, SMALL_GRID, n_jobs=1)

        np.testing.assert_allclose(df["rho"], 1.0)
        np.testing.assert_allclose(df[Key.table.k("poisson")], ref[Key.table.k("poisson")], atol=1e-10)

    def test_skipped(self, sphere: SurfaceSpec):
        df = curvature_table(sphere, GridSpec(u1=(0.0, 1.0, 3), u2=(0.2, 0.8, 2)), n_jobs=1)

        assert len(df) == 4
        assert df.attrs["n_skipped"] == 2
        assert (df["u1"] > 0).all()

    def test_parallelize(self, graph_r4: SurfaceSpec):
        seq = curvature_table(graph_r4, SMALL_GRID, n_jobs=1)
        par = curvature_table(graph_r4, SMALL_GRID, n_jobs=2)

        pd.testing.assert_frame_equal(seq, par)


class TestWriteTable:
    def test_format(self, horosphere: SurfaceSpec, tmp_path: Path):
        df = curvature_table(horosphere, GridSpec(u1=(-1.0, 1.0, 2), u2=(0.0, 1.0, 2)), n_jobs=1)
        path = tmp_path / "table.csv"
        text = write_table(df, path)

        assert path.read_bytes().decode("utf-8") == text
        lines = text.split("\n")
        assert lines[0] == ",".join(Key.table.columns())
        assert lines[-1] == ""
        assert len(lines) == 2 + len(df)
        # empty field for the missing nested curvature
        assert lines[1].split(",")[4] == ""

    @pytest.mark.parametrize("value", [0.1, 1 / 3, 2.0**-40])
    def test_precision(self, value: float):
        text = write_table(pd.DataFrame({"a": [value]}))

        assert float(text.split("\n")[1]) == value
