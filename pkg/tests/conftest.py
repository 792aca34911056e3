from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

import brackpy as bp
from brackpy.geo import AmbientManifold, FramePoint, GridSpec, SurfaceSpec, frame_at
from brackpy.sym import parse

HERE: Path = Path(__file__).parent

SPHERE_U = (math.pi / 3, 0.7)
TORUS_U = (0.0, 1.0)
CATENOID_U = (0.4, 1.1)
CLIFFORD_U = (0.5, 0.9)
HOROSPHERE_U = (0.3, -0.2)
GRAPH_U = (0.6, 0.5)
PLANE_U = (0.2, 0.3)

SMALL_GRID = GridSpec(u1=(0.4, 1.2, 3), u2=(0.3, 1.1, 3))

SPHERE_TEXT = """\
# round sphere of radius 2
label = "small_sphere"

[ambient]
dim = 3
metric = euclidean

[embedding]
x1 = "2*sin(u1)*cos(u2)"
x2 = "2*sin(u1)*sin(u2)"
x3 = "2*cos(u1)"

[density]
rho = sqrt_g

[grid]
u1.min = 0.5
u1.max = 1.5
u1.count = 3
u2.min = 0.2
u2.max = 1.0
u2.count = 2
"""


def pytest_sessionstart(session: pytest.Session) -> None:
    np.random.seed(42)


@pytest.fixture(scope="session")
def plane() -> SurfaceSpec:
    return bp.datasets.plane()[0]


@pytest.fixture(scope="session")
def sphere() -> SurfaceSpec:
    return bp.datasets.sphere()[0]


@pytest.fixture(scope="session")
def torus() -> SurfaceSpec:
    return bp.datasets.torus()[0]


@pytest.fixture(scope="session")
def catenoid() -> SurfaceSpec:
    return bp.datasets.catenoid()[0]


@pytest.fixture(scope="session")
def clifford_torus() -> SurfaceSpec:
    return bp.datasets.clifford_torus()[0]


@pytest.fixture(scope="session")
def horosphere() -> SurfaceSpec:
    return bp.datasets.horosphere()[0]


@pytest.fixture(scope="session")
def graph_r4() -> SurfaceSpec:
    return bp.datasets.graph_r4()[0]


@pytest.fixture(scope="session")
def surface_r6() -> SurfaceSpec:
    embedding = ("u1", "u2", "u1*u2", "u1^2", "u2^2", "u1 + u2^3")
    return SurfaceSpec(AmbientManifold.euclidean(6), tuple(parse(e) for e in embedding), label="surface_r6")


@pytest.fixture(scope="session")
def fp_plane(plane: SurfaceSpec) -> FramePoint:
    return frame_at(plane, PLANE_U)


@pytest.fixture(scope="session")
def fp_sphere(sphere: SurfaceSpec) -> FramePoint:
    return frame_at(sphere, SPHERE_U)


@pytest.fixture(scope="session")
def fp_sphere_custom(sphere: SurfaceSpec) -> FramePoint:
    return frame_at(sphere.with_density("1 + u1^2 + u2^2"), SPHERE_U)


@pytest.fixture(scope="session")
def fp_torus(torus: SurfaceSpec) -> FramePoint:
    return frame_at(torus, TORUS_U)


@pytest.fixture(scope="session")
def fp_catenoid(catenoid: SurfaceSpec) -> FramePoint:
    return frame_at(catenoid, CATENOID_U)


@pytest.fixture(scope="session")
def fp_clifford(clifford_torus: SurfaceSpec) -> FramePoint:
    return frame_at(clifford_torus, CLIFFORD_U)


@pytest.fixture(scope="session")
def fp_horosphere(horosphere: SurfaceSpec) -> FramePoint:
    return frame_at(horosphere, HOROSPHERE_U)


@pytest.fixture(scope="session")
def fp_graph(graph_r4: SurfaceSpec) -> FramePoint:
    return frame_at(graph_r4, GRAPH_U)


@pytest.fixture(
    params=[
        "fp_sphere",
        "fp_sphere_custom",
        "fp_torus",
        "fp_catenoid",
        "fp_clifford",
        "fp_horosphere",
        "fp_graph",
    ]
)
def frame_point(request: pytest.FixtureRequest) -> FramePoint:
    return request.getfixturevalue(request.param)


@pytest.fixture()
def sphere_file(tmp_path: Path) -> Path:
    path = tmp_path / "small_sphere.surf"
    path.write_text(SPHERE_TEXT, encoding="utf-8")
    return path
