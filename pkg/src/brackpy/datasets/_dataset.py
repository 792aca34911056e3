from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from scanpy import logging as logg

from brackpy.geo._surface import GridSpec, SurfaceSpec
from brackpy.read._read import parse_spec

__all__ = [
    "plane",
    "sphere",
    "torus",
    "catenoid",
    "clifford_torus",
    "horosphere",
    "graph_r4",
    "names",
    "path",
]

_EXT = ".surf"


@dataclass(frozen=True)
class SurfaceMetadata:
    """Golden surface shipped with the package."""

    name: str
    doc_header: str | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.doc_header is None:
            object.__setattr__(self, "doc_header", f"Load the `{self.name.replace('_', ' ')}` surface.")

    @property
    def path(self) -> Path:
        return Path(str(resources.files("brackpy.datasets").joinpath("_data", f"{self.name}{_EXT}")))

    def load(self) -> tuple[SurfaceSpec, GridSpec]:
        logg.debug(f"Loading dataset `{self.name}` from `{self.path}`")
        return parse_spec(self.path.read_text(encoding="utf-8"), label=self.name)

    def _create_function(self) -> Callable[[], tuple[SurfaceSpec, GridSpec]]:
        def loader() -> tuple[SurfaceSpec, GridSpec]:
            return self.load()

        loader.__name__ = loader.__qualname__ = self.name
        loader.__doc__ = (
            f"{self.doc_header}\n\n"
            "    Returns\n"
            "    -------\n"
            "    The surface and its sampling grid.\n"
        )
        return loader


_DATASETS = {
    m.name: m
    for m in (
        SurfaceMetadata("plane", "Load the plane ``x3 = 0`` in ``R^3``."),
        SurfaceMetadata("sphere", "Load the round sphere of radius `2` in ``R^3``, sampled away from the poles."),
        SurfaceMetadata("torus", "Load the torus of revolution with radii `2` and `1` in ``R^3``."),
        SurfaceMetadata("catenoid", "Load the catenoid, a minimal surface in ``R^3``."),
        SurfaceMetadata("clifford_torus", "Load the flat Clifford torus in ``R^4``."),
        SurfaceMetadata("horosphere", "Load the horosphere ``x3 = 1`` in the upper half space model of ``H^3``."),
        SurfaceMetadata("graph_r4", "Load the graph of ``(u1 u2, u1^2 - u2^2)`` in ``R^4``."),
    )
}

plane = _DATASETS["plane"]._create_function()
sphere = _DATASETS["sphere"]._create_function()
torus = _DATASETS["torus"]._create_function()
catenoid = _DATASETS["catenoid"]._create_function()
clifford_torus = _DATASETS["clifford_torus"]._create_function()
horosphere = _DATASETS["horosphere"]._create_function()
graph_r4 = _DATASETS["graph_r4"]._create_function()


def names() -> list[str]:
    """Names of the shipped surfaces."""
    return list(_DATASETS)


def path(name: str) -> Path:
    """
    Path of a shipped surface spec file.

    Parameters
    ----------
    name
        Name of the surface, see :func:`names`.

    Returns
    -------
    The path.
    """
    if name not in _DATASETS:
        raise KeyError(f"Unknown dataset `{name}`, valid options are: `{names()}`.")
    return _DATASETS[name].path
