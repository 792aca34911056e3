from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import chain
from pathlib import Path
from typing import Any, Mapping, Sequence, Union

import numpy as np
import pandas as pd
from scanpy import logging as logg

from brackpy._constants._pkg_constants import TOLERANCES, Key
from brackpy._docs import d, inject_docs
from brackpy._utils import NDArrayA, Signal, SigQueue, _get_n_cores, parallelize
from brackpy.geo._surface import DegenerateSurfaceError, GridSpec, SurfaceSpec
from brackpy.pb._znormals import MAX_MULTI_INDICES
from brackpy.sym._scalar import DomainError
from brackpy.tl._point import evaluate_point

__all__ = ["Report", "check_grid", "resolve_tolerances", "FLOAT_FORMAT"]

PathLike = Union[os.PathLike, str]

FLOAT_FORMAT = "%.17g"
ALL = "all"


def resolve_tolerances(overrides: Mapping[str, float] | None = None) -> dict[str, float]:
    """
    Merge tolerance overrides into the defaults.

    Parameters
    ----------
    overrides
        Tolerance per check name; the name `'all'` sets every tolerance and is applied first.

    Returns
    -------
    Tolerance per check, in the default order.
    """
    tols = dict(TOLERANCES)
    overrides = dict(overrides or {})
    unknown = sorted(set(overrides) - set(tols) - {ALL})
    if unknown:
        raise KeyError(f"Unknown tolerance names `{unknown}`, valid options are: `{[ALL, *tols]}`.")
    for name, value in overrides.items():
        if not value >= 0:
            raise ValueError(f"Expected tolerance `{name}` to be non-negative, found `{value}`.")
    if ALL in overrides:
        tols = {k: float(overrides[ALL]) for k in tols}
    tols.update({k: float(v) for k, v in overrides.items() if k != ALL})
    return tols


@dataclass(frozen=True, eq=False)
class Report:
    """Outcome of :func:`check_grid`: one row per check and the run metadata."""

    table: pd.DataFrame
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Whether every check passed and at least one point was evaluated."""
        return bool(self.meta.get(Key.meta.n_points, 0) > self.meta.get(Key.meta.n_skipped, 0)) and bool(
            self.table[Key.report.passed].all()
        )

    @property
    def failed(self) -> list[str]:
        return list(self.table.loc[~self.table[Key.report.passed], Key.report.name])

    def header(self) -> str:
        return "".join(f"# {k}: {v}\n" for k, v in self.meta.items())

    def to_text(self) -> str:
        """Human-readable table with the metadata as comment lines."""
        body = self.table.to_string(index=False, float_format=lambda v: f"{v:.3e}", na_rep="")
        return self.header() + body + "\n"

    def to_csv(self) -> str:
        """Machine-readable report, metadata lines followed by comma-separated records."""
        return self.header() + self.table.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

    def write(self, path: PathLike) -> None:
        with open(Path(path), "w", encoding="utf-8", newline="\n") as fout:
            fout.write(self.to_csv())


def _check_helper(
    points: Sequence[NDArrayA],
    spec: SurfaceSpec,
    checks: Sequence[str],
    queue: SigQueue | None = None,
) -> list[tuple[tuple[float, float], dict[str, float] | str]]:
    res: list[tuple[tuple[float, float], dict[str, float] | str]] = []
    for u in points:
        u = (float(u[0]), float(u[1]))
        try:
            res.append((u, evaluate_point(spec, u, checks)))
        except (DegenerateSurfaceError, DomainError) as e:
            res.append((u, str(e)))
        if queue is not None:
            queue.put(Signal.UPDATE)

    if queue is not None:
        queue.put(Signal.FINISH)

    return res


@d.dedent
@inject_docs(cols=Key.report.columns())
def check_grid(
    spec: SurfaceSpec,
    grid: GridSpec,
    tolerances: Mapping[str, float] | None = None,
    n_jobs: int | None = None,
    backend: str = "loky",
    show_progress_bar: bool = False,
) -> Report:
    """
    Evaluate every identity at every grid point and compare the worst deviation with its tolerance.

    Parameters
    ----------
    %(spec)s
    %(grid)s
    %(tolerances)s
    %(parallelize)s

    Returns
    -------
    Report with columns ``{cols}`` and the metadata ``label``, ``rho``, ``grid``, ``n_points``, ``n_skipped`` and
    ``skipped``. Checks that do not apply anywhere on the grid are left out. The result does not depend on ``n_jobs``.

    Raises
    ------
    brackpy.geo.DensityError
        If the density vanishes at a grid point.
    """
    tols = resolve_tolerances(tolerances)
    checks = list(tols)
    if spec.m ** (spec.p - 1) > MAX_MULTI_INDICES:
        logg.warning(
            f"Multi-index space of size `{spec.m ** (spec.p - 1)}` exceeds `{MAX_MULTI_INDICES}`, "
            "skipping the Z-matrix checks"
        )

    points = grid.points()
    n_jobs = _get_n_cores(n_jobs)
    start = logg.info(f"Checking `{len(checks)}` identities at `{len(points)}` points using `{n_jobs}` core(s)")
    results = parallelize(
        _check_helper,
        collection=points,
        extractor=lambda res: list(chain.from_iterable(res)),
        n_jobs=n_jobs,
        backend=backend,
        unit="point",
        show_progress_bar=show_progress_bar,
    )(spec=spec, checks=checks)

    skipped = [(u, msg) for u, msg in results if isinstance(msg, str)]
    for u, msg in skipped:
        logg.warning(f"Skipping point `u={u}`. Reason: `{msg}`")
    evaluated = [(u, devs) for u, devs in results if not isinstance(devs, str)]

    rows = []
    for name in checks:
        devs = np.array([r[name] for _, r in evaluated], dtype=np.float64)
        if not devs.size or np.all(np.isnan(devs)):
            logg.debug(f"Check `{name}` does not apply to `{spec.label or 'surface'}`")
            continue
        ix = int(np.nanargmax(devs))
        worst = float(devs[ix])
        rows.append(
            {
                Key.report.name: name,
                Key.report.max_abs_dev: worst,
                Key.report.u1: evaluated[ix][0][0],
                Key.report.u2: evaluated[ix][0][1],
                Key.report.tolerance: tols[name],
                Key.report.passed: bool(worst <= tols[name]),
            }
        )
    table = pd.DataFrame(rows, columns=Key.report.columns())
    table[Key.report.passed] = table[Key.report.passed].astype(bool)

    meta = {
        Key.meta.label: spec.label,
        Key.meta.rho: str(spec.density),
        Key.meta.grid: f"{grid.shape[0]}x{grid.shape[1]}",
        Key.meta.n_points: len(points),
        Key.meta.n_skipped: len(skipped),
        Key.meta.skipped: ";".join(f"{u[0]!r},{u[1]!r}" for u, _ in skipped),
    }
    logg.info("Finish", time=start)
    return Report(table=table, meta=meta)

