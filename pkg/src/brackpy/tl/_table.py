from __future__ import annotations

import os
from itertools import chain
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np
import pandas as pd
from scanpy import logging as logg

from brackpy._constants._pkg_constants import Key
from brackpy._docs import d, inject_docs
from brackpy._utils import NDArrayA, Signal, SigQueue, _get_n_cores, parallelize
from brackpy.geo._classical import frame_at
from brackpy.geo._surface import DegenerateSurfaceError, GridSpec, SurfaceSpec
from brackpy.pb._theorems import gaussian_curvature_poisson, mean_curvature_poisson
from brackpy.pb._znormals import k_nested
from brackpy.sym._scalar import DomainError
from brackpy.tl._check import FLOAT_FORMAT

__all__ = ["curvature_table", "write_table"]

PathLike = Union[os.PathLike, str]


def _row(spec: SurfaceSpec, u: tuple[float, float]) -> dict[str, Any]:
    fp = frame_at(spec, u)
    H = mean_curvature_poisson(fp)
    return {
        "u1": u[0],
        "u2": u[1],
        Key.table.k("classical"): fp.K,
        Key.table.k("poisson"): gaussian_curvature_poisson(fp),
        Key.table.k("nested"): k_nested(fp) if fp.is_euclidean else np.nan,
        Key.table.h_norm("classical"): float(np.sqrt(fp.H @ fp.gbar @ fp.H)),
        Key.table.h_norm("poisson"): float(np.sqrt(H @ fp.gbar @ H)),
        "sqrt_g": fp.sqrt_g,
        "rho": fp.rho.val,
    }


def _table_helper(
    points: Sequence[NDArrayA], spec: SurfaceSpec, queue: SigQueue | None = None
) -> list[dict[str, Any] | tuple[float, float]]:
    res: list[dict[str, Any] | tuple[float, float]] = []
    for u in points:
        u = (float(u[0]), float(u[1]))
        try:
            res.append(_row(spec, u))
        except (DegenerateSurfaceError, DomainError) as e:
            logg.warning(f"Skipping point `u={u}`. Reason: `{e}`")
            res.append(u)
        if queue is not None:
            queue.put(Signal.UPDATE)

    if queue is not None:
        queue.put(Signal.FINISH)

    return res


@d.dedent
@inject_docs(cols=Key.table.columns())
def curvature_table(
    spec: SurfaceSpec,
    grid: GridSpec,
    n_jobs: int | None = None,
    backend: str = "loky",
    show_progress_bar: bool = False,
) -> pd.DataFrame:
    """
    Tabulate the curvatures from the classical, the bracket and the nested-bracket formulas on a grid.

    Parameters
    ----------
    %(spec)s
    %(grid)s
    %(parallelize)s

    Returns
    -------
    Data frame with the columns ``{cols}``, one row per non-degenerate grid point in row-major order.
    The nested curvature is `NaN` for a curved ambient. The number of skipped points is stored in
    :attr:`pandas.DataFrame.attrs` ``['n_skipped']``.
    """
    points = grid.points()
    n_jobs = _get_n_cores(n_jobs)
    start = logg.info(f"Tabulating curvatures at `{len(points)}` points using `{n_jobs}` core(s)")
    rows = parallelize(
        _table_helper,
        collection=points,
        extractor=lambda res: list(chain.from_iterable(res)),
        n_jobs=n_jobs,
        backend=backend,
        unit="point",
        show_progress_bar=show_progress_bar,
    )(spec=spec)

    df = pd.DataFrame([r for r in rows if isinstance(r, dict)], columns=Key.table.columns())
    df.attrs["n_skipped"] = sum(1 for r in rows if not isinstance(r, dict))
    logg.info("Finish", time=start)
    return df


def write_table(df: pd.DataFrame, path: PathLike | None = None) -> str:
    """
    Format a curvature table as comma-separated records with 17 significant digits.

    Missing values are written as empty fields and lines end with ``\\n``. If ``path`` is given, the text is also
    written there.
    """
    text = df.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    if path is not None:
        with open(Path(path), "w", encoding="utf-8", newline="\n") as fout:
            fout.write(text)
    return text
