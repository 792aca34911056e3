from __future__ import annotations

import os
import re
from pathlib import Path
from typing import Union

from scanpy import logging as logg

from brackpy.geo._ambient import AmbientManifold
from brackpy.geo._surface import Density, GridSpec, SurfaceSpec
from brackpy.sym._expr import Expr, ExprSyntaxError, parse

__all__ = ["SpecFileError", "load_spec", "parse_spec"]

PathLike = Union[os.PathLike, str]

_SECTIONS = ("ambient", "embedding", "density", "grid")
_SECTION_RE = re.compile(r"^\[\s*(?P<name>[A-Za-z_]+)\s*\]$")
_ENTRY_RE = re.compile(r"^(?P<key>[A-Za-z_][A-Za-z0-9_.]*)\s*=\s*(?P<value>.*)$")
_METRIC_RE = re.compile(r"^g\.(?P<i>[1-9])\.(?P<j>[1-9])$")
_GRID_KEYS = tuple(f"{c}.{k}" for c in ("u1", "u2") for k in ("min", "max", "count"))


class SpecFileError(ValueError):
    """Malformed or inconsistent surface spec file."""

    def __init__(self, msg: str, lineno: int | None = None, path: PathLike | None = None):
        where = f"{path or '<spec>'}:{lineno}: " if lineno is not None else f"{path}: " if path is not None else ""
        super().__init__(f"{where}{msg}")
        self.msg = msg
        self.lineno = lineno
        self.path = path


def _strip_comment(line: str) -> str:
    quoted = False
    for k, c in enumerate(line):
        if c == '"':
            quoted = not quoted
        elif c == "#" and not quoted:
            return line[:k]
    return line


class _Entry:
    __slots__ = ("value", "quoted", "lineno")

    def __init__(self, raw: str, lineno: int):
        raw = raw.strip()
        self.lineno = lineno
        self.quoted = len(raw) >= 2 and raw[0] == raw[-1] == '"'
        if not self.quoted and '"' in raw:
            raise SpecFileError(f"Unbalanced quotes in `{raw}`.", lineno)
        self.value = raw[1:-1] if self.quoted else raw
        if not self.value.strip():
            raise SpecFileError("Expected a value, found nothing.", lineno)

    def number(self, kind: type = float) -> float:
        try:
            return kind(self.value)
        except ValueError:
            raise SpecFileError(f"Expected `{kind.__name__}`, found `{self.value}`.", self.lineno) from None


def _tokenize(text: str) -> tuple[dict[str, dict[str, _Entry]], dict[str, int]]:
    sections: dict[str, dict[str, _Entry]] = {}
    headers: dict[str, int] = {}
    current: str | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(line).strip()
        if not line:
            continue
        match = _SECTION_RE.match(line)
        if match is not None:
            current = match["name"].lower()
            if current not in _SECTIONS:
                raise SpecFileError(f"Unknown section `{current}`, valid options are: `{list(_SECTIONS)}`.", lineno)
            if current in sections:
                raise SpecFileError(f"Duplicate section `{current}`.", lineno)
            sections[current] = {}
            headers[current] = lineno
            continue
        match = _ENTRY_RE.match(line)
        if match is None:
            raise SpecFileError(f"Expected `key = value` or `[section]`, found `{line}`.", lineno)
        key = match["key"]
        section = current if current is not None else ""
        if key in sections.setdefault(section, {}):
            raise SpecFileError(f"Duplicate key `{key}`.", lineno)
        sections[section][key] = _Entry(match["value"], lineno)
    return sections, headers


def _expr(entry: _Entry) -> Expr:
    try:
        return parse(entry.value)
    except ExprSyntaxError as e:
        raise SpecFileError(str(e), entry.lineno) from e


def _ambient(entries: dict[str, _Entry], lineno: int) -> AmbientManifold:
    if "dim" not in entries:
        raise SpecFileError("Missing key `dim` in section `ambient`.", lineno)
    m = int(entries["dim"].number(int))
    metric = entries.get("metric")
    explicit: dict[tuple[int, int], Expr] = {}
    for key, entry in entries.items():
        if key in ("dim", "metric"):
            continue
        match = _METRIC_RE.match(key)
        if match is None:
            raise SpecFileError(f"Unknown key `{key}` in section `ambient`.", entry.lineno)
        i, j = int(match["i"]), int(match["j"])
        if not (i <= m and j <= m):
            raise SpecFileError(f"Expected metric indices in `[1, {m}]`, found `({i}, {j})`.", entry.lineno)
        explicit[i, j] = _expr(entry)

    try:
        if metric is not None:
            if metric.quoted or metric.value != "euclidean":
                raise SpecFileError(f"Expected `metric = euclidean`, found `{metric.value}`.", metric.lineno)
            if explicit:
                raise SpecFileError("Expected either `metric = euclidean` or `g.i.j` entries, found both.", lineno)
            return AmbientManifold.euclidean(m)
        if not explicit:
            raise SpecFileError("Missing metric in section `ambient`.", lineno)
        return AmbientManifold.from_entries(m, explicit)
    except SpecFileError:
        raise
    except ValueError as e:
        raise SpecFileError(str(e), lineno) from e


def _embedding(entries: dict[str, _Entry], m: int, lineno: int) -> tuple[Expr, ...]:
    names = [f"x{k + 1}" for k in range(m)]
    for key, entry in entries.items():
        if not re.fullmatch(r"x[1-9][0-9]*", key):
            raise SpecFileError(f"Unknown key `{key}` in section `embedding`.", entry.lineno)
    if sorted(entries) != sorted(names):
        raise SpecFileError(
            f"Expected `{m}` embedding expressions `{names}` for a `{m}`-dimensional ambient, "
            f"found `{sorted(entries)}`.",
            lineno,
        )
    return tuple(_expr(entries[name]) for name in names)


def _grid(entries: dict[str, _Entry], lineno: int) -> GridSpec:
    for key, entry in entries.items():
        if key not in _GRID_KEYS:
            raise SpecFileError(f"Unknown key `{key}` in section `grid`, valid options are: `{list(_GRID_KEYS)}`.", entry.lineno)
    missing = [k for k in _GRID_KEYS if k not in entries]
    if missing:
        raise SpecFileError(f"Missing keys `{missing}` in section `grid`.", lineno)
    coords = {
        c: (entries[f"{c}.min"].number(), entries[f"{c}.max"].number(), int(entries[f"{c}.count"].number(int)))
        for c in ("u1", "u2")
    }
    try:
        return GridSpec(**coords)
    except ValueError as e:
        raise SpecFileError(str(e), lineno) from e


def parse_spec(text: str, label: str = "") -> tuple[SurfaceSpec, GridSpec]:
    """
    Parse the contents of a surface spec file.

    Parameters
    ----------
    text
        File contents.
    label
        Default label, used when the file does not set one.

    Returns
    -------
    The surface and the sampling grid.

    Raises
    ------
    SpecFileError
        On syntax errors, unknown sections or keys, missing entries and dimension mismatches.
    """
    sections, headers = _tokenize(text)
    top = sections.pop("", {})
    for key, entry in top.items():
        if key != "label":
            raise SpecFileError(f"Expected key `{key}` inside a section.", entry.lineno)
    if "label" in top:
        label = top["label"].value

    for name in ("ambient", "embedding", "grid"):
        if name not in sections:
            raise SpecFileError(f"Missing section `{name}`.")

    ambient = _ambient(sections["ambient"], headers["ambient"])
    embedding = _embedding(sections["embedding"], ambient.m, headers["embedding"])

    density = Density.create("sqrt_g")
    if "density" in sections:
        entries = sections["density"]
        for key, entry in entries.items():
            if key != "rho":
                raise SpecFileError(f"Unknown key `{key}` in section `density`.", entry.lineno)
        if "rho" in entries:
            entry = entries["rho"]
            try:
                density = Density.create(entry.value)
            except ValueError as e:
                raise SpecFileError(str(e), entry.lineno) from e

    grid = _grid(sections["grid"], headers["grid"])
    return SurfaceSpec(ambient, embedding, density, label), grid


def load_spec(path: PathLike) -> tuple[SurfaceSpec, GridSpec]:
    """
    Read a surface spec file.

    The file consists of the sections ``[ambient]``, ``[embedding]``, ``[density]`` (optional) and ``[grid]`` with
    entries ``key = "expression"`` or ``key = value``; ``#`` starts a comment. The label defaults to the file name.

    Parameters
    ----------
    path
        Path to the file.

    Returns
    -------
    The surface and the sampling grid.

    Raises
    ------
    SpecFileError
        If the file is malformed, see :func:`parse_spec`.
    OSError
        If the file cannot be read.
    """
    path = Path(path)
    logg.debug(f"Reading surface spec from `{path}`")
    try:
        return parse_spec(path.read_text(encoding="utf-8"), label=path.stem)
    except SpecFileError as e:
        raise SpecFileError(e.msg, e.lineno, path) from None
