"""Plain-text CSV files for grids and time series.

Grid file layout::

    # nx ny dx dy x0 y0 t
    # 8 8 0.25 0.25 -1 -1 0
    j,k,x,y,re,im
    0,0,-1,-1,0.0183...,0
    ...

Rows run with j (x index) fastest. Floats are written with 17 significant
digits, so a write/read round trip is bit-exact.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatchError, MalformedHeaderError
from ..fouriernd import Grid2D, GridMeta

HEADER_FIELDS = ("nx", "ny", "dx", "dy", "x0", "y0", "t")
COLUMNS = ("j", "k", "x", "y", "re", "im")


def _fmt(v):
    return format(float(v), ".17g")


def write_grid_csv(g, path):
    path = Path(path)
    m = g.meta
    x, y = m.axes()
    with path.open("w", newline="") as fh:
        fh.write("# " + " ".join(HEADER_FIELDS) + "\n")
        fh.write("# " + " ".join([str(m.nx), str(m.ny)] + [_fmt(v) for v in (m.dx, m.dy, m.x0, m.y0, g.time)]) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for k in range(m.ny):
            for j in range(m.nx):
                v = g.values[k, j]
                w.writerow((j, k, _fmt(x[j]), _fmt(y[k]), _fmt(v.real), _fmt(v.imag)))
    return path


def _parse_header(lines, path):
    if len(lines) < 3:
        raise MalformedHeaderError(f"{path}: missing header lines")
    names = lines[0].lstrip("#").split()
    if not lines[0].startswith("#") or tuple(names) != HEADER_FIELDS:
        raise MalformedHeaderError(f"{path}: first line must be '# {' '.join(HEADER_FIELDS)}'")
    fields = lines[1].lstrip("#").split()
    if not lines[1].startswith("#") or len(fields) != len(HEADER_FIELDS):
        raise MalformedHeaderError(f"{path}: second line must hold {len(HEADER_FIELDS)} values")
    try:
        nx, ny = int(fields[0]), int(fields[1])
        dx, dy, x0, y0, t = (float(f) for f in fields[2:])
        meta = GridMeta(nx, ny, dx, dy, x0, y0)
    except ValueError as e:
        raise MalformedHeaderError(f"{path}: bad header values: {e}") from e
    if lines[2].strip().split(",") != list(COLUMNS):
        raise MalformedHeaderError(f"{path}: expected column row {','.join(COLUMNS)}")
    return meta, t


def read_grid_csv(path):
    """Inverse of :func:`write_grid_csv`.

    Raises :class:`MalformedHeaderError` for a missing or garbled header and
    :class:`DimensionMismatchError` when the rows do not fill the grid.
    """
    path = Path(path)
    text = path.read_text()
    lines = text.splitlines()
    meta, t = _parse_header(lines, path)
    rows = [r for r in csv.reader(lines[3:]) if r]
    if len(rows) != meta.nx * meta.ny:
        raise DimensionMismatchError(
            f"{path}: header declares {meta.nx}x{meta.ny}={meta.nx * meta.ny} samples, found {len(rows)} rows"
        )
    values = np.empty(meta.shape, dtype=np.complex128)
    seen = np.zeros(meta.shape, dtype=bool)
    for n, row in enumerate(rows):
        try:
            j, k = int(row[0]), int(row[1])
            re, im = float(row[4]), float(row[5])
        except (ValueError, IndexError) as e:
            raise DimensionMismatchError(f"{path}: data row {n + 1} is malformed: {row}") from e
        if not (0 <= j < meta.nx and 0 <= k < meta.ny) or seen[k, j]:
            raise DimensionMismatchError(f"{path}: index ({j},{k}) out of range or repeated")
        seen[k, j] = True
        values[k, j] = complex(re, im)
    return Grid2D(meta, values, t)


def write_series_csv(path, columns, rows):
    """Write a header row then one row per record, floats at full precision."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([v if isinstance(v, (int, str)) else _fmt(v) for v in row])
    return path


def read_series_csv(path):
    """Return ``{column: ndarray}`` for a file written by :func:`write_series_csv`."""
    with Path(path).open(newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        data = [list(map(float, row)) for row in r if row]
    arr = np.array(data, dtype=float).reshape(-1, len(header))
    return {name: arr[:, i] for i, name in enumerate(header)}
