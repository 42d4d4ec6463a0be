"""Multi-dimensional transforms built from sequential 1D FFTs.

Grid values are stored as arrays of shape ``(ny, nx)``: x is the last,
fastest-varying axis, so ``values.ravel()`` is row-major with x fastest.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import LayoutError, MetadataMismatchError
from .fourier1d import Layout, fft_along

__all__ = [
    "GridMeta",
    "Grid2D",
    "Spectrum2D",
    "WavenumberTable",
    "fftn_array",
    "fft2_forward",
    "fft2_inverse",
    "angular_wavenumbers",
    "build_wavenumbers",
    "spectral_derivative",
]


@dataclass(frozen=True)
class GridMeta:
    nx: int
    ny: int
    dx: float
    dy: float
    x0: float = 0.0
    y0: float = 0.0

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"grid sizes must be >= 1, got {self.nx}x{self.ny}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError(f"grid spacings must be positive, got {self.dx}, {self.dy}")

    @classmethod
    def square(cls, lo, hi, n):
        """Periodic ``[lo, hi)^2`` sampled at n points per axis."""
        h = (hi - lo) / n
        return cls(n, n, h, h, lo, lo)

    @property
    def shape(self):
        return (self.ny, self.nx)

    @property
    def origin(self):
        return (self.x0, self.y0)

    @property
    def lx(self):
        return self.nx * self.dx

    @property
    def ly(self):
        return self.ny * self.dy

    def axes(self):
        return (self.x0 + self.dx * np.arange(self.nx),
                self.y0 + self.dy * np.arange(self.ny))

    def mesh(self):
        """Coordinate arrays ``X, Y`` of shape ``(ny, nx)``."""
        x, y = self.axes()
        return np.meshgrid(x, y, indexing="xy")


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Uniformly sampled complex field; ``values[k, j]`` sits at ``(x_j, y_k)``."""

    meta: GridMeta
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        a = np.array(self.values, dtype=np.complex128)
        if a.ndim == 1 and a.size == self.meta.nx * self.meta.ny:
            a = a.reshape(self.meta.shape)
        if a.shape != self.meta.shape:
            raise ValueError(f"values shape {a.shape} does not match grid {self.meta.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("grid values contain NaN or Inf")
        object.__setattr__(self, "values", a)

    @classmethod
    def from_function(cls, meta, func, time=0.0):
        X, Y = meta.mesh()
        return cls(meta, func(X, Y), time)

    @classmethod
    def zeros(cls, meta, time=0.0):
        return cls(meta, np.zeros(meta.shape), time)

    nx = property(lambda self: self.meta.nx)
    ny = property(lambda self: self.meta.ny)
    dx = property(lambda self: self.meta.dx)
    dy = property(lambda self: self.meta.dy)
    origin = property(lambda self: self.meta.origin)

    def with_values(self, values, time=None):
        return replace(self, values=values, time=self.time if time is None else time)


@dataclass(frozen=True, eq=False)
class Spectrum2D:
    """Natural-layout entry ``(b, a)`` is frequency ``(a/(nx dx), b/(ny dy))``."""

    meta: GridMeta
    values: np.ndarray
    layout: Layout = Layout.NATURAL


@dataclass(frozen=True, eq=False)
class WavenumberTable:
    omega_x: np.ndarray
    omega_y: np.ndarray
    omega_sq: np.ndarray  # shape (ny, nx)


def _batched(func, a, workers):
    """Apply ``func`` to row chunks of ``a`` in a thread pool.

    Each row is transformed independently, so the result does not depend
    on the chunking.
    """
    if workers <= 1 or a.shape[0] < 2:
        return func(a)
    chunks = np.array_split(a, min(workers, a.shape[0]), axis=0)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(func, chunks)), axis=0)


_AXIS_NAMES = {-1: "x", -2: "y", -3: "z"}


def fftn_array(a, inverse=False, workers=1, counter=None):
    """Transform every axis of ``a`` in turn, last axis (x) first."""
    out = np.asarray(a, dtype=np.complex128)
    for axis in range(out.ndim - 1, -1, -1):
        name = _AXIS_NAMES.get(axis - out.ndim, axis)
        moved = np.moveaxis(out, axis, -1)
        flat = moved.reshape(-1, moved.shape[-1])

        def along(block, name=name):
            return fft_along(block, -1, inverse=inverse, counter=counter, axis_name=name)

        flat = _batched(along, flat, workers)
        out = np.moveaxis(flat.reshape(moved.shape), -1, axis)
    return out


def fft2_forward(g, workers=1, counter=None):
    """2D DFT by 1D FFTs along every row (x), then every column (y)."""
    return Spectrum2D(g.meta, fftn_array(g.values, False, workers, counter))


def fft2_inverse(S, workers=1, time=0.0):
    if S.layout is not Layout.NATURAL:
        raise LayoutError("fft2_inverse expects a NATURAL spectrum")
    return Grid2D(S.meta, fftn_array(S.values, True, workers), time)


def angular_wavenumbers(n, spacing):
    """``2*pi*a/(n*spacing)``, folded to negative values for ``a > n/2``.

    The Nyquist bin of even n keeps the positive value ``pi/spacing``.
    """
    a = np.arange(n)
    signed = np.where(a <= n // 2, a, a - n)
    return 2.0 * np.pi * signed / (n * spacing)


def build_wavenumbers(meta):
    wx = angular_wavenumbers(meta.nx, meta.dx)
    wy = angular_wavenumbers(meta.ny, meta.dy)
    return WavenumberTable(wx, wy, wy[:, None] ** 2 + wx[None, :] ** 2)


def spectral_derivative(g, axis="x", order=1, workers=1):
    """Differentiate a periodic grid by multiplying its spectrum by ``(-i*omega)**order``.

    The sign follows from the ``exp(+2*pi*i...)`` forward kernel.
    """
    table = build_wavenumbers(g.meta)
    if axis == "x":
        factor = ((-1j * table.omega_x) ** order)[None, :]
    elif axis == "y":
        factor = ((-1j * table.omega_y) ** order)[:, None]
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    spec = fftn_array(g.values, False, workers)
    return g.with_values(fftn_array(spec * factor, True, workers))


def check_same_meta(a, b):
    if a.meta != b.meta:
        raise MetadataMismatchError(f"grid metadata differ: {a.meta} vs {b.meta}")
