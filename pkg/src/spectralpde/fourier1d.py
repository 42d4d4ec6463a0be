"""One-dimensional discrete Fourier analysis.

The forward kernel is ``exp(+2*pi*i*j*k/N)`` and inverses use the conjugate
kernel. Transforms are unitless; :func:`spectrum_physical_scale` applies the
sample spacing to approximate the continuous transform.

Two evaluation routes share that contract:

* the naive DFT, an O(N^2) sum usable for any N, and
* a radix-2 decimation-in-time FFT, O(N log N), for N a power of two.

The naive route is the oracle for the fast one.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .errors import LayoutError, Radix2Error

__all__ = [
    "Layout",
    "OpCounter",
    "SampleVector1D",
    "Spectrum1D",
    "FourierMatrix",
    "dft_forward",
    "dft_inverse",
    "dft_coefficient",
    "fft_forward",
    "fft_inverse",
    "fft_along",
    "frequency_axis",
    "centered_frequency_axis",
    "shift_center",
    "unshift_center",
    "build_fourier_matrix",
    "spectrum_physical_scale",
    "is_power_of_two",
]

MAX_MATRIX_ORDER = 1024

# bounds the int64 index block of the naive DFT to ~32 MB
_DFT_BLOCK_ENTRIES = 1 << 22


class Layout(enum.Enum):
    NATURAL = "natural"
    CENTERED = "centered"


@dataclass
class OpCounter:
    """Running tally of complex multiplies and adds done by a transform.

    Pass one to :func:`dft_forward` or :func:`fft_forward`; the transform
    increments it as it executes each block or butterfly stage.
    """

    mults: int = 0
    adds: int = 0

    @property
    def total(self):
        return self.mults + self.adds


def is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


def _finite_complex(values, name="values"):
    a = np.array(values, dtype=np.complex128)
    if a.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contain NaN or Inf")
    return a


@dataclass(frozen=True, eq=False)
class SampleVector1D:
    """Uniform samples ``values[n] = p(origin + n*spacing)``."""

    values: np.ndarray
    spacing: float = 1.0
    origin: float = 0.0

    def __post_init__(self):
        a = _finite_complex(self.values)
        if a.size == 0:
            raise ValueError("sample vector is empty")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "values", a)

    def __len__(self):
        return self.values.size

    @property
    def coordinates(self):
        return self.origin + self.spacing * np.arange(len(self))


@dataclass(frozen=True, eq=False)
class Spectrum1D:
    """Transform-domain values.

    In NATURAL layout entry k sits at ``k * freq_spacing``; in CENTERED
    layout the entries ascend through zero over ``(-f_c, f_c]``.
    """

    values: np.ndarray
    freq_spacing: float = 1.0
    layout: Layout = Layout.NATURAL

    def __post_init__(self):
        a = _finite_complex(self.values)
        if a.size == 0:
            raise ValueError("spectrum is empty")
        object.__setattr__(self, "values", a)

    def __len__(self):
        return self.values.size

    @property
    def spacing(self):
        """Sample spacing of the signal this spectrum came from."""
        return 1.0 / (len(self) * self.freq_spacing)

    @property
    def frequencies(self):
        n = len(self)
        if self.layout is Layout.CENTERED:
            return centered_frequency_axis(n, self.spacing)
        return frequency_axis(n, self.spacing)


@dataclass(frozen=True, eq=False)
class FourierMatrix:
    order: int
    entries: np.ndarray

    def __matmul__(self, other):
        return self.entries @ other


def _as_samples(x):
    if isinstance(x, SampleVector1D):
        return x
    return SampleVector1D(np.asarray(x))


def _as_spectrum(X):
    if isinstance(X, Spectrum1D):
        return X
    a = np.asarray(X)
    return Spectrum1D(a, freq_spacing=1.0 / max(a.size, 1))


def _require_natural(X):
    if X.layout is not Layout.NATURAL:
        raise LayoutError("inverse transforms need NATURAL layout; unshift_center first")


@functools.lru_cache(maxsize=64)
def _root_table(n, sign):
    """``exp(sign*2*pi*i*m/n)`` for m = 0..n-1, each from its own exponential."""
    t = np.exp(sign * 2j * np.pi * np.arange(n) / n)
    t.flags.writeable = False
    return t


@functools.lru_cache(maxsize=64)
def _twiddles(n, sign):
    t = np.exp(sign * 2j * np.pi * np.arange(n // 2) / n)
    t.flags.writeable = False
    return t


def _dft_1d(a, sign, counter=None):
    n = a.size
    table = _root_table(n, sign)
    j = np.arange(n)
    out = np.empty(n, dtype=np.complex128)
    rows = max(1, _DFT_BLOCK_ENTRIES // n)
    pow2 = is_power_of_two(n)
    for start in range(0, n, rows):
        k = np.arange(start, min(n, start + rows))
        idx = np.multiply.outer(k, j)
        # exact exponent reduction keeps every phase within one rounding of the true root
        idx = idx & (n - 1) if pow2 else idx % n
        out[start:start + k.size] = table[idx] @ a
    if counter is not None:
        counter.mults += n * n
        counter.adds += n * (n - 1)
    return out


def _fft_last(a, sign, counter=None):
    """Radix-2 recursion along the last axis; leading axes are a batch."""
    n = a.shape[-1]
    if n == 1:
        return a.copy()
    # even- and odd-indexed subsequences are transformed together as one batch
    sub = _fft_last(np.stack((a[..., 0::2], a[..., 1::2]), axis=-2), sign, counter)
    even = sub[..., 0, :]
    odd = sub[..., 1, :] * _twiddles(n, sign)
    if counter is not None:
        counter.mults += odd.size
        counter.adds += 2 * odd.size
    return np.concatenate((even + odd, even - odd), axis=-1)


def fft_along(a, axis=-1, inverse=False, counter=None, axis_name=None):
    """Radix-2 FFT of an ndarray along one axis.

    This is the batched kernel behind :func:`fft_forward` and the
    multi-dimensional transforms. The inverse is ``conj(FFT(conj(a)))/N``.
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[axis]
    if not is_power_of_two(n):
        raise Radix2Error(n, axis_name if axis_name is not None else axis)
    moved = np.moveaxis(a, axis, -1)
    if inverse:
        out = np.conj(_fft_last(np.conj(moved), +1, counter)) / n
    else:
        out = _fft_last(moved, +1, counter)
    return np.moveaxis(out, -1, axis)


def dft_forward(x, counter=None):
    """Naive DFT ``P_k = sum_j p_j w^(jk)``, ``w = exp(2*pi*i/N)``.

    Accepts a :class:`SampleVector1D` or any 1D array-like (spacing 1).
    O(N^2); no spacing factor is applied.
    """
    x = _as_samples(x)
    n = len(x)
    return Spectrum1D(_dft_1d(x.values, +1, counter), 1.0 / (n * x.spacing))


def dft_inverse(X, spacing=None):
    """Naive inverse ``p_j = (1/N) sum_k P_k w^(-jk)``."""
    X = _as_spectrum(X)
    _require_natural(X)
    if spacing is None:
        spacing = X.spacing
    n = len(X)
    return SampleVector1D(_dft_1d(X.values, -1) / n, spacing)


def dft_coefficient(x, k):
    """Evaluate the DFT sum at a single integer bin ``k`` (any integer).

    The exponent ``j*k`` is reduced modulo N before lookup, so bins
    ``k`` and ``k + N`` give bit-identical results.
    """
    x = _as_samples(x)
    n = len(x)
    idx = (np.arange(n) * int(k)) % n
    return complex(np.sum(_root_table(n, +1)[idx] * x.values))


def fft_forward(x, counter=None):
    """Radix-2 FFT with the same contract as :func:`dft_forward`.

    Raises :class:`Radix2Error` unless N is a power of two.
    """
    x = _as_samples(x)
    n = len(x)
    return Spectrum1D(fft_along(x.values, counter=counter), 1.0 / (n * x.spacing))


def fft_inverse(X, spacing=None):
    X = _as_spectrum(X)
    _require_natural(X)
    if spacing is None:
        spacing = X.spacing
    return SampleVector1D(fft_along(X.values, inverse=True), spacing)


def frequency_axis(n, spacing):
    """``f_k = k / (n*spacing)`` for k = 0..n-1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    return np.arange(n) / (n * spacing)


def centered_frequency_axis(n, spacing):
    """Signed frequencies matching :func:`shift_center` order, ascending in (-f_c, f_c]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    return (np.arange(n) - (n - 1) // 2) / (n * spacing)


def shift_center(X):
    """Reorder a NATURAL spectrum so signed frequency ascends through zero.

    Bins ``k > N/2`` are moved to the front as negative frequencies
    ``f_k - 1/spacing``; for even N the Nyquist bin stays at ``+f_c``.
    """
    X = _as_spectrum(X)
    if X.layout is not Layout.NATURAL:
        raise LayoutError("shift_center expects a NATURAL spectrum")
    shift = (len(X) - 1) // 2
    return Spectrum1D(np.roll(X.values, shift), X.freq_spacing, Layout.CENTERED)


def unshift_center(X):
    if X.layout is not Layout.CENTERED:
        raise LayoutError("unshift_center expects a CENTERED spectrum")
    shift = (len(X) - 1) // 2
    return Spectrum1D(np.roll(X.values, -shift), X.freq_spacing, Layout.NATURAL)


def build_fourier_matrix(n):
    """Dense matrix with entry (k, j) = w^(jk); capped at order 1024."""
    if not 1 <= n <= MAX_MATRIX_ORDER:
        raise ValueError(f"matrix order must lie in [1, {MAX_MATRIX_ORDER}], got {n}")
    k = np.arange(n)
    return FourierMatrix(n, _root_table(n, +1)[np.multiply.outer(k, k) % n])


def spectrum_physical_scale(X, spacing):
    """Multiply by the sample spacing: the Riemann-sum approximation of the continuous FT."""
    return Spectrum1D(X.values * spacing, X.freq_spacing, X.layout)
