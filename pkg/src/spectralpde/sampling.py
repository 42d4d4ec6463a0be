"""Nyquist frequency, truncated sinc reconstruction and aliasing."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BandlimitedSampleSet",
    "nyquist_frequency",
    "sinc_reconstruct",
    "alias_of",
]

# |t - t_n| below SINGULAR_EPS * spacing takes the removable-singularity branch
SINGULAR_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class BandlimitedSampleSet:
    samples: np.ndarray
    spacing: float
    origin: float = 0.0

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples contain NaN or Inf")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "samples", s)

    @property
    def times(self):
        return self.origin + self.spacing * np.arange(self.samples.size)


def nyquist_frequency(spacing):
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    return 1.0 / (2.0 * spacing)


def sinc_reconstruct(s, t):
    """Evaluate the sampling-theorem interpolant over the available window.

    ``p(t) = dt * sum_n p_n sin(2 pi f_c (t - t_n)) / (pi (t - t_n))``.
    The infinite sum is truncated to the samples present, so accuracy
    degrades towards the window edges roughly as one over the distance
    to the nearest edge. Accepts scalar or array ``t``.
    """
    fc = nyquist_frequency(s.spacing)
    t_arr = np.asarray(t, dtype=float)
    d = t_arr[..., None] - s.times
    near = np.abs(d) < SINGULAR_EPS * s.spacing
    safe = np.where(near, 1.0, d)
    kernel = np.where(near, 1.0, s.spacing * np.sin(2 * np.pi * fc * safe) / (np.pi * safe))
    out = kernel @ s.samples
    return float(out) if np.ndim(t) == 0 else out


def alias_of(f, spacing):
    """Frequency in ``(-f_c, f_c]`` indistinguishable from ``f`` when sampled at ``spacing``.

    Ties at ``+-f_c`` go to ``+f_c``.
    """
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    return f - math.ceil(f * spacing - 0.5) / spacing
