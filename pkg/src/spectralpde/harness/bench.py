"""Naive DFT versus radix-2 FFT timing and scaling fits."""
from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass

import numpy as np

from ..errors import Radix2Error
from ..fourier1d import OpCounter, dft_forward, fft_forward, is_power_of_two


@dataclass(frozen=True)
class BenchRecord:
    n: int
    dft_seconds: float
    fft_seconds: float
    repetitions: int
    dft_ops: int = 0
    fft_ops: int = 0

    @property
    def speedup(self):
        return self.dft_seconds / self.fft_seconds if self.fft_seconds > 0 else math.inf


@dataclass(frozen=True)
class ScalingFit:
    """Log-log slope plus R^2 of the one-parameter models ``c N^2`` and ``c N log2 N``."""

    slope: float
    r2_n2: float
    r2_nlogn: float


def _clock():
    # CPU time where the platform provides it
    try:
        return time.process_time_ns
    except AttributeError:  # pragma: no cover
        return time.monotonic_ns


def time_call(func, arg, reps, clock=None, min_sample=2e-3):
    """Median seconds per call over ``reps`` samples after one untimed warm-up call.

    Each sample repeats the call enough times to last at least ``min_sample``
    seconds, so short calls are not lost in clock resolution.
    """
    clock = clock or _clock()
    t0 = clock()
    func(arg)
    once = (clock() - t0) * 1e-9
    loops = 1 if once >= min_sample else min(10_000, int(min_sample / max(once, 1e-7)) + 1)
    samples = []
    for _ in range(reps):
        t0 = clock()
        for _ in range(loops):
            func(arg)
        samples.append((clock() - t0) * 1e-9 / loops)
    return statistics.median(samples)


def run_bench(sizes, reps=5, seed=0):
    """Time :func:`dft_forward` and :func:`fft_forward` on the same seeded random input."""
    if reps < 3:
        raise ValueError("need at least 3 repetitions")
    rng = np.random.default_rng(seed)
    records = []
    for n in sizes:
        if not is_power_of_two(n):
            raise Radix2Error(n)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        dft_ops, fft_ops = OpCounter(), OpCounter()
        dft_forward(x, dft_ops)
        fft_forward(x, fft_ops)
        records.append(BenchRecord(
            n=n,
            dft_seconds=time_call(dft_forward, x, reps),
            fft_seconds=time_call(fft_forward, x, reps),
            repetitions=reps,
            dft_ops=dft_ops.total,
            fft_ops=fft_ops.total,
        ))
    return records


def _model_r2(logy, logg):
    # best c for y = c g(N) in log space is the mean offset
    resid = logy - logg - np.mean(logy - logg)
    ss_tot = np.sum((logy - np.mean(logy)) ** 2)
    return 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0


def fit_scaling(ns, ys):
    """Fit measured costs ``ys`` at sizes ``ns`` (need at least two distinct sizes)."""
    n = np.asarray(ns, dtype=float)
    logn, logy = np.log(n), np.log(np.asarray(ys, dtype=float))
    slope = float(np.polyfit(logn, logy, 1)[0])
    return ScalingFit(
        slope=slope,
        r2_n2=float(_model_r2(logy, 2 * logn)),
        r2_nlogn=float(_model_r2(logy, logn + np.log(np.log2(n)))),
    )


def bench_rows(records):
    """CSV rows with raw seconds and times normalised to the largest-N DFT time."""
    ref = max(records, key=lambda r: r.n).dft_seconds or 1.0
    for r in records:
        yield (r.n, r.dft_seconds, r.fft_seconds, r.dft_seconds / ref, r.fft_seconds / ref,
               r.dft_ops, r.fft_ops, r.repetitions)


BENCH_COLUMNS = ("N", "dft_seconds", "fft_seconds", "dft_normalized", "fft_normalized",
                 "dft_ops", "fft_ops", "repetitions")
