"""Reproducible experiment runs that write CSV frames and diagnostics.

Each ``cmd_*`` takes a validated :class:`RunConfig`, writes into
``cfg.out_dir/<experiment>/`` and returns the in-memory results so
callers (and tests) need not re-read the files.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..fourier1d import (
    SampleVector1D,
    centered_frequency_axis,
    fft_forward,
    frequency_axis,
    shift_center,
    spectrum_physical_scale,
)
from ..fouriernd import Grid2D, GridMeta
from ..solvers import (
    DiffusionProblem,
    OrbitingGaussianSource,
    PoissonProblem,
    WaveProblem,
    gaussian_grid,
    grid_mean,
    poisson_residual,
    solve_diffusion_closed,
    solve_diffusion_ode,
    solve_poisson,
    solve_wave_closed,
    solve_wave_rk4,
)
from .bench import BENCH_COLUMNS, bench_rows, fit_scaling, run_bench
from .gridio import write_grid_csv, write_series_csv

DIAG_COLUMNS = ("t", "mean_re", "mean_im", "max_abs")


def _outdir(cfg, name):
    d = Path(cfg.out_dir) / name
    d.mkdir(parents=True, exist_ok=True)
    (d / "manifest.txt").write_text(cfg.manifest())
    return d


def _tlabel(t):
    return format(t, ".4f")


def diagnostics_row(g):
    m = grid_mean(g)
    return (g.time, m.real, m.imag, float(np.max(np.abs(g.values))))


def _write_run(d, tag, frames, frame_times):
    """Write the frames whose time is in ``frame_times`` plus the full diagnostics series."""
    wanted = set(frame_times)
    paths = []
    for g in frames:
        if g.time in wanted:
            paths.append(write_grid_csv(g, d / f"{tag}_t{_tlabel(g.time)}.csv"))
    write_series_csv(d / f"{tag}_diagnostics.csv", DIAG_COLUMNS, (diagnostics_row(g) for g in frames))
    return paths


def gaussian_periodic_samples(n, lo=0.0, hi=20.0):
    """``exp(-t^2)`` on ``[lo, hi)`` treated as one period, so ``t`` wraps into ``[-L/2, L/2)``."""
    length = hi - lo
    dt = length / n
    t = lo + dt * np.arange(n)
    wrapped = (t + length / 2) % length - length / 2
    return SampleVector1D(np.exp(-wrapped**2), dt, lo)


def gaussian_exact_ft(f):
    return np.sqrt(np.pi) * np.exp(-(np.pi * f) ** 2)


def cmd_transform_demo(cfg):
    """Gaussian example: natural and centred spectra next to the exact transform."""
    d = _outdir(cfg, "transform-demo")
    n = cfg.n[0]
    x = gaussian_periodic_samples(n, cfg.lo, cfg.hi)
    natural = spectrum_physical_scale(fft_forward(x), x.spacing)
    centered = shift_center(natural)
    f_nat = frequency_axis(n, x.spacing)
    f_cen = centered_frequency_axis(n, x.spacing)
    exact = gaussian_exact_ft(f_cen)
    write_series_csv(
        d / "spectrum_natural.csv", ("k", "f", "re", "im", "abs"),
        ((k, f_nat[k], v.real, v.imag, abs(v)) for k, v in enumerate(natural.values)),
    )
    write_series_csv(
        d / "spectrum_centered.csv", ("f", "re", "im", "abs", "exact"),
        ((f, v.real, v.imag, abs(v), e) for f, v, e in zip(f_cen, centered.values, exact)),
    )
    fc = 1.0 / (2 * x.spacing)
    dense = np.linspace(-fc, fc, 401)
    write_series_csv(d / "exact_curve.csv", ("f", "exact"), zip(dense, gaussian_exact_ft(dense)))
    return {"samples": x, "natural": natural, "centered": centered,
            "frequencies": f_cen, "exact": exact, "dir": d}


def cmd_poisson(cfg):
    d = _outdir(cfg, "poisson")
    solutions = {}
    rows = []
    for n in cfg.n:
        meta = GridMeta.square(cfg.lo, cfg.hi, n)
        s = gaussian_grid(meta, cfg.amplitude, cfg.sigma)
        u = solve_poisson(PoissonProblem(s), workers=cfg.threads)
        write_grid_csv(u, d / f"poisson_N{n}.csv")
        m = grid_mean(u)
        rows.append((n, m.real, m.imag, float(np.max(np.abs(u.values))),
                     poisson_residual(u, s, workers=cfg.threads)))
        solutions[n] = u
    write_series_csv(d / "poisson_diagnostics.csv", ("N", "mean_re", "mean_im", "max_abs", "residual"), rows)
    return solutions


def cmd_diffusion(cfg):
    d = _outdir(cfg, "diffusion")
    runs = {}
    times = cfg.diag_times()
    for n in cfg.n:
        meta = GridMeta.square(cfg.lo, cfg.hi, n)
        f = gaussian_grid(meta, cfg.amplitude, cfg.sigma)
        problem = DiffusionProblem(f, None, cfg.t_final, cfg.time_step(n), times)
        solve = solve_diffusion_closed if cfg.method == "closed" else solve_diffusion_ode
        frames = solve(problem, workers=cfg.threads)
        _write_run(d, f"diffusion_N{n}", frames, cfg.output_times)
        runs[n] = frames
    return runs


def cmd_wave(cfg):
    """Run one wave case; ``cfg.experiment`` is ``wave-pulse`` or ``wave-orbit``."""
    d = _outdir(cfg, cfg.experiment)
    runs = {}
    times = cfg.diag_times()
    for n in cfg.n:
        meta = GridMeta.square(cfg.lo, cfg.hi, n)
        dt = cfg.time_step(n)
        if cfg.experiment == "wave-orbit":
            source = OrbitingGaussianSource(cfg.amplitude, cfg.sigma, cfg.r_s, cfg.omega, cfg.gamma)
            problem = WaveProblem(Grid2D.zeros(meta), None, source, cfg.t_final, dt, times)
            frames = solve_wave_rk4(problem, workers=cfg.threads)
        else:
            problem = WaveProblem(gaussian_grid(meta, cfg.amplitude, cfg.sigma), None, None,
                                  cfg.t_final, dt, times)
            solve = solve_wave_closed if cfg.method == "closed" else solve_wave_rk4
            frames = solve(problem, workers=cfg.threads)
        _write_run(d, f"{cfg.experiment}_N{n}", frames, cfg.output_times)
        runs[n] = frames
    return runs


@dataclass(frozen=True)
class ConvergenceReport:
    """Self-convergence ratios ``(u2 - u1) / (u3 - u2)`` at shared output times.

    ``q_mean`` uses grid means; ``q_grid`` uses RMS norms of the solutions
    restricted to the coarsest grid.
    """

    times: tuple
    q_mean: tuple
    q_grid: tuple
    means: tuple = ()


def _ratio(a, b):
    return a / b if b != 0 else float("nan")


def convergence_report(runs):
    """Build a report from three frame lists at resolutions N, 2N, 4N."""
    coarse, mid, fine = runs
    times, q_mean, q_grid, means = [], [], [], []
    for g1, g2, g3 in zip(coarse, mid, fine):
        m = tuple(np.mean(g.values.real) for g in (g1, g2, g3))
        r2 = g2.values[::2, ::2].real
        r3 = g3.values[::4, ::4].real
        d21 = np.sqrt(np.mean((r2 - g1.values.real) ** 2))
        d32 = np.sqrt(np.mean((r3 - r2) ** 2))
        times.append(g1.time)
        means.append(m)
        q_mean.append(_ratio(m[1] - m[0], m[2] - m[1]))
        q_grid.append(_ratio(d21, d32))
    return ConvergenceReport(tuple(times), tuple(q_mean), tuple(q_grid), tuple(means))


def cmd_convergence(cfg):
    """Orbiting-source wave run at three resolutions with ``dt`` tied to ``h``."""
    d = _outdir(cfg, "convergence")
    times = cfg.diag_times()
    source = OrbitingGaussianSource(cfg.amplitude, cfg.sigma, cfg.r_s, cfg.omega, cfg.gamma)
    runs = []
    for n in cfg.n:
        meta = GridMeta.square(cfg.lo, cfg.hi, n)
        problem = WaveProblem(Grid2D.zeros(meta), None, source, cfg.t_final, cfg.time_step(n), times)
        frames = solve_wave_rk4(problem, workers=cfg.threads)
        _write_run(d, f"orbit_N{n}", frames, cfg.output_times)
        runs.append(frames)
    report = convergence_report(runs)
    write_series_csv(
        d / "convergence.csv", ("t", "mean_1", "mean_2", "mean_3", "q_mean", "q_grid"),
        ((t, *m, qm, qg) for t, m, qm, qg in zip(report.times, report.means, report.q_mean, report.q_grid)),
    )
    return report


def cmd_bench(cfg):
    d = _outdir(cfg, "bench")
    records = run_bench(cfg.sizes, cfg.reps, cfg.seed)
    write_series_csv(d / "bench.csv", BENCH_COLUMNS, bench_rows(records))
    fits = {}
    if len(records) >= 2:
        ns = [r.n for r in records]
        fits = {
            "dft_time": fit_scaling(ns, [r.dft_seconds for r in records]),
            "fft_time": fit_scaling(ns, [r.fft_seconds for r in records]),
            "dft_ops": fit_scaling(ns, [r.dft_ops for r in records]),
            "fft_ops": fit_scaling(ns, [r.fft_ops for r in records]),
        }
        write_series_csv(
            d / "bench_fits.csv", ("series", "slope", "r2_n2", "r2_nlogn"),
            ((k, f.slope, f.r2_n2, f.r2_nlogn) for k, f in fits.items()),
        )
    return records, fits
