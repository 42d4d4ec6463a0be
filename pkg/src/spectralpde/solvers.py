"""Spectral solvers for the Poisson, diffusion and wave equations on periodic 2D grids.

All three work mode by mode on the spectrum of the data:

* Poisson: ``-w^2 u_hat = s_hat - mean(s)`` with the zero mode of ``u`` set to 0.
* Diffusion: ``du_hat/dt = -w^2 u_hat + s_hat``.
* Wave: ``d2u_hat/dt2 + w^2 u_hat = s_hat``, integrated as the first-order pair
  ``(u_hat, v_hat)``.

Diffusion coefficient and wave speed are 1. Sources may be ``None``, a
static :class:`Grid2D`, or a callable ``s(t, X, Y)`` evaluated on the grid
mesh.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import MetadataMismatchError, NonFiniteError, StabilityWarning
from .fouriernd import Grid2D, build_wavenumbers, check_same_meta, fftn_array
from .timestep import OdeState, integrate_to

__all__ = [
    "PoissonProblem",
    "DiffusionProblem",
    "WaveProblem",
    "OrbitingGaussianSource",
    "RK4_STABILITY_LIMIT",
    "gaussian_grid",
    "grid_mean",
    "solve_poisson",
    "poisson_residual",
    "spectral_laplacian",
    "solve_diffusion_closed",
    "solve_diffusion_ode",
    "solve_wave_closed",
    "solve_wave_rk4",
    "wave_closed_modes",
    "orbiting_source_eval",
]

# extent of the RK4 stability region along the negative real and the imaginary axes
RK4_STABILITY_LIMIT = 2.8

SourceLike = Union[None, Grid2D, Callable]


def gaussian_grid(meta, amplitude=1.0, sigma=0.1, center=(0.0, 0.0)):
    """``A exp(-((x-x0)^2 + (y-y0)^2) / sigma^2)`` sampled on ``meta``."""
    X, Y = meta.mesh()
    r2 = (X - center[0]) ** 2 + (Y - center[1]) ** 2
    return Grid2D(meta, amplitude * np.exp(-r2 / sigma**2))


@dataclass(frozen=True)
class OrbitingGaussianSource:
    """Gaussian blob circling the origin while its amplitude oscillates.

    ``s = A exp(-|x - c(t)|^2 / sigma^2) cos(gamma t)`` with centre
    ``c(t) = radius * (cos(omega t), sin(omega t))``.
    """

    amplitude: float = 1.0
    sigma: float = 0.1
    radius: float = 1.0
    omega: float = 5.0
    gamma: float = 10.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def center(self, t):
        return (self.radius * math.cos(self.omega * t), self.radius * math.sin(self.omega * t))

    def __call__(self, t, X, Y):
        x0, y0 = self.center(t)
        r2 = (X - x0) ** 2 + (Y - y0) ** 2
        return self.amplitude * np.exp(-r2 / self.sigma**2) * math.cos(self.gamma * t)


def orbiting_source_eval(src, t, meta):
    X, Y = meta.mesh()
    return Grid2D(meta, src(t, X, Y), t)


@dataclass(eq=False)
class PoissonProblem:
    source: Grid2D


def _check_times(t_final, dt, output_times):
    if not t_final >= 0:
        raise ValueError(f"t_final must be >= 0, got {t_final}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    times = tuple(float(t) for t in output_times)
    if any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("output_times must be ascending")
    if times and (times[0] < 0 or times[-1] > t_final * (1 + 1e-12)):
        raise ValueError(f"output_times must lie in [0, {t_final}]")
    return times


@dataclass(eq=False)
class DiffusionProblem:
    initial: Grid2D
    source: SourceLike = None
    t_final: float = 0.0
    dt: float = 1e-3
    output_times: Sequence[float] = (0.0,)

    def __post_init__(self):
        self.output_times = _check_times(self.t_final, self.dt, self.output_times)


@dataclass(eq=False)
class WaveProblem:
    initial_u: Grid2D
    initial_v: Optional[Grid2D] = None
    source: SourceLike = None
    t_final: float = 0.0
    dt: float = 1e-3
    output_times: Sequence[float] = (0.0,)
    wave_speed: float = 1.0

    def __post_init__(self):
        if self.wave_speed != 1.0:
            raise ValueError("only unit wave speed is supported; rescale time by c instead")
        if self.initial_v is None:
            self.initial_v = Grid2D.zeros(self.initial_u.meta)
        check_same_meta(self.initial_u, self.initial_v)
        self.output_times = _check_times(self.t_final, self.dt, self.output_times)


def grid_mean(g):
    """Arithmetic mean of all samples, as a Python complex."""
    return complex(np.mean(g.values))


def _forward(a, workers):
    return fftn_array(a, False, workers)


def _inverse(a, workers):
    return fftn_array(a, True, workers)


def solve_poisson(p, workers=1):
    """Periodic solution of ``lap u = s - mean(s)`` with zero-mean ``u``."""
    s = p.source
    g_hat = _forward(s.values - np.mean(s.values), workers)
    w2 = build_wavenumbers(s.meta).omega_sq
    u_hat = np.zeros_like(g_hat)
    np.divide(-g_hat, w2, out=u_hat, where=w2 > 0)
    return s.with_values(_inverse(u_hat, workers))


def spectral_laplacian(u, workers=1):
    w2 = build_wavenumbers(u.meta).omega_sq
    return u.with_values(_inverse(-w2 * _forward(u.values, workers), workers))


def poisson_residual(u, s, workers=1):
    """Max-norm of ``lap u - (s - mean(s))`` with a spectral Laplacian."""
    check_same_meta(u, s)
    lap = spectral_laplacian(u, workers).values
    return float(np.max(np.abs(lap - (s.values - np.mean(s.values)))))


def _source_spectrum(source, meta, workers):
    """Return ``t -> s_hat(t)`` or ``None`` for an absent source."""
    if source is None:
        return None
    if isinstance(source, Grid2D):
        if source.meta != meta:
            raise MetadataMismatchError("source grid metadata differ from the initial data")
        s_hat = _forward(source.values, workers)
        return lambda t: s_hat
    X, Y = meta.mesh()
    cache = {}

    def at(t):
        # RK4 evaluates the two midpoint stages at the same time
        if t not in cache:
            cache.clear()
            cache[t] = _forward(np.asarray(source(t, X, Y), dtype=np.complex128), workers)
        return cache[t]

    return at


def _frames(meta, spectra, times, workers):
    return [Grid2D(meta, _inverse(s, workers), t) for s, t in zip(spectra, times)]


def solve_diffusion_closed(p, workers=1):
    """Exact per-mode decay ``u_hat(t) = f_hat exp(-w^2 t)``; source must be absent."""
    if p.source is not None:
        raise ValueError("closed-form diffusion needs a zero source; use solve_diffusion_ode")
    meta = p.initial.meta
    w2 = build_wavenumbers(meta).omega_sq
    f_hat = _forward(p.initial.values, workers)
    return _frames(meta, (f_hat * np.exp(-w2 * t) for t in p.output_times), p.output_times, workers)


def _run_ode(state, times, dt, rhs, label, stiffness):
    out = []
    try:
        for t in times:
            state = integrate_to(state, t, dt, rhs)
            out.append(state.components[0])
    except NonFiniteError as e:
        raise NonFiniteError(
            e.time, f"{label} integration blew up at t={e.time:.6g} (dt*stiffness={stiffness:.3g})"
        ) from e
    return out


def _warn_if_unstable(value, label):
    if value > RK4_STABILITY_LIMIT:
        warnings.warn(
            f"{label}: dt exceeds the RK4 stability limit "
            f"({value:.3g} > {RK4_STABILITY_LIMIT})",
            StabilityWarning,
            stacklevel=3,
        )


def solve_diffusion_ode(p, workers=1):
    """RK4 integration of ``du_hat/dt = -w^2 u_hat + s_hat(t)``.

    Warns with :class:`StabilityWarning` when ``dt * max(w^2)`` exceeds the
    RK4 limit and raises :class:`NonFiniteError` if the state blows up.
    """
    meta = p.initial.meta
    w2 = build_wavenumbers(meta).omega_sq
    stiffness = p.dt * float(w2.max())
    _warn_if_unstable(stiffness, "diffusion")
    s_hat = _source_spectrum(p.source, meta, workers)

    if s_hat is None:
        def rhs(t, y):
            return (-w2 * y[0],)
    else:
        def rhs(t, y):
            return (-w2 * y[0] + s_hat(t),)

    state = OdeState((_forward(p.initial.values, workers),), 0.0)
    spectra = _run_ode(state, p.output_times, p.dt, rhs, "diffusion", stiffness)
    return _frames(meta, spectra, p.output_times, workers)


def wave_closed_modes(f_hat, g_hat, s_hat, omega_sq, t):
    """Exact forced-oscillator state ``(u_hat, v_hat)`` at time ``t`` for a static source.

    For ``w != 0``:
    ``u_hat = (f - s/w^2) cos(wt) + (g/w) sin(wt) + s/w^2``; the
    trailing ``s/w^2`` keeps ``u_hat(0) = f``. For ``w = 0``:
    ``u_hat = s t^2/2 + g t + f``.
    """
    if s_hat is None:
        s_hat = np.zeros_like(f_hat)
    nz = omega_sq > 0
    w2 = np.where(nz, omega_sq, 1.0)
    w = np.sqrt(w2)
    c, s = np.cos(w * t), np.sin(w * t)
    offset = s_hat / w2
    u = np.where(nz, (f_hat - offset) * c + g_hat / w * s + offset, 0.5 * s_hat * t**2 + g_hat * t + f_hat)
    v = np.where(nz, -w * (f_hat - offset) * s + g_hat * c, s_hat * t + g_hat)
    return u, v


def _static_source_values(p):
    if p.source is None:
        return None
    if not isinstance(p.source, Grid2D):
        raise ValueError("closed-form wave solution needs a static source; use solve_wave_rk4")
    if p.source.meta != p.initial_u.meta:
        raise MetadataMismatchError("source grid metadata differ from the initial data")
    return p.source.values


def solve_wave_closed(p, workers=1):
    """Exact per-mode solution for zero or time-independent sources."""
    meta = p.initial_u.meta
    s_vals = _static_source_values(p)
    w2 = build_wavenumbers(meta).omega_sq
    f_hat = _forward(p.initial_u.values, workers)
    g_hat = _forward(p.initial_v.values, workers)
    s_hat = None if s_vals is None else _forward(s_vals, workers)
    spectra = (wave_closed_modes(f_hat, g_hat, s_hat, w2, t)[0] for t in p.output_times)
    return _frames(meta, spectra, p.output_times, workers)


def solve_wave_rk4(p, workers=1):
    """RK4 integration of ``du_hat/dt = v_hat``, ``dv_hat/dt = -w^2 u_hat + s_hat(t)``.

    A callable source is sampled and transformed at every stage time.
    """
    meta = p.initial_u.meta
    table = build_wavenumbers(meta)
    w2 = table.omega_sq
    stiffness = p.dt * math.sqrt(float(w2.max()))
    _warn_if_unstable(stiffness, "wave")
    s_hat = _source_spectrum(p.source, meta, workers)

    if s_hat is None:
        def rhs(t, y):
            return (y[1], -w2 * y[0])
    else:
        def rhs(t, y):
            return (y[1], -w2 * y[0] + s_hat(t))

    state = OdeState((_forward(p.initial_u.values, workers), _forward(p.initial_v.values, workers)), 0.0)
    spectra = _run_ode(state, p.output_times, p.dt, rhs, "wave", stiffness)
    return _frames(meta, spectra, p.output_times, workers)
