"""Discrete Fourier transforms and periodic spectral PDE solvers."""
from .fourier1d import (
    FourierMatrix,
    Layout,
    OpCounter,
    SampleVector1D,
    Spectrum1D,
    build_fourier_matrix,
    dft_forward,
    dft_inverse,
    fft_forward,
    fft_inverse,
    frequency_axis,
    shift_center,
    spectrum_physical_scale,
    unshift_center,
)
from .fouriernd import Grid2D, GridMeta, Spectrum2D, build_wavenumbers, fft2_forward, fft2_inverse
from .sampling import alias_of, nyquist_frequency, sinc_reconstruct
from .solvers import (
    DiffusionProblem,
    OrbitingGaussianSource,
    PoissonProblem,
    WaveProblem,
    grid_mean,
    solve_diffusion_closed,
    solve_diffusion_ode,
    solve_poisson,
    solve_wave_closed,
    solve_wave_rk4,
)
from .timestep import OdeState, rk4_step

__version__ = "0.1.0"
