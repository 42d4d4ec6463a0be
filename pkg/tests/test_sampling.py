import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectralpde.fourier1d import fft_forward, frequency_axis
from spectralpde.sampling import BandlimitedSampleSet, alias_of, nyquist_frequency, sinc_reconstruct


@pytest.mark.parametrize("dt, fc", [(0.5, 1.0), (20 / 32, 0.8), (1.0, 0.5)])
def test_nyquist(dt, fc):
    assert nyquist_frequency(dt) == pytest.approx(fc, rel=1e-15)


@pytest.mark.parametrize("dt", [0.0, -1.0])
def test_nyquist_rejects_bad_spacing(dt):
    with pytest.raises(ValueError):
        nyquist_frequency(dt)


def test_interpolation_property(rng):
    s = BandlimitedSampleSet(rng.standard_normal(40), 0.3, -2.0)
    for n, t in enumerate(s.times):
        assert abs(sinc_reconstruct(s, t) - s.samples[n]) < 1e-12


def test_zero_samples_give_zero():
    s = BandlimitedSampleSet(np.zeros(10), 1.0)
    assert sinc_reconstruct(s, 3.3) == 0.0
    np.testing.assert_array_equal(sinc_reconstruct(s, np.linspace(0, 9, 7)), 0.0)


def test_midwindow_reconstruction_of_inband_sine():
    s = BandlimitedSampleSet(np.sin(2 * np.pi * 0.1 * np.arange(256)), 1.0)
    t = 127.5
    assert abs(sinc_reconstruct(s, t) - np.sin(2 * np.pi * 0.1 * t)) < 1e-3


def _midwindow_error(n, f):
    s = BandlimitedSampleSet(np.sin(2 * np.pi * f * np.arange(n)), 1.0)
    t = (n - 1) / 2 + np.linspace(-2.5, 2.5, 11)
    return np.max(np.abs(sinc_reconstruct(s, t) - np.sin(2 * np.pi * f * t)))


@pytest.mark.parametrize("f", [0.05, 0.17, 0.33, 0.39])
def test_inband_error_small_and_shrinking(f):
    # f < 0.8 f_c with f_c = 0.5; truncation error decays like 1/N but oscillates
    short = [_midwindow_error(n, f) for n in (256, 1024)]
    long = [_midwindow_error(n, f) for n in (4096, 16384)]
    assert max(short) < 1e-2
    assert max(long) < max(short)


@pytest.mark.parametrize("f, dt, expected", [(0.3, 1.0, 0.3), (0.7, 1.0, -0.3), (1.0, 1.0, 0.0)])
def test_alias_examples(f, dt, expected):
    assert alias_of(f, dt) == pytest.approx(expected, abs=1e-15)


def test_alias_sampling_indistinguishable():
    t = np.arange(64)
    np.testing.assert_allclose(np.sin(2 * np.pi * 0.7 * t), np.sin(2 * np.pi * -0.3 * t), atol=1e-12)


def test_alias_ties_go_to_positive_nyquist():
    assert alias_of(0.5, 1.0) == 0.5
    assert alias_of(-0.5, 1.0) == 0.5
    assert alias_of(1.5, 1.0) == 0.5


@given(st.floats(-50, 50, allow_nan=False), st.floats(0.05, 4.0))
def test_alias_in_band_and_idempotent(f, dt):
    a = alias_of(f, dt)
    fc = nyquist_frequency(dt)
    assert -fc - 1e-12 < a <= fc + 1e-12
    assert alias_of(a, dt) == pytest.approx(a, abs=1e-12)


@pytest.mark.parametrize("f", [0.7, 1.3, 2.45, -0.9])
def test_fft_peak_sits_at_alias(f):
    n, dt = 64, 1.0
    t = dt * np.arange(n)
    # the forward kernel is e^{+2 pi i jk/N}, so e^{-2 pi i f t} peaks at +f
    P = np.abs(fft_forward(np.exp(-2j * np.pi * f * t)).values)
    freqs = frequency_axis(n, dt)
    signed = np.where(freqs > nyquist_frequency(dt), freqs - 1 / dt, freqs)
    assert abs(signed[np.argmax(P)] - alias_of(f, dt)) <= 0.5 / (n * dt)
