import numpy as np
import pytest

from conftest import random_complex
from spectralpde.errors import ConfigError, DimensionMismatchError, MalformedHeaderError
from spectralpde.fouriernd import Grid2D, GridMeta
from spectralpde.harness.bench import fit_scaling, run_bench, time_call
from spectralpde.harness.config import KEYS, build_config, parse_kv_text, parse_overrides
from spectralpde.harness.gridio import read_grid_csv, read_series_csv, write_grid_csv, write_series_csv


# grid files

def test_grid_round_trip_is_exact(tmp_path, rng):
    meta = GridMeta(8, 4, 0.1, 0.3, -0.4, 1.7)
    g = Grid2D(meta, random_complex(rng, 4, 8), 0.123456789)
    back = read_grid_csv(write_grid_csv(g, tmp_path / "g.csv"))
    np.testing.assert_array_equal(back.values, g.values)
    assert back.meta == meta and back.time == g.time


def test_grid_file_layout(tmp_path):
    meta = GridMeta(2, 2, 0.5, 0.5, -1.0, -1.0)
    p = write_grid_csv(Grid2D(meta, [1, 2, 3, 4], 0.5), tmp_path / "g.csv")
    lines = p.read_text().splitlines()
    assert lines[0] == "# nx ny dx dy x0 y0 t"
    assert lines[2] == "j,k,x,y,re,im"
    assert lines[3].startswith("0,0,-1,-1,1,")
    assert lines[4].startswith("1,0,-0.5,-1,2,")


def test_missing_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("j,k,x,y,re,im\n0,0,0,0,1,0\n")
    with pytest.raises(MalformedHeaderError):
        read_grid_csv(p)


def test_garbled_header_values(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("# nx ny dx dy x0 y0 t\n# 2 two 1 1 0 0 0\nj,k,x,y,re,im\n")
    with pytest.raises(MalformedHeaderError):
        read_grid_csv(p)


def test_row_count_mismatch(tmp_path):
    meta = GridMeta(4, 4, 1.0, 1.0)
    p = write_grid_csv(Grid2D.zeros(meta), tmp_path / "g.csv")
    lines = p.read_text().splitlines()
    p.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(DimensionMismatchError):
        read_grid_csv(p)


def test_series_round_trip(tmp_path):
    rows = [(0.0, 1 / 3, -2.5e-17), (0.1, np.pi, 7.0)]
    data = read_series_csv(write_series_csv(tmp_path / "s.csv", ("t", "a", "b"), rows))
    np.testing.assert_array_equal(data["a"], [1 / 3, np.pi])
    np.testing.assert_array_equal(data["b"], [-2.5e-17, 7.0])


# config

def test_parse_kv_text_ignores_comments():
    raw = parse_kv_text("# header\nn = 32, 64  # two grids\n\nsigma=0.2\n")
    assert raw == {"n": "32, 64", "sigma": "0.2"}


def test_overrides_win_over_defaults():
    cfg = build_config("wave-orbit", parse_overrides(["r_s=0.5", "n=32"]))
    assert cfg.r_s == 0.5 and cfg.n == (32,)
    assert cfg.omega == 5.0 and cfg.gamma == 10.0


@pytest.mark.parametrize("raw, field", [
    ({"n": "12"}, "n"),
    ({"n": "abc"}, "n"),
    ({"bogus": "1"}, "bogus"),
    ({"lo": "1", "hi": "0"}, "hi"),
    ({"output_times": "0.5,0.1"}, "output_times"),
    ({"output_times": "0,20"}, "output_times"),
    ({"method": "euler"}, "method"),
])
def test_config_errors_name_the_field(raw, field):
    with pytest.raises(ConfigError) as e:
        build_config("diffusion", raw)
    assert e.value.field == field


def test_convergence_needs_ratio():
    with pytest.raises(ConfigError):
        build_config("convergence", {"n": "64,128,512"})


def test_bench_config_validation():
    assert build_config("bench").sizes[-1] == 2**15
    with pytest.raises(ConfigError):
        build_config("bench", {"reps": "2"})
    with pytest.raises(ConfigError):
        build_config("bench", {"sizes": "8,24"})


def test_time_step_scaling():
    d = build_config("diffusion", {"n": "32"})
    assert d.time_step(32) == pytest.approx(0.1 * (2 / 32) ** 2)
    w = build_config("wave-pulse", {"n": "64"})
    assert w.time_step(64) == pytest.approx(0.25 * 2 / 64)
    assert build_config("wave-pulse", {"dt": "0.002"}).time_step(64) == 0.002


def test_diag_times_merge_frames():
    cfg = build_config("wave-pulse", {"diag_step": "0.5", "output_times": "0,0.25,2.5"})
    assert cfg.diag_times() == (0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5)


def test_manifest_echoes_settings():
    text = build_config("wave-orbit", {"r_s": "0.75"}).manifest()
    assert "r_s = 0.75" in text
    assert "experiment = wave-orbit" in text


def test_every_default_key_documented():
    from spectralpde.harness.config import DEFAULTS
    for d in DEFAULTS.values():
        assert set(d) <= set(KEYS)


# bench

def test_fit_recovers_power_laws():
    ns = 2 ** np.arange(3, 13)
    f2 = fit_scaling(ns, 3e-9 * ns**2.0)
    assert f2.slope == pytest.approx(2.0)
    assert f2.r2_n2 == pytest.approx(1.0) and f2.r2_nlogn < 1.0
    fl = fit_scaling(ns, 5e-8 * ns * np.log2(ns))
    assert fl.r2_nlogn == pytest.approx(1.0) and fl.r2_nlogn > fl.r2_n2


def test_time_call_uses_median():
    # warm-up takes 10 ms so each sample is a single call; samples are 4, 1 and 80 ns
    ticks = iter([0, 10_000_000, 0, 4, 10, 11, 20, 100])
    clock = lambda: next(ticks)
    assert time_call(lambda x: x, None, 3, clock) == pytest.approx(4e-9)


def test_time_call_loops_short_calls():
    calls = []
    time_call(calls.append, None, 3, min_sample=1e-3)
    assert len(calls) > 3


def test_run_bench_small():
    recs = run_bench([8, 16], reps=3, seed=1)
    assert [r.n for r in recs] == [8, 16]
    assert recs[1].dft_ops == 16 * 16 + 16 * 15
    assert all(r.dft_seconds > 0 and r.fft_seconds > 0 for r in recs)
