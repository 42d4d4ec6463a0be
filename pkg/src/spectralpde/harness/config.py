"""Run configuration: flat ``key = value`` files plus command-line overrides."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import ConfigError
from ..fourier1d import is_power_of_two

_SNAPSHOTS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5)

# key -> help text; also the set of accepted keys
KEYS = {
    "lo": "lower domain edge (same on both axes)",
    "hi": "upper domain edge; the domain is [lo, hi)^2",
    "n": "grid points per axis, comma separated for multi-resolution runs",
    "t_final": "end time of the evolution",
    "output_times": "comma separated times at which solution frames are written",
    "diag_step": "spacing of the diagnostics series (frame times are always included)",
    "dt": "absolute time step; overrides dt_factor",
    "dt_factor": "time step as a multiple of h (wave) or h^2 (diffusion)",
    "method": "closed | rk4 (diffusion and wave pulse)",
    "case": "wave only: pulse | orbit | both",
    "amplitude": "Gaussian amplitude A",
    "sigma": "Gaussian width sigma",
    "r_s": "orbit radius of the moving source",
    "omega": "orbital angular frequency of the source",
    "gamma": "oscillation frequency of the source amplitude",
    "sizes": "bench only: transform lengths, comma separated powers of two",
    "reps": "bench only: timed repetitions per size (median reported, >= 3)",
}

_FLOATS = {"lo", "hi", "t_final", "diag_step", "dt", "dt_factor", "amplitude", "sigma", "r_s", "omega", "gamma"}
_INT_LISTS = {"n", "sizes"}
_FLOAT_LISTS = {"output_times"}
_INTS = {"reps"}

DEFAULTS = {
    "transform-demo": dict(lo=0.0, hi=20.0, n=(32,)),
    "poisson": dict(lo=-2.0, hi=2.0, n=(64, 128), amplitude=1.0, sigma=0.1),
    "diffusion": dict(
        lo=-1.0, hi=1.0, n=(128,), amplitude=1.0, sigma=0.1, t_final=10.0,
        output_times=(0.0, 0.001, 0.0025, 0.005, 0.01, 10.0), diag_step=0.1,
        method="closed", dt_factor=0.1,
    ),
    "wave-pulse": dict(
        lo=-1.0, hi=1.0, n=(128,), amplitude=1.0, sigma=0.1, t_final=2.5,
        output_times=_SNAPSHOTS, diag_step=0.05, method="closed", dt_factor=0.25,
    ),
    "wave-orbit": dict(
        lo=-2.0, hi=2.0, n=(128,), amplitude=1.0, sigma=0.1, t_final=2.5,
        output_times=_SNAPSHOTS, diag_step=0.05, method="rk4", dt_factor=0.25,
        r_s=1.0, omega=5.0, gamma=10.0,
    ),
    "convergence": dict(
        lo=-2.0, hi=2.0, n=(64, 128, 256), amplitude=1.0, sigma=0.1, t_final=2.5,
        output_times=_SNAPSHOTS, diag_step=0.0625, method="rk4", dt_factor=0.25,
        r_s=1.0, omega=5.0, gamma=10.0,
    ),
    "bench": dict(sizes=tuple(2**m for m in range(3, 16)), reps=5),
}


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    lo: float = 0.0
    hi: float = 1.0
    n: tuple = (64,)
    t_final: float = 0.0
    output_times: tuple = ()
    diag_step: float = 0.0
    dt: Optional[float] = None
    dt_factor: float = 0.25
    method: str = "closed"
    case: str = "both"
    amplitude: float = 1.0
    sigma: float = 0.1
    r_s: float = 1.0
    omega: float = 5.0
    gamma: float = 10.0
    sizes: tuple = ()
    reps: int = 5
    seed: int = 0
    threads: int = 1
    out_dir: Path = field(default=Path("results"))

    @property
    def length(self):
        return self.hi - self.lo

    def spacing(self, n):
        return self.length / n

    def time_step(self, n):
        """Absolute ``dt`` if given, else ``dt_factor`` times h (or h^2 for diffusion)."""
        if self.dt is not None:
            return self.dt
        h = self.spacing(n)
        return self.dt_factor * (h * h if self.experiment == "diffusion" else h)

    def diag_times(self):
        """Diagnostics times: a regular series on [0, t_final] merged with the frame times."""
        times = set(self.output_times)
        if self.diag_step > 0:
            m = int(round(self.t_final / self.diag_step))
            times.update(round(i * self.diag_step, 12) for i in range(m + 1)
                         if i * self.diag_step <= self.t_final * (1 + 1e-12))
        return tuple(sorted(times))

    def manifest(self):
        """``key = value`` lines echoing every setting that shaped the run."""
        lines = []
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            if isinstance(v, tuple):
                v = ",".join(repr(x) for x in v)
            lines.append(f"{name} = {v}")
        return "\n".join(lines) + "\n"


def parse_kv_text(text, source="<config>"):
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}", f"expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def parse_kv_file(path):
    return parse_kv_text(Path(path).read_text(), str(path))


def parse_overrides(items):
    """``["key=value", ...]`` from the command line."""
    return parse_kv_text("\n".join(items or ()), "--set")


def _convert(key, value):
    if not isinstance(value, str):
        return tuple(value) if key in _INT_LISTS | _FLOAT_LISTS else value
    try:
        if key in _FLOATS:
            return float(value)
        if key in _INTS:
            return int(value)
        if key in _INT_LISTS:
            return tuple(int(v) for v in value.split(",") if v.strip())
        if key in _FLOAT_LISTS:
            return tuple(float(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise ConfigError(key, f"cannot parse {value!r}") from None
    return value


def build_config(experiment, raw=None, **globals_):
    """Merge experiment defaults with ``raw`` settings and validate.

    ``globals_`` carries the command-line flags ``seed``, ``threads`` and
    ``out_dir``.
    """
    if experiment not in DEFAULTS:
        raise ConfigError("experiment", f"unknown experiment {experiment!r}")
    values = dict(DEFAULTS[experiment])
    for key, value in (raw or {}).items():
        if key not in KEYS:
            raise ConfigError(key, "unknown key; see --help for the accepted keys")
        values[key] = _convert(key, value)
    values.update({k: v for k, v in globals_.items() if v is not None})
    if "out_dir" in values:
        values["out_dir"] = Path(values["out_dir"])
    cfg = RunConfig(experiment=experiment, **values)
    validate(cfg)
    return cfg


def validate(cfg):
    if cfg.experiment == "bench":
        if not cfg.sizes:
            raise ConfigError("sizes", "at least one size is required")
        for s in cfg.sizes:
            if not is_power_of_two(s):
                raise ConfigError("sizes", f"{s} is not a power of two")
        if cfg.reps < 3:
            raise ConfigError("reps", "need at least 3 repetitions for a median")
        return
    if not cfg.hi > cfg.lo:
        raise ConfigError("hi", f"domain extent must be positive, got [{cfg.lo}, {cfg.hi})")
    if not cfg.n:
        raise ConfigError("n", "at least one resolution is required")
    for n in cfg.n:
        if not is_power_of_two(n):
            raise ConfigError("n", f"{n} is not a power of two")
    if cfg.t_final < 0:
        raise ConfigError("t_final", "must be >= 0")
    times = cfg.output_times
    if any(b < a for a, b in zip(times, times[1:])):
        raise ConfigError("output_times", "must be ascending")
    if times and (times[0] < 0 or times[-1] > cfg.t_final * (1 + 1e-12)):
        raise ConfigError("output_times", f"must lie in [0, t_final={cfg.t_final}]")
    if cfg.dt is not None and not cfg.dt > 0:
        raise ConfigError("dt", "must be positive")
    if not cfg.dt_factor > 0:
        raise ConfigError("dt_factor", "must be positive")
    if cfg.method not in ("closed", "rk4"):
        raise ConfigError("method", f"expected closed or rk4, got {cfg.method!r}")
    if cfg.case not in ("pulse", "orbit", "both"):
        raise ConfigError("case", f"expected pulse, orbit or both, got {cfg.case!r}")
    if not cfg.sigma > 0:
        raise ConfigError("sigma", "must be positive")
    if cfg.r_s < 0:
        raise ConfigError("r_s", "must be >= 0")
    if cfg.threads < 1:
        raise ConfigError("threads", "must be >= 1")
    if cfg.experiment == "convergence":
        if len(cfg.n) != 3 or cfg.n[1] != 2 * cfg.n[0] or cfg.n[2] != 2 * cfg.n[1]:
            raise ConfigError("n", f"convergence needs three resolutions in ratio 1:2:4, got {cfg.n}")
