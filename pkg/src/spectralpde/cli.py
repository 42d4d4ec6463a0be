"""Command-line entry point: ``spectralpde <command> [options]``.

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
import warnings

from .errors import ConfigError, GridFormatError, NonFiniteError, StabilityWarning
from .harness import experiments as ex
from .harness.config import KEYS, build_config, parse_kv_file, parse_overrides

log = logging.getLogger("spectralpde")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

COMMANDS = {
    "bench": "time naive DFT vs FFT and fit N^2 / N log N scaling",
    "transform-demo": "Gaussian FT example with natural and centred spectra",
    "poisson": "Gaussian-sourced Poisson problem at each resolution",
    "diffusion": "Gaussian initial profile diffusing on a periodic square",
    "wave": "Gaussian pulse (case=pulse) and orbiting source (case=orbit)",
    "convergence": "three-resolution self-convergence test of the orbiting-source run",
}


def _key_help():
    width = max(map(len, KEYS))
    return "config keys (file lines or --set KEY=VALUE):\n" + "\n".join(
        f"  {k.ljust(width)}  {v}" for k, v in KEYS.items()
    )


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        help="override one config key (repeatable)")
    common.add_argument("--out", metavar="DIR", default="results", help="output directory (default: results)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for random inputs (default: 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for 2D transforms (default: 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="spectralpde",
        description="DFT/FFT toolkit and periodic spectral PDE solvers.",
        epilog=_key_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, text in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=text, description=text, epilog=_key_help(),
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    return parser


def _raw_settings(args):
    raw = parse_kv_file(args.config) if args.config else {}
    raw.update(parse_overrides(args.set))
    return raw


def _configs(args, raw):
    flags = dict(seed=args.seed, threads=args.threads, out_dir=args.out)
    if args.command != "wave":
        return [build_config(args.command, raw, **flags)]
    case = raw.get("case", "both")
    if case not in ("pulse", "orbit", "both"):
        raise ConfigError("case", f"expected pulse, orbit or both, got {case!r}")
    cases = ("pulse", "orbit") if case == "both" else (case,)
    return [build_config(f"wave-{c}", raw, **flags) for c in cases]


def _report(cfg, result):
    if cfg.experiment == "bench":
        records, fits = result
        for r in records:
            log.info("N=%6d  dft %.3e s  fft %.3e s  ratio %.1f", r.n, r.dft_seconds, r.fft_seconds, r.speedup)
        for name, f in fits.items():
            log.info("%-8s slope %.3f  R2(N^2) %.4f  R2(N log N) %.4f", name, f.slope, f.r2_n2, f.r2_nlogn)
    elif cfg.experiment == "convergence":
        q = [v for t, v in zip(result.times, result.q_mean) if t > 0 and math.isfinite(v)]
        if q:
            log.info("q_mean range over t>0: [%.3f, %.3f]", min(q), max(q))


RUNNERS = {
    "bench": ex.cmd_bench,
    "transform-demo": ex.cmd_transform_demo,
    "poisson": ex.cmd_poisson,
    "diffusion": ex.cmd_diffusion,
    "wave-pulse": ex.cmd_wave,
    "wave-orbit": ex.cmd_wave,
    "convergence": ex.cmd_convergence,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        configs = _configs(args, _raw_settings(args))
        for cfg in configs:
            log.info("running %s -> %s", cfg.experiment, cfg.out_dir)
            with warnings.catch_warnings():
                warnings.simplefilter("always", StabilityWarning)
                result = RUNNERS[cfg.experiment](cfg)
            _report(cfg, result)
    except ConfigError as e:
        log.error("config error: %s", e)
        return EXIT_CONFIG
    except (NonFiniteError, FloatingPointError) as e:
        log.error("numeric failure: %s", e)
        return EXIT_NUMERIC
    except (OSError, GridFormatError) as e:
        log.error("I/O error: %s", e)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
