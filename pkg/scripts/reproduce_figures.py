#!/usr/bin/env python3
"""Regenerate the data behind every named preset as plot-ready CSV files.

Sweep presets produce per-point long-time observables; single-run presets
produce full trajectories (with eigenbasis populations where defined).
Outputs land in --outdir, one CSV (plus JSON sidecar) per preset.
"""

import argparse
import sys
import time
from pathlib import Path

from qubitrot import SweepSpec, figure_preset
from qubitrot.cli import main as cli_main
from qubitrot.sweeps import PRESET_NAMES


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figure_data")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--presets", nargs="*", default=list(PRESET_NAMES), help="subset of presets to run"
    )
    parser.add_argument(
        "--grid-points", type=int, default=None, help="resample sweep grids (default: native 61)"
    )
    args = parser.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in args.presets:
        preset = figure_preset(name)
        out = outdir / f"{name}.csv"
        t0 = time.perf_counter()
        if isinstance(preset, SweepSpec):
            cmd = ["sweep", "--preset", name, "--out", str(out), "--workers", str(args.workers)]
            if args.grid_points:
                cmd += ["--grid-points", str(args.grid_points)]
        else:
            cmd = ["simulate", "--preset", name, "--adiabatic", "--out", str(out)]
        rc = cli_main(cmd)
        if rc != 0:
            print(f"{name}: FAILED with exit code {rc}", file=sys.stderr)
            return rc
        print(f"{name}: done in {time.perf_counter() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(run())
