"""Loss versus wavelength for every built-in scenario at a fixed zenith angle.

Usage: python3 scripts/wavelength_sweep.py [--zenith 10] [--mode physical] [--step 10]
"""

from __future__ import annotations

import argparse
import sys

from slabfso import builtin_scenario
from slabfso.analysis import linear_grid, sweep_wavelength
from slabfso.scenarios import SCENARIO_TITLES
from slabfso.tables import render_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--zenith", type=float, default=10.0)
    ap.add_argument("--mode", default="physical", choices=["paper", "physical"])
    ap.add_argument("--step", type=float, default=10.0)
    args = ap.parse_args()

    grid = linear_grid(850.0, 1550.0, args.step)
    rows = []
    for sid in SCENARIO_TITLES:
        profile = builtin_scenario(sid, args.mode).profile
        table = sweep_wavelength(profile, grid, args.zenith, strict=False)
        rows += [[sid, r.value, r.transmittance, r.loss_db] for r in table.rows]
        spread = max(table.losses_db) - min(table.losses_db)
        print(f"scenario {sid}: loss spread {spread:.4f} dB", file=sys.stderr)
    sys.stdout.write(render_csv(["scenario", "wavelength_nm", "transmittance", "loss_db"], rows))


if __name__ == "__main__":
    main()
