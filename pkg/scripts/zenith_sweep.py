"""Loss versus zenith angle (0 to 80 deg) for every built-in scenario at 1550 nm."""

from __future__ import annotations

import argparse
import sys

from slabfso import builtin_scenario
from slabfso.analysis import linear_grid, sweep_zenith
from slabfso.scenarios import SCENARIO_TITLES
from slabfso.tables import render_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", default="paper", choices=["paper", "physical"])
    ap.add_argument("--step", type=float, default=5.0)
    args = ap.parse_args()

    grid = linear_grid(0.0, 80.0, args.step)
    rows = []
    for sid in SCENARIO_TITLES:
        table = sweep_zenith(builtin_scenario(sid, args.mode).profile, grid)
        rows += [[sid, r.value, r.transmittance, r.loss_db] for r in table.rows]
    sys.stdout.write(render_csv(["scenario", "zenith_deg", "transmittance", "loss_db"], rows))


if __name__ == "__main__":
    main()
