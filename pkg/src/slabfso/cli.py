"""Command-line front end.

Machine-readable CSV goes to stdout, diagnostics to stderr. Exit status is 0
on success, 1 on a domain or validation error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass
from pathlib import Path

from .analysis.montecarlo import monte_carlo
from .analysis.sensitivity import boundary_sensitivity, probability_sensitivity
from .analysis.sweep import (
    linear_grid,
    rescale_profile,
    states_without_visibility,
    sweep_wavelength,
    sweep_zenith,
)
from .atmosphere import LinkGeometry, Mode, clip_profile, effective_transmittance
from .errors import SlabFSOError
from .extinction import REFERENCE_WAVELENGTH_NM, export_csv
from .scenarios import (
    SCENARIO_TITLES,
    ScenarioSpec,
    builtin_scenario,
    parse_scenario_file,
    serialize_scenario,
)
from .tables import render_csv


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass(frozen=True)
class CliResult:
    exit_code: int
    stdout: str
    stderr: str


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", type=int, metavar="N", help="built-in scenario id (1-5)")
    src.add_argument("--file", type=Path, metavar="F", help="scenario file")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None,
                   help="evaluation mode (default: physical, or the file's mode line)")


def _add_geometry(p: argparse.ArgumentParser) -> None:
    p.add_argument("--zenith", type=float, default=0.0, metavar="Z", help="zenith angle, deg")
    p.add_argument("--ground", type=float, default=0.0, metavar="G", help="ground altitude, km")
    p.add_argument("--platform", type=float, default=None, metavar="P",
                   help="platform altitude, km (default: above the atmosphere)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slabfso", description="Layered-atmosphere FSO attenuation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sc = sub.add_parser("scenario", help="list, show or check scenarios")
    scs = sc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    scs.add_parser("list", help="list built-in scenarios")
    show = scs.add_parser("show", help="print a built-in in scenario-file form")
    show.add_argument("--id", type=int, required=True, metavar="N")
    show.add_argument("--mode", choices=[m.value for m in Mode], default="physical")
    check = scs.add_parser("check", help="validate a scenario file")
    check.add_argument("--file", type=Path, required=True, metavar="F")
    scs.add_parser("coefficients", help="export the coefficient table as CSV")

    comp = sub.add_parser("compute", help="transmittance at one zenith angle and wavelength")
    _add_source(comp)
    _add_geometry(comp)
    comp.add_argument("--wavelength", type=float, default=REFERENCE_WAVELENGTH_NM, metavar="L")

    sw = sub.add_parser("sweep", help="sweep zenith angle or wavelength")
    _add_source(sw)
    _add_geometry(sw)
    sw.add_argument("--var", choices=["zenith", "wavelength"], required=True)
    sw.add_argument("--from", dest="start", type=float, required=True, metavar="A")
    sw.add_argument("--to", dest="stop", type=float, required=True, metavar="B")
    sw.add_argument("--step", type=float, required=True, metavar="S")
    sw.add_argument("--wavelength", type=float, default=REFERENCE_WAVELENGTH_NM, metavar="L")

    se = sub.add_parser("sensitivity", help="boundary or probability perturbations")
    _add_source(se)
    _add_geometry(se)
    se.add_argument("--kind", choices=["boundary", "probability"], required=True)
    se.add_argument("--delta-km", type=float, default=1.0, metavar="D")
    se.add_argument("--fraction", type=float, default=0.25, metavar="F")

    mc = sub.add_parser("montecarlo", help="sample per-slab weather states")
    _add_source(mc)
    _add_geometry(mc)
    mc.add_argument("--samples", type=int, default=100_000, metavar="M")
    mc.add_argument("--seed", type=int, default=0, metavar="S")
    return parser


def _load(args) -> ScenarioSpec:
    if args.scenario is not None:
        spec = builtin_scenario(args.scenario)
    else:
        try:
            text = args.file.read_text(encoding="utf-8")
        except OSError as exc:
            raise SlabFSOError(f"cannot read {args.file}: {exc.strerror}") from None
        spec = parse_scenario_file(text)
    if args.mode is not None:
        spec = ScenarioSpec(spec.profile.with_mode(args.mode), spec.id, spec.notes)
    return spec


def _geometry(args) -> LinkGeometry:
    return LinkGeometry(args.zenith, args.ground, args.platform)


def _note_unscaled(profile, wavelengths_nm) -> None:
    if all(lam == REFERENCE_WAVELENGTH_NM for lam in wavelengths_nm):
        return
    for j, label in states_without_visibility(profile):
        print(f"note: slab {j} state {label!r} has no visibility; kept at 1550 nm value",
              file=sys.stderr)


def _cmd_scenario(args) -> int:
    if args.action == "list":
        for i, title in SCENARIO_TITLES.items():
            print(f"{i} {title}")
    elif args.action == "show":
        sys.stdout.write(serialize_scenario(builtin_scenario(args.id, args.mode)))
    elif args.action == "coefficients":
        sys.stdout.write(export_csv())
    else:
        try:
            text = args.file.read_text(encoding="utf-8")
        except OSError as exc:
            raise SlabFSOError(f"cannot read {args.file}: {exc.strerror}") from None
        spec = parse_scenario_file(text)
        print(f"ok {spec.name}: {len(spec.profile.slabs)} slabs")
    return 0


def _cmd_compute(args) -> int:
    spec = _load(args)
    geom = _geometry(args)
    profile = clip_profile(spec.profile, geom)
    _note_unscaled(profile, [args.wavelength])
    profile = rescale_profile(profile, args.wavelength, strict=False)
    r = effective_transmittance(profile, geom.zenith_deg)
    sys.stdout.write(
        render_csv(
            ["zenith_deg", "wavelength_nm", "transmittance", "loss_db"],
            [[geom.zenith_deg, float(args.wavelength), r.transmittance, r.loss_db]],
        )
    )
    return 0


def _cmd_sweep(args) -> int:
    spec = _load(args)
    geom = _geometry(args)
    profile = clip_profile(spec.profile, geom)
    grid = linear_grid(args.start, args.stop, args.step)
    if args.var == "zenith":
        _note_unscaled(profile, [args.wavelength])
        table = sweep_zenith(rescale_profile(profile, args.wavelength, strict=False), grid)
    else:
        _note_unscaled(profile, grid)
        table = sweep_wavelength(profile, grid, geom.zenith_deg, strict=False)
    sys.stdout.write(
        render_csv(
            ["axis", "value", "transmittance", "loss_db"],
            [[table.axis.value, r.value, r.transmittance, r.loss_db] for r in table.rows],
        )
    )
    return 0


def _cmd_sensitivity(args) -> int:
    spec = _load(args)
    geom = _geometry(args)
    if args.kind == "boundary":
        reports = boundary_sensitivity(spec.profile, geom, args.delta_km)
    else:
        reports = probability_sensitivity(spec.profile, geom, args.fraction)
    rows = []
    for r in reports:
        if r.feasible:
            rows.append([r.perturbation, r.baseline_loss_db, r.perturbed_loss_db, r.delta_db])
        else:
            print(f"note: {r.perturbation}: {r.note}", file=sys.stderr)
    sys.stdout.write(
        render_csv(["perturbation", "baseline_loss_db", "perturbed_loss_db", "delta_db"], rows)
    )
    return 0


def _cmd_montecarlo(args) -> int:
    spec = _load(args)
    geom = _geometry(args)
    stats = monte_carlo(clip_profile(spec.profile, geom), geom.zenith_deg, args.samples, args.seed)
    q = stats.quantiles
    sys.stdout.write(
        render_csv(
            ["samples", "mean", "geometric_mean", "p05", "p50", "p95"],
            [[stats.samples, stats.mean_transmittance, stats.geometric_mean_transmittance,
              q["p05"], q["p50"], q["p95"]]],
        )
    )
    return 0


_COMMANDS = {
    "scenario": _cmd_scenario,
    "compute": _cmd_compute,
    "sweep": _cmd_sweep,
    "sensitivity": _cmd_sensitivity,
    "montecarlo": _cmd_montecarlo,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except SlabFSOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run(args: list[str]) -> CliResult:
    """Run the CLI in-process and capture its output."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(args))
    return CliResult(code, out.getvalue(), err.getvalue())


if __name__ == "__main__":
    raise SystemExit(main())
