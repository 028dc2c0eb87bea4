"""Built-in weather scenarios and the plain-text scenario file format.

File grammar (UTF-8, one directive per line, ``#`` starts a comment)::

    scenario "<name>"
    id <n>                      # optional, built-ins only
    mode paper|physical
    note "<text>"               # optional, repeatable
    slab <base_km> <top_km>
      state "<label>" att_db_per_km=<x> eta=<p> [visibility_km=<v>]
      state ...
    slab ...

``att_per_km=<x>`` may replace ``att_db_per_km`` for coefficients already in
natural units. Slabs must be ascending and non-overlapping and the ``eta``
values of each slab must sum to 1 within 1e-6.
"""

from __future__ import annotations

import csv
import io
import shlex
from dataclasses import dataclass
from functools import lru_cache

from .atmosphere import (
    AtmosphereProfile,
    ExtinctionCoefficient,
    LayerState,
    Mode,
    Slab,
    Unit,
    Violation,
    validate_profile,
)
from .errors import DomainError, ScenarioSyntaxError, ValidationError
from .extinction import lookup_coefficient

__all__ = [
    "ScenarioSpec",
    "SCENARIO_TITLES",
    "builtin_scenario",
    "builtin_scenarios",
    "rainy_elevated_scenario",
    "table_rows",
    "parse_scenario_file",
    "serialize_scenario",
    "format_number",
]

SCENARIO_TITLES = {
    1: "Rainy weather",
    2: "Foggy weather",
    3: "Clear weather",
    4: "Extreme air pollution",
    5: "Snowy weather",
}

# scenario, base_km, top_km, label, eta, att_db_per_km, reference condition
# Extents follow the table; the stratospheric pair occupies 15-30 km.
_TABLE = """\
1,0,0.8,nimbostratus,0.9,8.2425,Nimbostratus
1,0,0.8,normal,0.1,0.034,Normal atm.
1,0.8,15,clear,1,0.0025,Non-polluted atm. (clear)
1,15,30,high-volcanic,0.5,0.0104,
1,15,30,background-volcanic,0.5,2.036e-4,
2,0,1,thick-fog,1,1.7680,Thick fog
2,1,2,light-fog,1,0.4592,Light fog
2,2,15,clear,1,0.0025,Non-polluted atm. (clear)
2,15,30,high-volcanic,0.5,0.0104,
2,15,30,background-volcanic,0.5,2.036e-4,
3,0,3,normal,1,0.034,Normal atm.
3,3,15,clear,1,0.0025,Non-polluted atm. (clear)
3,15,30,high-volcanic,0.5,0.0104,
3,15,30,background-volcanic,0.5,2.036e-4,
4,0,3,extremely-polluted,0.7,0.3536,Extremely polluted atm.
4,0,3,normal,0.3,0.034,Normal atm.
4,3,15,clear,1,0.0025,Non-polluted atm. (clear)
4,15,30,high-volcanic,0.5,0.0104,
4,15,30,background-volcanic,0.5,2.036e-4,
5,0,2,heavy-snow,1,0.20,Heavy snow
5,2,15,clear,1,0.0025,Non-polluted atm. (clear)
5,15,30,high-volcanic,0.5,0.0104,
5,15,30,background-volcanic,0.5,2.036e-4,
"""

_NOTES = {
    1: "Nimbostratus over the lowest 0.8 km (90%), clear troposphere above, "
    "volcanic/background stratospheric aerosol 15-30 km.",
    2: "Thick fog 0-1 km and light fog 1-2 km, both always present.",
    3: "Normal atmosphere in the boundary layer, V = 145 km above.",
    4: "Extremely polluted boundary layer (70%) over a metropolitan area.",
    5: "Heavy snow in the lowest 2 km, V = 0.1 km.",
}


@dataclass(frozen=True)
class ScenarioSpec:
    profile: AtmosphereProfile
    id: int | None = None
    notes: str = ""

    @property
    def name(self) -> str:
        return self.profile.name


@lru_cache(maxsize=1)
def table_rows() -> tuple[tuple[str, ...], ...]:
    """Raw embedded scenario rows, as text."""
    return tuple(tuple(r) for r in csv.reader(io.StringIO(_TABLE)))


def _state_from_row(label: str, eta: str, att: str, condition: str) -> LayerState:
    vis = lookup_coefficient(condition).visibility_km if condition else None
    return LayerState(label, ExtinctionCoefficient(float(att)), float(eta), vis)


def _build(rows, name: str, mode: Mode) -> AtmosphereProfile:
    slabs: list[Slab] = []
    bounds: list[tuple[float, float]] = []
    grouped: dict[tuple[float, float], list[LayerState]] = {}
    for _, base, top, label, eta, att, cond in rows:
        key = (float(base), float(top))
        if key not in grouped:
            grouped[key] = []
            bounds.append(key)
        grouped[key].append(_state_from_row(label, eta, att, cond))
    for base, top in bounds:
        slabs.append(Slab(base, top, grouped[(base, top)]))
    return AtmosphereProfile(name, slabs, mode)


def builtin_scenario(scenario_id: int, mode: Mode | str = Mode.PHYSICAL) -> ScenarioSpec:
    """One of the five reference scenarios, numbered 1 to 5."""
    if scenario_id not in SCENARIO_TITLES:
        raise DomainError(f"unknown scenario id {scenario_id!r}; expected 1-5")
    rows = [r for r in table_rows() if int(r[0]) == scenario_id]
    profile = _build(rows, SCENARIO_TITLES[scenario_id], Mode(mode))
    return ScenarioSpec(profile, scenario_id, _NOTES[scenario_id])


def builtin_scenarios(mode: Mode | str = Mode.PHYSICAL) -> list[ScenarioSpec]:
    return [builtin_scenario(i, mode) for i in sorted(SCENARIO_TITLES)]


def rainy_elevated_scenario(mode: Mode | str = Mode.PHYSICAL) -> ScenarioSpec:
    """Rainy-weather variant with the cloud placed at 0.6-1.4 km altitude.

    Nothing is specified below the cloud base, so 0-0.6 km carries no
    extinction; the clear layer then runs 1.4-15 km.
    """
    base = builtin_scenario(1, mode)
    cloud, clear, strat = base.profile.slabs
    slabs = [cloud.with_bounds(0.6, 1.4), clear.with_bounds(1.4, 15.0), strat]
    profile = AtmosphereProfile("Rainy weather (elevated cloud)", slabs, base.profile.mode)
    return ScenarioSpec(profile, None, "Cloud layer at 0.6-1.4 km; no extinction below 0.6 km.")


# -- text format ---------------------------------------------------------------


def format_number(x: float) -> str:
    """Shortest canonical text with at most 10 significant digits."""
    s = f"{float(x):.10g}"
    if not any(c in s for c in ".eni"):
        s += ".0"
    return s


def _quote(text: str) -> str:
    if any(c in text for c in '"\\\n\r'):
        raise DomainError(f"cannot serialize text containing quotes or newlines: {text!r}")
    return f'"{text}"'


def serialize_scenario(spec: ScenarioSpec) -> str:
    """Canonical text form; ``parse_scenario_file`` reads it back."""
    p = spec.profile
    lines = [f"scenario {_quote(p.name)}"]
    if spec.id is not None:
        lines.append(f"id {int(spec.id)}")
    lines.append(f"mode {p.mode.value}")
    if spec.notes:
        lines.extend(f"note {_quote(n)}" for n in spec.notes.split("\n"))
    for slab in p.slabs:
        lines.append(f"slab {format_number(slab.base_km)} {format_number(slab.top_km)}")
        for s in slab.states:
            key = "att_db_per_km" if s.attenuation.unit is Unit.DB_PER_KM else "att_per_km"
            parts = [
                f"  state {_quote(s.label)}",
                f"{key}={format_number(s.attenuation.value)}",
                f"eta={format_number(s.probability)}",
            ]
            if s.visibility_km is not None:
                parts.append(f"visibility_km={format_number(s.visibility_km)}")
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _float(text: str, what: str, lineno: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ScenarioSyntaxError(f"{what}: not a number: {text!r}", lineno) from None


def _parse_state(tokens: list[str], lineno: int) -> LayerState:
    if len(tokens) < 2:
        raise ScenarioSyntaxError("state needs a label", lineno)
    label = tokens[1]
    kv: dict[str, str] = {}
    for tok in tokens[2:]:
        key, sep, val = tok.partition("=")
        if not sep or not val:
            raise ScenarioSyntaxError(f"expected key=value, got {tok!r}", lineno)
        if key in kv:
            raise ScenarioSyntaxError(f"repeated key {key!r}", lineno)
        kv[key] = val
    unknown = set(kv) - {"att_db_per_km", "att_per_km", "eta", "visibility_km"}
    if unknown:
        raise ScenarioSyntaxError(f"unknown state keys {sorted(unknown)}", lineno)
    if ("att_db_per_km" in kv) == ("att_per_km" in kv):
        raise ScenarioSyntaxError("state needs exactly one of att_db_per_km / att_per_km", lineno)
    if "eta" not in kv:
        raise ScenarioSyntaxError("state needs eta=<p>", lineno)
    if "att_db_per_km" in kv:
        att = ExtinctionCoefficient(_float(kv["att_db_per_km"], "att_db_per_km", lineno), Unit.DB_PER_KM)
    else:
        att = ExtinctionCoefficient(_float(kv["att_per_km"], "att_per_km", lineno), Unit.PER_KM)
    vis = kv.get("visibility_km")
    return LayerState(
        label,
        att,
        _float(kv["eta"], "eta", lineno),
        None if vis is None else _float(vis, "visibility_km", lineno),
    )


def parse_scenario_file(text: str) -> ScenarioSpec:
    """Parse and validate a scenario document.

    Raises
    ------
    ScenarioSyntaxError
        Malformed line, with its line number.
    ValidationError
        Structurally invalid profile; each violation names its rule and the
        source line of the offending slab.
    """
    name: str | None = None
    sid: int | None = None
    mode = Mode.PHYSICAL
    notes: list[str] = []
    slabs: list[tuple[int, float, float, list[LayerState]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        lex = shlex.shlex(raw, posix=True)
        lex.whitespace_split = True
        lex.commenters = "#"
        try:
            tokens = list(lex)
        except ValueError as exc:
            raise ScenarioSyntaxError(str(exc), lineno) from None
        if not tokens:
            continue
        head = tokens[0]
        if head == "scenario":
            if name is not None:
                raise ScenarioSyntaxError("duplicate scenario line", lineno)
            if len(tokens) != 2:
                raise ScenarioSyntaxError('expected: scenario "<name>"', lineno)
            name = tokens[1]
            continue
        if name is None:
            raise ScenarioSyntaxError("document must start with a scenario line", lineno)
        try:
            if head == "id":
                if len(tokens) != 2:
                    raise ScenarioSyntaxError("expected: id <n>", lineno)
                try:
                    sid = int(tokens[1])
                except ValueError:
                    raise ScenarioSyntaxError(f"bad id {tokens[1]!r}", lineno) from None
            elif head == "mode":
                if len(tokens) != 2 or tokens[1] not in ("paper", "physical"):
                    raise ScenarioSyntaxError("expected: mode paper|physical", lineno)
                mode = Mode(tokens[1])
            elif head == "note":
                if len(tokens) != 2:
                    raise ScenarioSyntaxError('expected: note "<text>"', lineno)
                notes.append(tokens[1])
            elif head == "slab":
                if len(tokens) != 3:
                    raise ScenarioSyntaxError("expected: slab <base_km> <top_km>", lineno)
                base = _float(tokens[1], "base_km", lineno)
                top = _float(tokens[2], "top_km", lineno)
                if any((base, top) == (b, t) for _, b, t, _ in slabs):
                    raise ScenarioSyntaxError(f"duplicate slab range {base:g}-{top:g} km", lineno)
                slabs.append((lineno, base, top, []))
            elif head == "state":
                if not slabs:
                    raise ScenarioSyntaxError("state before any slab", lineno)
                slabs[-1][3].append(_parse_state(tokens, lineno))
            else:
                raise ScenarioSyntaxError(f"unknown directive {head!r}", lineno)
        except DomainError as exc:
            raise ScenarioSyntaxError(str(exc), lineno) from None
    if name is None:
        raise ScenarioSyntaxError("missing scenario line")
    profile = AtmosphereProfile(name, [Slab(b, t, st) for _, b, t, st in slabs], mode)
    violations = validate_profile(profile)
    if violations:
        where = [ln for ln, *_ in slabs]
        raise ValidationError(
            Violation(
                v.rule,
                v.slabs,
                v.message + "".join(f" (line {where[i]})" for i in v.slabs),
            )
            for v in violations
        )
    return ScenarioSpec(profile, sid, "\n".join(notes))
