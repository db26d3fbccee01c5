"""Run configuration: TOML file loading with strict key checking.

A config file may carry material coefficient overrides, the waveguide
design block, the link budget block, evaluation mode switches, and an
optional generic sweep definition.  Unknown keys are rejected so typos
cannot silently fall back to defaults.  Command-line flags override file
values; file values override the built-in defaults, which equal the
published constants of the modelled device.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Union

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .capacity import LinkBudget
from .errors import ConfigError, DomainError
from .materials import DERIV_EXACT, DERIV_MODES, LiNbO3Model, PmmaModel
from .sweeps import SweepSpec, default_budget, default_design
from .waveguide import INDEX_MODES, WaveguideDesign


@dataclass(frozen=True)
class RunConfig:
    design: WaveguideDesign = field(default_factory=default_design)
    budget: LinkBudget = field(default_factory=default_budget)
    derivative_mode: str = DERIV_EXACT
    # None means "not specified": figure scenarios then use their pinned
    # default while plain dispersion commands track the design ('auto').
    y_mode: Union[str, float, None] = None
    emit_gnuplot: bool = False
    sweep: Optional[SweepSpec] = None


def parse_y_mode(raw: str):
    """'auto' or 'constant:<value>' -> 'auto' | float."""
    if raw == "auto":
        return "auto"
    if raw.startswith("constant:"):
        try:
            return float(raw.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad y_mode constant in {raw!r}") from None
    raise ConfigError(f"y_mode must be 'auto' or 'constant:<value>', got {raw!r}")


def _require_table(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"[{where}] must be a table")
    return value


def _reject_unknown(table: dict, known, where: str) -> None:
    unknown = sorted(set(table) - set(known))
    if unknown:
        raise ConfigError(f"unknown keys in [{where}]: {', '.join(unknown)}")


def _number(table: dict, key: str, where: str, default):
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    return float(value)


def _integer(table: dict, key: str, where: str, default):
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")
    return value


def _string(table: dict, key: str, where: str, default, choices=None):
    if key not in table:
        return default
    value = table[key]
    if not isinstance(value, str):
        raise ConfigError(f"{where}.{key} must be a string, got {value!r}")
    if choices is not None and value not in choices:
        raise ConfigError(f"{where}.{key} must be one of {choices}, got {value!r}")
    return value


def _material(table: dict, where: str, cls):
    defaults = cls()
    known = [f.name for f in fields(cls)]
    _reject_unknown(table, known, where)
    overrides = {
        key: _number(table, key, where, getattr(defaults, key)) for key in table
    }
    return replace(defaults, **overrides)


def _design_from(table: dict, linbo3: LiNbO3Model, pmma: PmmaModel) -> WaveguideDesign:
    where = "design"
    known = (
        "core_width_a", "n1_design", "n2_design", "alpha_sub",
        "lambda0", "t0", "index_mode",
    )
    _reject_unknown(table, known, where)
    base = default_design()
    try:
        return WaveguideDesign(
            core_width_a=_number(table, "core_width_a", where, base.core_width_a),
            n1_design=_number(table, "n1_design", where, base.n1_design),
            n2_design=_number(table, "n2_design", where, base.n2_design),
            alpha_sub=_number(table, "alpha_sub", where, base.alpha_sub),
            lambda0=_number(table, "lambda0", where, base.lambda0),
            t0=_number(table, "t0", where, base.t0),
            index_mode=_string(table, "index_mode", where, base.index_mode, INDEX_MODES),
            core=linbo3,
            cladding=pmma,
        )
    except DomainError as exc:
        raise ConfigError(f"invalid [design]: {exc}") from None


def _budget_from(table: dict) -> LinkBudget:
    where = "budget"
    known = ("fiber_length_km", "num_links", "num_channels", "band", "temperature")
    _reject_unknown(table, known, where)
    base = default_budget()
    band = base.band
    if "band" in table:
        raw = table["band"]
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
        ):
            raise ConfigError(f"budget.band must be a two-number array, got {raw!r}")
        band = (float(raw[0]), float(raw[1]))
    try:
        return LinkBudget(
            fiber_length_km=_number(table, "fiber_length_km", where, base.fiber_length_km),
            num_links=_integer(table, "num_links", where, base.num_links),
            num_channels=_integer(table, "num_channels", where, base.num_channels),
            band=band,
            temperature=_number(table, "temperature", where, base.temperature),
        )
    except DomainError as exc:
        raise ConfigError(f"invalid [budget]: {exc}") from None


def _sweep_from(table: dict) -> SweepSpec:
    where = "sweep"
    _reject_unknown(table, ("scenario_id", "axes", "outputs"), where)
    scenario_id = _string(table, "scenario_id", where, "sweep")
    outputs = table.get("outputs")
    if not isinstance(outputs, list) or not all(isinstance(o, str) for o in outputs):
        raise ConfigError("sweep.outputs must be an array of quantity names")
    raw_axes = table.get("axes")
    if not isinstance(raw_axes, list) or not raw_axes:
        raise ConfigError("sweep.axes must be a non-empty array of axis tables")
    axes = []
    for i, axis in enumerate(raw_axes):
        axis = _require_table(axis, f"sweep.axes[{i}]")
        _reject_unknown(axis, ("path", "values"), f"sweep.axes[{i}]")
        path = axis.get("path")
        values = axis.get("values")
        if not isinstance(path, str):
            raise ConfigError(f"sweep.axes[{i}].path must be a string")
        if (
            not isinstance(values, list)
            or not values
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in values)
        ):
            raise ConfigError(f"sweep.axes[{i}].values must be a non-empty number array")
        axes.append((path, tuple(float(v) for v in values)))
    return SweepSpec(scenario_id=scenario_id, axes=tuple(axes), outputs=tuple(outputs))


def load_config(path) -> RunConfig:
    """Parse a TOML config file into a RunConfig, rejecting unknown keys."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = _toml.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None

    _reject_unknown(data, ("materials", "design", "budget", "modes", "sweep"), "config")

    linbo3 = LiNbO3Model()
    pmma = PmmaModel()
    if "materials" in data:
        mats = _require_table(data["materials"], "materials")
        _reject_unknown(mats, ("linbo3", "pmma"), "materials")
        if "linbo3" in mats:
            linbo3 = _material(_require_table(mats["linbo3"], "materials.linbo3"),
                               "materials.linbo3", LiNbO3Model)
        if "pmma" in mats:
            pmma = _material(_require_table(mats["pmma"], "materials.pmma"),
                             "materials.pmma", PmmaModel)

    base_design = default_design()
    design = replace(base_design, core=linbo3, cladding=pmma)
    if "design" in data:
        design = _design_from(_require_table(data["design"], "design"), linbo3, pmma)

    budget = default_budget()
    if "budget" in data:
        budget = _budget_from(_require_table(data["budget"], "budget"))

    derivative_mode = DERIV_EXACT
    y_mode = None
    emit_gnuplot = False
    if "modes" in data:
        modes = _require_table(data["modes"], "modes")
        _reject_unknown(modes, ("derivative_mode", "y_mode", "emit_gnuplot"), "modes")
        derivative_mode = _string(modes, "derivative_mode", "modes", DERIV_EXACT, DERIV_MODES)
        if "y_mode" in modes:
            y_mode = parse_y_mode(_string(modes, "y_mode", "modes", "auto"))
        if "emit_gnuplot" in modes:
            if not isinstance(modes["emit_gnuplot"], bool):
                raise ConfigError("modes.emit_gnuplot must be a boolean")
            emit_gnuplot = modes["emit_gnuplot"]

    sweep = None
    if "sweep" in data:
        sweep = _sweep_from(_require_table(data["sweep"], "sweep"))

    return RunConfig(
        design=design,
        budget=budget,
        derivative_mode=derivative_mode,
        y_mode=y_mode,
        emit_gnuplot=emit_gnuplot,
        sweep=sweep,
    )
