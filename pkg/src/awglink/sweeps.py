"""Declarative scenario runner: named figure datasets and generic
parameter-grid sweeps.

Each figure builder reproduces one standard dataset of the device study
(thermo-optic rate, drift curves, dispersion spectra, bit-rate scalings)
as a deterministic table whose metadata records every resolved parameter.
The generic sweep evaluates requested quantities over the Cartesian
product of parameter axes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Optional

from .capacity import (
    LinkBudget,
    dispersion_y_factor,
    evaluate_channel,
    relative_index_difference,
)
from .errors import ConfigError, UnknownScenarioError
from .materials import DERIV_EXACT, DERIV_MODES
from .tableio import SweepTable, fmt_number, grid
from .waveguide import (
    V_B_ZERO,
    WaveguideDesign,
    center_wavelength,
    dnc_dT,
    effective_index,
    normalized_b,
    thermal_scan,
    v_number,
    wavelength_shift,
)

# Default scenario legends.  The middle entry of each bracket is the
# reference optimum design point; neighbours bracket it symmetrically.
CORE_INDEX_LEGEND = (2.20, 2.33, 2.46)
CLADDING_INDEX_LEGEND = (1.45, 1.52, 1.59)
CORE_WIDTH_LEGEND_UM = (3.0, 5.0, 7.0)
TEMPERATURE_LEGEND_C = (27.0, 45.0, 70.0)

DEFAULT_T_STEP_C = 1.0
DEFAULT_LAMBDA_STEP_UM = 0.01
T_SCAN_RANGE_C = (20.0, 70.0)
LAMBDA_SCAN_RANGE_UM = (1.0, 1.64)

MAX_SWEEP_POINTS = 10 ** 6

FIGURE_IDS = tuple(f"fig{i}" for i in range(4, 14))


def default_design() -> WaveguideDesign:
    """The reference design point: 5 um square core at the optimum index pair."""
    return WaveguideDesign(core_width_a=5.0, n1_design=2.33, n2_design=1.52)


def default_budget() -> LinkBudget:
    """Reference fiber plant: 10 km reach, fully split core, 16 channels."""
    return LinkBudget(fiber_length_km=10.0, num_links=24, num_channels=16)


def scenario_y_factor(design: WaveguideDesign) -> float:
    """Confinement factor pinned for legend sweeps: evaluated once for the
    base design at its center wavelength and design indices, so legend
    curves differ only through the swept parameter."""
    v = v_number(design.lambda0, design.core_width_a, design.n1_design, design.n2_design)
    return dispersion_y_factor(v)


def _design_metadata(design: WaveguideDesign) -> dict:
    return {
        "design.core_width_a_um": fmt_number(design.core_width_a),
        "design.n1_design": fmt_number(design.n1_design),
        "design.n2_design": fmt_number(design.n2_design),
        "design.alpha_sub_per_C": fmt_number(design.alpha_sub),
        "design.lambda0_um": fmt_number(design.lambda0),
        "design.t0_C": fmt_number(design.t0),
        "design.index_mode": design.index_mode,
    }


def _budget_metadata(budget: LinkBudget) -> dict:
    return {
        "budget.fiber_length_km": fmt_number(budget.fiber_length_km),
        "budget.num_links": fmt_number(budget.num_links),
        "budget.num_channels": fmt_number(budget.num_channels),
        "budget.band_um": f"{fmt_number(budget.band[0])}..{fmt_number(budget.band[1])}",
        "budget.temperature_C": fmt_number(budget.temperature),
    }


def _resolve_y(y_mode, design: WaveguideDesign):
    """Map a y-mode setting to (y_factor, metadata string).  None selects
    the pinned scenario factor; 'auto' tracks the evaluated design's V."""
    if y_mode is None:
        y = scenario_y_factor(design)
        return y, f"constant:{fmt_number(y)}"
    if y_mode == "auto":
        return None, "auto"
    y = float(y_mode)
    return y, f"constant:{fmt_number(y)}"


def _thermal_legend_figure(
    figure_id: str,
    description: str,
    design: WaveguideDesign,
    legend_field: str,
    legend_values,
    column_tag: str,
    t_grid,
) -> SweepTable:
    designs = [replace(design, **{legend_field: v}) for v in legend_values]
    scans = [thermal_scan(d, t_grid) for d in designs]
    columns = ["T_C"] + [
        f"delta_lambda_nm_{column_tag}_{fmt_number(v)}" for v in legend_values
    ]
    rows = tuple(
        tuple([t_grid[i]] + [scan.delta_lambda_nm[i] for scan in scans])
        for i in range(len(t_grid))
    )
    metadata = _design_metadata(design)
    metadata.update(
        {
            "figure": figure_id,
            "description": description,
            "legend": f"{column_tag} in " + "/".join(fmt_number(v) for v in legend_values),
            "t_grid_C": f"{fmt_number(t_grid[0])}..{fmt_number(t_grid[-1])} step {fmt_number(t_grid[1] - t_grid[0])}",
        }
    )
    return SweepTable(name=figure_id, columns=tuple(columns), rows=rows, metadata=metadata)


def run_figure(
    figure_id: str,
    design: Optional[WaveguideDesign] = None,
    budget: Optional[LinkBudget] = None,
    mode: str = DERIV_EXACT,
    y_mode=None,
) -> SweepTable:
    """Build the named figure dataset.

    design/budget override the reference scenario; mode selects the
    second-derivative form; y_mode is None (pinned scenario factor),
    'auto', or a numeric constant.  Output is deterministic.
    """
    if figure_id not in FIGURE_IDS:
        raise UnknownScenarioError(
            f"unknown figure id {figure_id!r}; known: {', '.join(FIGURE_IDS)}"
        )
    if mode not in DERIV_MODES:
        raise ConfigError(f"unknown derivative mode {mode!r}; use one of {DERIV_MODES}")
    design = design if design is not None else default_design()
    budget = budget if budget is not None else default_budget()
    t_grid = grid(T_SCAN_RANGE_C[0], T_SCAN_RANGE_C[1], DEFAULT_T_STEP_C)
    lam_grid = grid(LAMBDA_SCAN_RANGE_UM[0], LAMBDA_SCAN_RANGE_UM[1], DEFAULT_LAMBDA_STEP_UM)

    if figure_id == "fig4":
        rows = tuple((t, dnc_dT(design, t)) for t in t_grid)
        metadata = _design_metadata(design)
        metadata.update(
            {
                "figure": "fig4",
                "description": "waveguide thermo-optic rate versus temperature",
                "t_grid_C": f"{fmt_number(t_grid[0])}..{fmt_number(t_grid[-1])} step {fmt_number(DEFAULT_T_STEP_C)}",
            }
        )
        return SweepTable("fig4", ("T_C", "dnc_dT"), rows, metadata)

    if figure_id == "fig5":
        return _thermal_legend_figure(
            "fig5",
            "center-wavelength shift versus temperature for core index values",
            design, "n1_design", CORE_INDEX_LEGEND, "n1", t_grid,
        )
    if figure_id == "fig6":
        return _thermal_legend_figure(
            "fig6",
            "center-wavelength shift versus temperature for cladding index values",
            design, "n2_design", CLADDING_INDEX_LEGEND, "n2", t_grid,
        )
    if figure_id == "fig7":
        return _thermal_legend_figure(
            "fig7",
            "center-wavelength shift versus temperature for core width values",
            design, "core_width_a", CORE_WIDTH_LEGEND_UM, "a", t_grid,
        )

    # Dispersion and bit-rate figures share the pinned confinement factor.
    y_factor, y_meta = _resolve_y(y_mode, design)
    designs = [replace(design, n2_design=n2) for n2 in CLADDING_INDEX_LEGEND]
    contrasts = [
        relative_index_difference(d.n1_design, d.n2_design) for d in designs
    ]
    dn_tags = [f"dn_{format(dn, '.5g')}" for dn in contrasts]

    metadata = _design_metadata(design)
    metadata.update(_budget_metadata(budget))
    metadata.update(
        {
            "figure": figure_id,
            "derivative_mode": mode,
            "y_mode": y_meta,
        }
    )

    if figure_id in ("fig8", "fig9"):
        per_fig = {
            "fig8": ("total chromatic dispersion versus wavelength for index-contrast values", "Dt"),
            "fig9": ("per-channel MTDM bit rate versus wavelength for index-contrast values", "Brm_Gbps"),
        }
        description, quantity = per_fig[figure_id]
        columns = ["lambda_um"] + [f"{quantity}_{tag}" for tag in dn_tags]
        rows = []
        for lam in lam_grid:
            row = [lam]
            for d in designs:
                sample = evaluate_channel(lam, d, budget, mode=mode, y_factor=y_factor)
                row.append(sample.dt if figure_id == "fig8" else sample.brm_gbps)
            rows.append(tuple(row))
        metadata.update(
            {
                "description": description,
                "legend": "n2 in " + "/".join(fmt_number(v) for v in CLADDING_INDEX_LEGEND),
                "lambda_grid_um": f"{fmt_number(lam_grid[0])}..{fmt_number(lam_grid[-1])} step {fmt_number(DEFAULT_LAMBDA_STEP_UM)}",
            }
        )
        return SweepTable(figure_id, tuple(columns), tuple(rows), metadata)

    if figure_id in ("fig10", "fig11"):
        per_fig = {
            "fig10": ("per-channel MTDM bit rate versus link count for index-contrast values", "Brm_Gbps"),
            "fig11": ("per-link MTDM bit rate versus link count for index-contrast values", "BrLink_Gbps"),
        }
        description, quantity = per_fig[figure_id]
        columns = ["NL"] + [f"{quantity}_{tag}" for tag in dn_tags]
        rows = []
        for nl in range(1, budget.num_links + 1):
            nl_budget = replace(budget, num_links=nl)
            row = [float(nl)]
            for d in designs:
                sample = evaluate_channel(d.lambda0, d, nl_budget, mode=mode, y_factor=y_factor)
                row.append(sample.brm_gbps if figure_id == "fig10" else sample.brlink_gbps)
            rows.append(tuple(row))
        metadata.update(
            {
                "description": description,
                "legend": "n2 in " + "/".join(fmt_number(v) for v in CLADDING_INDEX_LEGEND),
                "evaluation_lambda_um": fmt_number(design.lambda0),
                "nl_range": f"1..{budget.num_links}",
            }
        )
        return SweepTable(figure_id, tuple(columns), tuple(rows), metadata)

    # fig12 / fig13: bit rate versus link count across operating temperatures
    per_fig = {
        "fig12": ("per-channel MTDM bit rate versus link count for operating temperatures", "Brm_Gbps"),
        "fig13": ("per-link MTDM bit rate versus link count for operating temperatures", "BrLink_Gbps"),
    }
    description, quantity = per_fig[figure_id]
    columns = ["NL"] + [f"{quantity}_T_{fmt_number(t)}" for t in TEMPERATURE_LEGEND_C]
    rows = []
    for nl in range(1, budget.num_links + 1):
        row = [float(nl)]
        for t in TEMPERATURE_LEGEND_C:
            nl_budget = replace(budget, num_links=nl, temperature=t)
            sample = evaluate_channel(design.lambda0, design, nl_budget, mode=mode, y_factor=y_factor)
            row.append(sample.brm_gbps if figure_id == "fig12" else sample.brlink_gbps)
        rows.append(tuple(row))
    metadata.update(
        {
            "description": description,
            "legend": "T_C in " + "/".join(fmt_number(t) for t in TEMPERATURE_LEGEND_C),
            "evaluation_lambda_um": fmt_number(design.lambda0),
            "nl_range": f"1..{budget.num_links}",
        }
    )
    return SweepTable(figure_id, tuple(columns), tuple(rows), metadata)


def run_all_figures(
    design: Optional[WaveguideDesign] = None,
    budget: Optional[LinkBudget] = None,
    mode: str = DERIV_EXACT,
    y_mode=None,
):
    """All figure datasets in id order."""
    return [run_figure(fid, design, budget, mode, y_mode) for fid in FIGURE_IDS]


@dataclass(frozen=True)
class SweepSpec:
    """A generic Cartesian sweep: axes of (parameter path, values) plus the
    quantity names to evaluate at each grid point.

    Paths address ``design.<field>``, ``budget.<field>``, or the bare
    evaluation wavelength ``lambda``.
    """

    scenario_id: str
    axes: tuple                      # ((path, (values...)), ...)
    outputs: tuple                   # quantity names
    metadata: dict = field(default_factory=dict)


_DESIGN_FIELDS = (
    "core_width_a", "n1_design", "n2_design", "alpha_sub", "lambda0", "t0",
)
_BUDGET_FIELDS = ("fiber_length_km", "num_links", "num_channels", "temperature")

QUANTITY_NAMES = (
    "n_c", "dnc_dT", "lambda_c_um", "delta_lambda_nm", "b", "V",
    "Dm", "Dw", "Dt", "delta_tau_ns", "Brm_Gbps", "BrLink_Gbps",
)


def _validate_path(path: str) -> None:
    if path == "lambda":
        return
    scope, _, fld = path.partition(".")
    if scope == "design" and fld in _DESIGN_FIELDS:
        return
    if scope == "budget" and fld in _BUDGET_FIELDS:
        return
    raise ConfigError(
        f"unresolvable sweep parameter path {path!r}; use 'lambda', "
        f"'design.<field>' or 'budget.<field>'"
    )


def run_sweep(
    spec: SweepSpec,
    design: Optional[WaveguideDesign] = None,
    budget: Optional[LinkBudget] = None,
    mode: str = DERIV_EXACT,
    y_mode="auto",
) -> SweepTable:
    """Evaluate the requested quantities over the axes' Cartesian product.

    Row order is outer-to-inner in axis declaration order and is fully
    deterministic.  The total grid size is capped at 10^6 points.
    """
    design = design if design is not None else default_design()
    budget = budget if budget is not None else default_budget()
    if not spec.axes:
        raise ConfigError("sweep needs at least one axis")
    if not spec.outputs:
        raise ConfigError("sweep needs at least one output quantity")
    for name in spec.outputs:
        if name not in QUANTITY_NAMES:
            raise ConfigError(
                f"unknown output quantity {name!r}; known: {', '.join(QUANTITY_NAMES)}"
            )
    total = 1
    for path, values in spec.axes:
        _validate_path(path)
        values = tuple(values)
        if not values:
            raise ConfigError(f"sweep axis {path!r} has no values")
        total *= len(values)
    if total > MAX_SWEEP_POINTS:
        raise ConfigError(f"sweep grid has {total} points, above the cap {MAX_SWEEP_POINTS}")

    columns = tuple(path for path, _ in spec.axes) + tuple(spec.outputs)
    y_factor, y_meta = _resolve_y(y_mode, design)
    rows = []
    b_clamped = 0
    axis_values = [tuple(values) for _, values in spec.axes]
    for combo in itertools.product(*axis_values):
        point_design, point_budget, lam = design, budget, None
        for (path, _), value in zip(spec.axes, combo):
            if path == "lambda":
                lam = float(value)
            else:
                scope, _, fld = path.partition(".")
                if scope == "design":
                    point_design = replace(point_design, **{fld: float(value)})
                else:
                    coerced = int(value) if fld in ("num_links", "num_channels") else float(value)
                    point_budget = replace(point_budget, **{fld: coerced})
        if lam is None:
            lam = point_design.lambda0

        temp = point_budget.temperature
        values_out = []
        sample = None
        for name in spec.outputs:
            if name == "n_c":
                values_out.append(effective_index(point_design, temp))
            elif name == "dnc_dT":
                values_out.append(dnc_dT(point_design, temp))
            elif name == "lambda_c_um":
                values_out.append(center_wavelength(point_design, temp))
            elif name == "delta_lambda_nm":
                values_out.append(wavelength_shift(point_design, temp))
            elif name in ("b", "V"):
                n1, n2 = point_design.indices_at(temp)
                v = v_number(lam, point_design.core_width_a, n1, n2)
                if name == "V":
                    values_out.append(v)
                else:
                    if v <= V_B_ZERO:
                        b_clamped += 1
                    values_out.append(normalized_b(v))
            else:
                if sample is None:
                    sample = evaluate_channel(lam, point_design, point_budget, mode=mode, y_factor=y_factor)
                values_out.append(
                    {
                        "Dm": sample.dm,
                        "Dw": sample.dw,
                        "Dt": sample.dt,
                        "delta_tau_ns": sample.delta_tau_ns,
                        "Brm_Gbps": sample.brm_gbps,
                        "BrLink_Gbps": sample.brlink_gbps,
                    }[name]
                )
        rows.append(tuple(float(v) for v in combo) + tuple(values_out))

    metadata = dict(spec.metadata)
    metadata.update(_design_metadata(design))
    metadata.update(_budget_metadata(budget))
    metadata.update(
        {
            "scenario": spec.scenario_id,
            "derivative_mode": mode,
            "y_mode": y_meta,
            "grid_points": fmt_number(total),
            "axes": "; ".join(
                f"{path}=" + "/".join(fmt_number(v) for v in values)
                for path, values in spec.axes
            ),
        }
    )
    if b_clamped:
        metadata["warning_b_clamped_points"] = fmt_number(b_clamped)
    return SweepTable(spec.scenario_id, columns, tuple(rows), metadata)
