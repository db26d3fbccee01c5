"""Figure datasets and generic parameter sweeps."""

from dataclasses import replace

import pytest

from awglink.capacity import evaluate_channel
from awglink.errors import ConfigError, UnknownScenarioError
from awglink.sweeps import (
    FIGURE_IDS,
    SweepSpec,
    default_budget,
    default_design,
    run_all_figures,
    run_figure,
    run_sweep,
    scenario_y_factor,
)
from awglink.waveguide import effective_index


def test_figure_ids_cover_the_ten_datasets():
    assert FIGURE_IDS == tuple(f"fig{i}" for i in range(4, 14))


def test_unknown_figure_rejected():
    with pytest.raises(UnknownScenarioError):
        run_figure("fig3")


def test_bad_mode_rejected():
    with pytest.raises(ConfigError):
        run_figure("fig4", mode="sloppy")


def test_fig4_grid_columns_metadata():
    t = run_figure("fig4")
    assert t.columns == ("T_C", "dnc_dT")
    assert len(t.rows) == 51
    assert t.rows[0][0] == 20.0 and t.rows[-1][0] == 70.0
    assert t.metadata["design.n1_design"] == "2.33"
    assert t.metadata["design.index_mode"] == "anchored"
    assert "description" in t.metadata


def test_fig5_legend_and_reference_zero_rows():
    t = run_figure("fig5")
    assert t.columns[0] == "T_C"
    assert len(t.columns) == 4
    i27 = t.column("T_C").index(27.0)
    for j in range(1, 4):
        assert t.rows[i27][j] == 0.0


def test_fig6_legend_curves_are_distinct():
    t = run_figure("fig6")
    final = t.rows[-1][1:]
    assert len(set(final)) == 3


def test_fig7_shift_is_width_independent_to_rounding():
    t = run_figure("fig7")
    cols = [t.column(c) for c in t.columns[1:]]
    worst = max(
        abs(a - b) for col2 in cols[1:] for a, b in zip(cols[0], col2)
    )
    assert worst < 1e-9  # nm; the curves coincide up to float rounding


def test_fig8_contrast_ordering_of_total_dispersion():
    t = run_figure("fig8")
    assert t.columns[0] == "lambda_um"
    for row in t.rows:
        mags = [abs(v) for v in row[1:]]
        assert mags[0] > mags[1] > mags[2]


def test_fig9_contrast_ordering_of_bitrate():
    t = run_figure("fig9")
    for row in t.rows:
        assert row[1] < row[2] < row[3]


@pytest.mark.parametrize("fid", ["fig10", "fig11", "fig12", "fig13"])
def test_bitrate_figures_increase_with_link_count(fid):
    t = run_figure(fid)
    assert t.columns[0] == "NL"
    assert len(t.rows) == 24
    for j in range(1, len(t.columns)):
        col = [row[j] for row in t.rows]
        assert all(b > a for a, b in zip(col, col[1:]))


@pytest.mark.parametrize("fid", ["fig12", "fig13"])
def test_temperature_ordering_of_bitrates(fid):
    t = run_figure(fid)
    for row in t.rows:
        assert row[1] >= row[3]


def test_figures_record_pinned_confinement_factor():
    t = run_figure("fig8")
    y = scenario_y_factor(default_design())
    assert t.metadata["y_mode"] == f"constant:{format(y, '.9g')}"
    auto = run_figure("fig8", y_mode="auto")
    assert auto.metadata["y_mode"] == "auto"


def test_figures_are_deterministic():
    a = run_figure("fig9")
    b = run_figure("fig9")
    assert a == b


def test_run_all_figures_order():
    tables = run_all_figures()
    assert [t.name for t in tables] == list(FIGURE_IDS)


def test_figure_overrides_apply():
    design = replace(default_design(), core_width_a=3.0)
    t = run_figure("fig4", design=design)
    assert t.metadata["design.core_width_a_um"] == "3"
    base = run_figure("fig4")
    assert t.rows[0][1] != base.rows[0][1]


def test_sweep_grid_size_and_row_order():
    spec = SweepSpec(
        scenario_id="grid",
        axes=(
            ("design.n1_design", (2.2, 2.33, 2.46)),
            ("design.core_width_a", (3.0, 5.0, 7.0)),
        ),
        outputs=("n_c",),
    )
    t = run_sweep(spec)
    assert len(t.rows) == 9
    assert t.columns == ("design.n1_design", "design.core_width_a", "n_c")
    # outer-to-inner: first axis varies slowest
    assert [r[0] for r in t.rows] == [2.2] * 3 + [2.33] * 3 + [2.46] * 3


def test_sweep_axis_permutation_permutes_rows_not_values():
    axes_a = (("design.n1_design", (2.2, 2.46)), ("design.core_width_a", (3.0, 7.0)))
    axes_b = (("design.core_width_a", (3.0, 7.0)), ("design.n1_design", (2.2, 2.46)))
    ta = run_sweep(SweepSpec("a", axes_a, ("n_c",)))
    tb = run_sweep(SweepSpec("b", axes_b, ("n_c",)))
    assert sorted(r[-1] for r in ta.rows) == sorted(r[-1] for r in tb.rows)


def test_single_point_sweep_equals_point_evaluation():
    spec = SweepSpec("point", (("design.core_width_a", (5.0,)),), ("n_c", "Dt"))
    t = run_sweep(spec)
    assert len(t.rows) == 1
    d, b = default_design(), default_budget()
    assert t.rows[0][1] == effective_index(d, b.temperature)
    assert t.rows[0][2] == evaluate_channel(d.lambda0, d, b).dt


def test_sweep_budget_axis_and_quantities():
    spec = SweepSpec(
        "links",
        (("budget.num_links", (1, 12, 24)),),
        ("delta_tau_ns", "Brm_Gbps", "BrLink_Gbps"),
    )
    t = run_sweep(spec)
    taus = [r[1] for r in t.rows]
    rates = [r[2] for r in t.rows]
    assert taus[0] > taus[1] > taus[2]
    assert rates[0] < rates[1] < rates[2]


def test_sweep_lambda_axis():
    spec = SweepSpec("spectrum", (("lambda", (1.0, 1.3, 1.6)),), ("Dm", "Dt"))
    t = run_sweep(spec)
    assert [r[0] for r in t.rows] == [1.0, 1.3, 1.6]
    assert all(r[1] < 0 for r in t.rows)


def test_sweep_validation_errors():
    with pytest.raises(ConfigError):
        run_sweep(SweepSpec("x", (), ("n_c",)))
    with pytest.raises(ConfigError):
        run_sweep(SweepSpec("x", (("design.core_width_a", (5.0,)),), ()))
    with pytest.raises(ConfigError):
        run_sweep(SweepSpec("x", (("design.core_width_a", ()),), ("n_c",)))
    with pytest.raises(ConfigError):
        run_sweep(SweepSpec("x", (("design.doping", (1.0,)),), ("n_c",)))
    with pytest.raises(ConfigError):
        run_sweep(SweepSpec("x", (("design.core_width_a", (5.0,)),), ("entropy",)))


def test_sweep_grid_guard():
    big = tuple(float(i) for i in range(1001))
    spec = SweepSpec(
        "huge", (("design.core_width_a", big), ("design.t0", big)), ("n_c",)
    )
    with pytest.raises(ConfigError):
        run_sweep(spec)


def test_sweep_flags_clamped_mode_parameter():
    spec = SweepSpec(
        "clamp", (("design.core_width_a", (0.01,)),), ("b", "V")
    )
    t = run_sweep(spec)
    assert t.metadata.get("warning_b_clamped_points") == "1"
    assert t.rows[0][1] == 0.0


def test_sweep_metadata_snapshot():
    spec = SweepSpec("snap", (("lambda", (1.55,)),), ("Dt",))
    t = run_sweep(spec)
    for key in (
        "design.n1_design",
        "design.n2_design",
        "budget.fiber_length_km",
        "budget.num_channels",
        "derivative_mode",
        "y_mode",
        "axes",
        "grid_points",
    ):
        assert key in t.metadata
