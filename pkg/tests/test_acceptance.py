"""Acceptance suite.

One test per acceptance criterion; each prints a PASS/FAIL line with the
measured numbers.  Run with ``pytest tests/test_acceptance.py -v -s``.

Criterion 4 (athermal core-width solve over the [0.1, 20] um bracket) is
implemented exactly as stated and fails with the built-in materials: the
athermal residual factors as core_width^2 times a width-independent,
temperature-dependent term, so it cannot change sign over any positive
width bracket.  The test records the measured endpoint residuals and the
dense-scan sign count rather than weakening the check.
"""

import math
import random
import time
from dataclasses import replace

from conftest import fd, fd2

from awglink.capacity import evaluate_channel
from awglink.cli import main
from awglink.errors import NoBracketError
from awglink.materials import DERIV_EXACT, LINBO3, PMMA
from awglink.sweeps import default_budget, default_design, run_figure
from awglink.waveguide import (
    V_B_ZERO,
    WaveguideDesign,
    athermal_residual,
    drift_report,
    normalized_b,
    solve_athermal_core_width,
    wavelength_shift,
)

LAM_GRID_14 = [1.0 + 0.64 * i / 13.0 for i in range(14)]
T_GRID_11 = [20.0 + 5.0 * i for i in range(11)]


def _criterion(num, ok, detail):
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_derivative_oracle_suite():
    start = time.perf_counter()
    worst = {"dn1_dlam": 0.0, "dn1_dT": 0.0, "dn2_dT": 0.0, "d2n1_exact": 0.0}
    for lam in LAM_GRID_14:
        for t in T_GRID_11:
            ref = fd(lambda x: LINBO3.index(x, t), lam, 1e-5)
            worst["dn1_dlam"] = max(
                worst["dn1_dlam"], abs(LINBO3.dn_dlambda(lam, t) - ref) / abs(ref)
            )
            ref = fd(lambda x: LINBO3.index(lam, x), t, 1e-3)
            worst["dn1_dT"] = max(
                worst["dn1_dT"], abs(LINBO3.dn_dT(lam, t) - ref) / abs(ref)
            )
            ref = fd(lambda x: PMMA.index(lam, x), t, 1e-3)
            worst["dn2_dT"] = max(
                worst["dn2_dT"], abs(PMMA.dn_dT(lam, t) - ref) / abs(ref)
            )
            ref = fd2(lambda x: LINBO3.index(x, t), lam, 1e-4)
            worst["d2n1_exact"] = max(
                worst["d2n1_exact"],
                abs(LINBO3.d2n_dlambda2(lam, t, DERIV_EXACT) - ref) / abs(ref),
            )
    elapsed = time.perf_counter() - start
    ok = (
        worst["dn1_dlam"] < 1e-5
        and worst["dn1_dT"] < 1e-5
        and worst["dn2_dT"] < 1e-5
        and worst["d2n1_exact"] < 1e-4
        and elapsed < 1.0
    )
    _criterion(
        1,
        ok,
        "14x11 grid max rel errors: "
        f"dn1/dlam {worst['dn1_dlam']:.2e}, dn1/dT {worst['dn1_dT']:.2e}, "
        f"dn2/dT {worst['dn2_dT']:.2e} (tol 1e-5); "
        f"d2n1 exact {worst['d2n1_exact']:.2e} (tol 1e-4); {elapsed:.3f} s",
    )


def test_criterion_2_material_sanity():
    n1 = LINBO3.index(1.55, 27.0)
    n2 = PMMA.index(1.55, 27.0)
    ok = abs(n1 - 2.1379) <= 2e-3 and abs(n2 - 1.4794) <= 2e-3
    _criterion(2, ok, f"n1(1.55, 27) = {n1:.6f} (2.1379 +- 2e-3); n2 = {n2:.6f} (1.4794 +- 2e-3)")


def test_criterion_3_exact_fixed_points():
    rng = random.Random(20260808)
    worst_shift = 0.0
    for i in range(20):
        n1 = rng.uniform(1.8, 2.6)
        design = WaveguideDesign(
            core_width_a=rng.uniform(1.0, 10.0),
            n1_design=n1,
            n2_design=rng.uniform(1.2, n1 - 0.2),
            alpha_sub=rng.uniform(1e-6, 5e-6),
            lambda0=rng.uniform(1.2, 1.6),
            index_mode="anchored" if i % 2 == 0 else "material",
        )
        worst_shift = max(worst_shift, abs(wavelength_shift(design, design.t0)))

    b_zero = normalized_b(V_B_ZERO)

    d, b = default_design(), default_budget()
    worst_product = 0.0
    for nl in (1, 7, 24):
        s = evaluate_channel(d.lambda0, d, replace(b, num_links=nl))
        worst_product = max(worst_product, abs(s.brm_gbps * s.delta_tau_ns - 0.25))
    dyadic_exact = all(0.25 / tau * tau == 0.25 for tau in (0.25, 0.125, 0.5, 2.0))

    ok = (
        worst_shift == 0.0
        and b_zero == 0.0
        and worst_product <= 2.0 * math.ulp(0.25)
        and dyadic_exact
    )
    _criterion(
        3,
        ok,
        f"max |shift(T0)| over 20 random designs = {worst_shift!r}; "
        f"b(0.9660/1.1428) = {b_zero!r}; "
        f"max |Brm*tau - 0.25| = {worst_product:.2e} (<= 2 ulp), dyadic products exact",
    )


def test_criterion_4_athermal_core_width_solver():
    design = default_design()
    bracket = (0.1, 20.0)

    # dense residual scan across the bracket, 10^4 points
    lo, hi = bracket
    n_points = 10 ** 4
    widths = [lo + (hi - lo) * i / (n_points - 1) for i in range(n_points)]
    residuals = [
        athermal_residual(replace(design, core_width_a=a), 27.0) for a in widths
    ]
    sign_changes = sum(
        1 for r1, r2 in zip(residuals, residuals[1:]) if (r1 > 0.0) != (r2 > 0.0)
    )

    try:
        result = solve_athermal_core_width(design, 27.0, bracket)
    except NoBracketError as exc:
        detail = (
            f"solver raised NoBracketError: {exc}; dense 1e4-point scan found "
            f"{sign_changes} sign changes (residual spans "
            f"[{min(residuals):.3e}, {max(residuals):.3e}] and scales as "
            "core_width^2, so no positive bracket can straddle zero)"
        )
        _criterion(4, False, detail)
        return

    check = athermal_residual(replace(design, core_width_a=result.root), 27.0)
    ok = abs(check) < 1e-9 and sign_changes == 1
    _criterion(
        4,
        ok,
        f"a* = {result.root:.9g} um, re-evaluated residual {check:.3e}, "
        f"{sign_changes} sign changes in dense scan",
    )


def test_criterion_5a_fig4_thermo_optic_trend():
    table = run_figure("fig4")
    rates = table.column("dnc_dT")
    magnitudes = [abs(v) for v in rates]
    magnitude_increasing = all(b > a for a, b in zip(magnitudes, magnitudes[1:]))
    signed_monotone = all(b < a for a, b in zip(rates, rates[1:]))
    material_rates = [LINBO3.dn_dT(1.550918, t) for t in T_GRID_11]
    material_increasing = all(
        b > a for a, b in zip(material_rates, material_rates[1:])
    )
    ok = magnitude_increasing and signed_monotone and material_increasing
    _criterion(
        "5a",
        ok,
        "thermo-optic magnitude strictly increasing over [20, 70] "
        f"({magnitudes[0]:.4g} -> {magnitudes[-1]:.4g}; signed rate is negative "
        "and strictly decreasing), material dn1/dT strictly increasing",
    )


def test_criterion_5b_fig8_contrast_ordering():
    table = run_figure("fig8")
    ok = all(abs(r[1]) > abs(r[2]) > abs(r[3]) for r in table.rows)
    _criterion(
        "5b",
        ok,
        "|Dt| ordered by index contrast at every wavelength "
        f"(columns {table.columns[1]} > {table.columns[2]} > {table.columns[3]})",
    )


def test_criterion_5c_fig9_bitrate_ordering():
    table = run_figure("fig9")
    ok = all(r[1] < r[2] < r[3] for r in table.rows)
    _criterion(
        "5c", ok, "per-channel bit rate ordered inversely to index contrast at every wavelength"
    )


def test_criterion_5d_bitrates_increase_with_link_count():
    ok = True
    for fid in ("fig10", "fig11", "fig12", "fig13"):
        table = run_figure(fid)
        for j in range(1, len(table.columns)):
            col = [row[j] for row in table.rows]
            ok = ok and all(b > a for a, b in zip(col, col[1:]))
    _criterion(
        "5d", ok, "per-channel and per-link bit rates strictly increase over N_L = 1..24 (figs 10-13)"
    )


def test_criterion_5e_cooler_is_faster():
    ok = True
    sample = None
    for fid in ("fig12", "fig13"):
        table = run_figure(fid)
        cold = [row[1] for row in table.rows]
        hot = [row[3] for row in table.rows]
        ok = ok and all(c >= h for c, h in zip(cold, hot))
        sample = (cold[-1], hot[-1])
    _criterion(
        "5e",
        ok,
        f"bit rates at T=27 >= T=70 at every link count (figs 12-13; e.g. {sample[0]:.6g} vs {sample[1]:.6g})",
    )


def test_criterion_6_reproduce_or_document_drift():
    design = default_design()
    report = drift_report(design, [float(t) for t in range(20, 71)])
    lo, hi = report.band_nm
    branch_consistent = report.reproduced == (lo <= report.max_abs_shift_nm <= hi)
    text = "\n".join(report.lines())
    has_both_references = all(tok in text for tok in ("0.012", "0.015", "0.027"))
    ok = branch_consistent and has_both_references and report.verdict in (
        "REPRODUCED",
        "DEVIATION",
    )
    _criterion(
        6,
        ok,
        f"{report.verdict}: computed max |shift| = {report.max_abs_shift_nm:.4g} nm "
        f"({report.rate_nm_per_c:.4g} nm/degC) vs reference band {lo}-{hi} nm and "
        f"reference rate {report.reference_rate_nm_per_c} nm/degC (both reported)",
    )


def _load_csv(path):
    header = None
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#"):
            continue
        if header is None:
            header = line.split(",")
        else:
            rows.append([float(v) for v in line.split(",")])
    return header, rows


def test_criterion_7_figures_determinism_and_trends(tmp_path):
    start = time.perf_counter()
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert main(["--out", str(out_a), "figures", "all"]) == 0
    assert main(["--out", str(out_b), "figures", "all"]) == 0

    names = sorted(p.name for p in out_a.glob("*.csv"))
    count_ok = len(names) == 10 and (out_a / "manifest.txt").exists()

    byte_identical = all(
        (out_a / name).read_bytes() == (out_b / name).read_bytes()
        for name in names + ["manifest.txt"]
    )

    # re-run the trend checks on the emitted files themselves
    trends_ok = True
    _, fig4 = _load_csv(out_a / "fig4.csv")
    mags = [abs(r[1]) for r in fig4]
    trends_ok &= all(b > a for a, b in zip(mags, mags[1:]))
    _, fig8 = _load_csv(out_a / "fig8.csv")
    trends_ok &= all(abs(r[1]) > abs(r[2]) > abs(r[3]) for r in fig8)
    _, fig9 = _load_csv(out_a / "fig9.csv")
    trends_ok &= all(r[1] < r[2] < r[3] for r in fig9)
    for name in ("fig10.csv", "fig11.csv", "fig12.csv", "fig13.csv"):
        header, rows = _load_csv(out_a / name)
        for j in range(1, len(header)):
            col = [r[j] for r in rows]
            trends_ok &= all(b > a for a, b in zip(col, col[1:]))
    for name in ("fig12.csv", "fig13.csv"):
        _, rows = _load_csv(out_a / name)
        trends_ok &= all(r[1] >= r[3] for r in rows)

    elapsed = time.perf_counter() - start
    ok = count_ok and byte_identical and trends_ok and elapsed < 10.0
    _criterion(
        7,
        ok,
        f"10 datasets + manifest, two runs byte-identical, emitted trends hold; {elapsed:.2f} s",
    )
