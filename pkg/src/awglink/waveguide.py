"""Thermal behaviour of the hybrid-material AWG channel waveguide.

The temperature dependence of the device center wavelength follows from
an effective-index chain: the guided-mode index n_c of the square core
scales the center wavelength as

    lambda_c(T) = lambda0 * (n_c(T) / n_c(T0)) * exp(alpha_sub * (T - T0))

so the shift vanishes when dn_c/dT = -alpha_sub * n_c (the athermal
condition).  n_c here is the literal chain quantity

    n_c = 3.35 * a^2 * (n1^4 - n2^4) / lambda0^2

which is what every downstream expression consumes; only the ratios
n_c/n_c0 and dn_c/dT / n_c matter, so its large absolute scale is
harmless.  The wavelength in the denominator is pinned to lambda0, which
keeps the chain well-posed (the induced shift is below 1e-5 of lambda0).

Two index-resolution modes are supported:

* ``anchored``: user-chosen design indices at (lambda0, T0), perturbed by
  the material thermo-optic drift.  This is the default and reproduces
  the device-design parameter sweeps.
* ``material``: indices taken from the material models outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any

from .errors import DomainError
from .materials import LINBO3, PMMA
from .rootfind import RootResult, bisect_root

# Mode-confinement approximation b(V) = (B_SLOPE - B_OFFSET/V)^2.
B_SLOPE = 1.1428
B_OFFSET = 0.9660
# Below this V the b(V) bracket would go negative; b is clamped to its
# own zero there.
V_B_ZERO = B_OFFSET / B_SLOPE

# Geometric constant of the collapsed effective-index chain.
EFFECTIVE_INDEX_SCALE = 3.35

INDEX_MODE_ANCHORED = "anchored"
INDEX_MODE_MATERIAL = "material"
INDEX_MODES = (INDEX_MODE_ANCHORED, INDEX_MODE_MATERIAL)

# Published reference figures for this device family, used by the drift
# comparison report: total center-wavelength shift band over 20-70 degC,
# and the separately quoted drift rate.
PUBLISHED_SHIFT_BAND_NM = (0.012, 0.015)
PUBLISHED_DRIFT_RATE_NM_PER_C = 0.027


def normalized_b(v: float) -> float:
    """Normalized propagation constant b(V) = (1.1428 - 0.9660/V)^2.

    Clamped to 0 at and below V = 0.9660/1.1428, the approximation's own
    zero.  Asymptote for large V is 1.1428^2.
    """
    if v <= 0.0:
        raise DomainError(f"normalized frequency V must be positive, got {v!r}")
    if v <= V_B_ZERO:
        return 0.0
    bracket = B_SLOPE - B_OFFSET / v
    return bracket * bracket


def v_number(lam: float, core_width_a: float, n1: float, n2: float) -> float:
    """Normalized frequency V = (2 pi a / lambda) * sqrt(n1^2 - n2^2)."""
    if lam <= 0.0 or core_width_a <= 0.0:
        raise DomainError("wavelength and core width must be positive")
    if n1 <= n2:
        raise DomainError(f"core index {n1!r} must exceed cladding index {n2!r}")
    return 2.0 * math.pi * core_width_a / lam * math.sqrt(n1 * n1 - n2 * n2)


@dataclass(frozen=True)
class WaveguideDesign:
    """One square-core waveguide design point.

    core and cladding may be any objects exposing ``index(lam, t)`` and
    ``dn_dT(lam, t)``; the bundled material models are the defaults.
    """

    core_width_a: float              # um
    n1_design: float                 # core index at (lambda0, t0)
    n2_design: float                 # cladding index at (lambda0, t0)
    alpha_sub: float = 2.63e-6       # 1/degC, substrate thermal expansion
    lambda0: float = 1.550918        # um, center wavelength at t0
    t0: float = 27.0                 # degC
    index_mode: str = INDEX_MODE_ANCHORED
    core: Any = LINBO3
    cladding: Any = PMMA

    def __post_init__(self) -> None:
        if not self.n1_design > self.n2_design > 1.0:
            raise DomainError(
                f"guided mode requires n1 > n2 > 1, got n1={self.n1_design!r}, "
                f"n2={self.n2_design!r}"
            )
        if self.core_width_a <= 0.0:
            raise DomainError(f"core width must be positive, got {self.core_width_a!r}")
        if self.alpha_sub <= 0.0:
            raise DomainError(f"substrate expansion must be positive, got {self.alpha_sub!r}")
        if self.lambda0 <= 0.0:
            raise DomainError(f"lambda0 must be positive, got {self.lambda0!r}")
        if self.index_mode not in INDEX_MODES:
            raise DomainError(
                f"unknown index mode {self.index_mode!r}; use one of {INDEX_MODES}"
            )

    def indices_at(self, temperature: float) -> tuple:
        """Resolve (n1, n2) at this temperature per the index mode."""
        if self.index_mode == INDEX_MODE_MATERIAL:
            n1 = self.core.index(self.lambda0, temperature)
            n2 = self.cladding.index(self.lambda0, temperature)
        else:
            n1 = self.n1_design + (
                self.core.index(self.lambda0, temperature)
                - self.core.index(self.lambda0, self.t0)
            )
            n2 = self.n2_design + (
                self.cladding.index(self.lambda0, temperature)
                - self.cladding.index(self.lambda0, self.t0)
            )
        if n1 <= n2:
            raise DomainError(
                f"resolved indices inverted at T={temperature}: n1={n1!r} <= n2={n2!r}"
            )
        return n1, n2


def effective_index(design: WaveguideDesign, temperature: float) -> float:
    """Chain effective index n_c = 3.35 a^2 (n1^4 - n2^4) / lambda0^2."""
    n1, n2 = design.indices_at(temperature)
    a = design.core_width_a
    return (
        EFFECTIVE_INDEX_SCALE
        * a
        * a
        * (n1 ** 4 - n2 ** 4)
        / (design.lambda0 * design.lambda0)
    )


def dnc_dT(design: WaveguideDesign, temperature: float) -> float:
    """Thermo-optic rate of the chain index, via the material dn/dT values
    at (lambda0, T).  Matches a finite difference of effective_index."""
    n1, n2 = design.indices_at(temperature)
    d1 = design.core.dn_dT(design.lambda0, temperature)
    d2 = design.cladding.dn_dT(design.lambda0, temperature)
    a = design.core_width_a
    scale = EFFECTIVE_INDEX_SCALE * a * a / (design.lambda0 * design.lambda0)
    return scale * (4.0 * n1 ** 3 * d1 - 4.0 * n2 ** 3 * d2)


def center_wavelength(design: WaveguideDesign, temperature: float) -> float:
    """Center wavelength in um at the given temperature."""
    nc0 = effective_index(design, design.t0)
    nc = effective_index(design, temperature)
    return (
        design.lambda0
        * (nc / nc0)
        * math.exp(design.alpha_sub * (temperature - design.t0))
    )


def wavelength_shift(design: WaveguideDesign, temperature: float) -> float:
    """Center-wavelength shift in nm relative to lambda0.

    Exactly zero at T = t0: the chain index is evaluated identically for
    both factors, so the difference cancels at machine precision.
    """
    nc0 = effective_index(design, design.t0)
    nc = effective_index(design, temperature)
    shift_um = (design.lambda0 / nc0) * (
        nc * math.exp(design.alpha_sub * (temperature - design.t0)) - nc0
    )
    return shift_um * 1000.0


def athermal_residual(design: WaveguideDesign, temperature: float) -> float:
    """dn_c/dT + alpha_sub * n_c; zero means athermal at this temperature."""
    return dnc_dT(design, temperature) + design.alpha_sub * effective_index(
        design, temperature
    )


def solve_athermal_core_width(
    design: WaveguideDesign,
    t_eval: float,
    bracket: tuple,
    f_tol: float = 1e-9,
    x_tol: float = 1e-12,
    max_iter: int = 200,
) -> RootResult:
    """Search the core-width bracket for a root of the athermal residual.

    The width field of ``design`` is replaced during the search.  The
    endpoint residuals must straddle zero (NoBracketError otherwise);
    note that the residual scales as core_width^2 with the temperature-
    and material-dependent factor carrying the sign, so a sign change in
    width exists only if that factor itself crosses zero.
    """
    a_lo, a_hi = bracket
    if a_lo <= 0.0:
        raise DomainError(f"bracket must be positive, got lo={a_lo!r}")

    def residual(a: float) -> float:
        return athermal_residual(replace(design, core_width_a=a), t_eval)

    return bisect_root(residual, a_lo, a_hi, f_tol=f_tol, x_tol=x_tol, max_iter=max_iter)


@dataclass(frozen=True)
class ThermalResponse:
    """Tabulated thermal scan of one design."""

    temperatures: tuple       # degC
    n_c: tuple
    dnc_dT: tuple             # 1/degC scale
    lambda_c_um: tuple
    delta_lambda_nm: tuple

    def rows(self):
        return zip(
            self.temperatures, self.n_c, self.dnc_dT, self.lambda_c_um, self.delta_lambda_nm
        )


def thermal_scan(design: WaveguideDesign, t_grid) -> ThermalResponse:
    """Evaluate n_c, dn_c/dT, lambda_c and the shift over a sorted grid."""
    temps = tuple(float(t) for t in t_grid)
    if not temps:
        raise DomainError("temperature grid must be non-empty")
    if any(b <= a for a, b in zip(temps, temps[1:])):
        raise DomainError("temperature grid must be strictly increasing")
    return ThermalResponse(
        temperatures=temps,
        n_c=tuple(effective_index(design, t) for t in temps),
        dnc_dT=tuple(dnc_dT(design, t) for t in temps),
        lambda_c_um=tuple(center_wavelength(design, t) for t in temps),
        delta_lambda_nm=tuple(wavelength_shift(design, t) for t in temps),
    )


@dataclass(frozen=True)
class DriftReport:
    """Comparison of a scanned drift against the published reference figures."""

    t_min: float
    t_max: float
    max_abs_shift_nm: float
    t_at_max: float
    rate_nm_per_c: float          # achieved |shift| / |T - t0| at the extreme
    band_nm: tuple = PUBLISHED_SHIFT_BAND_NM
    reference_rate_nm_per_c: float = PUBLISHED_DRIFT_RATE_NM_PER_C

    @property
    def reproduced(self) -> bool:
        lo, hi = self.band_nm
        return lo <= self.max_abs_shift_nm <= hi

    @property
    def verdict(self) -> str:
        return "REPRODUCED" if self.reproduced else "DEVIATION"

    def lines(self):
        lo, hi = self.band_nm
        out = [
            f"center-wavelength drift over [{self.t_min:g}, {self.t_max:g}] degC:",
            f"  computed max |shift| = {self.max_abs_shift_nm:.6g} nm (at T = {self.t_at_max:g} degC)",
            f"  computed drift rate  = {self.rate_nm_per_c:.6g} nm/degC",
            f"  reference shift band = {lo:g} ~ {hi:g} nm",
            f"  reference drift rate = {self.reference_rate_nm_per_c:g} nm/degC",
            f"  verdict: {self.verdict}",
        ]
        if not self.reproduced:
            out.append(
                "  note: the two reference figures are mutually inconsistent; "
                "both are reported for comparison"
            )
        return out


def drift_report(design: WaveguideDesign, t_grid) -> DriftReport:
    """Scan the design and compare the worst shift against the published
    reference band and rate.  Reports both; adjudicates neither."""
    response = thermal_scan(design, t_grid)
    max_abs = 0.0
    t_at_max = response.temperatures[0]
    for t, shift in zip(response.temperatures, response.delta_lambda_nm):
        if abs(shift) > max_abs:
            max_abs = abs(shift)
            t_at_max = t
    span = abs(t_at_max - design.t0)
    rate = max_abs / span if span > 0.0 else 0.0
    return DriftReport(
        t_min=response.temperatures[0],
        t_max=response.temperatures[-1],
        max_abs_shift_nm=max_abs,
        t_at_max=t_at_max,
        rate_nm_per_c=rate,
    )
