"""Chromatic dispersion and MTDM link-capacity chain.

Pipeline: material dispersion (from the core model's second wavelength
derivative) plus waveguide dispersion (from the index contrast and the
confinement factor Y) give the total dispersion coefficient; total
dispersion times fiber length and source linewidth gives the pulse
broadening; its reciprocal scales the MTDM bit rate per channel and per
link.

Unit regime: dispersion coefficients are exposed in ps/(nm km), pulse
broadening in ns, bit rates in Gbit/s.  Internally each coefficient is
formed in SI (s/m^2) and crosses a single conversion boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .materials import DERIV_EXACT, LiNbO3Model, LINBO3
from .waveguide import B_OFFSET, WaveguideDesign, v_number

# Propagation speed used by the whole dispersion chain (rounded value,
# part of the model definition; golden datasets depend on it).
C_LIGHT_M_PER_S = 3.0e8

# 1 s/m^2 expressed in ps/(nm km).
S_PER_M2_TO_PS_PER_NM_KM = 1.0e6

MAX_LINKS_PER_CORE = 24

DEFAULT_BAND_UM = (1.0, 1.65)


@dataclass(frozen=True)
class LinkBudget:
    """Fiber plant parameters for one capacity evaluation."""

    fiber_length_km: float
    num_links: int                      # links per fiber cable core, 1..24
    num_channels: int                   # channels per link
    band: tuple = DEFAULT_BAND_UM       # (lambda_i, lambda_f) in um
    temperature: float = 27.0           # degC

    def __post_init__(self) -> None:
        if self.fiber_length_km <= 0.0:
            raise DomainError(f"fiber length must be positive, got {self.fiber_length_km!r}")
        if not 1 <= self.num_links <= MAX_LINKS_PER_CORE:
            raise DomainError(
                f"links per core must lie in 1..{MAX_LINKS_PER_CORE}, got {self.num_links!r}"
            )
        if self.num_channels < 1:
            raise DomainError(f"channel count must be >= 1, got {self.num_channels!r}")
        lam_i, lam_f = self.band
        if not 0.0 < lam_i < lam_f:
            raise DomainError(f"band must satisfy 0 < lambda_i < lambda_f, got {self.band!r}")


def relative_index_difference(n1: float, n2: float) -> float:
    """Index contrast (n1^2 - n2^2) / (2 n1^2); requires n1 > n2 > 0."""
    if not n1 > n2 > 0.0:
        raise DomainError(f"contrast requires n1 > n2 > 0, got n1={n1!r}, n2={n2!r}")
    return (n1 * n1 - n2 * n2) / (2.0 * n1 * n1)


def dispersion_y_factor(v: float) -> float:
    """Confinement factor Y(V) = 2 (0.9660 / V)^2.

    This is V d^2(Vb)/dV^2 evaluated for the b(V) approximation used by
    the thermal chain.
    """
    if v <= 0.0:
        raise DomainError(f"normalized frequency must be positive, got {v!r}")
    ratio = B_OFFSET / v
    return 2.0 * ratio * ratio


def material_dispersion(
    lam: float,
    temperature: float,
    core: LiNbO3Model = LINBO3,
    mode: str = DERIV_EXACT,
) -> float:
    """Material dispersion -(lambda/c) d2n1/dlambda2 in ps/(nm km)."""
    d2_per_m2 = core.d2n_dlambda2(lam, temperature, mode) * 1.0e12
    lam_m = lam * 1.0e-6
    si = -(lam_m / C_LIGHT_M_PER_S) * d2_per_m2
    return si * S_PER_M2_TO_PS_PER_NM_KM


def waveguide_dispersion(
    lam: float,
    temperature: float,
    design: WaveguideDesign,
    y_factor: Optional[float] = None,
) -> float:
    """Waveguide dispersion -(n2 / (c n1)) (dn / lambda) Y in ps/(nm km).

    Indices and contrast are resolved at (lambda0, T) per the design's
    index mode, so a dispersion curve keeps one contrast value along
    wavelength.  With y_factor None, Y follows the V number of the design
    at the evaluation wavelength; a float pins Y to that value.
    """
    n1, n2 = design.indices_at(temperature)
    dn = relative_index_difference(n1, n2)
    if y_factor is None:
        y = dispersion_y_factor(v_number(lam, design.core_width_a, n1, n2))
    else:
        y = y_factor
    lam_m = lam * 1.0e-6
    si = -(n2 / (C_LIGHT_M_PER_S * n1)) * (dn / lam_m) * y
    return si * S_PER_M2_TO_PS_PER_NM_KM


def total_dispersion(
    lam: float,
    temperature: float,
    design: WaveguideDesign,
    mode: str = DERIV_EXACT,
    y_factor: Optional[float] = None,
) -> float:
    """Total chromatic dispersion, the sum of the two components."""
    return material_dispersion(lam, temperature, design.core, mode) + waveguide_dispersion(
        lam, temperature, design, y_factor
    )


def spectral_slice_width(num_links: int, band: tuple = DEFAULT_BAND_UM) -> float:
    """Per-link share of the signal band, (lambda_f - lambda_i)/N_L in um."""
    if num_links < 1:
        raise DomainError(f"links per core must be >= 1, got {num_links!r}")
    lam_i, lam_f = band
    if not 0.0 < lam_i < lam_f:
        raise DomainError(f"band must satisfy 0 < lambda_i < lambda_f, got {band!r}")
    return (lam_f - lam_i) / num_links


def pulse_broadening(dt_ps_per_nm_km: float, fiber_length_km: float, linewidth_nm: float) -> float:
    """Pulse broadening |D_t| L dlambda, returned in ns.

    ps/(nm km) x km x nm gives ps; the magnitude of the dispersion
    coefficient is used since broadening is a width.
    """
    if fiber_length_km <= 0.0:
        raise DomainError(f"fiber length must be positive, got {fiber_length_km!r}")
    if linewidth_nm <= 0.0:
        raise DomainError(f"source linewidth must be positive, got {linewidth_nm!r}")
    broad_ps = abs(dt_ps_per_nm_km) * fiber_length_km * linewidth_nm
    return broad_ps / 1000.0


def mtdm_bitrate_per_channel(delta_tau_ns: float) -> float:
    """MTDM bit rate 0.25 / delta_tau, in Gbit/s for delta_tau in ns."""
    if delta_tau_ns <= 0.0:
        raise DomainError(f"pulse broadening must be positive, got {delta_tau_ns!r}")
    return 0.25 / delta_tau_ns


def mtdm_bitrate_per_link(delta_tau_ns: float, num_channels: int) -> float:
    """Aggregate MTDM bit rate 0.25 N_ch / delta_tau in Gbit/s."""
    if num_channels < 1:
        raise DomainError(f"channel count must be >= 1, got {num_channels!r}")
    if delta_tau_ns <= 0.0:
        raise DomainError(f"pulse broadening must be positive, got {delta_tau_ns!r}")
    return 0.25 * num_channels / delta_tau_ns


@dataclass(frozen=True)
class DispersionSample:
    """One composed capacity evaluation at a single wavelength."""

    lam: float                 # um
    dm: float                  # ps/(nm km)
    dw: float                  # ps/(nm km)
    dt: float                  # ps/(nm km)
    delta_tau_ns: float
    brm_gbps: float
    brlink_gbps: float


def evaluate_channel(
    lam: float,
    design: WaveguideDesign,
    budget: LinkBudget,
    mode: str = DERIV_EXACT,
    y_factor: Optional[float] = None,
    linewidth_nm: Optional[float] = None,
) -> DispersionSample:
    """Run the full chain at one wavelength.

    The source linewidth defaults to the per-link spectral slice of the
    budget band, converted to nm; pass linewidth_nm to pin it instead.
    """
    dm = material_dispersion(lam, budget.temperature, design.core, mode)
    dw = waveguide_dispersion(lam, budget.temperature, design, y_factor)
    dt = dm + dw
    if linewidth_nm is None:
        linewidth_nm = spectral_slice_width(budget.num_links, budget.band) * 1000.0
    tau = pulse_broadening(dt, budget.fiber_length_km, linewidth_nm)
    return DispersionSample(
        lam=lam,
        dm=dm,
        dw=dw,
        dt=dt,
        delta_tau_ns=tau,
        brm_gbps=mtdm_bitrate_per_channel(tau),
        brlink_gbps=mtdm_bitrate_per_link(tau, budget.num_channels),
    )
