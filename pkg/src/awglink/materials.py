"""Temperature- and wavelength-dependent refractive index models.

Core material is lithium niobate, described by a Sellmeier form whose
resonance terms are extended in temperature through H = T^2 - T0^2.
Cladding material is PMMA, described by a three-resonance Sellmeier form
whose two short-wavelength resonance positions scale linearly with T/T0.

Conventions used throughout:

* wavelengths in um, temperatures in degC
* dn/dlambda in 1/um, d2n/dlambda2 in 1/um^2, dn/dT in 1/degC
* every evaluation is a pure function of the (frozen) coefficients

Both models carry analytic first derivatives; the core model also carries
the second wavelength derivative in two selectable forms (see
``DERIV_EXACT`` / ``DERIV_PAPER``).  ``derivative_self_check`` validates
every analytic derivative against central finite differences on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError

# Supported evaluation domain.  The working band is 1.0-1.65 um and
# 20-70 degC; the guards are deliberately wider.
LAMBDA_MIN_UM = 0.5
LAMBDA_MAX_UM = 5.0
TEMP_MIN_C = 0.0
TEMP_MAX_C = 100.0

# A resonance denominator smaller than this is treated as a pole hit.
DENOM_EPS = 1e-12

# Second-derivative evaluation modes for the core model.
DERIV_EXACT = "exact"    # true analytic second derivative of the index
DERIV_PAPER = "paper"    # published closed form; drops the (dn/dlam)^2/n term
DERIV_MODES = (DERIV_EXACT, DERIV_PAPER)


def _check_point(lam: float, temp: float) -> None:
    if not (LAMBDA_MIN_UM <= lam <= LAMBDA_MAX_UM):
        raise DomainError(
            f"wavelength {lam} um outside supported range "
            f"[{LAMBDA_MIN_UM}, {LAMBDA_MAX_UM}] um"
        )
    if not (TEMP_MIN_C <= temp <= TEMP_MAX_C):
        raise DomainError(
            f"temperature {temp} degC outside supported range "
            f"[{TEMP_MIN_C}, {TEMP_MAX_C}] degC"
        )


def _check_denom(value: float, label: str) -> float:
    if abs(value) < DENOM_EPS:
        raise DomainError(f"resonance denominator {label} vanished ({value!r})")
    return value


@dataclass(frozen=True)
class LiNbO3Model:
    """Sellmeier model of the core index n1(lambda, T).

    n1^2 = (a1 + a2*H) + (a3 + a4*H)/(lam^2 - (a5 + a6*H)^2)
           + (a7 + a8*H)/(lam^2 - a9^2) - a10*lam^2,   H = T^2 - t0^2

    a3, a5, a7, a9 carry um-scaled units consistent with lambda in um.
    Defaults are the published coefficient set for this material system.
    """

    a1: float = 5.35583
    a2: float = 4.629e-7
    a3: float = 0.100473
    a4: float = 3.862e-8
    a5: float = 0.20692
    a6: float = -0.89e-8
    a7: float = 100.0
    a8: float = 2.657e-5
    a9: float = 11.34927
    a10: float = 0.01533
    t0: float = 27.0  # degC, reference temperature of the coefficient fit

    def _terms(self, lam: float, temp: float):
        """Resolved H-dependent composites and resonance denominators."""
        h = temp * temp - self.t0 * self.t0
        a12 = self.a1 + self.a2 * h
        a34 = self.a3 + self.a4 * h
        a56 = self.a5 + self.a6 * h
        a78 = self.a7 + self.a8 * h
        lam2 = lam * lam
        d1 = _check_denom(lam2 - a56 * a56, "lam^2 - (a5 + a6*H)^2")
        d2 = _check_denom(lam2 - self.a9 * self.a9, "lam^2 - a9^2")
        return a12, a34, a56, a78, lam2, d1, d2

    def index_squared(self, lam: float, temp: float) -> float:
        _check_point(lam, temp)
        a12, a34, _, a78, lam2, d1, d2 = self._terms(lam, temp)
        return a12 + a34 / d1 + a78 / d2 - self.a10 * lam2

    def index(self, lam: float, temp: float) -> float:
        """Refractive index n1 at (lam um, temp degC)."""
        n_sq = self.index_squared(lam, temp)
        if n_sq <= 0.0:
            raise DomainError(f"n1^2 = {n_sq!r} <= 0 at lam={lam}, T={temp}")
        return math.sqrt(n_sq)

    def dn_dlambda(self, lam: float, temp: float) -> float:
        """Analytic dn1/dlambda in 1/um."""
        n = self.index(lam, temp)
        _, a34, _, a78, _, d1, d2 = self._terms(lam, temp)
        bracket = a34 / (d1 * d1) + a78 / (d2 * d2) + self.a10
        return -(lam / n) * bracket

    def d2n_dlambda2(self, lam: float, temp: float, mode: str = DERIV_EXACT) -> float:
        """Second wavelength derivative of n1 in 1/um^2.

        ``exact`` returns the true analytic second derivative.  ``paper``
        returns the published closed form, which is larger by exactly
        (dn1/dlambda)^2 / n1 at every point.
        """
        if mode not in DERIV_MODES:
            raise ValueError(f"unknown derivative mode {mode!r}; use one of {DERIV_MODES}")
        n = self.index(lam, temp)
        _, a34, _, a78, lam2, d1, d2 = self._terms(lam, temp)
        bracket = (
            a34 * (d1 - 4.0 * lam2) / (d1 * d1 * d1)
            + a78 * (d2 - 4.0 * lam2) / (d2 * d2 * d2)
            + self.a10
        )
        literal = -bracket / n
        if mode == DERIV_PAPER:
            return literal
        dn = self.dn_dlambda(lam, temp)
        return literal - dn * dn / n

    def dn_dT(self, lam: float, temp: float) -> float:
        """Analytic dn1/dT in 1/degC.  Carries an explicit factor T, so it
        vanishes at T = 0."""
        n = self.index(lam, temp)
        _, a34, a56, _, _, d1, d2 = self._terms(lam, temp)
        inner = (d1 * self.a4 + 2.0 * self.a6 * a56 * a34) / (d1 * d1)
        return (temp / n) * (self.a2 + inner + self.a8 / d2)

    def sample(self, lam: float, temp: float, mode: str = DERIV_EXACT) -> "IndexSample":
        return IndexSample(
            lam=lam,
            temperature=temp,
            n=self.index(lam, temp),
            dn_dlambda=self.dn_dlambda(lam, temp),
            d2n_dlambda2=self.d2n_dlambda2(lam, temp, mode),
            dn_dT=self.dn_dT(lam, temp),
        )


@dataclass(frozen=True)
class PmmaModel:
    """Sellmeier model of the cladding index n2(lambda, T).

    n2^2 = 1 + c1*lam^2/(lam^2 - C2^2) + c3*lam^2/(lam^2 - C4^2)
             + c5*lam^2/(lam^2 - c6^2)

    with temperature-scaled resonance positions C2 = c2_base*(T/t0) and
    C4 = c4_base*(T/t0).  The c6 resonance at 9.237 um sits far outside
    the working band.  Under this scaling dn2/dT comes out positive.
    """

    c1: float = 0.4963
    c2_base: float = 0.0718
    c3: float = 0.6965
    c4_base: float = 0.1174
    c5: float = 0.3223
    c6: float = 9.237
    t0: float = 27.0  # degC

    def resolved_c2(self, temp: float) -> float:
        return self.c2_base * (temp / self.t0)

    def resolved_c4(self, temp: float) -> float:
        return self.c4_base * (temp / self.t0)

    def _terms(self, lam: float, temp: float):
        c2 = self.resolved_c2(temp)
        c4 = self.resolved_c4(temp)
        lam2 = lam * lam
        d2 = _check_denom(lam2 - c2 * c2, "lam^2 - C2^2")
        d4 = _check_denom(lam2 - c4 * c4, "lam^2 - C4^2")
        d6 = _check_denom(lam2 - self.c6 * self.c6, "lam^2 - c6^2")
        return c2, c4, lam2, d2, d4, d6

    def index_squared(self, lam: float, temp: float) -> float:
        _check_point(lam, temp)
        if temp <= 0.0:
            raise DomainError(f"temperature {temp} degC outside supported range (0, {TEMP_MAX_C}]")
        _, _, lam2, d2, d4, d6 = self._terms(lam, temp)
        return 1.0 + self.c1 * lam2 / d2 + self.c3 * lam2 / d4 + self.c5 * lam2 / d6

    def index(self, lam: float, temp: float) -> float:
        """Refractive index n2 at (lam um, temp degC)."""
        n_sq = self.index_squared(lam, temp)
        if n_sq <= 0.0:
            raise DomainError(f"n2^2 = {n_sq!r} <= 0 at lam={lam}, T={temp}")
        return math.sqrt(n_sq)

    def dn_dT(self, lam: float, temp: float) -> float:
        """Analytic dn2/dT in 1/degC.

        Exact derivative of the index under the T/t0 resonance scaling:
        the second bracket term carries c4_base/c2_base (~1.635) so that
        both resonances contribute their own scaling rate.
        """
        n = self.index(lam, temp)
        c2, c4, lam2, d2, d4, _ = self._terms(lam, temp)
        bracket = (
            self.c2_base * self.c1 * c2 / (d2 * d2)
            + self.c4_base * self.c3 * c4 / (d4 * d4)
        )
        return lam2 / (n * self.t0) * bracket

    def sample(self, lam: float, temp: float) -> "IndexSample":
        return IndexSample(
            lam=lam,
            temperature=temp,
            n=self.index(lam, temp),
            dn_dlambda=None,
            d2n_dlambda2=None,
            dn_dT=self.dn_dT(lam, temp),
        )


@dataclass(frozen=True)
class IndexSample:
    """One evaluated index point.  Wavelength derivatives are None for
    materials that do not define them analytically."""

    lam: float                       # um
    temperature: float               # degC
    n: float
    dn_dlambda: Optional[float]      # 1/um
    d2n_dlambda2: Optional[float]    # 1/um^2
    dn_dT: float                     # 1/degC


# Published default instances; treat as the material library.
LINBO3 = LiNbO3Model()
PMMA = PmmaModel()


def _central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _central_second_diff(f: Callable[[float], float], x: float, h: float) -> float:
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_rel_err: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_rel_err < self.tolerance


@dataclass(frozen=True)
class SelfCheckReport:
    grid_points: int
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self):
        out = [f"derivative self-check over {self.grid_points} grid points"]
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            out.append(
                f"  {status:4s} {c.name}: max_rel_err = {c.max_rel_err:.3e} "
                f"(tolerance {c.tolerance:.0e})"
            )
        return out


def derivative_self_check(
    lam_grid,
    t_grid,
    core: LiNbO3Model = LINBO3,
    cladding: PmmaModel = PMMA,
    h_lam: float = 1e-5,
    h_lam2: float = 1e-4,
    h_t: float = 1e-3,
) -> SelfCheckReport:
    """Compare every analytic derivative against a central finite
    difference across the lam x T grid and report the worst relative
    deviation per derivative.

    The grid must be non-empty and sit at least one step inside the
    supported domain so the difference stencils stay evaluable.
    """
    lam_grid = list(lam_grid)
    t_grid = list(t_grid)
    if not lam_grid or not t_grid:
        raise DomainError("self-check grids must be non-empty")

    worst = {
        "linbo3 dn/dlambda": 0.0,
        "linbo3 d2n/dlambda2 (exact)": 0.0,
        "linbo3 d2n mode identity": 0.0,
        "linbo3 dn/dT": 0.0,
        "pmma dn/dT": 0.0,
    }

    def rel(analytic: float, reference: float) -> float:
        return abs(analytic - reference) / abs(reference)

    for lam in lam_grid:
        for t in t_grid:
            fd1 = _central_diff(lambda x: core.index(x, t), lam, h_lam)
            worst["linbo3 dn/dlambda"] = max(
                worst["linbo3 dn/dlambda"], rel(core.dn_dlambda(lam, t), fd1)
            )

            fd2 = _central_second_diff(lambda x: core.index(x, t), lam, h_lam2)
            exact = core.d2n_dlambda2(lam, t, DERIV_EXACT)
            worst["linbo3 d2n/dlambda2 (exact)"] = max(
                worst["linbo3 d2n/dlambda2 (exact)"], rel(exact, fd2)
            )

            literal = core.d2n_dlambda2(lam, t, DERIV_PAPER)
            dn = core.dn_dlambda(lam, t)
            gap = dn * dn / core.index(lam, t)
            worst["linbo3 d2n mode identity"] = max(
                worst["linbo3 d2n mode identity"], rel(literal - exact, gap)
            )

            fdt = _central_diff(lambda x: core.index(lam, x), t, h_t)
            worst["linbo3 dn/dT"] = max(worst["linbo3 dn/dT"], rel(core.dn_dT(lam, t), fdt))

            fdt2 = _central_diff(lambda x: cladding.index(lam, x), t, h_t)
            worst["pmma dn/dT"] = max(worst["pmma dn/dT"], rel(cladding.dn_dT(lam, t), fdt2))

    tolerances = {
        "linbo3 dn/dlambda": 1e-5,
        "linbo3 d2n/dlambda2 (exact)": 1e-4,
        "linbo3 d2n mode identity": 1e-11,
        "linbo3 dn/dT": 1e-5,
        "pmma dn/dT": 1e-5,
    }
    checks = tuple(
        CheckResult(name, err, tolerances[name]) for name, err in worst.items()
    )
    return SelfCheckReport(grid_points=len(lam_grid) * len(t_grid), checks=checks)
