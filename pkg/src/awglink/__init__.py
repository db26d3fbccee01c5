"""awglink: thermal and link-capacity model of a hybrid-material AWG.

Material index models with analytic derivatives, the thermal drift of
the device center wavelength, the athermal design residual and core-width
solver, the chromatic-dispersion to MTDM bit-rate chain, and a
deterministic figure/sweep dataset runner with a CSV-emitting CLI.
"""

from .capacity import (
    C_LIGHT_M_PER_S,
    DispersionSample,
    LinkBudget,
    dispersion_y_factor,
    evaluate_channel,
    material_dispersion,
    mtdm_bitrate_per_channel,
    mtdm_bitrate_per_link,
    pulse_broadening,
    relative_index_difference,
    spectral_slice_width,
    total_dispersion,
    waveguide_dispersion,
)
from .config import RunConfig, load_config
from .errors import (
    AwgLinkError,
    ConfigError,
    ConvergenceError,
    DomainError,
    NoBracketError,
    UnknownScenarioError,
)
from .materials import (
    DERIV_EXACT,
    DERIV_PAPER,
    IndexSample,
    LINBO3,
    LiNbO3Model,
    PMMA,
    PmmaModel,
    SelfCheckReport,
    derivative_self_check,
)
from .rootfind import RootResult, bisect_root
from .sweeps import (
    FIGURE_IDS,
    SweepSpec,
    default_budget,
    default_design,
    run_all_figures,
    run_figure,
    run_sweep,
    scenario_y_factor,
)
from .tableio import SweepTable, fmt_number, grid
from .waveguide import (
    DriftReport,
    ThermalResponse,
    WaveguideDesign,
    athermal_residual,
    center_wavelength,
    dnc_dT,
    drift_report,
    effective_index,
    normalized_b,
    solve_athermal_core_width,
    thermal_scan,
    v_number,
    wavelength_shift,
)

__version__ = "0.1.0"
