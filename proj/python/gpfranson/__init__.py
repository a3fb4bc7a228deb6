"""Python surface of the interferometer simulation core."""

from gpfranson._core import (
    BellExperiment,
    BellResult,
    FringeFit,
    FringeScan,
    ScanSpec,
    ScanVariable,
    SetupConfig,
    SourceModel,
    chsh_from_settings,
    coincidence_rate,
    fit_fringe,
    fit_scan,
    geometric_phase_for_loop,
    loop_phase,
    reduced_rate,
    run_bell_experiment,
    run_scan,
    s_from_visibility,
    solid_angle_for_loop,
)

__all__ = [
    "BellExperiment",
    "BellResult",
    "FringeFit",
    "FringeScan",
    "ScanSpec",
    "ScanVariable",
    "SetupConfig",
    "SourceModel",
    "chsh_from_settings",
    "coincidence_rate",
    "fit_fringe",
    "fit_scan",
    "geometric_phase_for_loop",
    "loop_phase",
    "reduced_rate",
    "run_bell_experiment",
    "run_scan",
    "s_from_visibility",
    "solid_angle_for_loop",
]
