"""Surface-wave underwater radio link toolkit (Python bindings)."""

from ._core import (
    ConvergenceError,
    DomainError,
    FieldSample,
    FitParameter,
    FitResult,
    HalfSpaceProblem,
    InfiniteSkinDepthError,
    LinkModelParams,
    MapError,
    Medium,
    ParseError,
    QuadratureConfig,
    TrialRecord,
    UnidentifiableError,
    depth_at_level,
    field_at,
    field_map,
    fit_parameters,
    link_probability,
    load_scenario,
    load_trial_csv,
    loss_factor,
    path_levels,
    penetration_depth,
    probability_grid,
    propagation_length,
    resonance_in_medium,
    salinity_to_conductivity,
    simulate_trials,
    size_reduction_factor,
    skin_depth,
    skin_depth_constant,
    surface_wave_params,
    two_path_gain,
    zenneck_wavenumber,
)

__all__ = [name for name in dir() if not name.startswith("_")]
