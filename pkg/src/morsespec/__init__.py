"""Spectral values of scalar fields on cell complexes via discrete Morse
theory, continuation maps between fields, and closed-form bound arithmetic."""

from .bounds import (
    BoundParams,
    MoserNorm,
    adiabatic_limit_bound,
    chained_bound,
    corollary_bound,
    eta_bound,
    iteration_bound,
    iteration_oracle,
    min_steps,
    moser_norm,
    per_step_bound,
    step_threshold,
)
from .complex import (
    Cell,
    CellComplex,
    ScalarField,
    build_from_simplicial,
    build_torus_grid,
    c0_distance,
    load_field,
    load_simplicial,
    make_field,
)
from .continuation import (
    ContinuationReport,
    continuation_map,
    functoriality_check,
    roundtrip_check,
    sandwich_built,
    sandwich_check,
)
from .homology import HomologyClass
from .morse import (
    DiscreteGradient,
    MorseComplex,
    build_gradient,
    build_morse_complex,
    check_order_decreasing,
    flow_expand,
    flow_project,
    homology_basis,
    same_class,
    verify_d_squared,
)
from .spectral import (
    LipschitzReport,
    SpectralReport,
    SweepResult,
    chain_action,
    exhaustive_spectral_value,
    invariance_sweep,
    lipschitz_check,
    rho,
    spectral_gap,
    spectral_value,
    spectrum,
    spectrum_membership,
)

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "Cell",
    "CellComplex",
    "ContinuationReport",
    "DiscreteGradient",
    "HomologyClass",
    "LipschitzReport",
    "MorseComplex",
    "MoserNorm",
    "ScalarField",
    "SpectralReport",
    "SweepResult",
    "adiabatic_limit_bound",
    "build_from_simplicial",
    "build_gradient",
    "build_morse_complex",
    "build_torus_grid",
    "c0_distance",
    "chain_action",
    "chained_bound",
    "check_order_decreasing",
    "continuation_map",
    "corollary_bound",
    "eta_bound",
    "exhaustive_spectral_value",
    "flow_expand",
    "flow_project",
    "functoriality_check",
    "homology_basis",
    "invariance_sweep",
    "iteration_bound",
    "iteration_oracle",
    "lipschitz_check",
    "load_field",
    "load_simplicial",
    "make_field",
    "min_steps",
    "moser_norm",
    "per_step_bound",
    "rho",
    "roundtrip_check",
    "same_class",
    "sandwich_built",
    "sandwich_check",
    "spectral_gap",
    "spectral_value",
    "spectrum",
    "spectrum_membership",
    "step_threshold",
    "verify_d_squared",
]
