"""Stability toolkit for finite-dimensional non-conservative systems.

Modules:
    quartic      exact stability census for real monic quartics
    umbrella     Whitney-umbrella normal form and its stability-surface image
    circulatory  2-DoF circulatory/dissipative systems and discrete flutter limits
    gyro         gyroscopic systems, Krein collisions, rotating wave equations
    floquet      periodic coefficients, monodromy, parametric resonance tongues
    beck         cantilever under follower load, Galerkin flutter analysis
    baroclinic   two-layer shear-flow dispersion and critical thresholds
    sweep        brackets, bisection, ray limits, parameter grids
    cli          reproducible command-line runs with CSV/JSON artifacts
"""

from .baroclinic import (
    BaroclinicParams,
    DispersionRoots,
    critical_shear_bisected,
    dispersion,
    inviscid_threshold,
    merging_portrait,
    vanishing_viscosity_threshold,
)
from .beck import (
    BeckParams,
    GalerkinSystem,
    assemble,
    be12_surface,
    beam_wavenumbers,
    flutter_load,
    mode_values,
    system_eigenvalues,
)
from .circulatory import (
    HultenParams,
    SystemMatrices2,
    ZieglerParams,
    hulten_critical_mu_undamped,
    hulten_quartic,
    hulten_system,
    nu_critical_damped_first_order,
    nu_critical_damped_limit,
    nu_critical_undamped,
    quartic_from_system,
    ziegler_critical_load,
    ziegler_critical_load_bisected,
    ziegler_matrices,
    ziegler_quartic,
    ziegler_verdict,
)
from .errors import (
    ConfigError,
    DegenerateChain,
    DegenerateQuadratic,
    DegenerateSurface,
    DomainError,
    IntegrationError,
    NoBoundary,
    NoBracket,
    NoCollision,
    NoFlutter,
    QuadratureError,
    StabkitError,
)
from .floquet import (
    FloquetResult,
    RotorParams,
    mathieu_reduction_check,
    monodromy,
    propagator,
    tongue_boundary,
    tongue_boundary_analytic,
)
from .gyro import (
    GyroSystem,
    KreinCollisionData,
    MaxwellBlochParams,
    eigenvalue_increment,
    find_krein_collision,
    gamma_neutral,
    gamma_neutral_expansion,
    hauger_omega_cr,
    hauger_parameters,
    krein_splitting,
    maxwell_bloch_boundary_slopes,
    maxwell_bloch_quartic,
    maxwell_bloch_stable_closed,
    maxwell_bloch_verdict,
    omega_cr_bisected,
    omega_cr_surface,
    omega_cr_surface_2dof,
    pairing_defect,
    spectrum,
)
from .quartic import (
    MarginalFunctionValue,
    QuarticCoeffs,
    StabilityLabel,
    StabilityVerdict,
    hurwitz_verdict,
    marginal_H,
    root_oracle,
)
from .sweep import RayLimit, SweepAxis, SweepGrid, bisect_boundary, ray_limit
from .umbrella import (
    BottemaSurfacePoint,
    UmbrellaPoint,
    bottema_from_whitney,
    bottema_height,
    sample_umbrella,
    surface_residual,
    umbrella_map,
    umbrella_residual,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "StabkitError", "DomainError", "ConfigError", "NoBracket", "NoCollision",
    "DegenerateChain", "DegenerateSurface", "NoBoundary", "NoFlutter",
    "IntegrationError", "QuadratureError", "DegenerateQuadratic",
    # quartic
    "QuarticCoeffs", "StabilityLabel", "StabilityVerdict",
    "MarginalFunctionValue", "marginal_H", "root_oracle", "hurwitz_verdict",
    # umbrella
    "UmbrellaPoint", "BottemaSurfacePoint", "umbrella_map", "umbrella_residual",
    "bottema_height", "bottema_from_whitney", "surface_residual", "sample_umbrella",
    # sweep
    "bisect_boundary", "RayLimit", "ray_limit", "SweepAxis", "SweepGrid",
    # circulatory
    "SystemMatrices2", "quartic_from_system", "nu_critical_undamped",
    "nu_critical_damped_limit", "nu_critical_damped_first_order",
    "ZieglerParams", "ziegler_matrices", "ziegler_quartic",
    "ziegler_critical_load", "ziegler_critical_load_bisected", "ziegler_verdict",
    "HultenParams", "hulten_system", "hulten_quartic", "hulten_critical_mu_undamped",
    # gyro
    "GyroSystem", "KreinCollisionData", "spectrum", "pairing_defect",
    "find_krein_collision", "krein_splitting", "eigenvalue_increment",
    "gamma_neutral", "gamma_neutral_expansion", "omega_cr_surface",
    "omega_cr_surface_2dof", "omega_cr_bisected", "MaxwellBlochParams",
    "maxwell_bloch_quartic", "maxwell_bloch_verdict", "maxwell_bloch_stable_closed",
    "maxwell_bloch_boundary_slopes", "hauger_omega_cr", "hauger_parameters",
    # floquet
    "RotorParams", "FloquetResult", "propagator", "monodromy",
    "mathieu_reduction_check", "tongue_boundary_analytic", "tongue_boundary",
    # beck
    "BeckParams", "GalerkinSystem", "beam_wavenumbers", "mode_values",
    "assemble", "system_eigenvalues", "flutter_load", "be12_surface",
    # baroclinic
    "BaroclinicParams", "DispersionRoots", "dispersion", "inviscid_threshold",
    "vanishing_viscosity_threshold", "merging_portrait", "critical_shear_bisected",
]
