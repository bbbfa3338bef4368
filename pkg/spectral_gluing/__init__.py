"""
spectral-gluing
===============
A numerical laboratory for zeta-regularized determinants, Dirichlet-to-Neumann
operators and analytic torsion on flat product models with explicit spectra.
"""
from .cylinder import (
    CylinderLogDet,
    CylinderOp,
    cylinder_log_det,
    cylinder_log_det_2d,
    form_cylinder_log_det,
    interval_log_det,
)
from .decorators import sanitized, typechecked
from .dtn import (
    QCylinder,
    RJoin,
    RM1r,
    RM2r,
    RNr,
    Rmrr,
    RqAbs,
    RqRel,
    SpectralMap,
    dtn_eigenvalue,
    dtn_log_det,
    min_block_eigen,
    perturbation_bound,
)
from .enums import Arity, BoundaryCondition, Experiment, Identity, LhsMethod, OutputFormat
from .exceptions import (
    AgmonRayError,
    ConditioningError,
    ConfigError,
    ExhaustivenessError,
    HypothesisError,
    KernelError,
    MissingAsymptoticsError,
    SpectralGluingException,
    TraceClassError,
)
from .glue import (
    GeometryConfig,
    Laboratory,
    Report,
    Tolerances,
    TorsionAssembly,
    adiabatic_limit,
    check_gluing,
    check_power_gluing_m2,
    torsion_report,
)
from .spectra import (
    Circle,
    CrossSection,
    Explicit,
    FormGraded,
    Point,
    enumerate_spectrum,
    heat_expansion,
    heat_trace,
    kernel_dim,
)
from .symbols import (
    SymbolExpansion,
    TrigPotential,
    ricatti_expansion,
    smoothing_decay_check,
)
from .zeta import (
    RayShift,
    ZetaResult,
    asymptotic_zero_coeff,
    log_det_multiplier,
    log_det_shifted,
    zeta_invariants,
    zeta_laurent,
)

__version__ = "1.0.0"
__all__ = [
    # Cylinder
    "CylinderLogDet",
    "CylinderOp",
    "cylinder_log_det",
    "cylinder_log_det_2d",
    "form_cylinder_log_det",
    "interval_log_det",
    # Decorators
    "sanitized",
    "typechecked",
    # Dirichlet-to-Neumann maps
    "QCylinder",
    "RJoin",
    "RM1r",
    "RM2r",
    "RNr",
    "Rmrr",
    "RqAbs",
    "RqRel",
    "SpectralMap",
    "dtn_eigenvalue",
    "dtn_log_det",
    "min_block_eigen",
    "perturbation_bound",
    # Enums
    "Arity",
    "BoundaryCondition",
    "Experiment",
    "Identity",
    "LhsMethod",
    "OutputFormat",
    # Exceptions
    "AgmonRayError",
    "ConditioningError",
    "ConfigError",
    "ExhaustivenessError",
    "HypothesisError",
    "KernelError",
    "MissingAsymptoticsError",
    "SpectralGluingException",
    "TraceClassError",
    # Glue
    "GeometryConfig",
    "Laboratory",
    "Report",
    "Tolerances",
    "TorsionAssembly",
    "adiabatic_limit",
    "check_gluing",
    "check_power_gluing_m2",
    "torsion_report",
    # Spectra
    "Circle",
    "CrossSection",
    "Explicit",
    "FormGraded",
    "Point",
    "enumerate_spectrum",
    "heat_expansion",
    "heat_trace",
    "kernel_dim",
    # Symbols
    "SymbolExpansion",
    "TrigPotential",
    "ricatti_expansion",
    "smoothing_decay_check",
    # Zeta
    "RayShift",
    "ZetaResult",
    "asymptotic_zero_coeff",
    "log_det_multiplier",
    "log_det_shifted",
    "zeta_invariants",
    "zeta_laurent",
]
