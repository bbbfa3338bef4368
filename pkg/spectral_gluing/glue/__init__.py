"""Experiment orchestration: the gluing, adiabatic and torsion identities on two-piece product cylinders."""
from .config import GeometryConfig, Tolerances
from .extrapolation import Extrapolation, extrapolate
from .instance import (
    Laboratory,
    adiabatic_limit,
    check_gluing,
    check_power_gluing_m2,
    torsion_report,
)
from .report import Report, ReportRow
from .torsion import TorsionAssembly

__all__ = [
    "Extrapolation",
    "GeometryConfig",
    "Laboratory",
    "Report",
    "ReportRow",
    "Tolerances",
    "TorsionAssembly",
    "adiabatic_limit",
    "check_gluing",
    "check_power_gluing_m2",
    "extrapolate",
    "torsion_report",
]
