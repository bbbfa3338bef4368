import json
import os

from spectral_gluing import (
    Circle,
    Explicit,
    GeometryConfig,
    HypothesisError,
    Laboratory,
    Point,
    TrigPotential,
    ricatti_expansion,
    zeta_invariants,
)
from spectral_gluing.symbols import format_expansion


# Define some geometries.
CIRCLE = Circle()
TWISTED_CIRCLE = Circle(holonomy="1/2")
SHIFTED_INTEGERS = Explicit.shifted_integers("1/4")


# zeta_invariants
result = zeta_invariants(TWISTED_CIRCLE)
print(
    "zeta_invariants:",
    f"zeta(0) = {result.zeta0}",
    f"log Det = {result.log_det}",
    sep=os.linesep,
    end=os.linesep * 2,
)


# check_gluing
# A nonzero gluing constant: zeta(0) + dim ker = 1/4 on the shifted integers.
lab = Laboratory(GeometryConfig(cross_section=SHIFTED_INTEGERS, lengths=(1.0, 1.0)))
print(
    "check_gluing:",
    json.dumps(lab.check_gluing().to_dict()["rows"], indent=2),
    sep=os.linesep,
    end=os.linesep * 2,
)


# adiabatic_limit
# The stretched Dirichlet decomposition tends to log(2 pi) on the untwisted circle.
lab = Laboratory(GeometryConfig(cross_section=CIRCLE, lhs_method="factorized"))
report = lab.adiabatic_limit(identity="adiabatic-dirichlet")
for row in report.rows:
    print(row.label, row.r, row.lhs, row.passed)
print()


# torsion_report
try:
    Laboratory(GeometryConfig(cross_section=CIRCLE)).torsion_report()
except HypothesisError as e:
    print("[HypothesisError] torsion_report:", e, sep=os.linesep, end=os.linesep * 2)

report = Laboratory(
    GeometryConfig(cross_section=TWISTED_CIRCLE, lhs_method="factorized")
).torsion_report()
print("torsion_report:", report.results["log_torsion_y"], report.passed, sep=os.linesep)
print()


# ricatti_expansion
print(
    "ricatti_expansion:",
    format_expansion(ricatti_expansion(TrigPotential(cosines=((1, 1.0),)), depth=2)),
    sep=os.linesep,
)


# Point fibers make every identity elementary.
print(Laboratory(GeometryConfig(cross_section=Point(), lengths=(1.0, 1.0))).check_gluing().passed)
