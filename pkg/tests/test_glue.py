import math

import numpy as np
import pytest

from spectral_gluing import (
    Circle,
    Experiment,
    Explicit,
    GeometryConfig,
    HypothesisError,
    Identity,
    Laboratory,
    Point,
    Tolerances,
    check_gluing,
)
from spectral_gluing.glue.base import Checks
from spectral_gluing.glue.extrapolation import extrapolate, is_monotone_decreasing

from conftest import EXACT, LOG2


def test_checks_are_abstract():
    with pytest.raises(TypeError):
        Checks(GeometryConfig())


def test_laboratory_requires_a_config():
    with pytest.raises(TypeError):
        Laboratory({"cross_section": "point"})


def test_point_gluing(point_lab):
    report = point_lab.check_gluing()
    assert report.experiment is Experiment.GLUE
    assert report.passed
    assert [row.label for row in report.rows] == ["heat-constant", "gluing"]
    assert report.results["constant"] == 1
    (row,) = report.rows_for(Identity.GLUING)
    assert float(row.lhs) == pytest.approx(0.0, abs=EXACT)


def test_twisted_circle_gluing(twisted_lab):
    report = twisted_lab.check_gluing()
    assert report.passed
    assert report.results["kernel_dim"] == 0


@pytest.mark.parametrize(
    "model, constant",
    [(Circle(), 0.0), (Explicit.shifted_integers("1/4"), 0.25)],
)
def test_double_spectrum_gluing(model, constant):
    report = check_gluing(GeometryConfig(cross_section=model, lengths=(1.0, 1.0)))
    assert report.passed
    assert float(report.results["constant"]) == pytest.approx(constant, abs=EXACT)
    (row,) = report.rows_for(Identity.GLUING)
    assert row.residual <= 1e-6


def test_shifted_point_gluing():
    report = check_gluing(GeometryConfig(shift=2.0, lhs_method="factorized"))
    assert report.passed
    assert not report.rows_for(Identity.HEAT_CONSTANT)


def test_power_gluing_on_point(point_lab):
    report = point_lab.check_power_gluing_m2()
    assert report.passed
    assert [row.label for row in report.rows_for(Identity.POWER_GLUING_RAY)] == [
        "power-gluing-ray[+]",
        "power-gluing-ray[-]",
    ]
    (reality,) = report.rows_for(Identity.POWER_GLUING_REALITY)
    assert reality.residual < EXACT


def test_point_adiabatic_limits(point_lab):
    report = point_lab.adiabatic_limit()
    assert report.passed
    assert report.results["kernel_dim"] == 1
    assert len(report.rows_for(Identity.DTN_SPLIT)) == 4
    for row in report.rows:
        if row.r is not None and row.identity is not Identity.DTN_SPLIT:
            assert float(row.lhs) == pytest.approx(float(row.rhs), abs=EXACT)


def test_single_adiabatic_identity(point_lab):
    report = point_lab.adiabatic_limit(identity="collar-dtn", r_grid=[1, 3, 5, 7])
    rows = report.rows_for(Identity.COLLAR_DTN)
    assert len(rows) == len(report.rows) == 5
    assert [row.r for row in rows[:4]] == [1.0, 3.0, 5.0, 7.0]
    assert all(float(row.lhs) == pytest.approx(float(LOG2)) for row in rows)
    assert rows[-1].diagnostics["fit"]["message"] == "settled"


def test_adiabatic_rejects_other_identities(point_lab):
    with pytest.raises(ValueError):
        point_lab.adiabatic_limit(identity="gluing")
    with pytest.raises(ValueError):
        point_lab.adiabatic_limit(identity="no-such-identity")


def test_invertibility_on_point(point_lab):
    minima = point_lab.check_invertibility()
    assert len(minima) == 4
    assert all(minimum.value > 0 and minimum.certified for minimum in minima)


def test_torsion_of_twisted_circle(twisted_lab):
    report = twisted_lab.torsion_report()
    assert report.passed
    assert report.results["degrees"] == [0, 1, 2]
    assert float(report.results["log_torsion_y"]) == pytest.approx(-math.log(2), abs=1e-8)
    gluing = report.rows_for(Identity.FORM_GLUING_ABSOLUTE) + report.rows_for(
        Identity.FORM_GLUING_RELATIVE
    )
    assert len(gluing) == 6
    assert all(row.passed for row in gluing)

    (split,) = [row for row in report.rows_for(Identity.TORSION_SPLIT) if row.r is None]
    assert float(split.lhs) == pytest.approx(-math.log(2), abs=1e-3)
    for row in report.rows_for(Identity.ABSOLUTE_LIMIT):
        if row.r is None and row.degree in (0, 1):
            assert float(row.lhs) == pytest.approx(math.log(2), abs=1e-3)


def _limits_and_last_terms(report, r_last):
    limits = [row for row in report.rows if row.r is None and "fit" in row.diagnostics]
    last = {(row.identity, row.degree): row for row in report.rows if row.r == r_last}
    return [(row, last[row.identity, row.degree]) for row in limits]


def test_extrapolated_limits_improve_on_the_last_term(twisted_lab):
    pairs = _limits_and_last_terms(twisted_lab.torsion_report(), twisted_lab.config.r_grid[-1])
    assert pairs
    for limit, last in pairs:
        assert limit.residual <= last.residual + 1e-12, limit.label


@pytest.fixture
def circle_lab():
    return Laboratory(GeometryConfig(cross_section=Circle(), lhs_method="factorized"))


def test_stretched_dirichlet_decomposition_of_circle(circle_lab):
    report = circle_lab.adiabatic_limit(identity="adiabatic-dirichlet")
    *terms, limit = report.rows_for(Identity.ADIABATIC_DIRICHLET)
    assert limit.passed
    assert float(limit.lhs) == pytest.approx(math.log(2 * math.pi), abs=1e-4)
    residuals = [row.residual for row in terms]
    assert residuals == sorted(residuals, reverse=True)
    assert limit.diagnostics["monotone"]
    assert limit.residual <= residuals[-1]


def test_one_sided_dtn_converges_on_circle(circle_lab):
    report = circle_lab.adiabatic_limit(identity="one-sided-dtn")
    by_r = {row.r: row for row in report.rows_for(Identity.ONE_SIDED_DTN)}
    assert by_r[8.0].residual * 5 <= by_r[4.0].residual
    assert by_r[8.0].residual <= 1e-5
    assert by_r[None].passed


def test_limit_row_fails_when_residuals_grow(point_lab):
    rs = (1.0, 2.0, 4.0, 8.0)
    values = [(v, 0.0) for v in (1e-2, 1e-1, 1e-3, 1e-4)]
    *terms, limit = point_lab._limit_rows(Identity.COLLAR_DTN, rs, values, 0.0)
    assert all(row.passed for row in terms)
    assert limit.residual <= point_lab.config.tolerances.limit
    assert limit.diagnostics["fit"]["converged"]
    assert not limit.diagnostics["monotone"]
    assert not limit.passed


@pytest.mark.parametrize("model", [Circle(), Point()])
def test_torsion_needs_twisted_circle(model):
    with pytest.raises(HypothesisError):
        Laboratory(GeometryConfig(cross_section=model)).torsion_report()


def test_run_by_name(point_lab):
    assert point_lab.run("glue").experiment is Experiment.GLUE
    with pytest.raises(ValueError):
        point_lab.run("spectrum")


def test_identity_selection():
    config = GeometryConfig(lhs_method="factorized", identities=["gluing"])
    report = Laboratory(config).check_gluing()
    assert [row.identity for row in report.rows] == [Identity.GLUING]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"lengths": (1.0,)},
        {"lengths": (1.0, -1.0)},
        {"r_grid": (1.0, 2.0, 3.0)},
        {"r_grid": (1.0, 3.0, 2.0, 4.0)},
        {"shift": -1.0},
        {"ray_modulus": 0.0},
        {"jobs": 0},
        {"lhs_method": "spectral"},
        {"identities": ["gluing", "bogus"]},
    ],
)
def test_geometry_config_validation(kwargs):
    with pytest.raises(ValueError):
        GeometryConfig(**kwargs)


def test_geometry_config_describe():
    config = GeometryConfig(tolerances=Tolerances.uniform(1e-4), identities=["gluing"])
    described = config.describe()
    assert described["cross_section"] == {"kind": "point"}
    assert described["lhs_method"] == "double-spectrum"
    assert described["tolerances"] == {"exact": 1e-4, "fixed": 1e-4, "limit": 1e-4}
    assert described["identities"] == ["gluing"]


def test_report_serializes(point_lab):
    payload = point_lab.check_gluing().to_dict()
    assert payload["experiment"] == "glue"
    assert payload["passed"] is True
    assert payload["config"]["lengths"] == [1.0, 1.0]
    row = payload["rows"][1]
    assert row["identity"] == "gluing"
    assert row["r"] is None
    assert isinstance(row["lhs"], float)


def test_extrapolate_exponential_sequence():
    rs = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    values = [2.0 + 3.0 * math.exp(-0.7 * r) for r in rs]
    fit = extrapolate(rs, values)
    assert fit.converged
    assert fit.message == "fit"
    assert fit.limit == pytest.approx(2.0, abs=1e-8)
    assert fit.rate == pytest.approx(0.7, rel=1e-6)
    assert fit.amplitude == pytest.approx(3.0 * math.exp(-4.2), rel=1e-6)


def test_extrapolate_ignores_faster_early_terms():
    rs = [1.0, 2.0, 4.0, 8.0]
    values = [1.0 + math.exp(-r) + 5.0 * math.exp(-3.0 * r) for r in rs]
    fit = extrapolate(rs, values)
    assert fit.message == "fit"
    assert abs(fit.limit - 1.0) < 1e-4
    assert abs(fit.limit - 1.0) < abs(values[-1] - 1.0)
    assert fit.error_bound == pytest.approx(abs(values[-1] - fit.limit))


def test_extrapolate_keeps_last_value_for_slow_tails():
    rs = [1.0, 2.0, 3.0, 4.0]
    values = [1.0 + 0.9**r for r in rs]
    fit = extrapolate(rs, values)
    assert fit.converged
    assert fit.message == "last value"
    assert fit.limit == values[-1]
    assert fit.error_bound == pytest.approx(values[-2] - values[-1])


@pytest.mark.parametrize(
    "values",
    [
        [1.0, 2.0, 1.5, 1.6],
        [1.0, 1.1, 1.3, 1.7],
        [1.0, 2.0, float("nan"), 3.0],
    ],
)
def test_extrapolate_reports_diverging_tails(values):
    fit = extrapolate([1.0, 2.0, 3.0, 4.0], values)
    assert not fit.converged
    assert fit.message == "no exponential tail"


def test_extrapolate_needs_three_terms():
    with pytest.raises(ValueError):
        extrapolate([1.0, 2.0], [1.0, 0.5])


def test_extrapolate_settled_sequence():
    fit = extrapolate([1, 2, 3, 4], np.full(4, 1.5))
    assert fit.converged
    assert fit.limit == 1.5
    assert fit.message == "settled"


def test_monotone_residuals():
    assert is_monotone_decreasing([1e-2, 1e-4, 1e-8])
    assert is_monotone_decreasing([1e-2, 1e-14, 1e-14])
    assert not is_monotone_decreasing([1e-2, 1e-1, 1e-8])
