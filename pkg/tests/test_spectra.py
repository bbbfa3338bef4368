from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_gluing import (
    Circle,
    CrossSection,
    Explicit,
    ExhaustivenessError,
    FormGraded,
    MissingAsymptoticsError,
    Point,
    enumerate_spectrum,
    heat_expansion,
    heat_trace,
    kernel_dim,
    zeta_invariants,
)
from spectral_gluing.spectra import cross_section_from_config, merge_eigenvalues

from conftest import EXACT


def test_cross_section_is_abstract():
    with pytest.raises(TypeError):
        CrossSection()


def test_point():
    point = Point()
    assert point.is_finite
    assert kernel_dim(point) == 1
    assert enumerate_spectrum(point, 10.0).as_floats() == [(0.0, 1)]
    assert heat_trace(point, 3.0) == 1
    assert heat_expansion(point).constant == 1


def test_circle_eigenvalues_merge_multiplicities():
    stream = enumerate_spectrum(Circle(), 5.0)
    assert stream.as_floats() == [(0.0, 1), (1.0, 2), (4.0, 2)]
    assert stream.total_multiplicity == 5


def test_twisted_circle_eigenvalues():
    stream = enumerate_spectrum(Circle(holonomy="1/4"), 1.0)
    assert stream.as_floats() == [(0.0625, 1), (0.5625, 1)]
    assert kernel_dim(Circle(holonomy="1/4")) == 0


def test_holonomy_is_reduced():
    assert Circle(holonomy="5/4").holonomy == Fraction(1, 4)
    assert Circle(holonomy=-0.5).holonomy == Fraction(1, 2)


def test_circle_rejects_nonpositive_circumference():
    with pytest.raises(ValueError):
        Circle(circumference=0.0)


def test_circumference_scales_eigenvalues():
    stream = enumerate_spectrum(Circle(circumference=float(mpmath.pi)), 4.5)
    assert [mult for _, mult in stream] == [1, 2]
    assert stream.as_floats()[1][0] == pytest.approx(4.0)


@given(st.floats(min_value=0.005, max_value=10.0))
def test_circle_heat_trace_matches_theta_function(r):
    q = mpmath.exp(-r)
    assert float(heat_trace(Circle(), r)) == pytest.approx(float(mpmath.jtheta(3, 0, q)), rel=1e-12)
    assert float(heat_trace(Circle(holonomy="1/2"), r)) == pytest.approx(
        float(mpmath.jtheta(2, 0, q)), rel=1e-12
    )


def test_heat_trace_rejects_nonpositive_time():
    with pytest.raises(ValueError):
        heat_trace(Circle(), 0.0)


def test_enumerate_spectrum_rejects_negative_cutoff():
    with pytest.raises(ValueError):
        enumerate_spectrum(Circle(), -1.0)


@given(st.fractions(min_value=0, max_value=3, max_denominator=12))
def test_shifted_integers_heat_constant(beta):
    model = Explicit.shifted_integers(beta)
    assert float(heat_expansion(model).constant) == pytest.approx(float(Fraction(1, 2) - beta), abs=EXACT)


def test_shifted_integers_heat_series_matches_trace():
    model = Explicit.shifted_integers("1/4")
    expansion = heat_expansion(model, order=6)
    r = mpmath.mpf("0.01")
    assert float(abs(expansion.partial_sum(r, 6) - heat_trace(model, r))) < 1e-15


def test_circle_heat_expansion_has_no_constant():
    expansion = heat_expansion(Circle())
    assert expansion.constant == 0
    assert expansion.terms[0][0] == Fraction(-1, 2)
    assert float(expansion.terms[0][1]) == pytest.approx(float(mpmath.sqrt(mpmath.pi)))


def test_finite_spectrum():
    model = Explicit.finite([1, (2, 3), "1/2", 1])
    assert model.is_finite
    assert model.listed == ((Fraction(1, 2), 1), (Fraction(1), 2), (Fraction(2), 3))
    assert kernel_dim(Explicit.finite([0, 0, 1])) == 2
    assert float(heat_trace(model, 1.0)) == pytest.approx(
        float(mpmath.exp(-0.5) + 2 * mpmath.exp(-1) + 3 * mpmath.exp(-2))
    )


def test_finite_spectrum_rejects_negative_eigenvalues():
    with pytest.raises(ValueError):
        Explicit.finite([-1])


def test_incomplete_list_certifies_nothing_beyond_its_end():
    model = Explicit.finite([1, 2], complete=False)
    assert enumerate_spectrum(model, 1.5).as_floats() == [(1.0, 1)]
    with pytest.raises(ExhaustivenessError):
        enumerate_spectrum(model, 3.0)
    with pytest.raises(MissingAsymptoticsError):
        heat_expansion(model)


def test_form_graded_degrees():
    base = Circle(holonomy="1/2")
    assert FormGraded(base=base, degree=2).is_empty
    assert FormGraded(base=base, degree=-1).heat_trace(1.0) == 0
    assert FormGraded(base=base, degree=1).eigenvalues(1.0) == base.eigenvalues(1.0)
    assert FormGraded(base=Point(), degree=1).is_empty
    with pytest.raises(ValueError):
        FormGraded(base=Explicit.shifted_integers(1))


def test_merge_eigenvalues():
    merged = merge_eigenvalues([(2.0, 1), (1.0, 1), (1.0 + 1e-14, 2)])
    assert merged == ((1.0, 3), (2.0, 1))


@pytest.mark.parametrize(
    "model",
    [
        Point(),
        Circle(holonomy="1/3"),
        Circle(circumference=2.0),
        Explicit.shifted_integers("1/4"),
        Explicit.finite([1, (2, 2)], complete=False),
        FormGraded(base=Circle(holonomy="1/2"), degree=1),
    ],
)
def test_config_descriptor_rebuilds_model(model):
    assert cross_section_from_config(model.describe()) == model


def test_config_descriptor_errors():
    with pytest.raises(ValueError):
        cross_section_from_config({"kind": "sphere"})
    with pytest.raises(ValueError):
        cross_section_from_config({"kind": "circle", "radius": 1})


@pytest.mark.parametrize(
    "model",
    [
        Point(),
        Circle(),
        Circle(holonomy="1/2"),
        Circle(circumference=3.0, holonomy="1/4"),
        Explicit.shifted_integers("1/4"),
        Explicit.finite([1, 2, 2]),
        FormGraded(base=Circle(holonomy="1/2"), degree=1),
    ],
    ids=lambda model: str(model.describe()),
)
def test_heat_constant_is_zeta_at_zero_plus_kernel(model):
    constant = heat_expansion(model).constant
    expected = zeta_invariants(model).zeta0 + kernel_dim(model)
    assert float(abs(constant - expected)) < EXACT
