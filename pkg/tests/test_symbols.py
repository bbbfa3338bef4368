import math

import pytest
import sympy as sy

from spectral_gluing.symbols import (
    W,
    XI,
    TrigPotential,
    constant_potential_orders,
    evaluate_symbol,
    format_expansion,
    matches_constant_expansion,
    potential_derivative,
    ricatti_expansion,
    smoothing_decay_check,
)

V = potential_derivative(0)
V1 = potential_derivative(1)


@pytest.fixture(scope="module")
def trig_expansion():
    return ricatti_expansion(TrigPotential(constant=1.0, cosines=((1, 0.5),), sines=((2, 0.25),)), 4)


def test_leading_orders_in_closed_form(trig_expansion):
    assert trig_expansion.q(0) == W
    assert trig_expansion.q(1) == 0
    assert sy.simplify(trig_expansion.q(2) - V / (2 * W)) == 0
    assert sy.simplify(trig_expansion.q(3) - sy.I * XI * V1 / (4 * W**3)) == 0


def test_constant_potential_matches_taylor_coefficients():
    expansion = ricatti_expansion(TrigPotential(constant=3.0), 4)
    assert expansion.depth == 4
    assert matches_constant_expansion(expansion)
    assert constant_potential_orders(4)[4] == -V**2 / (8 * W**3)


def test_trig_potential_structure(trig_expansion):
    assert trig_expansion.is_u_free
    assert trig_expansion.is_homogeneous()
    assert trig_expansion.has_parity()
    assert trig_expansion.is_real_symmetric()
    assert not matches_constant_expansion(trig_expansion)


def test_evaluate_leading_order():
    expansion = ricatti_expansion(TrigPotential(), 2)
    assert evaluate_symbol(expansion, 0.0, 3.0, 16.0, orders=[0]) == pytest.approx(5.0)


def test_evaluate_constant_potential():
    expansion = ricatti_expansion(TrigPotential(constant=2.0), 2)
    assert evaluate_symbol(expansion, 0.0, 0.0, 4.0, orders=[2]) == pytest.approx(0.5)
    assert evaluate_symbol(expansion, 1.0, 0.0, 4.0) == pytest.approx(2.5)


def test_evaluate_rejects_nonpositive_shift():
    expansion = ricatti_expansion(TrigPotential(), 1)
    with pytest.raises(ValueError):
        evaluate_symbol(expansion, 0.0, 1.0, 0.0)


def test_format_expansion():
    lines = format_expansion(ricatti_expansion(TrigPotential(constant=1.0), 2)).splitlines()
    assert lines == ["q_1 = (1)*w", "q_0 = 0", "q_-1 = (1/2)*V/w"]


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        ricatti_expansion(TrigPotential(), 0)


def test_potential_from_config():
    assert TrigPotential.from_config(2) == TrigPotential(constant=2.0)
    potential = TrigPotential.from_config({"constant": 1, "cosines": [[1, 0.5]]})
    assert potential.cosines == ((1, 0.5),)
    assert TrigPotential.from_config(potential.describe()) == potential


def test_smoothing_remainder_peaks_then_decays():
    report = smoothing_decay_check(1.0, 1.0, 30.0, 5)
    assert report.argmax == 8.0
    assert report.monotone_after
    assert report.zero_remainder == pytest.approx(2 / (math.e**2 - 1))


def test_smoothing_check_rejects_nonpositive_shift():
    with pytest.raises(ValueError):
        smoothing_decay_check(1.0, 0.0, 10.0, 2)
