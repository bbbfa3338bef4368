import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_gluing import (
    AgmonRayError,
    Circle,
    ConditioningError,
    Explicit,
    KernelError,
    Point,
    RayShift,
    asymptotic_zero_coeff,
    log_det_multiplier,
    log_det_shifted,
    zeta_invariants,
    zeta_laurent,
)
from spectral_gluing.dtn import QCylinder, constant_map, root_map
from spectral_gluing.zeta import BasisFunction, exponent_basis

from conftest import EXACT, MELLIN


def test_ray_shift_validation():
    with pytest.raises(ValueError):
        RayShift(theta=4.0, t=1.0)
    with pytest.raises(ValueError):
        RayShift(theta=0.0, t=-1.0)
    assert RayShift(theta=math.pi / 2, t=1.0).conjugate().theta == -math.pi / 2


def test_point_invariants_vanish():
    result = zeta_invariants(Point())
    assert result.zeta0 == 0
    assert result.log_det == 0
    assert result.excluded_kernel


def test_kernel_must_be_excluded():
    with pytest.raises(KernelError):
        zeta_invariants(Circle(), exclude_kernel=False)


def test_circle_invariants():
    result = zeta_invariants(Circle())
    assert float(result.zeta0) == pytest.approx(-1.0, abs=MELLIN)
    assert float(result.log_det) == pytest.approx(float(2 * mpmath.log(2 * mpmath.pi)), abs=MELLIN)


def test_twisted_circle_log_det_is_log_4():
    result = zeta_invariants(Circle(holonomy="1/2"))
    assert float(result.zeta0) == pytest.approx(0.0, abs=MELLIN)
    assert float(result.log_det) == pytest.approx(math.log(4), abs=MELLIN)


@pytest.mark.parametrize("beta", ["1/4", "1/3", "1", "5/2"])
def test_shifted_integers_match_hurwitz_zeta(beta):
    b = mpmath.mpf(Fraction(beta).numerator) / Fraction(beta).denominator
    result = zeta_invariants(Explicit.shifted_integers(beta))
    assert float(result.zeta0) == pytest.approx(float(mpmath.zeta(0, b)), abs=MELLIN)
    assert float(result.zeta0_prime) == pytest.approx(
        float(mpmath.zeta(0, b, derivative=1)), abs=MELLIN
    )


def test_finite_spectrum_is_exact():
    result = zeta_invariants(Explicit.finite([1, 2, (3, 2)]))
    assert result.zeta0 == 4
    assert float(result.log_det) == pytest.approx(math.log(2) + 2 * math.log(3), abs=EXACT)
    assert result.error_bound == 0


def test_circle_laurent_data_at_one_half():
    laurent = zeta_laurent(Circle(), "1/2")
    assert float(laurent.residue) == pytest.approx(1.0, abs=MELLIN)
    assert float(laurent.finite_part) == pytest.approx(float(2 * mpmath.euler), abs=MELLIN)


def test_circle_laurent_data_at_minus_one_half():
    laurent = zeta_laurent(Circle())
    assert laurent.point == Fraction(-1, 2)
    assert float(laurent.residue) == pytest.approx(0.0, abs=MELLIN)
    assert float(laurent.finite_part) == pytest.approx(-1 / 6, abs=MELLIN)


def test_laurent_rejects_gamma_poles():
    with pytest.raises(ValueError):
        zeta_laurent(Circle(), 0)
    with pytest.raises(ValueError):
        zeta_laurent(Circle(), -2)


@given(st.floats(min_value=0.1, max_value=3.0))
def test_shifted_circle_log_det_closed_form(m):
    value = log_det_shifted(Circle(), m * m)
    assert float(value) == pytest.approx(float(2 * mpmath.log(2 * mpmath.sinh(mpmath.pi * m))), abs=MELLIN)


def test_shifted_point():
    assert float(log_det_shifted(Point(), 2.0)) == pytest.approx(math.log(2))
    value = log_det_shifted(Point(), RayShift(theta=math.pi / 2, t=1.0))
    assert complex(value) == pytest.approx(complex(0, math.pi / 2))


def test_unshifted_kernel_is_rejected():
    with pytest.raises(KernelError):
        log_det_shifted(Circle(), 0.0)


def test_agmon_ray_is_rejected():
    with pytest.raises(AgmonRayError):
        log_det_shifted(Circle(holonomy="1/2"), RayShift(theta=math.pi, t=1.0))


def test_conjugate_rays_give_conjugate_determinants():
    model = Circle(holonomy="1/2")
    up = log_det_shifted(model, RayShift(theta=math.pi / 2, t=1.0))
    down = log_det_shifted(model, RayShift(theta=-math.pi / 2, t=1.0))
    assert complex(up) == pytest.approx(complex(down).conjugate(), abs=MELLIN)


def test_rotated_ray_matches_unrotated_sum():
    model = Explicit.finite([1, 2])
    shift = RayShift(theta=3 * math.pi / 4, t=0.5)
    expected = sum(mpmath.log(lam + shift.value) for lam in (1, 2))
    assert complex(log_det_shifted(model, shift)) == pytest.approx(complex(expected), abs=EXACT)


def test_exponent_basis_of_circle():
    basis = exponent_basis(Circle())
    assert BasisFunction(Fraction(0)) in basis
    assert BasisFunction(Fraction(0), True) in basis
    assert BasisFunction(Fraction(1, 2)) in basis
    assert len(basis) == 7


def test_asymptotic_zero_coeff_recovers_constant():
    basis = (BasisFunction(Fraction(0)), BasisFunction(Fraction(-1)))
    samples = [(t, 3 + 2 / t) for t in (1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0)]
    fit = asymptotic_zero_coeff(samples, basis)
    assert float(fit.pi0) == pytest.approx(3.0, abs=1e-12)
    assert fit.residual_norm < 1e-12
    assert fit.stability is not None and fit.stability < 1e-12


def _window(lo=10.0, hi=1e4, count=24):
    return [lo * (hi / lo) ** (j / (count - 1)) for j in range(count)]


def test_circle_log_det_has_no_constant_at_large_shift():
    model = Circle()
    samples = [(t, log_det_shifted(model, RayShift(t=t))) for t in _window()]
    fit = asymptotic_zero_coeff(samples, exponent_basis(model))
    assert abs(complex(fit.pi0)) <= 1e-6


def test_shifted_zeta_at_zero_keeps_its_constant():
    model = Explicit.shifted_integers("1/4")
    samples = [(t, zeta_invariants(model, shift=RayShift(t=t)).zeta0) for t in _window()]
    fit = asymptotic_zero_coeff(samples, exponent_basis(model))
    assert complex(fit.pi0) == pytest.approx(0.25, abs=1e-6)


def test_rotated_ray_constant_is_angle_times_zeta_at_zero():
    model = Explicit.shifted_integers("1/4")
    theta = math.pi / 4
    samples = [(t, log_det_shifted(model, RayShift(theta=theta, t=t))) for t in _window()]
    fit = asymptotic_zero_coeff(samples, exponent_basis(model))
    assert complex(fit.pi0) == pytest.approx(1j * theta * 0.25, abs=1e-5)


def test_asymptotic_zero_coeff_input_errors():
    basis = (BasisFunction(Fraction(0)), BasisFunction(Fraction(-1)))
    with pytest.raises(ValueError):
        asymptotic_zero_coeff([(1.0, 1.0), (2.0, 1.0)], basis)
    with pytest.raises(ValueError):
        asymptotic_zero_coeff([(t, 1.0) for t in (1.0, 2.0, 3.0, 4.0, 5.0)], basis)
    with pytest.raises(ValueError):
        asymptotic_zero_coeff(
            [(t, 1.0) for t in (1.0, 10.0, 100.0, 1000.0)], (BasisFunction(Fraction(-1)),)
        )


def test_asymptotic_zero_coeff_rejects_ill_conditioned_basis():
    basis = (BasisFunction(Fraction(0)), BasisFunction(Fraction(0), True))
    samples = [(t, 1.0) for t in (1.0, 10.0, 100.0, 1000.0)]
    with pytest.raises(ConditioningError):
        asymptotic_zero_coeff(samples, basis, condition_limit=1.0)


def test_multiplier_of_constant_map_on_finite_spectrum():
    model = Explicit.finite([1, 2, 5])
    assert float(log_det_multiplier(model, constant_map(3.0))) == pytest.approx(3 * math.log(3), abs=EXACT)


def test_multiplier_of_root_map_is_half_log_det():
    model = Circle(holonomy="1/2")
    value = log_det_multiplier(model, root_map())
    assert float(value) == pytest.approx(math.log(4) / 2, abs=MELLIN)


def test_multiplier_kernel_value_enters_as_logarithm():
    value = log_det_multiplier(Point(), QCylinder(4.0).spectral_map())
    assert float(value) == pytest.approx(-math.log(4), abs=EXACT)


def test_multiplier_without_kernel_value_fails_on_kernel():
    with pytest.raises(KernelError):
        log_det_multiplier(Circle(), root_map())
