import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_gluing import (
    Circle,
    CylinderOp,
    Explicit,
    FormGraded,
    KernelError,
    LhsMethod,
    Point,
    RayShift,
    cylinder_log_det,
    cylinder_log_det_2d,
    form_cylinder_log_det,
    interval_log_det,
)
from spectral_gluing.cylinder import cylinder_log_det_by

from conftest import EXACT, MELLIN


def test_interval_dirichlet():
    assert float(interval_log_det(1.0, 4.0)) == pytest.approx(math.log(math.sinh(2)), abs=EXACT)
    assert float(interval_log_det(3.0, 0.0)) == pytest.approx(math.log(6), abs=EXACT)


def test_interval_gluing_sweep():
    pairs = [
        (float(length), float(fraction * length))
        for length in np.linspace(0.5, 20.0, 10)
        for fraction in np.linspace(0.05, 0.95, 10)
    ]
    worst = 0.0
    for length, cut in pairs:
        lhs = (
            interval_log_det(length, 0.0)
            - interval_log_det(cut, 0.0)
            - interval_log_det(length - cut, 0.0)
        )
        rhs = -mpmath.log(2) + mpmath.log(1 / mpmath.mpf(cut) + 1 / (mpmath.mpf(length) - cut))
        worst = max(worst, float(abs(lhs - rhs)))

    assert len(pairs) == 100
    assert worst <= 1e-10


def test_interval_mixed_and_neumann():
    mu, length = 1.5, 2.0
    mixed = interval_log_det(length, mu * mu, "D", "N")
    neumann = interval_log_det(length, mu * mu, "neumann", "neumann")
    assert float(mixed) == pytest.approx(math.log(2 * math.cosh(mu * length)), abs=EXACT)
    assert float(neumann) == pytest.approx(math.log(2 * mu * math.sinh(mu * length)), abs=EXACT)
    assert float(interval_log_det(length, 0.0, "N", "D")) == pytest.approx(math.log(2), abs=EXACT)


def test_interval_shift():
    assert float(interval_log_det(1.0, 3.0, shift=1.0)) == pytest.approx(
        math.log(math.sinh(2)), abs=EXACT
    )


def test_interval_neumann_zero_mode_is_a_kernel():
    with pytest.raises(KernelError):
        interval_log_det(1.0, 0.0, "N", "N")


def test_interval_rejects_form_conditions():
    with pytest.raises(ValueError):
        interval_log_det(1.0, 1.0, "absolute", "D")


def test_cylinder_op_validation():
    with pytest.raises(ValueError):
        CylinderOp(Point(), 0.0)
    with pytest.raises(ValueError):
        CylinderOp(Point(), 1.0, "D", "absolute")
    with pytest.raises(ValueError):
        CylinderOp(Point(), 1.0, "D", "robin")
    op = CylinderOp(Point(), 1.0, "D", "N")
    assert op.bc_right.code == "neumann"
    assert op.with_length(2.0).length == 2.0


@pytest.mark.parametrize(
    "bc_right, expected",
    [("D", math.log(6)), ("N", math.log(2))],
)
def test_point_cylinder(bc_right, expected):
    value = cylinder_log_det(CylinderOp(Point(), 3.0, "D", bc_right))
    assert float(value.value) == pytest.approx(expected, abs=EXACT)


def test_point_cylinder_with_shift():
    op = CylinderOp(Point(), 2.0, shift=RayShift(t=1.0))
    assert float(cylinder_log_det(op).value) == pytest.approx(math.log(2 * math.sinh(2)), abs=EXACT)


@given(
    eigenvalues=st.lists(
        st.fractions(min_value=0, max_value=20, max_denominator=8), min_size=1, max_size=5
    ),
    length=st.floats(min_value=0.25, max_value=4.0),
    bc_right=st.sampled_from(["D", "N"]),
)
def test_finite_cylinder_is_the_product_of_intervals(eigenvalues, length, bc_right):
    model = Explicit.finite(eigenvalues)
    expected = mpmath.fsum(
        mult * interval_log_det(length, float(lam), "D", bc_right) for lam, mult in model.listed
    )
    value = cylinder_log_det(CylinderOp(model, length, "D", bc_right)).value
    assert float(value) == pytest.approx(float(expected), abs=1e-9)


def test_neumann_cylinder_with_kernel_fails():
    with pytest.raises(KernelError):
        cylinder_log_det(CylinderOp(Circle(), 1.0, "N", "N"))
    with pytest.raises(KernelError):
        cylinder_log_det_2d(CylinderOp(Point(), 1.0, "N", "N"))


@pytest.mark.parametrize("length", [0.5, 1.0, 2.0])
def test_double_spectrum_of_point_interval(length):
    value = cylinder_log_det_2d(CylinderOp(Point(), length))
    assert float(value.value) == pytest.approx(math.log(2 * length), abs=MELLIN)


@pytest.mark.parametrize("bc_right", ["D", "N"])
def test_methods_agree_on_twisted_circle(bc_right):
    op = CylinderOp(Circle(holonomy="1/2"), 1.0, "D", bc_right)
    factorized = cylinder_log_det(op)
    double = cylinder_log_det_2d(op)
    assert float(factorized.value) == pytest.approx(float(double.value), abs=1e-8)


def test_methods_agree_on_shifted_circle():
    op = CylinderOp(Circle(), 1.5, shift=RayShift(t=0.5))
    assert float(cylinder_log_det(op).value) == pytest.approx(
        float(cylinder_log_det_2d(op).value), abs=1e-8
    )


def test_absolute_condition_splits_into_blocks():
    base = Circle(holonomy="1/2")
    op = CylinderOp(base, 1.0, "D", "absolute", form_degree=1)
    tangential = cylinder_log_det(CylinderOp(base, 1.0, "D", "N"))
    normal = cylinder_log_det(CylinderOp(base, 1.0, "D", "D"))
    value = form_cylinder_log_det(op)
    assert float(value.value) == pytest.approx(float(tangential.value + normal.value), abs=EXACT)
    assert float(cylinder_log_det(op).value) == pytest.approx(float(value.value), abs=EXACT)


def test_form_degree_outside_the_range_is_empty():
    base = Circle(holonomy="1/2")
    relative = form_cylinder_log_det(CylinderOp(base, 1.0, "D", "relative", form_degree=2))
    normal = cylinder_log_det(CylinderOp(FormGraded(base=base, degree=1), 1.0, "D", "N"))
    assert float(relative.value) == pytest.approx(float(normal.value), abs=EXACT)
    assert cylinder_log_det(CylinderOp(FormGraded(base=base, degree=3), 1.0)).value == 0


def test_form_cylinder_requires_degree():
    with pytest.raises(ValueError):
        form_cylinder_log_det(CylinderOp(Point(), 1.0))


def test_dispatch_by_method():
    op = CylinderOp(Point(), 2.0)
    assert float(cylinder_log_det_by(op, LhsMethod.FACTORIZED).value) == pytest.approx(math.log(4))
    assert float(cylinder_log_det_by(op, LhsMethod.DOUBLE_SPECTRUM).value) == pytest.approx(
        math.log(4), abs=MELLIN
    )
