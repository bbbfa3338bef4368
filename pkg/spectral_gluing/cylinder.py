"""
Cylinder determinants
=====================
Zeta-regularized determinants of ``-d^2/du^2 + Delta_Y (+ z)`` on
``[0, L] x Y`` for Dirichlet and Neumann ends, and of the Hodge Laplacian on
form-graded cylinders under absolute and relative conditions.

Two independent computations are offered. :func:`cylinder_log_det`
factorizes over the fibers of ``Delta_Y`` and regularizes the fiber sums
with zeta data of the cross-section. :func:`cylinder_log_det_2d` runs the
zeta engine on the full two-variable spectrum.
"""
from .decorators import sanitized, typechecked
from .enums import BoundaryCondition, LhsMethod
from .exceptions import KernelError
from .spectra import WORKING_DPS, Circle, CrossSection, FormGraded, as_mp
from .zeta import RayShift, resolve_shift, zeta_invariants, zeta_laurent

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

import logging
import math

import mpmath

logger = logging.getLogger(__name__)

#: Fibers whose exponential factor ``exp(-2 mu L)`` is below ``10^-FIBER_DIGITS`` are dropped.
FIBER_DIGITS = WORKING_DPS + 5

_D = BoundaryCondition.DIRICHLET
_N = BoundaryCondition.NEUMANN


@dataclass(frozen=True)
class CylinderOp:
    """The operator ``-d^2/du^2 + Delta_Y + shift`` on ``[0, length] x Y``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    cross_section : CrossSection
        The cross-section model.
    length : float
        The cylinder length, positive.
    bc_left : BoundaryCondition or str
        The condition at ``u = 0``. Defaults to Dirichlet.
    bc_right : BoundaryCondition or str
        The condition at ``u = length``. Defaults to Dirichlet.
    shift : RayShift or None
        A shift along a ray. Defaults to none.
    form_degree : int or None
        The form degree ``q``, required for absolute and relative conditions.

    Raises
    ------
    ValueError
        Raised when the length is not positive or an absolute/relative condition comes without a form degree.
    """

    cross_section: CrossSection
    length: float
    bc_left: BoundaryCondition = _D
    bc_right: BoundaryCondition = _D
    shift: Optional[RayShift] = None
    form_degree: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("bc_left", "bc_right"):
            value = getattr(self, name)
            if isinstance(value, str):
                condition = BoundaryCondition.from_string(value)
                if condition is None:
                    raise ValueError(f"Invalid boundary condition: {value}.")
                object.__setattr__(self, name, condition)

        if not self.length > 0:
            raise ValueError(f"Invalid length: {self.length}. Must be positive.")

        forms = self.bc_left.is_form_condition or self.bc_right.is_form_condition
        if forms and self.form_degree is None:
            raise ValueError(
                "Absolute and relative conditions require a form degree."
            )

    def with_length(self, length: float) -> "CylinderOp":
        return CylinderOp(
            self.cross_section,
            length,
            self.bc_left,
            self.bc_right,
            self.shift,
            self.form_degree,
        )


@dataclass(frozen=True)
class CylinderLogDet:
    """A cylinder log-determinant with its error estimate.

    .. versionadded:: 1.0.0
    """

    value: Any
    error_bound: float

    def __add__(self, other: "CylinderLogDet") -> "CylinderLogDet":
        return CylinderLogDet(self.value + other.value, self.error_bound + other.error_bound)

    def __sub__(self, other: "CylinderLogDet") -> "CylinderLogDet":
        return CylinderLogDet(self.value - other.value, self.error_bound + other.error_bound)


def _fiber_shape(
    bc_left: BoundaryCondition, bc_right: BoundaryCondition
) -> tuple[int, int]:
    """Return ``(sigma, nu)`` of the fiber factor ``exp(mu L) (1 - sigma exp(-2 mu L)) mu^nu``."""

    if bc_left.is_form_condition or bc_right.is_form_condition:
        raise ValueError(
            "Absolute and relative conditions act on form blocks, use form_cylinder_log_det."
        )

    pair = {bc_left, bc_right}
    if pair == {_D}:
        return 1, -1
    if pair == {_N}:
        return 1, 1

    return -1, 0


def _fiber_tail(mu: Any, length: Any, sigma: int) -> Any:
    """The factor ``log(1 - sigma exp(-2 mu L))``."""
    x = -2 * mu * length
    if sigma == 1:
        return mpmath.log(-mpmath.expm1(x))

    return mpmath.log1p(mpmath.exp(x))


def _fiber_log(mu: Any, length: Any, sigma: int, nu: int) -> Any:
    value = mu * length + _fiber_tail(mu, length, sigma)
    return value + nu * mpmath.log(mu) if nu else value


def _zero_fiber_log(length: Any, sigma: int, nu: int) -> Any:
    if nu == -1:
        return mpmath.log(2 * length)
    if nu == 0:
        return mpmath.log(2)

    raise KernelError("-d^2/du^2 with Neumann ends", 1)


def _is_real(z: Any, phi: float) -> bool:
    return phi == 0 and mpmath.im(z) == 0


@typechecked
@sanitized
def interval_log_det(
    length: float,
    eigenvalue: float,
    bc_left: Union[BoundaryCondition, str] = _D,
    bc_right: Union[BoundaryCondition, str] = _D,
    shift: Optional[Union[RayShift, float]] = None,
) -> Any:
    """Log-determinant of ``-d^2/du^2 + eigenvalue + shift`` on ``[0, length]``.

    With ``mu = sqrt(eigenvalue + shift)`` the determinant is ``2 sinh(mu L) / mu``
    for Dirichlet ends, ``2 cosh(mu L)`` for mixed ends and ``2 mu sinh(mu L)``
    for Neumann ends.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    length : float
        The interval length.
    eigenvalue : float
        The fiber eigenvalue, nonnegative.
    bc_left : BoundaryCondition or str
        The condition at ``u = 0``. Defaults to Dirichlet.
    bc_right : BoundaryCondition or str
        The condition at ``u = length``. Defaults to Dirichlet.
    shift : RayShift or float or None
        A shift along a ray. Defaults to none.

    Raises
    ------
    KernelError
        Raised for Neumann ends on a zero fiber.
    ValueError
        Raised for absolute or relative conditions.

    Returns
    -------
    mpmath.mpf or mpmath.mpc
        The log-determinant, with ``mu -> 0`` limits ``log 2L`` (Dirichlet) and ``log 2`` (mixed).
    """

    sigma, nu = _fiber_shape(bc_left, bc_right)
    z, phi = resolve_shift(shift)
    with mpmath.workdps(WORKING_DPS):
        nu_value = as_mp(eigenvalue) + z
        if nu_value == 0:
            return _zero_fiber_log(as_mp(length), sigma, nu)

        value = _fiber_log(mpmath.sqrt(nu_value), as_mp(length), sigma, nu)
        return mpmath.re(value) if _is_real(z, phi) else +value


@typechecked
def cylinder_log_det(op: CylinderOp) -> CylinderLogDet:
    """Factorized log-determinant of a cylinder operator.

    Each fiber contributes ``mu L + log(1 - sigma exp(-2 mu L)) + nu log mu``.
    The linear and logarithmic parts are summed by zeta regularization::

        sum^reg mu     = FP zeta(-1/2) + (2 - 2 log 2) Res zeta(-1/2)
        sum^reg log mu = -zeta'(0) / 2

    and zero fibers contribute ``log 2L`` (Dirichlet) or ``log 2`` (mixed).
    Form-graded operators are passed to :func:`form_cylinder_log_det`.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    op : CylinderOp
        The cylinder operator.

    Raises
    ------
    KernelError
        Raised when a zero fiber meets Neumann conditions at both ends.

    Returns
    -------
    CylinderLogDet
        The log-determinant and its error estimate.
    """

    if op.form_degree is not None:
        return form_cylinder_log_det(op)

    model = op.cross_section
    sigma, nu = _fiber_shape(op.bc_left, op.bc_right)
    if model.is_empty:
        return CylinderLogDet(mpmath.mpf(0), 0.0)

    z, phi = resolve_shift(op.shift)
    kernel = model.kernel_dim() if z == 0 else 0
    if kernel and nu == 1:
        raise KernelError(op, kernel)

    with mpmath.workdps(WORKING_DPS):
        length = as_mp(op.length)
        laurent = zeta_laurent(model, Fraction(-1, 2), shift=op.shift)
        invariants = zeta_invariants(model, exclude_kernel=True, shift=op.shift)

        value = length * (
            laurent.finite_part + (2 - 2 * mpmath.log(2)) * laurent.residue
        )
        value += nu * (-invariants.zeta0_prime / 2)

        reach = math.log(10) * FIBER_DIGITS / (2 * op.length)
        cutoff = mpmath.inf if model.is_finite else reach**2 + float(abs(z))
        fibers = [
            mult * _fiber_tail(mpmath.sqrt(lam + z), length, sigma)
            for lam, mult in model.eigenvalues(cutoff)
            if not (z == 0 and lam == 0)
        ]
        value += mpmath.fsum(fibers)
        if kernel:
            value += kernel * _zero_fiber_log(length, sigma, nu)

        if _is_real(z, phi):
            value = mpmath.re(value)

    error = laurent.error_bound * float(op.length) + invariants.error_bound
    logger.debug(
        "factorized cylinder log det over %s (L=%s, %s-%s): %d fibers",
        model,
        op.length,
        op.bc_left.code,
        op.bc_right.code,
        len(fibers),
    )
    return CylinderLogDet(+value, error)


@dataclass(frozen=True)
class _DoubleSpectrum(CrossSection):
    """Spectrum of ``-d^2/du^2 + Delta_Y`` on ``[0, length] x Y``, interval modes times fiber modes."""

    fiber: CrossSection = None
    length: float = 1.0
    sigma: int = 1
    nu: int = -1

    @property
    def dim_y(self) -> int:
        return self.fiber.dim_y + 1

    @property
    def _interval(self) -> Circle:
        holonomy = Fraction(1, 2) if self.sigma == -1 else Fraction(0)
        return Circle(circumference=2 * self.length, holonomy=holonomy)

    def _interval_modes(self, cutoff: Any) -> list[Any]:
        step = mpmath.pi / as_mp(self.length)
        if self.sigma == -1:
            start, offset = 0, mpmath.mpf(1) / 2
        else:
            start, offset = (1 if self.nu == -1 else 0), 0

        modes = []
        n = start
        while ((n + offset) * step) ** 2 <= cutoff:
            modes.append(((n + offset) * step) ** 2)
            n += 1

        return modes

    def eigenvalues(self, cutoff: Any) -> list[tuple[Any, int]]:
        return [
            (mode + lam, mult)
            for mode in self._interval_modes(cutoff)
            for lam, mult in self.fiber.eigenvalues(cutoff - mode)
        ]

    def heat_trace(self, r: Any) -> Any:
        theta = self._interval.heat_trace(r)
        if self.sigma == -1:
            interval = theta / 2
        else:
            interval = (theta + self.nu) / 2

        return interval * self.fiber.heat_trace(r)

    def heat_series(self, max_power: Union[Fraction, int]) -> list[tuple[Fraction, Any]]:
        interval = [(Fraction(-1, 2), as_mp(self.length) / (2 * mpmath.sqrt(mpmath.pi)))]
        if self.sigma == 1:
            interval.append((Fraction(0), mpmath.mpf(self.nu) / 2))

        combined: dict[Fraction, Any] = {}
        for p, c in interval:
            for q, d in self.fiber.heat_series(max_power - p):
                if p + q <= max_power:
                    combined[p + q] = combined.get(p + q, 0) + c * d

        return sorted(combined.items())

    def kernel_dim(self) -> int:
        return self.fiber.kernel_dim() if self.nu == 1 else 0

    def describe(self) -> dict[str, Any]:
        return {
            "kind": "double-spectrum",
            "fiber": self.fiber.describe(),
            "length": self.length,
            "sigma": self.sigma,
            "nu": self.nu,
        }


@typechecked
def cylinder_log_det_2d(op: CylinderOp) -> CylinderLogDet:
    """Log-determinant of a cylinder operator from its two-variable spectrum.

    The interval modes are combined with the fiber spectrum and the result is
    passed through :func:`zeta_invariants <spectral_gluing.zeta.zeta_invariants>`
    with the product heat expansion. No code is shared with
    :func:`cylinder_log_det` beyond the zeta engine.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    op : CylinderOp
        The cylinder operator.

    Raises
    ------
    KernelError
        Raised when a zero fiber meets Neumann conditions at both ends.

    Returns
    -------
    CylinderLogDet
        The log-determinant and its error estimate.
    """

    if op.form_degree is not None:
        return form_cylinder_log_det(op, method=LhsMethod.DOUBLE_SPECTRUM)

    sigma, nu = _fiber_shape(op.bc_left, op.bc_right)
    if op.cross_section.is_empty:
        return CylinderLogDet(mpmath.mpf(0), 0.0)

    z, _ = resolve_shift(op.shift)
    spectrum = _DoubleSpectrum(
        fiber=op.cross_section, length=float(op.length), sigma=sigma, nu=nu
    )
    if z == 0 and spectrum.kernel_dim():
        raise KernelError(op, spectrum.kernel_dim())

    result = zeta_invariants(spectrum, exclude_kernel=False, shift=op.shift)
    return CylinderLogDet(result.log_det, result.error_bound)


def form_cylinder_log_det(
    op: CylinderOp, method: LhsMethod = LhsMethod.FACTORIZED
) -> CylinderLogDet:
    """Log-determinant of the degree ``q`` Hodge Laplacian on a form-graded cylinder.

    The operator splits into a tangential block over ``Delta_Y^q`` and a
    ``du`` block over ``Delta_Y^(q-1)``. Absolute ends put Neumann on the
    tangential block and Dirichlet on the ``du`` block, relative ends the
    reverse; Dirichlet and Neumann ends act on both blocks alike.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    op : CylinderOp
        The operator; its cross-section is the base geometry (a point or circle) and ``form_degree`` is required.
    method : LhsMethod
        How each block is evaluated. Defaults to :attr:`LhsMethod.FACTORIZED <spectral_gluing.enums.LhsMethod.FACTORIZED>`.

    Raises
    ------
    ValueError
        Raised when the operator has no form degree.

    Returns
    -------
    CylinderLogDet
        The sum of the two block log-determinants.
    """

    if op.form_degree is None:
        raise ValueError("Form cylinder determinants require a form degree.")

    base = op.cross_section
    if isinstance(base, FormGraded):
        base = base.base

    evaluate = cylinder_log_det if method is LhsMethod.FACTORIZED else cylinder_log_det_2d
    left, right = op.bc_left.blocks(), op.bc_right.blocks()
    total = CylinderLogDet(mpmath.mpf(0), 0.0)
    for block, degree in enumerate((op.form_degree, op.form_degree - 1)):
        part = CylinderOp(
            cross_section=FormGraded(base=base, degree=degree),
            length=op.length,
            bc_left=left[block],
            bc_right=right[block],
            shift=op.shift,
        )
        total = total + evaluate(part)

    return total


def cylinder_log_det_by(op: CylinderOp, method: LhsMethod) -> CylinderLogDet:
    """Dispatch to the factorized or double-spectrum computation."""
    if op.form_degree is not None:
        return form_cylinder_log_det(op, method=method)
    if method is LhsMethod.FACTORIZED:
        return cylinder_log_det(op)

    return cylinder_log_det_2d(op)
