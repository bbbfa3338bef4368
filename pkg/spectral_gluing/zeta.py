"""
Zeta functions of model spectra
===============================
Analytic continuation of ``zeta(s) = sum mult * nu^(-s)`` through the Mellin
transform of the heat trace, split at ``r = 1``. Near ``r = 0`` the heat
series is integrated term by term in closed form; on a short interval above
that the remainder is integrated numerically; for ``r > 1`` the eigenvalues
are summed against upper incomplete gamma functions. Complex shifts along a
ray are handled by rotating the operator into the right half-plane first and
undoing the rotation on the result.
"""
from .decorators import sanitized, typechecked
from .exceptions import (
    AgmonRayError,
    ConditioningError,
    KernelError,
    MissingAsymptoticsError,
)
from .spectra import WORKING_DPS, CrossSection, as_fraction, as_mp

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Any, Optional, Sequence, Union

import logging
import math

import mpmath
import numpy as np

if TYPE_CHECKING:
    from .dtn import SpectralMap

logger = logging.getLogger(__name__)

#: Upper end of the interval on which the heat series replaces the heat trace.
SMALL_TIME_SPLIT = 1e-3

#: Heat series terms are carried through this power of ``r``.
SERIES_DEPTH = 30

#: Eigenvalues whose rotated real part exceeds this are covered by the tail estimate.
LARGE_TIME_CUTOFF = 90

#: Largest condition number accepted by :func:`asymptotic_zero_coeff`.
CONDITION_LIMIT = 1e12

#: Multiplier remainders are summed until they fall below ``10^-(WORKING_DPS + 5)``.
MULTIPLIER_DIGITS = WORKING_DPS + 5

#: Eigenvalue cutoff used for spectral maps without a declared decay rate.
DEFAULT_MULTIPLIER_CUTOFF = 10_000


@dataclass(frozen=True)
class RayShift:
    """The complex shift ``exp(i theta) * t`` added to a Laplacian.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    theta : float
        The ray angle in ``(-pi, pi]``.
    t : float
        The modulus, nonnegative.
    """

    theta: float = 0.0
    t: float = 0.0

    def __post_init__(self) -> None:
        if not -math.pi < self.theta <= math.pi:
            raise ValueError(f"Invalid ray angle: {self.theta}. Must lie in (-pi, pi].")
        if self.t < 0:
            raise ValueError(f"Invalid shift modulus: {self.t}. Must be nonnegative.")

    @property
    def is_zero(self) -> bool:
        return self.t == 0

    @property
    def phi(self) -> float:
        """Rotation angle bringing ``exp(-i phi) * (Delta + shift)`` into the right half-plane."""
        if abs(self.theta) < math.pi / 2:
            return 0.0

        return self.theta / 2

    @property
    def value(self) -> Any:
        if self.t == 0:
            return mpmath.mpf(0)
        if self.theta == 0:
            return mpmath.mpf(self.t)

        return mpmath.expj(self.theta) * self.t

    def conjugate(self) -> "RayShift":
        return RayShift(theta=-self.theta if self.theta != math.pi else math.pi, t=self.t)


@dataclass(frozen=True)
class ZetaResult:
    """Zeta invariants of one spectrum.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    zeta0 : mpmath.mpf or mpmath.mpc
        ``zeta(0)``.
    zeta0_prime : mpmath.mpf or mpmath.mpc
        ``zeta'(0)``, on the principal branch after rotation.
    log_det : mpmath.mpf or mpmath.mpc
        ``-zeta'(0)``.
    error_bound : float
        Combined quadrature, series truncation and spectral tail estimate.
    excluded_kernel : bool
        Whether zero eigenvalues were dropped.
    """

    zeta0: Any
    zeta0_prime: Any
    log_det: Any
    error_bound: float
    excluded_kernel: bool


@dataclass(frozen=True)
class ZetaLaurent:
    """Residue and finite part of a zeta function at one point.

    .. versionadded:: 1.0.0
    """

    point: Fraction
    residue: Any
    finite_part: Any
    error_bound: float


@dataclass(frozen=True)
class BasisFunction:
    """One function ``t^power`` or ``t^power * log t`` of an asymptotic fit basis.

    .. versionadded:: 1.0.0
    """

    power: Fraction
    with_log: bool = False

    def __call__(self, t: Any) -> Any:
        value = mpmath.power(t, as_mp(self.power))
        return value * mpmath.log(t) if self.with_log else value

    @property
    def label(self) -> str:
        return f"t^({self.power})" + (" log t" if self.with_log else "")


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares fit of large-``t`` samples over a power and logarithm basis.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    basis : tuple[BasisFunction, ...]
        The fitted basis.
    coefficients : tuple
        One coefficient per basis function.
    pi0 : mpmath.mpf or mpmath.mpc
        The coefficient of the constant function.
    residual_norm : float
        Euclidean norm of the fit residual.
    condition_number : float
        Condition number of the column-normalized design matrix.
    stability : float or None
        Change of ``pi0`` when the lower end of the window is doubled, :obj:`None` if too few samples remain.
    """

    basis: tuple
    coefficients: tuple
    pi0: Any
    residual_norm: float
    condition_number: float
    stability: Optional[float]


def resolve_shift(shift: Optional[RayShift]) -> tuple[Any, float]:
    """Return the complex shift value and the rotation angle, rejecting the Agmon ray."""
    if shift is None or shift.is_zero:
        return mpmath.mpf(0), 0.0
    if abs(shift.theta) == math.pi:
        raise AgmonRayError(shift.theta)

    return shift.value, shift.phi


def _rotation(phi: float) -> Any:
    return mpmath.mpf(1) if phi == 0 else mpmath.expj(-phi)


def _rotated_series(model: CrossSection, z: Any, phi: float) -> dict[Fraction, Any]:
    rot = _rotation(phi)
    w = rot * z
    base = model.heat_series(SERIES_DEPTH)
    series: dict[Fraction, Any] = {}
    for power, coeff in base:
        if phi != 0:
            coeff = coeff * mpmath.expj(-phi * as_mp(power))
        j = 0
        term = coeff
        while power + j <= SERIES_DEPTH:
            series[power + j] = series.get(power + j, 0) + term
            if w == 0:
                break
            j += 1
            term = term * (-w) / j

    return series


def _rotated_eigenvalues(
    model: CrossSection, z: Any, phi: float, re_limit: float
) -> list[tuple[Any, int]]:
    rot = _rotation(phi)
    reach = (re_limit - mpmath.re(rot * z)) / math.cos(phi)
    if reach < 0:
        return []

    values = []
    for lam, mult in model.eigenvalues(reach):
        if z == 0 and lam == 0:
            continue
        nu = rot * (lam + z)
        if mpmath.re(nu) <= re_limit:
            values.append((nu, mult))

    return values


@lru_cache(maxsize=4096)
def _mellin_laurent(
    model: CrossSection, z: Any, phi: float, s0: Fraction
) -> tuple[Any, Any, float]:
    """Laurent data ``A / (s - s0) + B`` of ``Gamma(s) * zeta_rot(s)`` for the rotated, shifted operator."""

    with mpmath.workdps(WORKING_DPS):
        rot = _rotation(phi)
        w = rot * z
        kernel = model.kernel_dim() if z == 0 else 0
        s = as_mp(s0)
        pole_power = max(Fraction(1, 2), -s0)

        series = _rotated_series(model, z, phi)
        if kernel:
            series[Fraction(0)] = series.get(Fraction(0), 0) - kernel

        split = min(SMALL_TIME_SPLIT, 0.25 / (1 + float(abs(w))))
        split = mpmath.mpf(split)

        residue = series.get(-s0, mpmath.mpf(0))
        pole_terms = [
            coeff / (s + as_mp(power))
            for power, coeff in sorted(series.items())
            if power <= pole_power and power != -s0
        ]
        tail_terms = [
            coeff * mpmath.power(split, as_mp(power) + s) / (as_mp(power) + s)
            for power, coeff in sorted(series.items())
            if power > pole_power
        ]
        truncation = float(abs(tail_terms[-1])) if tail_terms else 0.0

        # The kernel is part of the heat trace, so it stays in the subtracted series.
        subtracted = [
            (as_mp(power), coeff + (kernel if power == 0 else 0))
            for power, coeff in sorted(series.items())
            if power <= pole_power
        ]

        def integrand(r):
            heat = model.heat_trace(r * rot) * mpmath.exp(-w * r)
            small = mpmath.fsum(coeff * mpmath.power(r, power) for power, coeff in subtracted)
            return mpmath.power(r, s - 1) * (heat - small)

        nodes = [split]
        while nodes[-1] * 10 < 1:
            nodes.append(nodes[-1] * 10)
        nodes.append(mpmath.mpf(1))
        middle, quad_error = mpmath.quad(integrand, nodes, error=True)

        large_terms = [
            mult * mpmath.power(nu, -s) * mpmath.gammainc(s, nu)
            for nu, mult in _rotated_eigenvalues(model, z, phi, LARGE_TIME_CUTOFF)
        ]
        tail = (
            mpmath.exp(-mpmath.mpf(LARGE_TIME_CUTOFF) / 2)
            * abs(model.heat_trace(mpmath.mpf(math.cos(phi)) / 2))
            * mpmath.exp(-mpmath.re(w) / 2)
        )

        finite = mpmath.fsum(pole_terms) + mpmath.fsum(tail_terms) + middle
        finite += mpmath.fsum(large_terms)
        error = float(quad_error) + truncation + float(tail)

    logger.debug(
        "Mellin data of %s at s=%s (z=%s, phi=%s): %d large-time terms, error %.2e",
        model,
        s0,
        z,
        phi,
        len(large_terms),
        error,
    )
    return residue, finite, error


def _finite_values(model: CrossSection, z: Any) -> list[tuple[Any, int]]:
    return [
        (lam + z, mult)
        for lam, mult in model.eigenvalues(mpmath.inf)
        if not (z == 0 and lam == 0)
    ]


def _real_if_possible(value: Any, real: bool) -> Any:
    return mpmath.re(value) if real else value


@typechecked
@sanitized
def zeta_invariants(
    model: CrossSection,
    exclude_kernel: bool = True,
    shift: Optional[Union[RayShift, float]] = None,
) -> ZetaResult:
    """Compute ``zeta(0)``, ``zeta'(0)`` and the log-determinant of a (shifted) model spectrum.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    exclude_kernel : bool
        Whether zero eigenvalues are dropped. Defaults to :obj:`True`.
    shift : RayShift or float or None
        A shift added to every eigenvalue. Defaults to no shift.

    Raises
    ------
    KernelError
        Raised when the unshifted model has a kernel and ``exclude_kernel`` is :obj:`False`.
    AgmonRayError
        Raised when the shift lies on the ray of angle ``pi``.

    Returns
    -------
    ZetaResult
        The invariants with an error estimate.
    """

    z, phi = resolve_shift(shift)
    kernel = model.kernel_dim() if z == 0 else 0
    if kernel and not exclude_kernel:
        raise KernelError(model, kernel)

    real = phi == 0 and mpmath.im(z) == 0
    with mpmath.workdps(WORKING_DPS):
        if model.is_empty:
            zero = mpmath.mpf(0)
            return ZetaResult(zero, zero, zero, 0.0, False)

        if model.is_finite:
            values = _finite_values(model, z)
            zeta0 = mpmath.mpf(sum(mult for _, mult in values))
            derivative = -mpmath.fsum(mult * mpmath.log(nu) for nu, mult in values)
            derivative = _real_if_possible(derivative, real and all(
                mpmath.re(nu) > 0 for nu, _ in values
            ))
            return ZetaResult(zeta0, derivative, -derivative, 0.0, kernel > 0)

        residue, finite, error = _mellin_laurent(model, z, phi, Fraction(0))
        zeta0 = residue
        derivative = mpmath.euler * residue + finite
        if phi != 0:
            derivative -= 1j * phi * zeta0

        zeta0 = _real_if_possible(zeta0, real or mpmath.im(zeta0) == 0)
        derivative = _real_if_possible(derivative, real)

    return ZetaResult(+zeta0, +derivative, -derivative, error, kernel > 0)


@typechecked
@sanitized
def zeta_laurent(
    model: CrossSection,
    point: Union[Fraction, int, str] = Fraction(-1, 2),
    shift: Optional[Union[RayShift, float]] = None,
) -> ZetaLaurent:
    """Residue and finite part of the zeta function (kernel excluded) at a point.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    point : Fraction or int or str
        Where to expand; nonpositive integers are rejected (use :func:`zeta_invariants` at ``0``). Defaults to ``-1/2``.
    shift : RayShift or float or None
        A shift added to every eigenvalue. Defaults to no shift.

    Raises
    ------
    ValueError
        Raised when ``point`` is a nonpositive integer.

    Returns
    -------
    ZetaLaurent
        The Laurent data.
    """

    s0 = as_fraction(point)
    if s0.denominator == 1 and s0 <= 0:
        raise ValueError(f"Invalid expansion point: {s0}. Gamma has a pole there.")

    z, phi = resolve_shift(shift)
    real = phi == 0 and mpmath.im(z) == 0
    with mpmath.workdps(WORKING_DPS):
        if model.is_empty:
            return ZetaLaurent(s0, mpmath.mpf(0), mpmath.mpf(0), 0.0)

        s = as_mp(s0)
        if model.is_finite:
            value = mpmath.fsum(
                mult * mpmath.power(nu, -s) for nu, mult in _finite_values(model, z)
            )
            return ZetaLaurent(s0, mpmath.mpf(0), _real_if_possible(value, real), 0.0)

        A, B, error = _mellin_laurent(model, z, phi, s0)
        gamma = mpmath.gamma(s)
        residue = A / gamma
        finite = (B - mpmath.digamma(s) * A) / gamma
        if phi != 0:
            g = mpmath.expj(-phi * s)
            finite = g * finite - 1j * phi * g * residue
            residue = g * residue

    return ZetaLaurent(
        s0,
        _real_if_possible(residue, real),
        _real_if_possible(finite, real),
        error,
    )


@typechecked
@sanitized
def log_det_shifted(model: CrossSection, shift: Union[RayShift, float]) -> Any:
    """Log-determinant of ``Delta_Y + exp(i theta) t`` on the principal branch after rotation.

    Along rays with ``|theta| >= pi/2`` the operator is first rotated by
    ``exp(-i phi)``; the result is ``i phi zeta_rot(0) + log Det_rot``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    shift : RayShift or float
        The shift; a real number means ``theta = 0``.

    Raises
    ------
    AgmonRayError
        Raised when ``|theta| = pi``.
    KernelError
        Raised when the shift vanishes and the model has a kernel.

    Returns
    -------
    mpmath.mpf or mpmath.mpc
        The log-determinant, real when ``theta = 0``.
    """

    if shift is not None and abs(shift.theta) == math.pi and shift.t > 0:
        raise AgmonRayError(shift.theta)

    return zeta_invariants(model, exclude_kernel=False, shift=shift).log_det


def exponent_basis(
    model: CrossSection, depth: int = 4, with_logs: bool = True
) -> tuple[BasisFunction, ...]:
    """Large-``t`` basis matching the heat exponents of a model.

    Every heat power ``p <= 0`` contributes ``t^(-p)``, with a ``log t``
    companion when ``p`` is a nonpositive integer; the constant always
    appears; then ``depth`` decaying powers on the model's exponent lattice.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    depth : int
        Number of decaying powers. Defaults to ``4``.
    with_logs : bool
        Whether logarithmic companions are included. Defaults to :obj:`True`.

    Returns
    -------
    tuple[BasisFunction, ...]
        The basis, growing powers first.
    """

    powers = {p for p, c in model.heat_series(0) if p <= 0 and c != 0}
    powers.add(Fraction(0))
    step = Fraction(1, 2) if any(p.denominator == 2 for p in powers) else Fraction(1)

    basis = []
    for p in sorted(powers):
        if with_logs and p.denominator == 1:
            basis.append(BasisFunction(-p, True))
        basis.append(BasisFunction(-p, False))
    basis.extend(BasisFunction(-step * j, False) for j in range(1, depth + 1))

    return tuple(basis)


def _solve_fit(basis: Sequence[BasisFunction], ts: list, values: list) -> tuple:
    matrix = mpmath.matrix([[f(t) for f in basis] for t in ts])
    norms = [
        max(abs(matrix[i, j]) for i in range(matrix.rows)) for j in range(matrix.cols)
    ]
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            matrix[i, j] /= norms[j]

    condition = float(
        np.linalg.cond(
            np.array(
                [[float(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]
            )
        )
    )

    parts = []
    residual = mpmath.mpf(0)
    for extract in (mpmath.re, mpmath.im):
        rhs = mpmath.matrix([extract(v) for v in values])
        if all(extract(v) == 0 for v in values):
            parts.append([mpmath.mpf(0)] * matrix.cols)
            continue
        solution, res = mpmath.qr_solve(matrix, rhs)
        parts.append([solution[j] for j in range(matrix.cols)])
        residual += res**2

    coefficients = tuple(
        (re + 1j * im if im != 0 else re) / norm
        for re, im, norm in zip(parts[0], parts[1], norms)
    )
    return coefficients, float(mpmath.sqrt(residual)), condition


@typechecked
def asymptotic_zero_coeff(
    samples: Sequence[tuple],
    grid: Sequence[BasisFunction],
    condition_limit: float = CONDITION_LIMIT,
) -> AsymptoticFit:
    """Fit large-``t`` samples over a basis and return the constant coefficient.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    samples : Sequence[tuple]
        Pairs ``(t, value)``; values may be complex.
    grid : Sequence[BasisFunction]
        The basis, which must contain the constant function.
    condition_limit : float
        Largest accepted condition number. Defaults to :data:`CONDITION_LIMIT`.

    Raises
    ------
    ValueError
        Raised when there are fewer than two samples per basis function, the window spans less than two decades, or the basis lacks a constant.
    ConditioningError
        Raised when the normalized design matrix is ill-conditioned.

    Returns
    -------
    AsymptoticFit
        The fit, with ``pi0`` the constant coefficient.
    """

    basis = tuple(grid)
    try:
        constant = basis.index(BasisFunction(Fraction(0), False))
    except ValueError as e:
        raise ValueError("Fit basis must contain the constant function t^0.") from e

    if len(samples) < 2 * len(basis):
        raise ValueError(
            f"Too few samples: {len(samples)} for {len(basis)} basis functions (need twice as many)."
        )

    with mpmath.workdps(WORKING_DPS):
        ordered = sorted(((as_mp(t), mpmath.mpmathify(v)) for t, v in samples), key=lambda s: s[0])
        ts = [t for t, _ in ordered]
        values = [v for _, v in ordered]
        if ts[0] <= 0 or ts[-1] / ts[0] < 100:
            raise ValueError("Sampling window must be positive and span at least two decades.")

        coefficients, residual, condition = _solve_fit(basis, ts, values)
        if condition > condition_limit:
            raise ConditioningError(condition, condition_limit)

        stability = None
        upper = [(t, v) for t, v in ordered if t >= 2 * ts[0]]
        if len(upper) > len(basis):
            refit, _, _ = _solve_fit(basis, [t for t, _ in upper], [v for _, v in upper])
            stability = float(abs(refit[constant] - coefficients[constant]))

    logger.debug(
        "asymptotic fit over %d samples: cond %.2e, residual %.2e, stability %s",
        len(samples),
        condition,
        residual,
        stability,
    )
    return AsymptoticFit(
        basis=basis,
        coefficients=coefficients,
        pi0=coefficients[constant],
        residual_norm=residual,
        condition_number=condition,
        stability=stability,
    )


def _multiplier_cutoff(spectral_map: "SpectralMap", z: Any) -> Any:
    if spectral_map.decay is None:
        return DEFAULT_MULTIPLIER_CUTOFF
    if spectral_map.decay == mpmath.inf:
        return 0

    reach = math.log(10) * MULTIPLIER_DIGITS / float(spectral_map.decay)
    return reach**2 + float(abs(z))


def log_det_multiplier(model: CrossSection, spectral_map: "SpectralMap") -> Any:
    """Regularized log-determinant of a spectral multiplier ``f(Delta_Y)``.

    For ``f(lambda) = c (lambda + z)^(p/2) (1 + eps(lambda))``::

        log Det f = zeta(0) log c - (p/2) zeta'(0) + sum mult log(1 + eps) + k log f_ker

    with the zeta data of ``Delta_Y + z`` over nonzero eigenvalues and ``f_ker``
    the map's declared value on the ``k``-dimensional kernel. Block maps enter
    through their per-fiber determinant.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    spectral_map : SpectralMap
        The multiplier, with declared order, constant and kernel value.

    Raises
    ------
    MissingAsymptoticsError
        Raised when the map does not declare its order and constant.
    KernelError
        Raised when the kernel value is missing or zero on a model with a kernel.

    Returns
    -------
    mpmath.mpf or mpmath.mpc
        The regularized log-determinant.
    """

    if spectral_map.order is None or spectral_map.constant is None:
        raise MissingAsymptoticsError(spectral_map)

    z, _ = resolve_shift(spectral_map.shift)
    kernel = model.kernel_dim() if z == 0 else 0

    with mpmath.workdps(WORKING_DPS):
        invariants = zeta_invariants(model, exclude_kernel=True, shift=spectral_map.shift)
        c = as_mp(spectral_map.constant)
        half_order = mpmath.mpf(spectral_map.order) / 2
        value = invariants.zeta0 * mpmath.log(c) - half_order * invariants.zeta0_prime

        cutoff = mpmath.inf if model.is_finite else _multiplier_cutoff(spectral_map, z)
        corrections = []
        for lam, mult in model.eigenvalues(cutoff):
            if z == 0 and lam == 0:
                continue
            f = spectral_map.determinant(lam)
            corrections.append(
                mult
                * (mpmath.log(f) - mpmath.log(c) - half_order * mpmath.log(lam + z))
            )
        value += mpmath.fsum(corrections)

        if kernel:
            kernel_value = spectral_map.kernel_determinant()
            if kernel_value is None or kernel_value == 0:
                raise KernelError(spectral_map, kernel)
            value += kernel * mpmath.log(kernel_value)

    logger.debug(
        "multiplier %s on %s: %d corrections up to %s", spectral_map, model, len(corrections), cutoff
    )
    return +value
