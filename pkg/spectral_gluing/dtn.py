"""
Dirichlet-to-Neumann maps
=========================
On product models every Dirichlet-to-Neumann operator in play acts on the
eigenspace of ``Delta_Y`` with eigenvalue ``lambda`` as a number (or a 2x2
matrix), a function of ``mu = sqrt(lambda + z)``. A :class:`SpectralMap`
carries that function together with its value on the kernel and its
large-``lambda`` asymptotics, which is all
:func:`log_det_multiplier <spectral_gluing.zeta.log_det_multiplier>` needs.
"""
from .decorators import sanitized, typechecked
from .enums import Arity, BoundaryCondition
from .exceptions import MissingAsymptoticsError, TraceClassError
from .spectra import WORKING_DPS, CrossSection, FormGraded, as_mp
from .zeta import MULTIPLIER_DIGITS, RayShift, log_det_multiplier, resolve_shift

from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

import logging
import math

import mpmath

logger = logging.getLogger(__name__)

#: Default fiber cutoff of :func:`min_block_eigen`.
DEFAULT_BLOCK_CUTOFF = 400


@dataclass(frozen=True, eq=False)
class SpectralMap:
    """A function of ``Delta_Y`` acting fiber by fiber.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    name : str
        A readable name used in logs and error messages.
    arity : Arity
        Whether a fiber value is a number or a 2x2 matrix.
    evaluate : Callable
        The fiber value as a function of ``mu = sqrt(lambda + z)``, ``mu != 0``.
    kernel_value : Any
        The declared value where ``lambda + z = 0``, :obj:`None` when the map has none.
    order : int or None
        The power ``p`` in the asymptotics ``det f ~ constant * (lambda + z)^(p/2)``.
    constant : Any
        The leading constant of those asymptotics.
    decay : float or None
        A rate ``d`` with remainder ``O(exp(-d mu))``; :obj:`math.inf` for exact power maps, :obj:`None` when unknown.
    shift : RayShift or None
        The shift ``z`` the map was built for.
    """

    name: str
    arity: Arity
    evaluate: Callable[[Any], Any]
    kernel_value: Any = None
    order: Optional[int] = None
    constant: Any = None
    decay: Optional[float] = None
    shift: Optional[RayShift] = None

    def __repr__(self) -> str:
        return f"SpectralMap({self.name})"

    def __call__(self, lam: Any) -> Any:
        z, _ = resolve_shift(self.shift)
        with mpmath.workdps(WORKING_DPS):
            value = as_mp(lam) + z
            if value == 0:
                return self.kernel_value

            return self.evaluate(mpmath.sqrt(value))

    def _det(self, value: Any) -> Any:
        if value is None or self.arity is Arity.SCALAR:
            return value

        return value[0, 0] * value[1, 1] - value[0, 1] * value[1, 0]

    def determinant(self, lam: Any) -> Any:
        """The fiber value, or the exact 2x2 determinant for block maps."""
        return self._det(self(lam))

    def kernel_determinant(self) -> Any:
        return self._det(self.kernel_value)


def _block(a: Any, b: Any, c: Any, d: Any) -> Any:
    return mpmath.matrix([[a, b], [c, d]])


def _coth_term(mu: Any, length: float) -> Any:
    """``mu coth(mu L)``, or ``mu`` for an infinite length."""
    if length == math.inf:
        return mu

    return mu * mpmath.coth(mu * length)


def _tanh_term(mu: Any, length: float) -> Any:
    if length == math.inf:
        return mu

    return mu * mpmath.tanh(mu * length)


def _sum_maps(name: str, first: SpectralMap, second: SpectralMap) -> SpectralMap:
    if first.order != second.order:
        raise MissingAsymptoticsError(
            name, message_format='"{}" adds maps of different orders.'
        )

    kernel = (
        None
        if first.kernel_value is None or second.kernel_value is None
        else first.kernel_value + second.kernel_value
    )
    constant = (
        None
        if first.constant is None or second.constant is None
        else first.constant + second.constant
    )
    return SpectralMap(
        name=name,
        arity=first.arity,
        evaluate=lambda mu: first.evaluate(mu) + second.evaluate(mu),
        kernel_value=kernel,
        order=first.order,
        constant=constant,
        decay=_min_decay(first.decay, second.decay),
        shift=first.shift or second.shift,
    )


def _min_decay(*decays: Optional[float]) -> Optional[float]:
    if any(d is None for d in decays):
        return None

    return min(decays)


def root_map(c: float = 1.0, shift: Optional[RayShift] = None) -> SpectralMap:
    """The map ``c * sqrt(Delta_Y + z)``, without a kernel value.

    .. versionadded:: 1.0.0
    """

    return SpectralMap(
        name=f"{c} sqrt(Delta)",
        arity=Arity.SCALAR,
        evaluate=lambda mu: c * mu,
        order=1,
        constant=c,
        decay=math.inf,
        shift=shift,
    )


def constant_map(c: float, shift: Optional[RayShift] = None) -> SpectralMap:
    """The map equal to ``c`` on every fiber.

    .. versionadded:: 1.0.0
    """

    return SpectralMap(
        name=f"constant {c}",
        arity=Arity.SCALAR,
        evaluate=lambda mu: as_mp(c),
        kernel_value=as_mp(c),
        order=0,
        constant=c,
        decay=math.inf,
        shift=shift,
    )


def collar_correction(r: float, shift: Optional[RayShift] = None) -> SpectralMap:
    """The collar remainder ``2 mu (coth(mu r) - 1)``, a trace class perturbation of ``2 sqrt(Delta_Y)``.

    .. versionadded:: 1.0.0
    """

    return SpectralMap(
        name=f"collar correction r={r}",
        arity=Arity.SCALAR,
        evaluate=lambda mu: 2 * mu * (mpmath.coth(mu * r) - 1),
        decay=2 * r,
        shift=shift,
    )


class DtnFamily:
    """A Dirichlet-to-Neumann operator of a product model, expanded into spectral maps.

    Note
    ----
    This class is abstract and should not be instantiated directly, use one of
    :class:`QCylinder`, :class:`RJoin`, :class:`RNr`, :class:`RM1r`,
    :class:`RM2r`, :class:`Rmrr`, :class:`RqAbs` or :class:`RqRel` instead.
    """

    def __new__(cls, *args, **kwargs):
        if cls is DtnFamily:
            raise TypeError("DtnFamily is an abstract class and cannot be instantiated.")

        return super().__new__(cls)

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        raise NotImplementedError

    def blocks(
        self, model: CrossSection, shift: Optional[RayShift] = None
    ) -> list[tuple[CrossSection, SpectralMap]]:
        """The (cross-section, spectral map) pairs whose determinants multiply to this operator's."""
        return [(model, self.spectral_map(shift))]


Operand = Union[DtnFamily, SpectralMap]


def _as_map(value: Operand, shift: Optional[RayShift]) -> SpectralMap:
    if isinstance(value, SpectralMap):
        return value

    return value.spectral_map(shift)


@dataclass(frozen=True)
class QCylinder(DtnFamily):
    """One-sided map ``Q`` of a cylinder ``[0, length] x Y`` with a condition at the far end.

    With a Dirichlet far end the fiber value is ``mu coth(mu L)`` with kernel
    value ``1 / L``; with a Neumann far end it is ``mu tanh(mu L)`` with kernel
    value ``0``.

    .. versionadded:: 1.0.0
    """

    length: float = 1.0
    far_bc: BoundaryCondition = BoundaryCondition.DIRICHLET

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise ValueError(f"Invalid length: {self.length}. Must be positive.")
        if isinstance(self.far_bc, str):
            object.__setattr__(
                self, "far_bc", BoundaryCondition.from_string(self.far_bc)
            )
        if self.far_bc not in (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN):
            raise ValueError(f"Invalid far end condition: {self.far_bc}.")

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        length = self.length
        if self.far_bc is BoundaryCondition.DIRICHLET:
            evaluate = lambda mu: _coth_term(mu, length)
            kernel = 1 / as_mp(length) if length != math.inf else mpmath.mpf(0)
        else:
            evaluate = lambda mu: _tanh_term(mu, length)
            kernel = mpmath.mpf(0)

        return SpectralMap(
            name=f"Q(L={length}, {self.far_bc.code})",
            arity=Arity.SCALAR,
            evaluate=evaluate,
            kernel_value=kernel,
            order=1,
            constant=1,
            decay=2 * length,
            shift=shift,
        )


@dataclass(frozen=True)
class RJoin(DtnFamily):
    """The two-sided map ``R = Q_1 + Q_2`` of two cylinders glued along ``Y``.

    .. versionadded:: 1.0.0
    """

    left: Operand = None
    right: Operand = None

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        return _sum_maps("R", _as_map(self.left, shift), _as_map(self.right, shift))


@dataclass(frozen=True)
class RNr(DtnFamily):
    """The map of the collar ``[-r, r] x Y`` cut at its middle, with Dirichlet ends.

    Fiber value ``2 mu coth(mu r)``, equal to ``2/r`` on the kernel.

    .. versionadded:: 1.0.0
    """

    r: float = 1.0

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        r = self.r
        return SpectralMap(
            name=f"R_N(r={r})",
            arity=Arity.SCALAR,
            evaluate=lambda mu: 2 * _coth_term(mu, r),
            kernel_value=2 / as_mp(r),
            order=1,
            constant=2,
            decay=2 * r,
            shift=shift,
        )


@dataclass(frozen=True)
class RM1r(DtnFamily):
    """The map of ``M_1`` extended by a collar of length ``r`` with a Dirichlet end: ``Q_1 + mu coth(mu r)``.

    ``r = inf`` gives the limit ``Q_1 + sqrt(Delta_Y)``.

    .. versionadded:: 1.0.0
    """

    r: float = 1.0
    q: Operand = None

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        q = _as_map(self.q, shift)
        collar = QCylinder(self.r).spectral_map(shift)
        return _sum_maps(f"{type(self).__name__}(r={self.r})", q, collar)


@dataclass(frozen=True)
class RM2r(RM1r):
    """The same construction as :class:`RM1r` on the second piece, built from ``Q_2``.

    .. versionadded:: 1.0.0
    """


@dataclass(frozen=True)
class Rmrr(DtnFamily):
    """The block map on the two ends of the collar ``[-r, r] x Y`` glued to ``M_1`` and ``M_2``.

    Each fiber carries the symmetric matrix::

        [[q1 + mu coth(2 r mu), -mu / sinh(2 r mu)],
         [-mu / sinh(2 r mu),   q2 + mu coth(2 r mu)]]

    which on the kernel is ``[[q1(0) + 1/(2r), -1/(2r)], [-1/(2r), q2(0) + 1/(2r)]]``.

    .. versionadded:: 1.0.0
    """

    r: float = 1.0
    q1: Operand = None
    q2: Operand = None

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        first, second = _as_map(self.q1, shift), _as_map(self.q2, shift)
        span = 2 * self.r

        def evaluate(mu):
            diagonal = _coth_term(mu, span)
            coupling = 0 if span == math.inf else -mu / mpmath.sinh(mu * span)
            return _block(
                first.evaluate(mu) + diagonal,
                coupling,
                coupling,
                second.evaluate(mu) + diagonal,
            )

        if span == math.inf:
            h = mpmath.mpf(0)
        else:
            h = 1 / as_mp(span)
        kernel = (
            None
            if first.kernel_value is None or second.kernel_value is None
            else _block(first.kernel_value + h, -h, -h, second.kernel_value + h)
        )
        constant = (
            None
            if first.constant is None or second.constant is None
            else (first.constant + 1) * (second.constant + 1)
        )
        return SpectralMap(
            name=f"R_mr(r={self.r})",
            arity=Arity.BLOCK2,
            evaluate=evaluate,
            kernel_value=kernel,
            order=2 if first.order == second.order == 1 else None,
            constant=constant,
            decay=_min_decay(first.decay, second.decay, 2 * span),
            shift=shift,
        )


@dataclass(frozen=True)
class RqAbs(DtnFamily):
    """The map on degree ``degree`` forms of ``M_1`` glued to a collar of length ``r`` with an absolute end.

    The tangential block sees a Neumann collar end (``q1 + mu tanh(mu r)``) and
    the ``du`` block a Dirichlet one (``q1 + mu coth(mu r)``).

    .. versionadded:: 1.0.0
    """

    r: float = 1.0
    q1: Operand = None
    degree: int = 0

    _condition = BoundaryCondition.ABSOLUTE

    def _block_maps(self, shift: Optional[RayShift]) -> tuple[SpectralMap, SpectralMap]:
        q = _as_map(self.q1, shift)
        tangential_bc, normal_bc = self._condition.blocks()
        tangential = QCylinder(self.r, tangential_bc).spectral_map(shift)
        normal = QCylinder(self.r, normal_bc).spectral_map(shift)
        return (
            _sum_maps(f"{type(self).__name__}^{self.degree}(r={self.r})", q, tangential),
            _sum_maps(f"{type(self).__name__}^{self.degree}_du(r={self.r})", q, normal),
        )

    def spectral_map(self, shift: Optional[RayShift] = None) -> SpectralMap:
        tangential, normal = self._block_maps(shift)
        kernel = (
            None
            if tangential.kernel_value is None or normal.kernel_value is None
            else _block(tangential.kernel_value, 0, 0, normal.kernel_value)
        )
        return SpectralMap(
            name=tangential.name,
            arity=Arity.BLOCK2,
            evaluate=lambda mu: _block(tangential.evaluate(mu), 0, 0, normal.evaluate(mu)),
            kernel_value=kernel,
            order=2,
            constant=tangential.constant * normal.constant,
            decay=_min_decay(tangential.decay, normal.decay),
            shift=shift,
        )

    def blocks(
        self, model: CrossSection, shift: Optional[RayShift] = None
    ) -> list[tuple[CrossSection, SpectralMap]]:
        base = model.base if isinstance(model, FormGraded) else model
        tangential, normal = self._block_maps(shift)
        return [
            (FormGraded(base=base, degree=self.degree), tangential),
            (FormGraded(base=base, degree=self.degree - 1), normal),
        ]


@dataclass(frozen=True)
class RqRel(RqAbs):
    """As :class:`RqAbs` with a relative collar end: Dirichlet on the tangential block, Neumann on the ``du`` block.

    .. versionadded:: 1.0.0
    """

    _condition = BoundaryCondition.RELATIVE


def dtn_family_from_config(data: dict[str, Any]) -> DtnFamily:
    """Build a family from a configuration descriptor.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    data : dict[str, Any]
        A mapping with a ``kind`` key and the family's fields:

        - ``cylinder``: ``length``, ``far_bc``;
        - ``join``: ``lengths``;
        - ``collar``: ``r``;
        - ``one-sided``: ``r``, ``length``;
        - ``two-sided``: ``r``, ``lengths``;
        - ``form-abs`` and ``form-rel``: ``r``, ``length``, ``degree``.

        A collar length ``"inf"`` selects the stretched limit.

    Raises
    ------
    ValueError
        Raised when the descriptor names an unknown kind or carries unknown fields.

    Returns
    -------
    DtnFamily
        The family.
    """

    data = dict(data)
    kind = str(data.pop("kind", "")).lower()
    allowed = {
        "cylinder": {"length", "far_bc"},
        "join": {"lengths"},
        "collar": {"r"},
        "one-sided": {"r", "length"},
        "two-sided": {"r", "lengths"},
        "form-abs": {"r", "length", "degree"},
        "form-rel": {"r", "length", "degree"},
    }
    if kind not in allowed:
        raise ValueError(f"Invalid family kind: {kind!r}. Valid kinds: {sorted(allowed)}")

    if unknown := set(data) - allowed[kind]:
        raise ValueError(f"Unknown family fields for {kind}: {sorted(unknown)}")

    r = float(data.get("r", 1.0))
    a, b = (float(x) for x in data.get("lengths", (1.0, 1.0)))
    piece = QCylinder(float(data.get("length", 1.0)))
    if kind == "cylinder":
        return QCylinder(
            float(data.get("length", 1.0)), BoundaryCondition.from_string(data.get("far_bc", "D"))
        )
    if kind == "join":
        return RJoin(QCylinder(a), QCylinder(b))
    if kind == "collar":
        return RNr(r)
    if kind == "one-sided":
        return RM1r(r, piece)
    if kind == "two-sided":
        return Rmrr(r, QCylinder(a), QCylinder(b))

    family = RqAbs if kind == "form-abs" else RqRel
    return family(r, piece, int(data.get("degree", 0)))


@typechecked
@sanitized
def dtn_eigenvalue(
    family: DtnFamily, lam: float, shift: Optional[Union[RayShift, float]] = None
) -> Any:
    """Evaluate a Dirichlet-to-Neumann family on the fiber with eigenvalue ``lam``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    family : DtnFamily
        The family.
    lam : float
        The fiber eigenvalue, nonnegative.
    shift : RayShift or float or None
        A shift of ``Delta_Y``. Defaults to none.

    Raises
    ------
    ValueError
        Raised when ``lam`` is negative.

    Returns
    -------
    mpmath.mpf or mpmath.mpc or mpmath.matrix
        The fiber value; block families return a 2x2 matrix.
    """

    if lam < 0:
        raise ValueError(f"Invalid eigenvalue: {lam}. Must be nonnegative.")

    return family.spectral_map(shift)(lam)


@typechecked
@sanitized
def dtn_log_det(
    family: Union[DtnFamily, SpectralMap],
    model: CrossSection,
    shift: Optional[Union[RayShift, float]] = None,
) -> Any:
    """Regularized log-determinant of a Dirichlet-to-Neumann operator over a cross-section.

    Families that split into blocks over different form degrees contribute the
    sum of the block determinants; 2x2 families enter through the exact
    per-fiber determinant.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    family : DtnFamily or SpectralMap
        The operator.
    model : CrossSection
        The cross-section model.
    shift : RayShift or float or None
        A shift of ``Delta_Y``, ignored for a ready-made :class:`SpectralMap`. Defaults to none.

    Raises
    ------
    MissingAsymptoticsError
        Raised when the map does not declare its asymptotics.
    KernelError
        Raised when the kernel value is missing or singular on a model with a kernel.

    Returns
    -------
    mpmath.mpf or mpmath.mpc
        The log-determinant.
    """

    if isinstance(family, SpectralMap):
        return log_det_multiplier(model, family)

    with mpmath.workdps(WORKING_DPS):
        return mpmath.fsum(
            log_det_multiplier(block_model, block_map)
            for block_model, block_map in family.blocks(model, shift)
        )


@dataclass(frozen=True)
class BlockMinimum:
    """Smallest fiber eigenvalue of a block map.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    value : float
        The minimum over fibers at or below the cutoff.
    at : float
        The fiber eigenvalue attaining it.
    tail_bound : float
        A lower bound for every fiber above the cutoff.
    certified : bool
        Whether ``tail_bound >= value``, so the minimum is global.
    """

    value: float
    at: float
    tail_bound: float
    certified: bool


def _smaller_eigenvalue(matrix: Any) -> Any:
    a, b, h = matrix[0, 0], matrix[1, 1], matrix[0, 1]
    return (a + b) / 2 - mpmath.sqrt(((a - b) / 2) ** 2 + h * h)


@typechecked
def min_block_eigen(
    family: Rmrr, model: CrossSection, cutoff: float = DEFAULT_BLOCK_CUTOFF
) -> BlockMinimum:
    """Minimum over fibers of the smaller eigenvalue of the collar block map.

    Above the cutoff every eigenvalue is at least
    ``min(q1, q2) + mu tanh(r mu)``, so with nonnegative one-sided maps the
    tail is bounded below by ``mu_c tanh(r mu_c)``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    family : Rmrr
        The block family, with nonnegative one-sided maps.
    model : CrossSection
        The cross-section model.
    cutoff : float
        The largest fiber eigenvalue evaluated. Defaults to :data:`DEFAULT_BLOCK_CUTOFF`.

    Returns
    -------
    BlockMinimum
        The minimum, where it is attained and the tail certificate.
    """

    spectral_map = family.spectral_map()
    best, at = mpmath.inf, None
    with mpmath.workdps(WORKING_DPS):
        reach = mpmath.inf if model.is_finite else cutoff
        for lam, _ in model.eigenvalues(reach):
            matrix = spectral_map(lam)
            if matrix is None:
                continue
            value = _smaller_eigenvalue(matrix)
            if value < best:
                best, at = value, lam

        if model.is_finite:
            tail = mpmath.inf
        else:
            mu_c = mpmath.sqrt(cutoff)
            tail = mu_c if family.r == math.inf else mu_c * mpmath.tanh(family.r * mu_c)

    logger.debug("block minimum of %s on %s: %s at %s", spectral_map, model, best, at)
    return BlockMinimum(
        value=float(best),
        at=float(at) if at is not None else math.nan,
        tail_bound=float(tail),
        certified=bool(tail >= best),
    )


@dataclass(frozen=True)
class PerturbationBound:
    """Comparison of ``|log Det(A + K) - log Det A|`` with trace bounds.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    bound : float
        ``Tr|K| / (lambda_0 - ||K_-||)``, infinite when the denominator is not positive.
    actual : float
        The computed ``|sum mult log(1 + K/A)|``.
    stated_bound : float
        ``Tr|K| / (2 lambda_0)``.
    stated_holds : bool
        Whether ``actual <= stated_bound``.
    trace : float
        ``Tr|K|`` over the evaluated fibers.
    lambda0 : float
        The smallest value of ``A`` over the evaluated fibers.
    """

    bound: float
    actual: float
    stated_bound: float
    stated_holds: bool
    trace: float
    lambda0: float


@typechecked
def perturbation_bound(
    A: SpectralMap,
    K: SpectralMap,
    model: CrossSection,
    cutoff: Optional[float] = None,
) -> PerturbationBound:
    """Compare the log-determinant change caused by a trace class perturbation with its bounds.

    Fibers where ``A`` has no declared kernel value skip ``lambda + z = 0``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    A : SpectralMap
        The unperturbed positive scalar map.
    K : SpectralMap
        The perturbation.
    model : CrossSection
        The cross-section model.
    cutoff : float or None
        The largest fiber eigenvalue evaluated. Defaults to the cutoff implied by ``K``'s decay rate.

    Raises
    ------
    TraceClassError
        Raised when the spectrum is infinite and ``K`` declares no decay rate.

    Returns
    -------
    PerturbationBound
        The bounds and the actual change.
    """

    z, _ = resolve_shift(K.shift)
    if cutoff is None and not model.is_finite:
        if K.decay is None:
            raise TraceClassError(K)
        if K.decay == math.inf:
            cutoff = 0.0
        else:
            reach = math.log(10) * MULTIPLIER_DIGITS / float(K.decay)
            cutoff = reach**2 + float(abs(z))

    with mpmath.workdps(WORKING_DPS):
        reach = mpmath.inf if model.is_finite else cutoff
        logs, trace, lambda0, negative = [], mpmath.mpf(0), mpmath.inf, mpmath.mpf(0)
        for lam, mult in model.eigenvalues(reach):
            if as_mp(lam) + z == 0 and (A.kernel_value is None or K.kernel_value is None):
                continue
            a, k = A(lam), K(lam)
            logs.append(mult * mpmath.log(1 + k / a))
            trace += mult * abs(k)
            lambda0 = min(lambda0, mpmath.re(a))
            negative = max(negative, -mpmath.re(k))

        actual = abs(mpmath.fsum(logs))
        denominator = lambda0 - negative
        bound = trace / denominator if denominator > 0 else mpmath.inf
        stated = trace / (2 * lambda0) if lambda0 != mpmath.inf else mpmath.mpf(0)

    logger.debug(
        "perturbation of %s by %s: actual %s, bound %s, stated %s", A, K, actual, bound, stated
    )
    return PerturbationBound(
        bound=float(bound),
        actual=float(actual),
        stated_bound=float(stated),
        stated_holds=bool(actual <= stated),
        trace=float(trace),
        lambda0=float(lambda0),
    )
