"""
Model cross-sections
====================
Each model knows its spectrum exactly, its heat trace for complex times with
positive real part, and the small-time series of that heat trace. Everything
downstream (zeta functions, cylinder determinants, Dirichlet-to-Neumann maps)
only talks to a model through this protocol.
"""
from .decorators import typechecked
from .exceptions import ExhaustivenessError, MissingAsymptoticsError

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Any, Iterator, Optional, Union

import logging

import mpmath

logger = logging.getLogger(__name__)

#: Decimal digits carried by every spectral computation.
WORKING_DPS = 30

#: Eigenvalues closer than this are merged when no exact comparison is available.
MERGE_TOLERANCE = 1e-12


def as_fraction(value: Union[Fraction, Real, str]) -> Fraction:
    """Convert a user-supplied number to an exact fraction, reading floats by their shortest decimal form."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())

    return Fraction(repr(float(value)))


def as_mp(value: Any) -> Any:
    """Convert a number, including :class:`fractions.Fraction`, to an :mod:`mpmath` number."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator

    return mpmath.mpmathify(value)


@dataclass(frozen=True)
class EigenvalueStream:
    """The eigenvalues of a model up to a cutoff, merged by multiplicity.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    entries : tuple[tuple[mpmath.mpf, int], ...]
        Pairs of eigenvalue and multiplicity, sorted ascending.
    cutoff : float
        Every eigenvalue at or below the cutoff is present, none above it.
    """

    entries: tuple
    cutoff: float

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def total_multiplicity(self) -> int:
        return sum(mult for _, mult in self.entries)

    def as_floats(self) -> list[tuple[float, int]]:
        return [(float(value), mult) for value, mult in self.entries]


@dataclass(frozen=True)
class HeatExpansion:
    """Small-time expansion ``sum_p b_p r^p`` of a heat trace.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    terms : tuple[tuple[Fraction, mpmath.mpf], ...]
        Pairs of power and coefficient with strictly increasing powers; vanishing coefficients are omitted.
    constant_index : int or None
        Position of the ``p = 0`` term, :obj:`None` when the constant vanishes.
    """

    terms: tuple
    constant_index: Optional[int]

    @property
    def constant(self) -> Any:
        """The ``p = 0`` coefficient, which equals ``zeta(0) + dim ker``."""
        if self.constant_index is None:
            return mpmath.mpf(0)

        return self.terms[self.constant_index][1]

    def partial_sum(self, r: Any, through: Union[Fraction, int]) -> Any:
        return mpmath.fsum(
            coeff * mpmath.power(r, as_mp(power))
            for power, coeff in self.terms
            if power <= through
        )


class CrossSection:
    """A model of the cutting hypersurface ``Y`` given through its spectrum.

    Note
    ----
    This class is abstract and should not be instantiated directly, use
    :class:`Point`, :class:`Circle`, :class:`Explicit` or :class:`FormGraded` instead.
    """

    #: Dimension of the modeled hypersurface.
    dim_y: int = 0

    def __new__(cls, *args, **kwargs):
        if cls is CrossSection:
            raise TypeError(
                "CrossSection is an abstract class and cannot be instantiated."
            )

        return super().__new__(cls)

    @property
    def is_empty(self) -> bool:
        """Whether the spectrum is empty (the zero bundle)."""
        return False

    @property
    def is_finite(self) -> bool:
        """Whether the spectrum is a finite, completely known list."""
        return False

    def eigenvalues(self, cutoff: Any) -> list[tuple[Any, int]]:
        raise NotImplementedError

    def heat_trace(self, r: Any) -> Any:
        raise NotImplementedError

    def heat_series(self, max_power: Union[Fraction, int]) -> list[tuple[Fraction, Any]]:
        raise NotImplementedError

    def kernel_dim(self) -> int:
        raise NotImplementedError

    def describe(self) -> dict[str, Any]:
        raise NotImplementedError


@dataclass(frozen=True)
class Point(CrossSection):
    """The zero-dimensional cross-section: a single zero eigenvalue."""

    dim_y = 0

    @property
    def is_finite(self) -> bool:
        return True

    def eigenvalues(self, cutoff: Any) -> list[tuple[Any, int]]:
        return [(mpmath.mpf(0), 1)] if cutoff >= 0 else []

    def heat_trace(self, r: Any) -> Any:
        return mpmath.mpf(1)

    def heat_series(self, max_power: Union[Fraction, int]) -> list[tuple[Fraction, Any]]:
        return [(Fraction(0), mpmath.mpf(1))] if max_power >= 0 else []

    def kernel_dim(self) -> int:
        return 1

    def describe(self) -> dict[str, Any]:
        return {"kind": "point"}


@dataclass(frozen=True)
class Circle(CrossSection):
    """A circle of circumference ``circumference`` carrying a flat line bundle with holonomy ``exp(2 pi i holonomy)``.

    Eigenvalues are ``(2 pi (n + holonomy) / circumference)^2`` over ``n`` in the integers.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    circumference : float or None
        The length of the circle. :obj:`None` means exactly ``2 pi``, which keeps eigenvalues exact.
    holonomy : Fraction or float or str
        The twist, reduced into ``[0, 1)``.
    """

    circumference: Optional[float] = None
    holonomy: Fraction = Fraction(0)
    dim_y = 1

    def __post_init__(self) -> None:
        if self.circumference is not None and not self.circumference > 0:
            raise ValueError(
                f"Invalid circumference: {self.circumference}. Must be positive."
            )

        object.__setattr__(self, "holonomy", as_fraction(self.holonomy) % 1)

    @property
    def scale(self) -> Any:
        """The factor ``(2 pi / circumference)^2``."""
        if self.circumference is None:
            return mpmath.mpf(1)

        return (2 * mpmath.pi / as_mp(self.circumference)) ** 2

    def eigenvalues(self, cutoff: Any) -> list[tuple[Any, int]]:
        if cutoff < 0:
            return []

        scale = self.scale
        reach = int(mpmath.floor(mpmath.sqrt(as_mp(cutoff) / scale))) + 2
        merged: dict[Fraction, int] = {}
        for n in range(-reach - 1, reach + 2):
            key = (n + self.holonomy) ** 2
            if scale * as_mp(key) <= cutoff:
                merged[key] = merged.get(key, 0) + 1

        return [(scale * as_mp(key), merged[key]) for key in sorted(merged)]

    def heat_trace(self, r: Any) -> Any:
        c = as_mp(r) * self.scale
        alpha = as_mp(self.holonomy)
        tiny = mpmath.eps * 1e-5

        if mpmath.re(c) >= mpmath.pi**2 * mpmath.re(1 / c):
            total = mpmath.exp(-c * alpha**2)
            n = 1
            while True:
                term = mpmath.exp(-c * (n + alpha) ** 2) + mpmath.exp(
                    -c * (-n + alpha) ** 2
                )
                total += term
                if abs(term) < tiny * abs(total):
                    break
                n += 1

            return total

        total = mpmath.mpf(1)
        m = 1
        while True:
            term = 2 * mpmath.exp(-(mpmath.pi * m) ** 2 / c) * mpmath.cospi(
                2 * m * alpha
            )
            total += term
            if abs(mpmath.exp(-(mpmath.pi * m) ** 2 / c)) < tiny:
                break
            m += 1

        return mpmath.sqrt(mpmath.pi / c) * total

    def heat_series(self, max_power: Union[Fraction, int]) -> list[tuple[Fraction, Any]]:
        if max_power < Fraction(-1, 2):
            return []

        return [(Fraction(-1, 2), mpmath.sqrt(mpmath.pi / self.scale))]

    def kernel_dim(self) -> int:
        return 1 if self.holonomy == 0 else 0

    def describe(self) -> dict[str, Any]:
        return {
            "kind": "circle",
            "circumference": self.circumference,
            "holonomy": str(self.holonomy),
        }


@dataclass(frozen=True)
class Explicit(CrossSection):
    """A cross-section given by an explicit spectrum.

    Use :meth:`shifted_integers` for the rule ``lambda_n = n + beta`` or
    :meth:`finite` for a list of eigenvalues.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    beta : Fraction or None
        The shift of the rule ``n + beta``, :obj:`None` for listed spectra.
    listed : tuple[tuple[Fraction, int], ...]
        Listed eigenvalues and multiplicities, sorted ascending.
    complete : bool
        Whether the list is the whole spectrum. Incomplete lists certify nothing above their last entry.
    formal_dim : int
        The dimension whose Weyl law the spectrum follows, used only to label the exponent grid.
    """

    beta: Optional[Fraction] = None
    listed: tuple = ()
    complete: bool = True
    formal_dim: int = 0

    @classmethod
    def shifted_integers(cls, beta: Union[Fraction, float, str]) -> "Explicit":
        beta = as_fraction(beta)
        if beta < 0:
            raise ValueError(f"Invalid shift: {beta}. Must be nonnegative.")

        return cls(beta=beta, formal_dim=2)

    @classmethod
    def finite(cls, eigenvalues: Any, complete: bool = True) -> "Explicit":
        merged: dict[Fraction, int] = {}
        for item in eigenvalues:
            value, mult = item if isinstance(item, (tuple, list)) else (item, 1)
            value = as_fraction(value)
            if value < 0 or int(mult) < 1:
                raise ValueError(
                    f"Invalid eigenvalue entry: ({value}, {mult}). Eigenvalues must be nonnegative with positive multiplicity."
                )
            merged[value] = merged.get(value, 0) + int(mult)

        return cls(listed=tuple(sorted(merged.items())), complete=complete)

    @property
    def dim_y(self) -> int:
        return self.formal_dim

    @property
    def is_rule(self) -> bool:
        return self.beta is not None

    @property
    def is_finite(self) -> bool:
        return not self.is_rule and self.complete

    def eigenvalues(self, cutoff: Any) -> list[tuple[Any, int]]:
        if cutoff < 0:
            return []

        if self.is_rule:
            beta = as_mp(self.beta)
            count = int(mpmath.floor(as_mp(cutoff) - beta)) + 1
            return [(n + beta, 1) for n in range(max(count, 0))]

        if not self.complete and (not self.listed or cutoff > self.listed[-1][0]):
            raise ExhaustivenessError(self, cutoff)

        return [(as_mp(value), mult) for value, mult in self.listed if as_mp(value) <= cutoff]

    def heat_trace(self, r: Any) -> Any:
        r = as_mp(r)
        if self.is_rule:
            return mpmath.exp(-as_mp(self.beta) * r) / (1 - mpmath.exp(-r))

        if not self.complete:
            raise MissingAsymptoticsError(self)

        return mpmath.fsum(mult * mpmath.exp(-r * as_mp(v)) for v, mult in self.listed)

    def heat_series(self, max_power: Union[Fraction, int]) -> list[tuple[Fraction, Any]]:
        terms = []
        if self.is_rule:
            beta = as_mp(self.beta)
            k = 0
            while k - 1 <= max_power:
                coeff = (-1) ** k * mpmath.bernpoly(k, beta) / mpmath.factorial(k)
                if coeff != 0:
                    terms.append((Fraction(k - 1), coeff))
                k += 1

            return terms

        if not self.complete:
            raise MissingAsymptoticsError(self)

        k = 0
        while k <= max_power:
            moment = mpmath.fsum(mult * as_mp(v) ** k for v, mult in self.listed)
            coeff = (-1) ** k * moment / mpmath.factorial(k)
            if coeff != 0:
                terms.append((Fraction(k), coeff))
            k += 1

        return terms

    def kernel_dim(self) -> int:
        if self.is_rule:
            return 1 if self.beta == 0 else 0

        return sum(mult for value, mult in self.listed if value == 0)

    def describe(self) -> dict[str, Any]:
        if self.is_rule:
            return {"kind": "shifted-integers", "beta": str(self.beta)}

        return {
            "kind": "finite",
            "eigenvalues": [[str(v), m] for v, m in self.listed],
            "complete": self.complete,
        }


@dataclass(frozen=True)
class FormGraded(CrossSection):
    """The degree ``degree`` forms on a geometric cross-section, twisted by the base's flat bundle.

    Degrees ``0`` through ``dim_y`` of a flat circle or point carry the base
    spectrum; other degrees are the zero bundle.

    .. versionadded:: 1.0.0
    """

    base: CrossSection = field(default_factory=Point)
    degree: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.base, (Point, Circle)):
            raise ValueError(
                f"Invalid base: {self.base}. Form grading requires a point or circle cross-section."
            )

    @property
    def dim_y(self) -> int:
        return self.base.dim_y

    @property
    def is_empty(self) -> bool:
        return not 0 <= self.degree <= self.base.dim_y

    @property
    def is_finite(self) -> bool:
        return self.is_empty or self.base.is_finite

    def eigenvalues(self, cutoff: Any) -> list[tuple[Any, int]]:
        return [] if self.is_empty else self.base.eigenvalues(cutoff)

    def heat_trace(self, r: Any) -> Any:
        return mpmath.mpf(0) if self.is_empty else self.base.heat_trace(r)

    def heat_series(self, max_power: Union[Fraction, int]) -> list[tuple[Fraction, Any]]:
        return [] if self.is_empty else self.base.heat_series(max_power)

    def kernel_dim(self) -> int:
        return 0 if self.is_empty else self.base.kernel_dim()

    def describe(self) -> dict[str, Any]:
        return {"kind": "forms", "base": self.base.describe(), "degree": self.degree}


def merge_eigenvalues(pairs: Any) -> tuple:
    """Sort eigenvalue and multiplicity pairs and merge values closer than :data:`MERGE_TOLERANCE`."""
    merged: list[list] = []
    for value, mult in sorted(pairs, key=lambda pair: pair[0]):
        if merged and abs(value - merged[-1][0]) <= MERGE_TOLERANCE * max(
            1, abs(value)
        ):
            merged[-1][1] += mult
        else:
            merged.append([value, mult])

    return tuple((value, mult) for value, mult in merged)


@typechecked
def enumerate_spectrum(model: CrossSection, cutoff: float) -> EigenvalueStream:
    """Enumerate the eigenvalues of a model up to a cutoff.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    cutoff : float
        The largest eigenvalue to include; must be nonnegative.

    Raises
    ------
    ExhaustivenessError
        Raised when an incomplete explicit list cannot certify the spectrum below ``cutoff``.
    ValueError
        Raised when ``cutoff`` is negative.

    Returns
    -------
    EigenvalueStream
        The eigenvalues with multiplicities.
    """

    if cutoff < 0:
        raise ValueError(f"Invalid cutoff: {cutoff}. Must be nonnegative.")

    with mpmath.workdps(WORKING_DPS):
        entries = merge_eigenvalues(model.eigenvalues(cutoff))

    logger.debug("enumerated %d eigenvalues of %s below %s", len(entries), model, cutoff)
    return EigenvalueStream(entries=entries, cutoff=cutoff)


@typechecked
def heat_trace(model: CrossSection, r: float) -> Any:
    """Evaluate the heat trace ``sum mult * exp(-r * lambda)``.

    The circle switches between the direct sum and its Poisson dual depending
    on which converges faster; both are summed until the next term is below
    the working precision.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    r : float
        The time, positive.

    Returns
    -------
    mpmath.mpf
        The heat trace.
    """

    if not r > 0:
        raise ValueError(f"Invalid time: {r}. Must be positive.")

    with mpmath.workdps(WORKING_DPS):
        return +model.heat_trace(r)


@typechecked
def heat_expansion(model: CrossSection, order: int = 2) -> HeatExpansion:
    """Small-time expansion of the heat trace through a given power.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : CrossSection
        The cross-section model.
    order : int
        The largest power of ``r`` to include. Defaults to ``2``.

    Raises
    ------
    MissingAsymptoticsError
        Raised for explicit lists not declared complete.

    Returns
    -------
    HeatExpansion
        The expansion; its constant term equals ``zeta(0) + dim ker``.
    """

    with mpmath.workdps(WORKING_DPS):
        terms = tuple(
            (power, coeff) for power, coeff in model.heat_series(order) if coeff != 0
        )

    constant_index = next((i for i, (p, _) in enumerate(terms) if p == 0), None)
    return HeatExpansion(terms=terms, constant_index=constant_index)


@typechecked
def kernel_dim(model: CrossSection) -> int:
    """Number of zero eigenvalues counted with multiplicity.

    .. versionadded:: 1.0.0
    """

    return model.kernel_dim()


def cross_section_from_config(data: dict[str, Any]) -> CrossSection:
    """Build a model from its configuration descriptor, the inverse of ``describe()``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    data : dict[str, Any]
        A mapping with a ``kind`` key (``point``, ``circle``, ``shifted-integers``, ``finite`` or ``forms``) and the model's fields.

    Raises
    ------
    ValueError
        Raised when the descriptor names an unknown kind or carries unknown fields.

    Returns
    -------
    CrossSection
        The model.
    """

    data = dict(data)
    kind = str(data.pop("kind", "")).lower()
    allowed = {
        "point": set(),
        "circle": {"circumference", "holonomy"},
        "shifted-integers": {"beta"},
        "finite": {"eigenvalues", "complete"},
        "forms": {"base", "degree"},
    }
    if kind not in allowed:
        raise ValueError(f"Invalid cross-section kind: {kind!r}. Valid kinds: {sorted(allowed)}")

    if unknown := set(data) - allowed[kind]:
        raise ValueError(f"Unknown cross-section fields for {kind}: {sorted(unknown)}")

    if kind == "point":
        return Point()
    if kind == "circle":
        circumference = data.get("circumference")
        return Circle(
            circumference=None if circumference is None else float(circumference),
            holonomy=as_fraction(data.get("holonomy", 0)),
        )
    if kind == "shifted-integers":
        return Explicit.shifted_integers(data.get("beta", 0))
    if kind == "finite":
        return Explicit.finite(
            [tuple(item) for item in data.get("eigenvalues", [])],
            complete=bool(data.get("complete", True)),
        )

    return FormGraded(
        base=cross_section_from_config(data.get("base", {"kind": "point"})),
        degree=int(data.get("degree", 0)),
    )
