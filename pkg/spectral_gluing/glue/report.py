from ..enums import Experiment, Identity

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Complex, Real
from typing import Any, Optional

import math

import mpmath


def to_jsonable(value: Any) -> Any:
    """Convert report values to JSON types; complex numbers become ``{"re": ..., "im": ...}``.

    .. versionadded:: 1.0.0
    """

    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, mpmath.mpc) or (
        isinstance(value, Complex) and not isinstance(value, Real)
    ):
        if mpmath.im(value) == 0:
            return to_jsonable(mpmath.re(value))
        return {"re": _float(mpmath.re(value)), "im": _float(mpmath.im(value))}
    if isinstance(value, (Real, mpmath.mpf)):
        return _float(value)

    return str(value)


def _float(value: Any) -> Any:
    number = float(value)
    if math.isfinite(number):
        return number

    return "inf" if number > 0 else "-inf" if number < 0 else "nan"


@dataclass(frozen=True)
class ReportRow:
    """One checked identity: both sides, their distance and the verdict.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    identity : Identity
        The identity checked.
    r : float or None
        The collar length, :obj:`None` for fixed-geometry and extrapolated rows.
    lhs, rhs : Any
        The two sides.
    residual : float
        ``|lhs - rhs|``.
    tolerance : float
        The accepted residual.
    passed : bool
        Whether ``residual <= tolerance``.
    degree : int or None
        The form degree of per-degree torsion rows.
    error_bound : float
        The numerical error estimate of the two sides.
    diagnostics : dict
        Extra data, such as raw sequences and fit parameters.
    tag : str or None
        Distinguishes rows of one identity that differ in something other than ``r`` or ``degree``.
    """

    identity: Identity
    r: Optional[float]
    lhs: Any
    rhs: Any
    residual: float
    tolerance: float
    passed: bool
    degree: Optional[int] = None
    error_bound: float = 0.0
    diagnostics: dict = field(default_factory=dict)
    tag: Optional[str] = None

    @property
    def label(self) -> str:
        parts = [] if self.degree is None else [f"q={self.degree}"]
        if self.tag:
            parts.append(self.tag)

        return self.identity.key + (f"[{','.join(parts)}]" if parts else "")

    def to_dict(self) -> dict[str, Any]:
        return {
            "identity": self.label,
            "r": self.r,
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "residual": _float(self.residual),
            "tolerance": _float(self.tolerance),
            "pass": self.passed,
            "error_bound": _float(self.error_bound),
            "diagnostics": to_jsonable(self.diagnostics),
        }


def make_row(
    identity: Identity,
    lhs: Any,
    rhs: Any,
    tolerance: float,
    r: Optional[float] = None,
    degree: Optional[int] = None,
    error_bound: float = 0.0,
    passed: Optional[bool] = None,
    tag: Optional[str] = None,
    **diagnostics: Any,
) -> ReportRow:
    """Build a row, computing the residual and, unless given, the verdict."""
    residual = float(abs(mpmath.mpmathify(lhs) - mpmath.mpmathify(rhs)))
    verdict = residual <= tolerance if passed is None else passed and residual <= tolerance
    return ReportRow(
        identity=identity,
        r=r,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=tolerance,
        passed=bool(verdict),
        degree=degree,
        error_bound=float(error_bound),
        diagnostics=diagnostics,
        tag=tag,
    )


@dataclass
class Report:
    """The rows of one experiment run.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    experiment : Experiment
        The experiment run.
    rows : list[ReportRow]
        The checked identities.
    results : dict
        Experiment results that are not identity checks.
    config : dict
        Every effective setting of the run.
    version : str
        The library version that produced the report.
    """

    experiment: Experiment
    rows: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    version: str = ""

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> list:
        return [row for row in self.rows if not row.passed]

    def rows_for(self, identity: Identity) -> list:
        return [row for row in self.rows if row.identity is identity]

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment.command,
            "version": self.version,
            "config": to_jsonable(self.config),
            "rows": [row.to_dict() for row in self.rows],
            "results": to_jsonable(self.results),
            "passed": self.passed,
        }
