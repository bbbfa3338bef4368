from ..cylinder import CylinderOp, CylinderLogDet, cylinder_log_det_by
from ..enums import BoundaryCondition, Experiment, Identity
from ..spectra import CrossSection
from ..zeta import RayShift

from .config import GeometryConfig
from .extrapolation import extrapolate, is_monotone_decreasing
from .report import Report, make_row

from concurrent import futures
from typing import Any, Optional, Sequence

import logging
import math

import mpmath

logger = logging.getLogger(__name__)

_D = BoundaryCondition.DIRICHLET


class Checks:
    """Shared state and helpers of the experiment mixins.

    Note
    ----
    This class is abstract and should not be instantiated directly, use :class:`Laboratory <spectral_gluing.glue.instance.Laboratory>` instead.
    """

    def __init__(self, config: GeometryConfig):
        self.config = config

    def __new__(cls, *args, **kwargs):
        if cls.__name__ in _ABSTRACT:
            raise TypeError(f"{cls.__name__} is an abstract class and cannot be instantiated.")

        return super().__new__(cls)

    @property
    def model(self) -> CrossSection:
        return self.config.cross_section

    def _cylinder(
        self,
        length: float,
        bc_left: BoundaryCondition = _D,
        bc_right: BoundaryCondition = _D,
        shift: Optional[RayShift] = None,
        degree: Optional[int] = None,
        model: Optional[CrossSection] = None,
    ) -> CylinderLogDet:
        op = CylinderOp(
            cross_section=model or self.model,
            length=length,
            bc_left=bc_left,
            bc_right=bc_right,
            shift=shift,
            form_degree=degree,
        )
        return cylinder_log_det_by(op, self.config.lhs_method)

    def _sequence(
        self, identity: Identity, rs: Sequence[float], degree: Optional[int] = None
    ) -> list:
        """Evaluate an identity's expression along the collar lengths, in worker processes when configured."""
        if self.config.jobs > 1 and len(rs) > 1:
            from .instance import evaluate_at

            with futures.ProcessPoolExecutor(max_workers=self.config.jobs) as executor:
                wait_for = [
                    executor.submit(evaluate_at, self.config, identity.key, r, degree)
                    for r in rs
                ]
                return [f.result() for f in wait_for]

        return [self._evaluate(identity, r, degree) for r in rs]

    def _limit_rows(
        self,
        identity: Identity,
        rs: Sequence[float],
        values: Sequence[Any],
        target: Any,
        deviations: Optional[Sequence[Any]] = None,
        degree: Optional[int] = None,
    ) -> list:
        """One row per collar length and one extrapolated row.

        The known kernel-mode deviation from the limit is subtracted before
        extrapolating. The extrapolated row fails unless the tail converges and
        the residuals decrease in ``r`` down to the evaluation error.
        """

        deviations = deviations or [0] * len(rs)
        deflated = [value - deviation for (value, _), deviation in zip(values, deviations)]
        residuals = [float(abs(value - target)) for value in deflated]
        rows = [
            make_row(
                identity,
                value,
                target,
                math.inf,
                r=r,
                degree=degree,
                error_bound=error,
                raw=raw,
                kernel_deviation=deviation,
            )
            for r, value, (raw, error), deviation in zip(rs, deflated, values, deviations)
        ]

        fit = extrapolate(rs, [mpmath.re(value) for value in deflated])
        evaluation_error = max(float(error) for _, error in values)
        monotone = is_monotone_decreasing(residuals, floor=max(1e-13, evaluation_error))
        if not monotone:
            logger.warning("%s residuals do not decrease in r: %s", identity.key, residuals)

        rows.append(
            make_row(
                identity,
                fit.limit,
                target,
                self.config.tolerances.limit,
                degree=degree,
                error_bound=max(evaluation_error, fit.error_bound),
                passed=fit.converged and monotone,
                fit=fit.to_dict(),
                monotone=monotone,
                residuals=residuals,
            )
        )
        return rows

    def _report(self, experiment: Experiment, rows: list, results: dict) -> Report:
        from .. import __version__

        return Report(
            experiment=experiment,
            rows=rows,
            results=results,
            config=self.config.describe(),
            version=__version__,
        )


_ABSTRACT = {"Checks", "GluingChecks", "AdiabaticChecks", "TorsionChecks"}
