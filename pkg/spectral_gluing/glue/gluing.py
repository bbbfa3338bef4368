from ..dtn import QCylinder, RJoin, dtn_log_det
from ..enums import Experiment, Identity
from ..spectra import heat_expansion
from ..zeta import RayShift, zeta_invariants

from .base import Checks
from .report import Report, make_row

import logging
import math

import mpmath

logger = logging.getLogger(__name__)


class GluingChecks(Checks):
    """Gluing formulas on the fixed two-piece geometry.

    Note
    ----
    This class is abstract and should not be instantiated directly, use :class:`Laboratory <spectral_gluing.glue.instance.Laboratory>` instead.
    """

    def _split(self, shift=None):
        """``log Det`` of the whole cylinder minus both pieces, and the error bound."""
        a, b = self.config.lengths
        whole = self._cylinder(a + b, shift=shift)
        left = self._cylinder(a, shift=shift)
        right = self._cylinder(b, shift=shift)
        difference = whole - left - right
        return difference.value, difference.error_bound

    def _join(self, shift=None):
        a, b = self.config.lengths
        return dtn_log_det(RJoin(QCylinder(a), QCylinder(b)), self.model, shift=shift)

    def check_gluing(self) -> Report:
        """Check the two-piece gluing formula and the heat-expansion constant.

        With Dirichlet conditions at the cut::

            log Det M - log Det M_1 - log Det M_2 = -log 2 (zeta_Y(0) + dim ker) + log Det R

        where ``R = Q_1 + Q_2`` is the Dirichlet-to-Neumann operator of the cut.

        .. versionadded:: 1.0.0

        Returns
        -------
        Report
            The ``heat-constant`` and ``gluing`` rows.
        """

        cfg, model = self.config, self.model
        shift = RayShift(t=cfg.shift) if cfg.shift else None
        invariants = zeta_invariants(model, exclude_kernel=True, shift=shift)
        kernel = model.kernel_dim() if shift is None else 0
        constant = invariants.zeta0 + kernel

        rows = []
        if cfg.selects(Identity.HEAT_CONSTANT):
            if shift is None:
                heat = heat_expansion(model).constant
                rows.append(make_row(Identity.HEAT_CONSTANT, constant, heat, cfg.tolerances.exact))
            else:
                logger.info("heat-constant row skipped for the shifted operator")

        if cfg.selects(Identity.GLUING):
            lhs, error = self._split(shift)
            rhs = -mpmath.log(2) * constant + self._join(shift)
            rows.append(
                make_row(
                    Identity.GLUING,
                    lhs,
                    rhs,
                    cfg.tolerances.for_model(model),
                    error_bound=error + invariants.error_bound,
                )
            )

        results = {"zeta0": invariants.zeta0, "kernel_dim": kernel, "constant": constant}
        return self._report(Experiment.GLUE, rows, results)

    def check_power_gluing_m2(self) -> Report:
        """Check the gluing formula for the squared Laplacian through its factorization along the rays ``+-i t``.

        Each ray carries its own formula with constant ``-log 2 zeta_(Y + alpha t)(0)``;
        summed over the two rays the constants add up to ``-2 log 2 (zeta_Y(0) + dim ker)``
        and the imaginary parts cancel.

        .. versionadded:: 1.0.0

        Returns
        -------
        Report
            One ``power-gluing-ray`` row per ray, the summed ``power-gluing`` row and the ``power-gluing-reality`` row.
        """

        cfg, model = self.config, self.model
        tolerance = cfg.tolerances.for_model(model)
        base = zeta_invariants(model, exclude_kernel=True)
        constant = base.zeta0 + model.kernel_dim()

        rows, lhs_total, rhs_dtn, errors = [], mpmath.mpf(0), mpmath.mpf(0), 0.0
        for theta in (math.pi / 2, -math.pi / 2):
            ray = RayShift(theta=theta, t=cfg.ray_modulus)
            lhs, error = self._split(ray)
            log_det_r = self._join(ray)
            zeta0 = zeta_invariants(model, exclude_kernel=True, shift=ray).zeta0
            rhs = -mpmath.log(2) * zeta0 + log_det_r

            lhs_total += lhs
            rhs_dtn += log_det_r
            errors += error
            if cfg.selects(Identity.POWER_GLUING_RAY):
                rows.append(
                    make_row(
                        Identity.POWER_GLUING_RAY,
                        lhs,
                        rhs,
                        tolerance,
                        error_bound=error,
                        tag="+" if theta > 0 else "-",
                        theta=theta,
                    )
                )

        if cfg.selects(Identity.POWER_GLUING):
            rhs_total = -2 * mpmath.log(2) * constant + rhs_dtn
            rows.append(
                make_row(Identity.POWER_GLUING, lhs_total, rhs_total, tolerance, error_bound=errors)
            )

        if cfg.selects(Identity.POWER_GLUING_REALITY):
            rows.append(
                make_row(
                    Identity.POWER_GLUING_REALITY,
                    mpmath.im(lhs_total),
                    0,
                    tolerance,
                    error_bound=errors,
                )
            )

        results = {"zeta0": base.zeta0, "kernel_dim": model.kernel_dim(), "t": cfg.ray_modulus}
        return self._report(Experiment.POWER_GLUE, rows, results)
