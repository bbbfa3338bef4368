from ..decorators import sanitized, typechecked
from ..dtn import QCylinder, RM1r, RM2r, RJoin, RNr, Rmrr, dtn_log_det, min_block_eigen
from ..enums import BoundaryCondition, Experiment, Identity
from ..exceptions import HypothesisError
from ..zeta import zeta_invariants

from .base import Checks
from .report import Report, make_row

from typing import Any, Optional, Sequence, Union

import logging
import math

import mpmath

logger = logging.getLogger(__name__)

_D = BoundaryCondition.DIRICHLET
_N = BoundaryCondition.NEUMANN

_LIMITS = (
    Identity.ADIABATIC_DIRICHLET,
    Identity.NEUMANN_DIRICHLET,
    Identity.MIXED_SPLIT,
    Identity.COLLAR_DTN,
    Identity.ONE_SIDED_DTN,
    Identity.TWO_SIDED_DTN,
)


class AdiabaticChecks(Checks):
    """Limits of gluing quantities as a collar ``[-r, r] x Y`` around the cut is stretched.

    Note
    ----
    This class is abstract and should not be instantiated directly, use :class:`Laboratory <spectral_gluing.glue.instance.Laboratory>` instead.
    """

    def _pieces(self) -> tuple[QCylinder, QCylinder]:
        a, b = self.config.lengths
        return QCylinder(a), QCylinder(b)

    def _adiabatic_value(self, identity: Identity, r: float) -> tuple[Any, float]:
        """The expression ``E(r)`` of a limit identity and its error bound."""
        a, b = self.config.lengths
        k = self.model.kernel_dim()
        q1, q2 = self._pieces()

        if identity is Identity.ADIABATIC_DIRICHLET:
            value = (
                self._cylinder(a + b + 2 * r)
                - self._cylinder(a + r)
                - self._cylinder(b + r)
            )
            return value.value + k * mpmath.log(r), value.error_bound

        if identity is Identity.NEUMANN_DIRICHLET:
            value = self._cylinder(a + r, _D, _N) - self._cylinder(a + r)
            return value.value + k * mpmath.log(r), value.error_bound

        if identity is Identity.MIXED_SPLIT:
            value = (
                self._cylinder(a + b + 2 * r)
                - self._cylinder(a + r, _D, _N)
                - self._cylinder(b + r)
            )
            return value.value, value.error_bound

        if identity is Identity.COLLAR_DTN:
            return dtn_log_det(RNr(r), self.model) + k * mpmath.log(r), 0.0

        if identity is Identity.ONE_SIDED_DTN:
            return dtn_log_det(RM1r(r, q1), self.model), 0.0

        if identity is Identity.TWO_SIDED_DTN:
            return dtn_log_det(Rmrr(r, q1, q2), self.model), 0.0

        raise ValueError(f"Invalid identity: {identity.key}. Not a collar-length limit.")

    def _kernel_deviation(self, identity: Identity, r: float) -> Any:
        """How far the zero-mode contribution to ``E(r)`` still is from its limit."""
        k = self.model.kernel_dim()
        if not k:
            return mpmath.mpf(0)

        a, b = (mpmath.mpf(x) for x in self.config.lengths)
        r = mpmath.mpf(r)
        if identity is Identity.ADIABATIC_DIRICHLET:
            return k * mpmath.log(r * (a + b + 2 * r) / (2 * (a + r) * (b + r)))
        if identity is Identity.NEUMANN_DIRICHLET:
            return k * mpmath.log(r / (a + r))
        if identity is Identity.MIXED_SPLIT:
            return k * mpmath.log((a + b + 2 * r) / (2 * (b + r)))
        if identity is Identity.ONE_SIDED_DTN:
            return k * mpmath.log1p(a / r)
        if identity is Identity.TWO_SIDED_DTN:
            return k * mpmath.log1p((a + b) / (2 * r))

        return mpmath.mpf(0)

    def _adiabatic_target(self, identity: Identity) -> Any:
        model = self.model
        q1, q2 = self._pieces()
        if identity in (Identity.ADIABATIC_DIRICHLET, Identity.NEUMANN_DIRICHLET):
            return zeta_invariants(model).log_det / 2
        if identity is Identity.MIXED_SPLIT:
            return mpmath.mpf(0)
        if identity is Identity.COLLAR_DTN:
            invariants = zeta_invariants(model)
            constant = invariants.zeta0 + model.kernel_dim()
            return mpmath.log(2) * constant + invariants.log_det / 2

        one_sided = dtn_log_det(RM1r(math.inf, q1), model)
        if identity is Identity.ONE_SIDED_DTN:
            return one_sided
        return one_sided + dtn_log_det(RM2r(math.inf, q2), model)

    def _dtn_split_rows(self, rs: Sequence[float]) -> list:
        """Exact decomposition of the stretched Dirichlet-to-Neumann determinant at each ``r``."""
        a, b = self.config.lengths
        model = self.model
        q1, q2 = self._pieces()
        tolerance = self.config.tolerances.for_model(model)

        rows = []
        for r in rs:
            whole = dtn_log_det(RJoin(QCylinder(a + r), QCylinder(b + r)), model)
            parts = (
                dtn_log_det(RNr(r), model)
                + dtn_log_det(Rmrr(r, q1, q2), model)
                - dtn_log_det(RM1r(r, q1), model)
                - dtn_log_det(RM2r(r, q2), model)
            )
            rows.append(make_row(Identity.DTN_SPLIT, whole, parts, tolerance, r=r))

        return rows

    def check_invertibility(self, r_grid: Optional[Sequence[float]] = None) -> list:
        """Certify that the collar block map is positive at every collar length.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        r_grid : Sequence[float] or None
            The collar lengths. Defaults to the configured grid.

        Raises
        ------
        HypothesisError
            Raised when the block map has a nonpositive eigenvalue or the cutoff cannot certify its minimum.

        Returns
        -------
        list[BlockMinimum]
            The minimum per collar length.
        """

        rs = self.config.r_grid if r_grid is None else r_grid
        q1, q2 = self._pieces()
        minima = []
        for r in rs:
            minimum = min_block_eigen(Rmrr(r, q1, q2), self.model, self.config.cutoff)
            if not minimum.value > 0:
                raise HypothesisError(
                    "collar block map is invertible",
                    f"smallest eigenvalue {minimum.value} at r={r}, lambda={minimum.at}",
                )
            if not minimum.certified:
                raise HypothesisError(
                    "collar block map is invertible",
                    f"cutoff {self.config.cutoff} cannot certify the minimum at r={r}",
                )
            minima.append(minimum)

        return minima

    @typechecked
    @sanitized
    def adiabatic_limit(
        self,
        identity: Optional[Union[Identity, str]] = None,
        r_grid: Optional[Sequence[float]] = None,
    ) -> Report:
        """Evaluate collar-length limit identities along an r-grid and extrapolate.

        Every limit identity tracks an expression ``E(r)`` whose limit as
        ``r -> inf`` has a closed form:

        - ``adiabatic-dirichlet``: ``log Det M_r - log Det M_(1,r) - log Det M_(2,r) + k log r -> 1/2 log Det' Delta_Y``;
        - ``neumann-dirichlet``: Neumann minus Dirichlet cut on one piece, plus ``k log r``, tends to the same;
        - ``mixed-split``: the Dirichlet decomposition with a Neumann piece tends to ``0``;
        - ``collar-dtn``: ``log Det R_(N_r) + k log r -> log 2 (zeta_Y(0) + k) + 1/2 log Det' Delta_Y``;
        - ``one-sided-dtn`` and ``two-sided-dtn``: the stretched maps tend to those built from ``sqrt(Delta_Y)``.

        Here ``k`` is the kernel dimension of ``Delta_Y``. The ``dtn-split``
        rows check the exact decomposition of the stretched map at each ``r``.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        identity : Identity or str or None
            A single identity to evaluate. Defaults to every configured one.
        r_grid : Sequence[float] or None
            The collar lengths, positive, increasing, at least four. Defaults to the configured grid.

        Raises
        ------
        HypothesisError
            Raised when the collar block map is not certified positive on the grid.

        Returns
        -------
        Report
            Per-``r`` rows and one extrapolated row per limit identity, plus the ``dtn-split`` rows.
        """

        cfg = self.config
        rs = cfg.r_grid if r_grid is None else r_grid
        selected = [
            i
            for i in (*_LIMITS, Identity.DTN_SPLIT)
            if (i is identity if identity is not None else cfg.selects(i))
        ]
        if identity is not None and identity not in selected:
            raise ValueError(f"Invalid identity: {identity.key}. Not an adiabatic identity.")

        minima = self.check_invertibility(rs)

        rows = []
        for current in selected:
            if current is Identity.DTN_SPLIT:
                rows.extend(self._dtn_split_rows(rs))
                continue

            logger.info("evaluating %s on r-grid %s", current.key, list(rs))
            values = self._sequence(current, rs)
            deviations = [self._kernel_deviation(current, r) for r in rs]
            rows.extend(
                self._limit_rows(current, rs, values, self._adiabatic_target(current), deviations)
            )

        results = {
            "kernel_dim": self.model.kernel_dim(),
            "r_grid": list(rs),
            "block_minima": [minimum.value for minimum in minima],
        }
        return self._report(Experiment.ADIABATIC, rows, results)
