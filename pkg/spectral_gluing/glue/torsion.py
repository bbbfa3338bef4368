from ..cylinder import CylinderLogDet
from ..dtn import QCylinder, RqAbs, RqRel, dtn_log_det
from ..enums import BoundaryCondition, Experiment, Identity
from ..exceptions import HypothesisError
from ..spectra import Circle, CrossSection, FormGraded
from ..zeta import zeta_invariants

from .base import Checks
from .report import Report, make_row

from dataclasses import dataclass, field
from typing import Any, Optional

import logging
import math

import mpmath

logger = logging.getLogger(__name__)

_D = BoundaryCondition.DIRICHLET
_ABS = BoundaryCondition.ABSOLUTE
_REL = BoundaryCondition.RELATIVE

_PER_DEGREE = (
    Identity.BOUNDARY_DTN_LIMIT,
    Identity.ABSOLUTE_LIMIT,
    Identity.RELATIVE_LIMIT,
    Identity.FORM_DECOMPOSITION,
)

_ASSEMBLED = (Identity.TORSION_SPLIT, Identity.TORSION_DECOMPOSITION)


@dataclass(frozen=True)
class TorsionAssembly:
    """Per-degree log-determinants and their torsion combination.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    per_degree : dict[int, Any]
        ``log Det`` of the degree ``q`` operator, by ``q``.
    """

    per_degree: dict = field(default_factory=dict)

    @property
    def log_torsion(self) -> Any:
        """``1/2 sum_q (-1)^q q log Det_q``."""
        return mpmath.fsum(
            (-1) ** q * q * value for q, value in sorted(self.per_degree.items())
        ) / 2


class TorsionChecks(Checks):
    """Analytic torsion decomposition on form-graded product cylinders.

    Each piece carries a Dirichlet boundary at its far end; the stretched collar
    ends in an absolute or relative condition.

    Note
    ----
    This class is abstract and should not be instantiated directly, use :class:`Laboratory <spectral_gluing.glue.instance.Laboratory>` instead.
    """

    def _form_base(self) -> CrossSection:
        model = self.model
        base = model.base if isinstance(model, FormGraded) else model
        if not isinstance(base, Circle) or base.holonomy == 0:
            raise HypothesisError(
                "twisted cross-section",
                f"{base.describe()} has harmonic forms; torsion needs a circle with nonzero holonomy",
            )

        return base

    def _degrees(self) -> range:
        return range(0, self._form_base().dim_y + 2)

    def _form(
        self, length: float, right: BoundaryCondition, degree: int
    ) -> CylinderLogDet:
        return self._cylinder(length, _D, right, degree=degree, model=self._form_base())

    def _half_log_det(self, degree: int) -> Any:
        model = FormGraded(base=self._form_base(), degree=degree)
        return zeta_invariants(model).log_det / 2

    def _assembly(self) -> TorsionAssembly:
        return TorsionAssembly({q: 2 * self._half_log_det(q) for q in self._degrees()})

    def _torsion_value(
        self, identity: Identity, r: float, degree: Optional[int] = None
    ) -> tuple[Any, float]:
        """The expression of a torsion limit identity at collar length ``r``, and its error bound."""
        a, b = self.config.lengths

        if identity in _ASSEMBLED:
            single = (
                Identity.FORM_DECOMPOSITION
                if identity is Identity.TORSION_DECOMPOSITION
                else None
            )
            terms, errors = [], 0.0
            for q in self._degrees():
                if single is None:
                    part = self._form(a + r, _ABS, q) - self._form(a + r, _REL, q)
                    value, error = part.value, part.error_bound
                else:
                    value, error = self._torsion_value(single, r, q)
                terms.append((-1) ** q * q * value)
                errors += abs(q) * error
            return mpmath.fsum(terms) / 2, errors / 2

        if identity is Identity.BOUNDARY_DTN_LIMIT:
            family = RqAbs(r, QCylinder(a), degree)
            return dtn_log_det(family, self._form_base()), 0.0

        if identity is Identity.ABSOLUTE_LIMIT:
            value = self._form(a + r, _ABS, degree) - self._form(a + r, _D, degree)
        elif identity is Identity.RELATIVE_LIMIT:
            value = self._form(a + r, _REL, degree) - self._form(a + r, _D, degree)
        elif identity is Identity.FORM_DECOMPOSITION:
            value = (
                self._form(a + b + 2 * r, _D, degree)
                - self._form(a + r, _ABS, degree)
                - self._form(b + r, _REL, degree)
            )
        else:
            raise ValueError(f"Invalid identity: {identity.key}. Not a torsion limit.")

        return value.value, value.error_bound

    def _torsion_target(self, identity: Identity, degree: Optional[int] = None) -> Any:
        if identity is Identity.ABSOLUTE_LIMIT:
            return self._half_log_det(degree)
        if identity is Identity.RELATIVE_LIMIT:
            return self._half_log_det(degree - 1)
        if identity is Identity.BOUNDARY_DTN_LIMIT:
            a, _ = self.config.lengths
            return dtn_log_det(RqAbs(math.inf, QCylinder(a), degree), self._form_base())
        if identity is Identity.TORSION_SPLIT:
            return self._assembly().log_torsion

        return mpmath.mpf(0)

    def _form_gluing_rows(self, r: float) -> list:
        """Gluing formulas on forms at one collar length, with the absolute or relative end condition."""
        a, _ = self.config.lengths
        base = self._form_base()
        tolerance = self.config.tolerances.for_model(base)
        zeta0 = {
            q: zeta_invariants(FormGraded(base=base, degree=q)).zeta0
            + FormGraded(base=base, degree=q).kernel_dim()
            for q in range(-1, base.dim_y + 2)
        }

        rows = []
        for identity, condition, family in (
            (Identity.FORM_GLUING_ABSOLUTE, _ABS, RqAbs),
            (Identity.FORM_GLUING_RELATIVE, _REL, RqRel),
        ):
            if not self.config.selects(identity):
                continue

            for q in self._degrees():
                lhs = (
                    self._form(a + r, condition, q)
                    - self._form(a, _D, q)
                    - self._form(r, condition, q)
                )
                rhs = -mpmath.log(2) * (zeta0[q] + zeta0[q - 1]) + dtn_log_det(
                    family(r, QCylinder(a), q), base
                )
                rows.append(
                    make_row(
                        identity, lhs.value, rhs, tolerance, r=r, degree=q, error_bound=lhs.error_bound
                    )
                )

        return rows

    def torsion_report(self) -> Report:
        """Check the torsion decomposition on form-graded product cylinders.

        Per degree ``q`` the determinants of the degree ``q`` Laplacian on
        ``M_(1,r)`` with absolute, relative and Dirichlet cut conditions are
        compared along the r-grid:

        - ``absolute-limit``: absolute minus Dirichlet tends to ``1/2 log Det Delta_Y^q``;
        - ``relative-limit``: relative minus Dirichlet tends to ``1/2 log Det Delta_Y^(q-1)``;
        - ``boundary-dtn-limit``: the absolute boundary map tends to ``Q_1 + sqrt(Delta_Y)`` on each block;
        - ``form-decomposition``: the whole cylinder minus an absolute and a relative piece tends to ``0``.

        The alternating sums give ``torsion-split``, whose limit is the torsion
        of ``Y``, and ``torsion-decomposition``, whose limit is ``0``. The
        gluing formulas on forms are checked at the first collar length.

        .. versionadded:: 1.0.0

        Raises
        ------
        HypothesisError
            Raised when the cross-section is not a circle with nonzero holonomy.

        Returns
        -------
        Report
            The per-degree and assembled rows, with the per-degree determinants and the torsion of ``Y`` in the results.
        """

        cfg = self.config
        base = self._form_base()
        rs = cfg.r_grid
        rows = self._form_gluing_rows(rs[0])

        for identity in _PER_DEGREE:
            if not cfg.selects(identity):
                continue
            for q in self._degrees():
                logger.info("evaluating %s in degree %d on r-grid %s", identity.key, q, list(rs))
                values = self._sequence(identity, rs, q)
                rows.extend(
                    self._limit_rows(identity, rs, values, self._torsion_target(identity, q), degree=q)
                )

        for identity in _ASSEMBLED:
            if not cfg.selects(identity):
                continue
            logger.info("evaluating %s on r-grid %s", identity.key, list(rs))
            values = self._sequence(identity, rs)
            rows.extend(self._limit_rows(identity, rs, values, self._torsion_target(identity)))

        assembly = self._assembly()
        results = {
            "base": base.describe(),
            "degrees": list(self._degrees()),
            "log_det": assembly.per_degree,
            "log_torsion_y": assembly.log_torsion,
        }
        return self._report(Experiment.TORSION, rows, results)
