from ..decorators import sanitized, typechecked
from ..enums import Experiment, Identity

from .adiabatic import AdiabaticChecks
from .config import GeometryConfig
from .gluing import GluingChecks
from .report import Report
from .torsion import TorsionChecks

from typing import Any, Optional, Union

import logging

logger = logging.getLogger(__name__)


class Laboratory(GluingChecks, AdiabaticChecks, TorsionChecks):
    """A numerical laboratory over one product geometry.

    It assembles both sides of the gluing, adiabatic and torsion identities on
    the two-piece cylinder described by its configuration and reports residuals
    against tolerances.

    Parameters
    ----------
    config : GeometryConfig
        The geometry and numeric settings. Defaults to a point cross-section with unit pieces.

    Attributes
    ----------
    config : GeometryConfig
        The geometry and numeric settings.

    Raises
    ------
    TypeError
        Raised when ``config`` is not a :class:`GeometryConfig <spectral_gluing.glue.config.GeometryConfig>`.
    """

    @typechecked
    def __init__(self, config: Optional[GeometryConfig] = None) -> None:
        super().__init__(config or GeometryConfig())

    def _evaluate(
        self, identity: Identity, r: float, degree: Optional[int] = None
    ) -> tuple[Any, float]:
        if identity.experiment is Experiment.TORSION:
            return self._torsion_value(identity, r, degree)

        return self._adiabatic_value(identity, r)

    @typechecked
    def run(self, experiment: Union[Experiment, str]) -> Report:
        """Run one of the identity experiments.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        experiment : Experiment or str
            One of ``glue``, ``power-glue``, ``adiabatic`` or ``torsion``.

        Raises
        ------
        ValueError
            Raised when the experiment checks no identities.

        Returns
        -------
        Report
            The experiment's rows.
        """

        if isinstance(experiment, str):
            experiment = Experiment.from_string(experiment) or experiment

        runners = {
            Experiment.GLUE: self.check_gluing,
            Experiment.POWER_GLUE: self.check_power_gluing_m2,
            Experiment.ADIABATIC: self.adiabatic_limit,
            Experiment.TORSION: self.torsion_report,
        }
        if experiment not in runners:
            raise ValueError(
                f"Invalid experiment: {experiment}. Valid experiments: {[e.command for e in runners]}"
            )

        logger.info("running %s on %s", experiment.command, self.model)
        return runners[experiment]()


def evaluate_at(
    config: GeometryConfig, identity_key: str, r: float, degree: Optional[int] = None
) -> tuple[Any, float]:
    """Evaluate one identity expression at one collar length in a worker process."""
    return Laboratory(config)._evaluate(Identity.from_string(identity_key), r, degree)


@typechecked
def check_gluing(config: GeometryConfig) -> Report:
    """Shortcut for :meth:`Laboratory.check_gluing <GluingChecks.check_gluing>`.

    .. versionadded:: 1.0.0
    """

    return Laboratory(config).check_gluing()


@typechecked
def check_power_gluing_m2(config: GeometryConfig) -> Report:
    """Shortcut for :meth:`Laboratory.check_power_gluing_m2 <GluingChecks.check_power_gluing_m2>`.

    .. versionadded:: 1.0.0
    """

    return Laboratory(config).check_power_gluing_m2()


@typechecked
@sanitized
def adiabatic_limit(
    config: GeometryConfig,
    r_grid: Optional[Any] = None,
    identity: Optional[Union[Identity, str]] = None,
) -> Report:
    """Shortcut for :meth:`Laboratory.adiabatic_limit <AdiabaticChecks.adiabatic_limit>`.

    .. versionadded:: 1.0.0
    """

    return Laboratory(config).adiabatic_limit(identity=identity, r_grid=r_grid)


@typechecked
def torsion_report(config: GeometryConfig) -> Report:
    """Shortcut for :meth:`Laboratory.torsion_report <TorsionChecks.torsion_report>`.

    .. versionadded:: 1.0.0
    """

    return Laboratory(config).torsion_report()
