"""Limits of collar-length sequences ``v(r) = limit + amplitude * exp(-rate * r) + ...``."""
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import logging
import math

import numpy as np
import scipy.optimize

logger = logging.getLogger(__name__)

#: Sequences whose last two values agree to this relative precision count as settled.
SETTLED_TOLERANCE = 1e-12

#: Largest ``rate * step`` searched for on the last two steps; faster tails are cut off there.
MAX_RATE_REACH = 50.0


@dataclass(frozen=True)
class Extrapolation:
    """An extrapolated limit.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    limit : float
        The extrapolated ``v_inf``.
    amplitude : float
        The decaying term at the last collar length, ``v(r_last) - limit`` for a fit.
    rate : float
        The decay rate of the tail, ``0`` when none was fitted.
    converged : bool
        Whether the tail converges.
    error_bound : float
        The size of the correction for a fit, else the last step.
    message : str
        How the limit was obtained: ``fit``, ``last value``, ``settled`` or ``no exponential tail``.
    """

    limit: float
    amplitude: float
    rate: float
    converged: bool
    error_bound: float
    message: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "limit": self.limit,
            "amplitude": self.amplitude,
            "rate": self.rate,
            "converged": self.converged,
            "error_bound": self.error_bound,
            "message": self.message,
        }


def _tail_rate(rs: np.ndarray, steps: np.ndarray) -> Optional[float]:
    """The rate ``c`` whose exponential reproduces the ratio of the last two steps, if one exists.

    For ``limit + amplitude * exp(-c r)`` the ratio of consecutive steps falls
    from ``h2 / h1`` at ``c = 0`` towards ``0``; on an even grid it is ``exp(-c h)``.
    """
    h1, h2 = float(rs[-2] - rs[-3]), float(rs[-1] - rs[-2])
    ratio = float(steps[-1] / steps[-2])

    def step_ratio(c):
        return math.exp(-c * h1) * math.expm1(-c * h2) / math.expm1(-c * h1) - ratio

    lo, hi = 1e-8 / max(h1, h2), MAX_RATE_REACH / max(h1, h2)
    if ratio <= 0 or step_ratio(lo) <= 0:
        return None
    if step_ratio(hi) >= 0:
        return hi

    return float(scipy.optimize.brentq(step_ratio, lo, hi, xtol=1e-14, rtol=1e-12))


def extrapolate(rs: Sequence[float], values: Sequence[Any]) -> Extrapolation:
    """Extrapolate an exponentially converging sequence from its last three terms.

    The exponential through the last three points gives the limit; on an even
    grid this is Aitken's delta-squared step. Earlier points still carry the
    faster decaying terms and do not enter. A limit that moves farther from the
    last value than the last step is discarded for the last value, with the last
    step as its error bound. Settled sequences short-circuit, and steps that grow
    or change sign are reported with ``converged`` set to :obj:`False`.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    rs : Sequence[float]
        The collar lengths, increasing, at least three.
    values : Sequence[Any]
        The real sequence values.

    Returns
    -------
    Extrapolation
        The limit and diagnostics.
    """

    rs = np.asarray([float(r) for r in rs])
    vs = np.asarray([float(v) for v in values])
    if len(rs) < 3:
        raise ValueError(f"Invalid sequence length: {len(rs)}. Need at least three terms.")

    last, steps = float(vs[-1]), np.diff(vs)
    if not np.all(np.isfinite(vs)):
        return Extrapolation(last, 0.0, 0.0, False, math.inf, "no exponential tail")

    scale = max(1.0, float(np.max(np.abs(vs))))
    if abs(steps[-1]) <= SETTLED_TOLERANCE * scale:
        return Extrapolation(last, 0.0, 0.0, True, float(abs(steps[-1])), "settled")

    gap = float(abs(steps[-1]))
    rate = _tail_rate(rs, steps) if steps[-2] != 0 else None
    if rate is None:
        logger.warning("no exponential tail through %s", vs[-3:].tolist())
        return Extrapolation(last, 0.0, 0.0, False, gap, "no exponential tail")

    # decaying term at the last collar length
    amplitude = -float(steps[-1]) / math.expm1(rate * (rs[-1] - rs[-2]))
    limit = last - amplitude
    if not math.isfinite(limit) or abs(amplitude) > gap:
        logger.info("extrapolated correction %.2e exceeds the last step %.2e", amplitude, gap)
        return Extrapolation(last, amplitude, rate, True, gap, "last value")

    logger.debug("extrapolated limit %s (rate %s, correction %.2e)", limit, rate, amplitude)
    return Extrapolation(limit, amplitude, rate, True, abs(amplitude), "fit")


def is_monotone_decreasing(residuals: Sequence[float], floor: float = 1e-13) -> bool:
    """Whether residuals decrease strictly until they reach ``floor``."""
    return all(b < a or b <= floor for a, b in zip(residuals, residuals[1:]))
