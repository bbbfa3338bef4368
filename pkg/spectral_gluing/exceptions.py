from typing import Any, Optional


class SpectralGluingException(Exception):
    """Base class of every exception raised by the library.

    .. versionadded:: 1.0.0
    """


class KernelError(SpectralGluingException):
    """Exception raised when an operator with a nontrivial kernel is used where invertibility is required.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    operator : Any
        The operator, or a description of it, that failed to be invertible.
    kernel_dim : int
        The detected kernel dimension, or ``0`` when a declared kernel value vanishes.
    message_format : str
        The format of the exception message. Defaults to ``Operator "{}" is not invertible (kernel dimension {}).``.
    """

    def __init__(
        self,
        operator: Any,
        kernel_dim: int,
        message_format: str = 'Operator "{}" is not invertible (kernel dimension {}).',
    ) -> None:
        message = message_format.format(operator, kernel_dim)
        super().__init__(message)
        self.operator = operator
        self.kernel_dim = kernel_dim


class ConditioningError(SpectralGluingException):
    """Exception raised when a least-squares basis is too ill-conditioned to give a trustworthy fit.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    condition_number : float
        The condition number of the normalized design matrix.
    threshold : float
        The largest accepted condition number.
    message_format : str
        The format of the exception message. Defaults to ``Fit basis is ill-conditioned: condition number {:.3e} exceeds {:.3e}.``.
    """

    def __init__(
        self,
        condition_number: float,
        threshold: float,
        message_format: str = "Fit basis is ill-conditioned: condition number {:.3e} exceeds {:.3e}.",
    ) -> None:
        message = message_format.format(condition_number, threshold)
        super().__init__(message)
        self.condition_number = condition_number
        self.threshold = threshold


class MissingAsymptoticsError(SpectralGluingException):
    """Exception raised when a spectral map or model lacks the asymptotic data a regularized determinant needs.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    subject : Any
        The spectral map or model missing its asymptotics.
    message_format : str
        The format of the exception message. Defaults to ``"{}" does not declare its asymptotic order and constant.``.
    """

    def __init__(
        self,
        subject: Any,
        message_format: str = '"{}" does not declare its asymptotic order and constant.',
    ) -> None:
        message = message_format.format(subject)
        super().__init__(message)
        self.subject = subject


class HypothesisError(SpectralGluingException):
    """Exception raised when an experiment's standing hypothesis fails for the configured geometry.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    hypothesis : str
        A short name of the failed hypothesis.
    detail : str
        What was observed.
    message_format : str
        The format of the exception message. Defaults to ``Hypothesis "{}" failed: {}.``.
    """

    def __init__(
        self,
        hypothesis: str,
        detail: str,
        message_format: str = 'Hypothesis "{}" failed: {}.',
    ) -> None:
        message = message_format.format(hypothesis, detail)
        super().__init__(message)
        self.hypothesis = hypothesis
        self.detail = detail


class AgmonRayError(SpectralGluingException):
    """Exception raised when a complex shift lies on the Agmon ray.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    theta : float
        The offending ray angle.
    message_format : str
        The format of the exception message. Defaults to ``Ray angle {} collides with the Agmon angle pi.``.
    """

    def __init__(
        self,
        theta: float,
        message_format: str = "Ray angle {} collides with the Agmon angle pi.",
    ) -> None:
        message = message_format.format(theta)
        super().__init__(message)
        self.theta = theta


class ExhaustivenessError(SpectralGluingException):
    """Exception raised when a spectrum cannot be certified complete below a cutoff.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    model : Any
        The cross-section model.
    cutoff : float
        The requested cutoff.
    message_format : str
        The format of the exception message. Defaults to ``Spectrum of "{}" cannot be certified exhaustive below {}.``.
    """

    def __init__(
        self,
        model: Any,
        cutoff: float,
        message_format: str = 'Spectrum of "{}" cannot be certified exhaustive below {}.',
    ) -> None:
        message = message_format.format(model, cutoff)
        super().__init__(message)
        self.model = model
        self.cutoff = cutoff


class TraceClassError(SpectralGluingException):
    """Exception raised when a perturbation cannot be certified trace class.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    subject : Any
        The offending spectral map.
    message_format : str
        The format of the exception message. Defaults to ``"{}" is not trace class on an infinite spectrum.``.
    """

    def __init__(
        self,
        subject: Any,
        message_format: str = '"{}" is not trace class on an infinite spectrum.',
    ) -> None:
        message = message_format.format(subject)
        super().__init__(message)
        self.subject = subject


class ConfigError(SpectralGluingException):
    """Exception raised when a run configuration is malformed.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    key : str
        The offending configuration key.
    reason : str or None
        Why the key was rejected. Defaults to ``unknown key``.
    message_format : str
        The format of the exception message. Defaults to ``Invalid configuration key "{}": {}.``.
    """

    def __init__(
        self,
        key: str,
        reason: Optional[str] = None,
        message_format: str = 'Invalid configuration key "{}": {}.',
    ) -> None:
        message = message_format.format(key, reason or "unknown key")
        super().__init__(message)
        self.key = key
