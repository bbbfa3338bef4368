from ..decorators import _sanitize_r_grid_value
from ..enums import Identity, LhsMethod
from ..spectra import CrossSection, Point

from dataclasses import dataclass, field
from typing import Any, Optional

import math


@dataclass(frozen=True)
class Tolerances:
    """Residual tolerances by error source.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    exact : float
        For identities that hold exactly on finite spectra.
    fixed : float
        For identities at a fixed collar length on infinite spectra.
    limit : float
        For extrapolated limits.
    """

    exact: float = 1e-10
    fixed: float = 1e-6
    limit: float = 1e-3

    @classmethod
    def uniform(cls, value: float) -> "Tolerances":
        return cls(exact=value, fixed=value, limit=value)

    def for_model(self, model: CrossSection) -> float:
        return self.exact if model.is_finite else self.fixed


@dataclass(frozen=True)
class GeometryConfig:
    """The two-piece product geometry ``[-a, 0] x Y  u  [0, b] x Y`` with Dirichlet far ends, and its numeric settings.

    The adiabatic and torsion experiments insert a collar of length ``r`` on
    each side of the cut.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    cross_section : CrossSection
        The cutting hypersurface ``Y``.
    lengths : tuple[float, float]
        The lengths ``(a, b)`` of the two pieces.
    shift : float
        A real shift of the Laplacian for the fixed-geometry gluing checks.
    ray_modulus : float
        The modulus ``t`` of the conjugate shifts ``+-i t`` of the squared-operator check.
    r_grid : tuple[float, ...]
        Collar lengths, positive, increasing, at least four.
    cutoff : float
        Fiber cutoff of the invertibility check.
    lhs_method : LhsMethod
        How cylinder determinants are computed.
    tolerances : Tolerances
        Residual tolerances.
    identities : tuple[Identity, ...] or None
        The identities to report, :obj:`None` for all of an experiment's.
    jobs : int
        Worker processes for the collar-length sequences.
    """

    cross_section: CrossSection = field(default_factory=Point)
    lengths: tuple = (1.0, 1.0)
    shift: float = 0.0
    ray_modulus: float = 1.0
    r_grid: tuple = (1.0, 2.0, 4.0, 8.0)
    cutoff: float = 400.0
    lhs_method: LhsMethod = LhsMethod.DOUBLE_SPECTRUM
    tolerances: Tolerances = field(default_factory=Tolerances)
    identities: Optional[tuple] = None
    jobs: int = 1

    def __post_init__(self) -> None:
        lengths = tuple(float(x) for x in self.lengths)
        if len(lengths) != 2 or not all(0 < x < math.inf for x in lengths):
            raise ValueError(f"Invalid lengths: {self.lengths}. Two positive lengths are required.")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "r_grid", _sanitize_r_grid_value(self.r_grid))

        if self.shift < 0:
            raise ValueError(f"Invalid shift: {self.shift}. Must be nonnegative.")
        if not self.ray_modulus > 0:
            raise ValueError(f"Invalid ray modulus: {self.ray_modulus}. Must be positive.")
        if self.jobs < 1:
            raise ValueError(f"Invalid number of jobs: {self.jobs}. Must be positive.")

        if isinstance(self.lhs_method, str):
            method = LhsMethod.from_string(self.lhs_method)
            if method is None:
                raise ValueError(f"Invalid method: {self.lhs_method}.")
            object.__setattr__(self, "lhs_method", method)

        if self.identities is not None:
            resolved = []
            for item in self.identities:
                identity = item if isinstance(item, Identity) else Identity.from_string(item)
                if identity is None:
                    raise ValueError(f"Invalid identity: {item}.")
                resolved.append(identity)
            object.__setattr__(self, "identities", tuple(resolved))

    def selects(self, identity: Identity) -> bool:
        return self.identities is None or identity in self.identities

    def describe(self) -> dict[str, Any]:
        return {
            "cross_section": self.cross_section.describe(),
            "lengths": list(self.lengths),
            "shift": self.shift,
            "ray_modulus": self.ray_modulus,
            "r_grid": list(self.r_grid),
            "cutoff": self.cutoff,
            "lhs_method": self.lhs_method.value,
            "tolerances": {
                "exact": self.tolerances.exact,
                "fixed": self.tolerances.fixed,
                "limit": self.tolerances.limit,
            },
            "identities": None
            if self.identities is None
            else [identity.key for identity in self.identities],
        }
