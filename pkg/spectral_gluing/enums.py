from enum import Enum
from functools import lru_cache


class BoundaryCondition(Enum):
    """Boundary conditions imposed at the ends of a cylinder ``[0, L] x Y``.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    code : str
        The canonical short name of the condition.
    aliases : tuple[str, ...]
        Other accepted spellings, e.g. the letters used for the gluing pieces.
    """

    code: str
    aliases: tuple[str, ...]

    DIRICHLET = ("dirichlet", ("D", "B"))
    """Vanishing boundary values."""

    NEUMANN = ("neumann", ("N", "C"))
    """Vanishing normal derivative."""

    ABSOLUTE = ("absolute", ("abs",))
    """Absolute condition on forms: Neumann on the tangential block, Dirichlet on the ``du`` block."""

    RELATIVE = ("relative", ("rel",))
    """Relative condition on forms: Dirichlet on the tangential block, Neumann on the ``du`` block."""

    def __new__(cls, code: str, aliases: tuple[str, ...]):
        obj = object.__new__(cls)
        obj._value_ = code
        obj.code = code
        obj.aliases = aliases
        return obj

    @property
    def is_form_condition(self) -> bool:
        """Whether the condition only makes sense on form-graded cylinders."""
        return self in (BoundaryCondition.ABSOLUTE, BoundaryCondition.RELATIVE)

    def blocks(self) -> tuple["BoundaryCondition", "BoundaryCondition"]:
        """Reduce the condition to scalar conditions on the two form blocks.

        .. versionadded:: 1.0.0

        Returns
        -------
        tuple[BoundaryCondition, BoundaryCondition]
            The scalar condition on the degree ``q`` block and on the ``du`` block, in that order.
        """

        if self is BoundaryCondition.ABSOLUTE:
            return BoundaryCondition.NEUMANN, BoundaryCondition.DIRICHLET
        if self is BoundaryCondition.RELATIVE:
            return BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN

        return self, self

    @classmethod
    @lru_cache(maxsize=None)
    def from_string(cls, condition: str):
        """Get a boundary condition from a string. The string can be the object name, the code or any alias.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        condition : str
            The boundary condition to get in string form.

        Returns
        -------
        BoundaryCondition or None
            The boundary condition, or :obj:`None` if the string names none.
        """

        if not hasattr(cls, "_lookup"):
            cls._lookup = {
                key.upper(): bc
                for bc in cls
                for key in (bc.name, bc.code, *bc.aliases)
            }

        return cls._lookup.get(condition.upper())


class Experiment(Enum):
    """The experiments exposed as command-line subcommands.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    command : str
        The subcommand name.
    summary : str
        A one-line description used in the command-line help.
    """

    command: str
    summary: str

    SPECTRUM = ("spectrum", "enumerate a cross-section spectrum and its heat expansion")
    ZETA = ("zeta", "zeta invariants and log-determinant of a cross-section")
    LOGDET = ("logdet", "log-determinant of a shifted cross-section along a ray")
    DTN = ("dtn", "Dirichlet-to-Neumann eigenvalues and determinants")
    SYMBOLS = ("symbols", "symbol recursion and smoothing remainder check")
    GLUE = ("glue", "gluing formula on a two-piece cylinder")
    POWER_GLUE = ("power-glue", "gluing formula for the squared operator")
    ADIABATIC = ("adiabatic", "adiabatic limits on a stretched collar")
    TORSION = ("torsion", "analytic torsion decomposition on forms")

    def __new__(cls, command: str, summary: str):
        obj = object.__new__(cls)
        obj._value_ = command
        obj.command = command
        obj.summary = summary
        return obj

    @classmethod
    @lru_cache(maxsize=None)
    def from_string(cls, experiment: str):
        """Get an experiment from its subcommand or object name.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        experiment : str
            The experiment to get in string form.

        Returns
        -------
        Experiment or None
            The experiment, or :obj:`None` if the string names none.
        """

        if not hasattr(cls, "_lookup"):
            cls._lookup = {
                key.upper(): exp
                for exp in cls
                for key in (exp.name, exp.name.replace("_", "-"), exp.command)
            }

        return cls._lookup.get(experiment.upper())


class Identity(Enum):
    """Identities checked by the gluing, adiabatic and torsion experiments.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    key : str
        The name used in reports and on the command line.
    experiment : Experiment
        The experiment that reports the identity.
    adiabatic : bool
        Whether the identity is a limit in the collar length ``r``.
    """

    key: str
    experiment: Experiment
    adiabatic: bool

    HEAT_CONSTANT = ("heat-constant", Experiment.GLUE, False)
    """The gluing constant computed from zeta data agrees with the heat-expansion constant."""

    GLUING = ("gluing", Experiment.GLUE, False)
    """Two-piece gluing formula with the Dirichlet-to-Neumann operator of the cut."""

    POWER_GLUING = ("power-gluing", Experiment.POWER_GLUE, False)
    """Gluing formula for the squared operator, summed over the conjugate rays."""

    POWER_GLUING_RAY = ("power-gluing-ray", Experiment.POWER_GLUE, False)
    """Gluing formula along one of the two conjugate rays."""

    POWER_GLUING_REALITY = ("power-gluing-reality", Experiment.POWER_GLUE, False)
    """The imaginary part of the summed gluing formula vanishes."""

    ADIABATIC_DIRICHLET = ("adiabatic-dirichlet", Experiment.ADIABATIC, True)
    """Stretched Dirichlet decomposition tends to half the log-determinant of the cross-section."""

    NEUMANN_DIRICHLET = ("neumann-dirichlet", Experiment.ADIABATIC, True)
    """Neumann minus Dirichlet determinant on one piece tends to half the log-determinant of the cross-section."""

    MIXED_SPLIT = ("mixed-split", Experiment.ADIABATIC, True)
    """Dirichlet decomposition with a Neumann piece tends to zero."""

    COLLAR_DTN = ("collar-dtn", Experiment.ADIABATIC, True)
    """Dirichlet-to-Neumann determinant of the bare collar."""

    ONE_SIDED_DTN = ("one-sided-dtn", Experiment.ADIABATIC, True)
    """Dirichlet-to-Neumann determinant of one stretched piece."""

    TWO_SIDED_DTN = ("two-sided-dtn", Experiment.ADIABATIC, True)
    """Block Dirichlet-to-Neumann determinant coupling both collar ends."""

    DTN_SPLIT = ("dtn-split", Experiment.ADIABATIC, False)
    """Exact decomposition of the stretched Dirichlet-to-Neumann determinant at fixed ``r``."""

    FORM_GLUING_ABSOLUTE = ("form-gluing-abs", Experiment.TORSION, False)
    """Gluing formula on forms with the absolute condition at the cut, at fixed ``r``."""

    FORM_GLUING_RELATIVE = ("form-gluing-rel", Experiment.TORSION, False)
    """Gluing formula on forms with the relative condition at the cut, at fixed ``r``."""

    BOUNDARY_DTN_LIMIT = ("boundary-dtn-limit", Experiment.TORSION, True)
    """Form Dirichlet-to-Neumann determinant with the absolute condition in the limit."""

    ABSOLUTE_LIMIT = ("absolute-limit", Experiment.TORSION, True)
    """Absolute minus Dirichlet determinant on forms tends to half the degree ``q`` cross-section determinant."""

    RELATIVE_LIMIT = ("relative-limit", Experiment.TORSION, True)
    """Relative minus Dirichlet determinant on forms tends to half the degree ``q - 1`` cross-section determinant."""

    TORSION_SPLIT = ("torsion-split", Experiment.TORSION, True)
    """Absolute minus relative torsion tends to the torsion of the cross-section."""

    FORM_DECOMPOSITION = ("form-decomposition", Experiment.TORSION, True)
    """Per-degree decomposition into absolute and relative pieces tends to zero."""

    TORSION_DECOMPOSITION = ("torsion-decomposition", Experiment.TORSION, True)
    """Torsion decomposition into absolute and relative torsions tends to zero."""

    def __new__(cls, key: str, experiment: Experiment, adiabatic: bool):
        obj = object.__new__(cls)
        obj._value_ = key
        obj.key = key
        obj.experiment = experiment
        obj.adiabatic = adiabatic
        return obj

    @classmethod
    @lru_cache(maxsize=None)
    def from_string(cls, identity: str):
        """Get an identity from its report key or object name.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        identity : str
            The identity to get in string form.

        Returns
        -------
        Identity or None
            The identity, or :obj:`None` if the string names none.
        """

        if not hasattr(cls, "_lookup"):
            cls._lookup = {
                key.upper(): ident
                for ident in cls
                for key in (ident.name, ident.name.replace("_", "-"), ident.key)
            }

        return cls._lookup.get(identity.upper())


class LhsMethod(Enum):
    """How the cylinder determinants on the left-hand side of a gluing identity are computed.

    .. versionadded:: 1.0.0
    """

    FACTORIZED = "factorized"
    """Fiber-by-fiber closed forms with zeta-regularized sums."""

    DOUBLE_SPECTRUM = "double-spectrum"
    """The zeta function of the full two-variable spectrum."""

    @classmethod
    @lru_cache(maxsize=None)
    def from_string(cls, method: str):
        """Get a method from its value or object name.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        method : str
            The method to get in string form.

        Returns
        -------
        LhsMethod or None
            The method, or :obj:`None` if the string names none.
        """

        if not hasattr(cls, "_lookup"):
            cls._lookup = {
                key.upper(): m for m in cls for key in (m.name, m.value)
            }

        return cls._lookup.get(method.upper())


class OutputFormat(Enum):
    """Report formats written by the command-line interface.

    .. versionadded:: 1.0.0
    """

    JSON = "json"
    CSV = "csv"
    BOTH = "both"

    @property
    def writes_json(self) -> bool:
        return self in (OutputFormat.JSON, OutputFormat.BOTH)

    @property
    def writes_csv(self) -> bool:
        return self in (OutputFormat.CSV, OutputFormat.BOTH)


class Arity(Enum):
    """Shape of the value a spectral map takes on one fiber.

    .. versionadded:: 1.0.0
    """

    SCALAR = 1
    BLOCK2 = 2
