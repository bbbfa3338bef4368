"""Command-line interface: ``spectral-gluing <experiment> [options]``.

Exit codes: ``0`` every row passed, ``1`` configuration or usage error,
``2`` a standing hypothesis failed, ``3`` a row exceeded its tolerance.
"""
from . import __version__
from .cache import ReportCache, cache_key
from .dtn import (
    Rmrr,
    dtn_eigenvalue,
    dtn_family_from_config,
    dtn_log_det,
    min_block_eigen,
)
from .enums import Experiment, OutputFormat
from .exceptions import ConfigError, HypothesisError, KernelError, SpectralGluingException
from .glue import GeometryConfig, Laboratory, Report, Tolerances
from .glue.report import to_jsonable
from .spectra import cross_section_from_config, enumerate_spectrum, heat_expansion
from .symbols import (
    TrigPotential,
    format_expansion,
    matches_constant_expansion,
    ricatti_expansion,
    smoothing_decay_check,
)
from .zeta import (
    RayShift,
    asymptotic_zero_coeff,
    exponent_basis,
    log_det_shifted,
    zeta_invariants,
)

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

import argparse
import csv
import io
import json
import logging
import math
import sys

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_TOLERANCE = 3

#: Columns of the CSV summary.
CSV_COLUMNS = ("identity", "r", "lhs", "rhs", "residual", "tolerance", "pass")

#: Fiber entries listed by the ``dtn`` experiment.
DTN_SAMPLES = 12

_GEOMETRY_KEYS = {
    "cross_section",
    "lengths",
    "shift",
    "ray_modulus",
    "r_grid",
    "cutoff",
    "tolerances",
    "lhs_method",
    "identities",
    "jobs",
}
_EXPERIMENT_KEYS = {"theta", "t", "window", "family", "potential", "depth", "smoothing"}
_RUN_KEYS = {"experiment", "output"} | _GEOMETRY_KEYS | _EXPERIMENT_KEYS
_SMOOTHING_KEYS = {"length", "t", "cutoff", "order"}


def _tolerances_from_config(value: Any) -> Tolerances:
    if isinstance(value, (int, float)):
        return Tolerances.uniform(float(value))

    if unknown := set(value) - {"exact", "fixed", "limit"}:
        raise ConfigError("tolerances", f"unknown tiers {sorted(unknown)}")

    return Tolerances(**{tier: float(v) for tier, v in value.items()})


@dataclass(frozen=True)
class RunConfig:
    """Everything one command-line run depends on.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    experiment : Experiment
        The experiment to run.
    geometry : GeometryConfig
        The cross-section, geometry and numeric settings.
    theta, t : float
        The shift ray of the ``logdet`` experiment.
    window : tuple[float, float, int] or None
        Large-shift sampling window ``(t_min, t_max, samples)`` of the ``logdet`` constant-coefficient fit.
    family : dict
        The Dirichlet-to-Neumann family descriptor of the ``dtn`` experiment.
    potential : TrigPotential
        The potential of the ``symbols`` experiment.
    depth : int
        The number of symbol orders below the principal one.
    smoothing : dict or None
        Arguments of the smoothing remainder check.
    out_dir : Path
        Where reports are written.
    output_format : OutputFormat
        Which reports are written.
    """

    experiment: Experiment
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    theta: float = 0.0
    t: float = 1.0
    window: Optional[tuple] = None
    family: dict = field(default_factory=lambda: {"kind": "join", "lengths": [1.0, 1.0]})
    potential: TrigPotential = field(default_factory=lambda: TrigPotential(constant=1.0))
    depth: int = 4
    smoothing: Optional[dict] = None
    out_dir: Path = Path(".")
    output_format: OutputFormat = OutputFormat.JSON

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> "RunConfig":
        """Validate a configuration document.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        data : dict[str, Any]
            The parsed document, with command-line overrides applied.

        Raises
        ------
        ConfigError
            Raised on unknown keys and invalid values.

        Returns
        -------
        RunConfig
            The validated configuration.
        """

        if unknown := sorted(set(data) - _RUN_KEYS):
            raise ConfigError(unknown[0])

        experiment = Experiment.from_string(str(data.get("experiment", "")))
        if experiment is None:
            raise ConfigError("experiment", f"expected one of {[e.command for e in Experiment]}")

        geometry: dict[str, Any] = {}
        for key in _GEOMETRY_KEYS & set(data):
            value = data[key]
            try:
                if key == "cross_section":
                    value = cross_section_from_config(value)
                elif key == "tolerances":
                    value = _tolerances_from_config(value)
                elif key == "lengths":
                    value = tuple(value)
                elif key in ("r_grid", "identities"):
                    value = tuple(value)
                elif key == "jobs":
                    value = int(value)
                elif key != "lhs_method":
                    value = float(value)
            except (TypeError, ValueError) as e:
                raise ConfigError(key, str(e)) from e
            geometry[key] = value

        try:
            geometry_config = GeometryConfig(**geometry)
        except (TypeError, ValueError) as e:
            raise ConfigError("geometry", str(e)) from e

        output = data.get("output", {})
        if unknown := sorted(set(output) - {"dir", "format"}):
            raise ConfigError(f"output.{unknown[0]}")
        output_format = OutputFormat.__members__.get(str(output.get("format", "json")).upper())
        if output_format is None:
            raise ConfigError("output.format", "expected json, csv or both")

        smoothing = data.get("smoothing")
        if smoothing is not None and (unknown := sorted(set(smoothing) - _SMOOTHING_KEYS)):
            raise ConfigError(f"smoothing.{unknown[0]}")

        window = data.get("window")
        if window is not None:
            try:
                lo, hi, samples = window
                window = (float(lo), float(hi), int(samples))
            except (TypeError, ValueError) as e:
                raise ConfigError("window", "expected [t_min, t_max, samples]") from e
            if not (0 < window[0] < window[1] < math.inf and window[2] >= 2):
                raise ConfigError("window", "expected 0 < t_min < t_max and at least two samples")

        try:
            return cls(
                experiment=experiment,
                geometry=geometry_config,
                theta=float(data.get("theta", 0.0)),
                t=float(data.get("t", 1.0)),
                window=window,
                family=dict(data.get("family", {"kind": "join", "lengths": [1.0, 1.0]})),
                potential=TrigPotential.from_config(data.get("potential", 1.0)),
                depth=int(data.get("depth", 4)),
                smoothing=None if smoothing is None else dict(smoothing),
                out_dir=Path(output.get("dir", ".")),
                output_format=output_format,
            )
        except (TypeError, ValueError, AttributeError) as e:
            raise ConfigError(experiment.command, str(e)) from e

    def settings(self) -> dict[str, Any]:
        """Every setting that affects the results, in JSON types."""
        settings = {"experiment": self.experiment.command, **self.geometry.describe()}
        extra = {
            Experiment.LOGDET: {"theta": self.theta, "t": self.t, "window": self.window},
            Experiment.DTN: {"family": self.family},
            Experiment.SYMBOLS: {
                "potential": self.potential.describe(),
                "depth": self.depth,
                "smoothing": self.smoothing,
            },
        }
        settings.update(extra.get(self.experiment, {}))
        return to_jsonable(settings)


def _report(run: RunConfig, results: dict[str, Any]) -> Report:
    return Report(experiment=run.experiment, results=results, version=__version__)


def _run_spectrum(run: RunConfig) -> Report:
    model, cutoff = run.geometry.cross_section, run.geometry.cutoff
    stream = enumerate_spectrum(model, cutoff)
    expansion = heat_expansion(model)
    return _report(
        run,
        {
            "eigenvalues": [list(pair) for pair in stream.as_floats()],
            "count": stream.total_multiplicity,
            "kernel_dim": model.kernel_dim(),
            "heat_expansion": [[str(power), coeff] for power, coeff in expansion.terms],
            "heat_constant": expansion.constant,
        },
    )


def _run_zeta(run: RunConfig) -> Report:
    model = run.geometry.cross_section
    invariants = zeta_invariants(model)
    return _report(
        run,
        {
            "zeta0": invariants.zeta0,
            "zeta0_prime": invariants.zeta0_prime,
            "log_det": invariants.log_det,
            "error_bound": invariants.error_bound,
            "kernel_dim": model.kernel_dim(),
        },
    )


def _run_logdet(run: RunConfig) -> Report:
    model = run.geometry.cross_section
    shift = RayShift(theta=run.theta, t=run.t)
    results = {
        "log_det": log_det_shifted(model, shift),
        "zeta0": zeta_invariants(model, shift=shift).zeta0,
    }

    if run.window is not None:
        lo, hi, count = run.window
        ts = [lo * (hi / lo) ** (j / (count - 1)) for j in range(count)]
        samples = [(t, log_det_shifted(model, RayShift(theta=run.theta, t=t))) for t in ts]
        fit = asymptotic_zero_coeff(samples, exponent_basis(model))
        results["fit"] = {
            "pi0": fit.pi0,
            "basis": [basis.label for basis in fit.basis],
            "coefficients": list(fit.coefficients),
            "residual_norm": fit.residual_norm,
            "condition_number": fit.condition_number,
            "stability": fit.stability,
        }

    return _report(run, results)


def _run_dtn(run: RunConfig) -> Report:
    model = run.geometry.cross_section
    family = dtn_family_from_config(run.family)
    fibers = enumerate_spectrum(model, run.geometry.cutoff).entries[:DTN_SAMPLES]
    results: dict[str, Any] = {
        "family": repr(family),
        "log_det": dtn_log_det(family, model),
        "fibers": [
            {"lambda": lam, "multiplicity": mult, "value": dtn_eigenvalue(family, lam)}
            for lam, mult in fibers
        ],
    }
    if isinstance(family, Rmrr):
        minimum = min_block_eigen(family, model, run.geometry.cutoff)
        results["block_minimum"] = {
            "value": minimum.value,
            "at": minimum.at,
            "tail_bound": minimum.tail_bound,
            "certified": minimum.certified,
        }

    return _report(run, results)


def _run_symbols(run: RunConfig) -> Report:
    expansion = ricatti_expansion(run.potential, run.depth)
    results: dict[str, Any] = {
        "orders": format_expansion(expansion).splitlines(),
        "u_free": expansion.is_u_free,
        "homogeneous": expansion.is_homogeneous(),
        "parity": expansion.has_parity(),
        "real_symmetric": expansion.is_real_symmetric(),
    }
    if run.potential.is_constant:
        results["matches_constant_expansion"] = matches_constant_expansion(expansion)

    if run.smoothing is not None:
        options = {"length": 1.0, "t": 1.0, "cutoff": 400.0, "order": 5, **run.smoothing}
        report = smoothing_decay_check(
            float(options["length"]),
            float(options["t"]),
            float(options["cutoff"]),
            int(options["order"]),
        )
        results["smoothing"] = {
            "argmax": report.argmax,
            "maximum": report.maximum,
            "monotone_after": report.monotone_after,
            "zero_remainder": report.zero_remainder,
        }

    return _report(run, results)


_RUNNERS = {
    Experiment.SPECTRUM: _run_spectrum,
    Experiment.ZETA: _run_zeta,
    Experiment.LOGDET: _run_logdet,
    Experiment.DTN: _run_dtn,
    Experiment.SYMBOLS: _run_symbols,
}


def execute(run: RunConfig) -> Report:
    """Run an experiment and return its report, without touching the cache or the filesystem.

    .. versionadded:: 1.0.0
    """

    runner = _RUNNERS.get(run.experiment)
    report = runner(run) if runner else Laboratory(run.geometry).run(run.experiment)
    report.config = run.settings()
    return report


def _write_atomic(path: Path, text: str) -> None:
    """Replace ``path`` with ``text`` through a sibling temporary file, removed on failure."""
    tmp = path.with_name(f"{path.name}.tmp")
    try:
        with tmp.open("w", newline="", encoding="utf-8") as f:
            f.write(text)
        tmp.replace(path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def write_report(payload: dict[str, Any], out_dir: Path, output_format: OutputFormat) -> list[Path]:
    """Write the JSON report and, or, the CSV summary of a serialized report.

    .. versionadded:: 1.0.0
    """

    out_dir.mkdir(parents=True, exist_ok=True)
    stem = payload["experiment"]
    written = []
    if output_format.writes_json:
        path = out_dir / f"{stem}.json"
        document = {**payload, "generated_at": datetime.now(timezone.utc).isoformat()}
        _write_atomic(path, json.dumps(document, indent=2, sort_keys=True) + "\n")
        written.append(path)

    if output_format.writes_csv:
        path = out_dir / f"{stem}.csv"
        buffer = io.StringIO(newline="")
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(payload["rows"])
        _write_atomic(path, buffer.getvalue())
        written.append(path)

    return written


def run(run_config: RunConfig, use_cache: bool = True, cache: Optional[ReportCache] = None) -> int:
    """Run an experiment through the cache, write its reports and return the exit code.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    run_config : RunConfig
        The validated configuration.
    use_cache : bool
        Whether cached reports are read and written. Defaults to :obj:`True`.
    cache : ReportCache or None
        The cache. Defaults to one in :func:`default_cache_dir <spectral_gluing.cache.default_cache_dir>`.

    Returns
    -------
    int
        ``0`` if every row passed, ``3`` otherwise.
    """

    cache = cache or ReportCache(__version__)
    key = cache_key(run_config.experiment.command, run_config.settings(), __version__)
    entry = cache.lookup(key) if use_cache else None
    if entry is not None:
        payload = entry.value
    else:
        report = execute(run_config)
        payload = json.loads(json.dumps(report.to_dict(), sort_keys=True))
        if use_cache:
            cache.store(key, payload)

    for path in write_report(payload, run_config.out_dir, run_config.output_format):
        logger.info("wrote %s", path)

    failures = [row for row in payload["rows"] if not row["pass"]]
    for row in failures:
        logger.error(
            "%s%s: residual %s exceeds tolerance %s",
            row["identity"],
            "" if row["r"] is None else f" at r={row['r']}",
            row["residual"],
            row["tolerance"],
        )

    return EXIT_TOLERANCE if failures else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON configuration document")
    common.add_argument("--cutoff", type=float, help="spectral cutoff")
    common.add_argument("--tol", type=float, help="one tolerance for every tier")
    common.add_argument("--r-grid", type=float, nargs="+", help="collar lengths, increasing")
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="report format")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument(
        "--identity", action="append", help="report only this identity; repeatable"
    )
    common.add_argument("--jobs", type=int, help="worker processes for r-grid sequences")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = _Parser(
        prog="spectral-gluing",
        description="Zeta-regularized determinants, Dirichlet-to-Neumann operators and gluing identities on product models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    for experiment in Experiment:
        subparsers.add_parser(experiment.command, parents=[common], help=experiment.summary)

    return parser


def _load_document(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}

    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise ConfigError("config", f"cannot read {path}: {e}") from e

    if not isinstance(document, dict):
        raise ConfigError("config", "the document must be a JSON object")

    return document


def _apply_overrides(document: dict[str, Any], args: argparse.Namespace) -> dict[str, Any]:
    data = {**document, "experiment": args.experiment}
    overrides = {
        "cutoff": args.cutoff,
        "r_grid": args.r_grid,
        "tolerances": args.tol,
        "identities": args.identity,
        "jobs": args.jobs,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})

    output = dict(data.get("output", {}))
    if args.out is not None:
        output["dir"] = str(args.out)
    if args.format is not None:
        output["format"] = args.format
    if output:
        data["output"] = output

    return data


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the ``spectral-gluing`` command.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    argv : Sequence[str] or None
        The arguments. Defaults to :data:`sys.argv`.

    Returns
    -------
    int
        The exit code.
    """

    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        run_config = RunConfig.from_mapping(_apply_overrides(_load_document(args.config), args))
        return run(run_config, use_cache=not args.no_cache)
    except ConfigError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except (HypothesisError, KernelError) as e:
        logger.error("%s", e)
        return EXIT_HYPOTHESIS
    except (SpectralGluingException, ValueError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
