"""Content-addressed cache of experiment reports.

Entries live in one JSON file per key under the cache directory and are
written with a write-then-rename, so concurrent runs never see partial files.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

import hashlib
import json
import logging
import os

logger = logging.getLogger(__name__)

#: Environment variable overriding the cache directory.
CACHE_ENV = "SPECTRAL_GLUING_CACHE"

#: Cache directory used when :data:`CACHE_ENV` is unset.
DEFAULT_CACHE_DIR = "~/.cache/spectral-gluing"


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or DEFAULT_CACHE_DIR).expanduser()


def cache_key(experiment: str, settings: dict[str, Any], version: str) -> str:
    """Hash the experiment, its effective settings and the library version.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    experiment : str
        The experiment subcommand.
    settings : dict[str, Any]
        Every setting that affects the result, JSON-serializable.
    version : str
        The library version.

    Returns
    -------
    str
        The hexadecimal SHA-256 digest.
    """

    canonical = json.dumps(
        {"experiment": experiment, "settings": settings, "version": version},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    """A stored report.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    key : str
        The content hash.
    value : dict[str, Any]
        The serialized report.
    version : str
        The library version that stored it.
    """

    key: str
    value: dict
    version: str


class ReportCache:
    """Reports stored by content hash.

    Parameters
    ----------
    version : str
        The library version; entries stored by other versions are discarded.
    directory : Path or str or None
        The cache directory. Defaults to :func:`default_cache_dir`.
    """

    def __init__(self, version: str, directory: Optional[Union[Path, str]] = None) -> None:
        self.version = version
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def lookup(self, key: str) -> Optional[CacheEntry]:
        """Read an entry, discarding it when it is corrupt or from another version.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        key : str
            The content hash.

        Returns
        -------
        CacheEntry or None
            The entry, or :obj:`None` on a miss.
        """

        path = self.path_for(key)
        if not path.is_file():
            logger.info("cache miss %s", key[:12])
            return None

        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
            entry = CacheEntry(key=payload["key"], value=payload["value"], version=payload["version"])
        except (OSError, ValueError, KeyError, TypeError) as e:
            logger.warning("discarding corrupt cache entry %s: %s", path, e)
            path.unlink(missing_ok=True)
            return None

        if entry.version != self.version or entry.key != key:
            logger.info("discarding cache entry %s from version %s", key[:12], entry.version)
            path.unlink(missing_ok=True)
            return None

        logger.debug("cache hit %s", key[:12])
        return entry

    def store(self, key: str, value: dict[str, Any]) -> CacheEntry:
        """Write an entry atomically.

        .. versionadded:: 1.0.0

        Parameters
        ----------
        key : str
            The content hash.
        value : dict[str, Any]
            The serialized report, JSON-serializable.

        Returns
        -------
        CacheEntry
            The stored entry.
        """

        entry = CacheEntry(key=key, value=value, version=self.version)
        path = self.path_for(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(
            json.dumps(
                {"key": entry.key, "value": entry.value, "version": entry.version},
                indent=2,
                sort_keys=True,
            )
            + "\n",
            encoding="utf-8",
        )
        tmp.replace(path)
        logger.info("cached report %s", key[:12])
        return entry
