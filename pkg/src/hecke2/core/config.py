"""User configuration for hecke2, read from config.toml in the app directory."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import toml
import typer
from platformdirs import user_cache_dir

logger = logging.getLogger(__name__)

APP_NAME = "hecke2"
CONFIG_ENV = "HECKE2_CONFIG"
CACHE_DIR_ENV = "HECKE2_CACHE_DIR"
DEFAULT_WITNESS_PRIME_COUNT = 15


def app_dir() -> Path:
    return Path(typer.get_app_dir(APP_NAME))


def cache_root() -> Path:
    """Platform cache directory for F_p tables (e.g. ~/.cache/hecke2)."""
    return Path(user_cache_dir(APP_NAME))


def config_path() -> Path:
    """Location of the config file, honouring HECKE2_CONFIG."""
    override = os.environ.get(CONFIG_ENV)
    if override:
        return Path(override).expanduser()
    return app_dir() / "config.toml"


@dataclass(frozen=True)
class Settings:
    """Resolved settings for one command invocation."""

    cache_dir: Path
    jobs: int
    witness_prime_count: int = DEFAULT_WITNESS_PRIME_COUNT
    use_cache: bool = True


def _read_config(path: Path) -> dict[str, Any]:
    if not path.exists():
        return {}
    try:
        with open(path) as f:
            return toml.load(f)
    except (OSError, toml.TomlDecodeError) as e:
        raise RuntimeError(f"Failed to read config file {path}: {e}") from e


def _positive_int(data: dict[str, Any], key: str, default: int, minimum: int) -> int:
    """Read an integer setting, rejecting bools and values below minimum."""
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise RuntimeError(f"config key '{key}' must be an integer >= {minimum}")
    return value


def load_settings(path: Path | None = None) -> Settings:
    """Load settings from the config file and the environment.

    HECKE2_CACHE_DIR overrides the file's cache_dir; unknown keys are ignored.

    Args:
        path: Config file to read instead of the default location

    Returns:
        The resolved settings

    Raises:
        RuntimeError: If the config file cannot be parsed or holds bad values
    """
    path = path if path is not None else config_path()
    data = _read_config(path)
    logger.debug("config %s: %s", path, sorted(data))

    cache_dir = os.environ.get(CACHE_DIR_ENV) or data.get("cache_dir")
    if cache_dir is not None and not isinstance(cache_dir, str):
        raise RuntimeError("config key 'cache_dir' must be a string")
    use_cache = data.get("use_cache", True)
    if not isinstance(use_cache, bool):
        raise RuntimeError("config key 'use_cache' must be true or false")

    return Settings(
        cache_dir=Path(cache_dir).expanduser() if cache_dir else cache_root(),
        jobs=_positive_int(data, "jobs", os.cpu_count() or 1, 1),
        witness_prime_count=_positive_int(
            data, "witness_prime_count", DEFAULT_WITNESS_PRIME_COUNT, 2
        ),
        use_cache=use_cache,
    )
