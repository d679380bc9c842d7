"""
Configuration loading.

Settings live in ``config/<environment>.json``. The environment comes from
``EDGEDECOMP_ENV`` (default ``development``) and the directory from
``EDGEDECOMP_CONFIG_DIR`` (default: the repository's ``config`` folder).
"""

import json
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from edgedecomp.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_ENVIRONMENT = "development"
DEFAULT_CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


@dataclass(frozen=True)
class EndgameConfig:
    """Cap on the exact solver used by the treewidth-3 endgame."""
    max_vertices: int = 16


@dataclass(frozen=True)
class OracleCaps:
    """Size limits for the exact path/cycle number oracles."""
    vertices: int = 16
    edges: int = 32
    node_budget: Optional[int] = None


@dataclass(frozen=True)
class LoggingConfig:
    level: str = "INFO"
    format: str = "simple"


@dataclass(frozen=True)
class Settings:
    environment: str = DEFAULT_ENVIRONMENT
    endgame: EndgameConfig = field(default_factory=EndgameConfig)
    oracle: OracleCaps = field(default_factory=OracleCaps)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    bench_workers: int = 1

    def with_overrides(self, endgame_cap: Optional[int] = None,
                       cap_vertices: Optional[int] = None,
                       cap_edges: Optional[int] = None) -> "Settings":
        """Return a copy with command-line overrides applied."""
        settings = self
        if endgame_cap is not None:
            settings = replace(settings, endgame=EndgameConfig(max_vertices=endgame_cap))
        if cap_vertices is not None:
            settings = replace(settings, oracle=replace(settings.oracle, vertices=cap_vertices))
        if cap_edges is not None:
            settings = replace(settings, oracle=replace(settings.oracle, edges=cap_edges))
        return settings


def _positive_int(section: dict, key: str, default: Optional[int]) -> Optional[int]:
    value = section.get(key, default)
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
        raise ConfigError(f"'{key}' must be a positive integer, got {value!r}")
    return value


def settings_from_dict(data: dict) -> Settings:
    """
    Build Settings from a parsed JSON document.

    Args:
        data: Parsed configuration document

    Returns:
        Settings: Validated settings, defaults filled in
    """
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be an object")

    endgame = data.get("endgame", {})
    oracle = data.get("oracle", {})
    log_section = data.get("logging", {})
    bench = data.get("bench", {})

    level = str(log_section.get("level", "info")).upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ConfigError(f"unknown logging level {level!r}")
    fmt = log_section.get("format", "simple")
    if fmt not in ("simple", "detailed"):
        raise ConfigError(f"unknown logging format {fmt!r}")

    return Settings(
        environment=data.get("environment", DEFAULT_ENVIRONMENT),
        endgame=EndgameConfig(max_vertices=_positive_int(endgame, "max_vertices", 16)),
        oracle=OracleCaps(
            vertices=_positive_int(oracle, "vertices", 16),
            edges=_positive_int(oracle, "edges", 32),
            node_budget=_positive_int(oracle, "node_budget", None),
        ),
        logging=LoggingConfig(level=level, format=fmt),
        bench_workers=_positive_int(bench, "workers", 1),
    )


def load_settings(environment: Optional[str] = None,
                  config_dir: Optional[os.PathLike] = None) -> Settings:
    """
    Load settings for an environment.

    Args:
        environment: Environment name; falls back to EDGEDECOMP_ENV
        config_dir: Directory holding <environment>.json

    Returns:
        Settings: Loaded settings, or defaults when the file does not exist
    """
    environment = environment or os.environ.get("EDGEDECOMP_ENV", DEFAULT_ENVIRONMENT)
    directory = Path(config_dir or os.environ.get("EDGEDECOMP_CONFIG_DIR", DEFAULT_CONFIG_DIR))
    path = directory / f"{environment}.json"

    if not path.exists():
        logger.warning(f"⚠️ No configuration at {path}, using defaults")
        return Settings(environment=environment)

    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"{path}: {e}") from e

    settings = settings_from_dict(data)
    logger.debug(f"Loaded configuration from {path}")
    return settings
