"""Pipeline defaults.

All tunable thresholds (significance level, cache threshold, nominal
stonewall, straggler fences) live in the packaged `defaults.json`; a user
config file overrides individual keys, and CLI flags override both.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .errors import ConfigError

OUTDIR_ENV = "IO500KIT_OUT"


def load_defaults() -> dict:
    with resources.files("io500kit").joinpath("defaults.json").open("r", encoding="utf-8") as f:
        return json.load(f)


def load_config(path: str | Path | None = None) -> dict:
    """Defaults merged with an optional user config file (user wins)."""
    merged = load_defaults()
    if path is None:
        return merged
    try:
        with open(path, encoding="utf-8") as f:
            user = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for key, value in user.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key].update(value)
        else:
            merged[key] = value
    return merged


def default_outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "io500kit-out"))
