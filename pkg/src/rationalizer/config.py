"""Configuration plumbing: data directory resolution and flat key/value files.

The data directory comes from (in order) an explicit argument, the
RATIONALIZER_DATA_DIR environment variable, a config file's ``data_dir``
entry, or the ``./rationalizer-data`` default. Config and thresholds files
share one trivial format: ``key = value`` lines, ``#`` comments.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

DATA_DIR_ENV = "RATIONALIZER_DATA_DIR"
CONFIG_ENV = "RATIONALIZER_CONFIG"
PORT_ENV = "RATIONALIZER_PORT"
TOKEN_ENV = "RATIONALIZER_TOKEN"

DEFAULT_DATA_DIR = "rationalizer-data"


def load_key_values(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` file; raises ValueError on a bad line."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{number}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def resolve_data_dir(
    explicit: Optional[str] = None, config_file: Optional[str] = None
) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    config_path = config_file or os.environ.get(CONFIG_ENV)
    if config_path and Path(config_path).exists():
        values = load_key_values(config_path)
        if "data_dir" in values:
            return Path(values["data_dir"])
    return Path(DEFAULT_DATA_DIR)
