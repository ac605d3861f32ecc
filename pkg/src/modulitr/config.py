"""Run configuration for the verification harness.

Configuration comes from three layers, weakest first: built-in defaults,
an optional flat ``key = value`` text file, and command-line flags.  The
environment variable ``MODULI_TR_CACHE`` supplies the default cache
directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, asdict

from .errors import ExactError

CACHE_ENV = "MODULI_TR_CACHE"

_INT_KEYS = ("gmax", "nmax", "kmax", "dmax", "order", "jobs")
_STR_KEYS = ("cache_dir", "hodge_table")


@dataclass
class RunConfig:
    gmax: int = 2
    nmax: int = 4
    kmax: int = 6
    dmax: int = 5
    order: int = 10
    jobs: int = 1
    cache_dir: str = ""
    hodge_table: str = ""
    checks: tuple = ()

    def __post_init__(self):
        for key in _INT_KEYS:
            if getattr(self, key) < 0:
                raise ExactError(f"config bound {key} must be >= 0")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["checks"] = list(self.checks)
        return out


def parse_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment line."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for ln, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ExactError(f"bad config line {ln}: {raw!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if key in _INT_KEYS:
                out[key] = int(value)
            elif key in _STR_KEYS:
                out[key] = value
            elif key == "checks":
                out["checks"] = tuple(v for v in value.split(",") if v)
            else:
                raise ExactError(f"unknown config key {key!r} (line {ln})")
    return out


def build_config(file_path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Layer defaults, optional config file, environment, and overrides."""
    data = {}
    env_cache = os.environ.get(CACHE_ENV)
    if env_cache:
        data["cache_dir"] = env_cache
    if file_path:
        data.update(parse_config_file(file_path))
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    return RunConfig(**data)
