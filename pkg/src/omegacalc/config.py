"""Runtime configuration, optionally read from a JSON file."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace

CONFIG_ENV = "OMEGACALC_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    max_degree: int = 24
    root_count: int | None = None
    output_format: str = "text"
    corpus_path: str | None = None
    certificate_path: str | None = None

    def __post_init__(self):
        if self.max_degree < 0:
            raise ConfigError("max_degree must be non-negative")
        if self.root_count is None:
            object.__setattr__(self, "root_count", self.max_degree // 2 + 1)
        if self.root_count < self.max_degree // 2:
            raise ConfigError(f"root_count {self.root_count} too small for degree {self.max_degree}")
        if self.output_format not in ("text", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def with_overrides(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        if "max_degree" in kw and "root_count" not in kw:
            kw["root_count"] = None
        return replace(self, **kw)

    def to_json(self) -> dict:
        return asdict(self)


def load_config(path: str | None = None) -> Config:
    """Defaults, overlaid by the file at ``path`` or ``$OMEGACALC_CONFIG``."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return Config(**data)
