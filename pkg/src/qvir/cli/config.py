"""Run configuration: a JSON file of defaults, overridden by command-line flags."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..exact import DEFAULT_PRIME, is_prime

CACHE_ENV = "QVIR_CACHE_DIR"


class ConfigError(ValueError):
    """Bad configuration; the CLI maps this to exit status 2."""


@dataclass
class RunConfig:
    mode: str = "symbolic"
    prime: int = DEFAULT_PRIME
    points: int = 3
    seed: int = 0
    cache_dir: str | None = None
    format: str = "json"
    bounds: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.mode not in ("symbolic", "modular"):
            raise ConfigError(f"mode must be symbolic or modular, not {self.mode!r}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"format must be json or text, not {self.format!r}")
        if self.points < 1:
            raise ConfigError("points must be positive")
        if self.mode == "modular" and (self.prime <= 2**60 or not is_prime(self.prime)):
            raise ConfigError("the modular prime must be a prime above 2^60")
        for name, value in self.bounds.items():
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"bound {name!r} must be a positive integer")
        return self

    def snapshot(self) -> dict:
        """The fields that affect results, in a fixed order (no cache path)."""
        out = asdict(self)
        out.pop("cache_dir")
        out.pop("format")
        out["prime"] = str(self.prime)
        out["bounds"] = dict(sorted(self.bounds.items()))
        return out

    def resolved_cache_dir(self) -> Path | None:
        env = os.environ.get(CACHE_ENV)
        if env:
            return Path(env)
        return Path(self.cache_dir) if self.cache_dir else None


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if "prime" in raw:
        raw["prime"] = int(raw["prime"])
    return RunConfig(**raw)


def merge_flags(cfg: RunConfig, args) -> RunConfig:
    for name in ("mode", "prime", "points", "seed", "cache_dir", "format"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg.validate()
