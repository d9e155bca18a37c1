"""Run configuration: defaults, JSON config file, command-line overrides."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Optional

from .elements import Region
from .errors import ConfigError, InvalidElement
from .topology import is_prime


@dataclass(frozen=True)
class RunConfig:
    # None: each suite runs on the region its acceptance criterion names
    region: Optional[Region] = None
    bcap: int = 4
    primes: tuple[int, ...] = (2, 3, 5)
    alpha_min: int = 1
    alpha_max: int = 3
    lambda_factor: int = 4
    maxlen: int = 6
    format: str = "json"
    workers: int = 1
    seed: int = 0
    random_words: int = 10_000

    def __post_init__(self) -> None:
        if not 1 <= self.alpha_min <= self.alpha_max:
            raise ConfigError("need 1 <= alpha_min <= alpha_max")
        if self.bcap < 0 or self.alpha_max < 1 or self.lambda_factor < 1 or self.maxlen < 1:
            raise ConfigError("caps must be >= 0 and alpha_max, lambda_factor, maxlen >= 1")
        if not self.primes or not all(is_prime(p) for p in self.primes):
            raise ConfigError(f"primes must be a nonempty list of primes: {self.primes}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"format must be json or text, not {self.format!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def region_or(self, default: Region) -> Region:
        return self.region if self.region is not None else default

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["region"] = None if self.region is None else str(self.region)
        d["primes"] = list(self.primes)
        return d

    def with_overrides(self, **changes: Any) -> RunConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **_coerce(changes))


def _coerce(raw: dict[str, Any]) -> dict[str, Any]:
    known = {f.name for f in fields(RunConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    out = dict(raw)
    try:
        if isinstance(out.get("region"), (str, list)):
            region = out["region"]
            out["region"] = Region.parse(region) if isinstance(region, str) else Region(*region)
        if "primes" in out:
            primes = out["primes"]
            if isinstance(primes, str):
                primes = [int(p) for p in primes.split(",")]
            out["primes"] = tuple(int(p) for p in primes)
    except (InvalidElement, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    return out


def load_config(path: str | Path | None = None, **overrides: Any) -> RunConfig:
    """Defaults, then the JSON file at ``path``, then ``overrides``."""
    cfg = RunConfig()
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        try:
            cfg = replace(cfg, **_coerce(data))
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
    return cfg.with_overrides(**overrides)
