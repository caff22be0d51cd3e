"""Run configuration shared by the CLI and the self-test."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .errors import LankeError
from .linalg.modular import DEFAULT_PRIMES, check_primes

FORMATS = ("json", "csv", "latex", "text")
THREADS_ENV = "LANKE_THREADS"


@dataclass(frozen=True)
class RunConfig:
    max_basis: int = 250_000
    max_relation_rows: int = 1_000_000
    max_char_basis: int = 12_000
    primes: tuple = DEFAULT_PRIMES
    exact_verify: bool = False
    threads: int = 1
    format: str = "json"
    output: str | None = None

    def __post_init__(self) -> None:
        for name in ("max_basis", "max_relation_rows", "max_char_basis", "threads"):
            if getattr(self, name) < 1:
                raise LankeError(f"{name} must be positive")
        object.__setattr__(self, "primes", check_primes(self.primes))
        if self.format not in FORMATS:
            raise LankeError(f"format must be one of {FORMATS}, got {self.format!r}")

    def to_json(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        # neither where the report goes nor how many workers made it
        # changes what it says
        del d["output"], d["threads"]
        return d

    def updated(self, **changes) -> "RunConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _coerce(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(RunConfig)}
    if name not in kinds:
        raise LankeError(f"unknown config key {name!r}")
    if name == "primes":
        return tuple(int(x) for x in raw.replace(",", " ").split())
    if name == "exact_verify":
        low = raw.strip().lower()
        if low not in ("1", "0", "true", "false", "yes", "no", "on", "off"):
            raise LankeError(f"bad boolean for exact_verify: {raw!r}")
        return low in ("1", "true", "yes", "on")
    if name in ("format", "output"):
        return raw.strip()
    try:
        return int(raw)
    except ValueError as exc:
        raise LankeError(f"config key {name} needs an integer, got {raw!r}") from exc


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise LankeError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        out[key] = _coerce(key, value)
    return out


def load_config(path: str | os.PathLike | None = None, env: dict | None = None, **overrides) -> RunConfig:
    """Defaults, then the file, then the environment, then explicit overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    if env.get(THREADS_ENV):
        values["threads"] = _coerce("threads", env[THREADS_ENV])
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)
