"""Global precision settings shared by all numerical modules."""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass, replace
from pathlib import Path

MAX_DEPTH = 26


@dataclass(frozen=True)
class PrecisionConfig:
    mode: str = "standard"
    digits: int = 50
    quadrature_depth: int = 22
    matrix_dim: int = 64
    truncation_eps: float = 2.0**-53

    def __post_init__(self):
        if self.mode not in ("standard", "extended"):
            raise ValueError(f"unknown precision mode {self.mode!r}")
        if self.mode == "extended" and self.digits < 30:
            raise ValueError("extended mode needs digits >= 30")
        if not 0 <= self.quadrature_depth <= MAX_DEPTH:
            raise ValueError(f"quadrature_depth must lie in [0, {MAX_DEPTH}]")
        if self.matrix_dim < 1:
            raise ValueError("matrix_dim must be positive")
        if not 0 < self.truncation_eps < 1:
            raise ValueError("truncation_eps must lie in (0, 1)")

    @property
    def extended(self) -> bool:
        return self.mode == "extended"


_current = PrecisionConfig()

_ENV_KEYS = {"MINK_DIGITS": "digits", "MINK_DEPTH": "quadrature_depth", "MINK_DIM": "matrix_dim"}
_FILE_KEYS = {
    "mode": str,
    "digits": int,
    "quadrature_depth": int,
    "depth": int,
    "matrix_dim": int,
    "dim": int,
    "truncation_eps": float,
}


def get_config() -> PrecisionConfig:
    return _current


def set_config(cfg: PrecisionConfig) -> None:
    global _current
    _current = cfg


@contextlib.contextmanager
def using(**changes):
    """Temporarily override fields of the global config."""
    old = get_config()
    set_config(replace(old, **changes))
    try:
        yield get_config()
    finally:
        set_config(old)


def read_config_file(path: str | os.PathLike) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep or key not in _FILE_KEYS:
            raise ValueError(f"bad config line: {raw!r}")
        name = {"depth": "quadrature_depth", "dim": "matrix_dim"}.get(key, key)
        out[name] = _FILE_KEYS[key](value.strip())
    return out


def resolve_config(flags: dict | None = None, environ=None, config_file=None) -> PrecisionConfig:
    """Merge settings with precedence flags > environment > file > defaults."""
    environ = os.environ if environ is None else environ
    fields: dict = {}
    if config_file:
        fields.update(read_config_file(config_file))
    for var, name in _ENV_KEYS.items():
        if environ.get(var):
            fields[name] = int(environ[var])
    fields.update({k: v for k, v in (flags or {}).items() if v is not None})
    return PrecisionConfig(**fields)
