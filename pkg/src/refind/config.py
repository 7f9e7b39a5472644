"""Simple key = value config files for the simulation harness.

Lines look like `skip_base = 0.4`; `#` starts a comment; blank lines are
ignored. Keys must be fields of SimulationConfig; values are coerced to the
field's type (comma-separated integers for success_ks).
"""

from __future__ import annotations

import dataclasses

from .errors import ConfigError
from .simulate import SimulationConfig


def parse_config_text(text: str) -> dict:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _coerce(key: str, raw: str, current):
    try:
        if isinstance(current, bool):
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if isinstance(current, int):
            return int(raw)
        if isinstance(current, float):
            return float(raw)
        if isinstance(current, tuple):
            return tuple(int(part.strip()) for part in raw.split(",") if part.strip())
        return raw
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from exc


def config_from_text(text: str, base: SimulationConfig | None = None) -> SimulationConfig:
    base = base or SimulationConfig()
    known = {f.name for f in dataclasses.fields(SimulationConfig)}
    overrides = {}
    for key, raw in parse_config_text(text).items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        overrides[key] = _coerce(key, raw, getattr(base, key))
    return dataclasses.replace(base, **overrides)


def load_config(path, base: SimulationConfig | None = None) -> SimulationConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_text(fh.read(), base=base)
