"""Toolbox configuration: infinity encoding, exact/grid mode, grid geometry.

The config file is plain ``key = value`` lines with ``#`` comments:

    # encoding of +-infinity in barcode files
    infinity = 1.7976931348623157e308
    mode = exact            # or: grid
    grid_begin = 0.0        # required when mode = grid
    grid_spacing = 0.1
    grid_count = 100
    epsilon_merge = 0.0
    strict_parse = false
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .barcodes import GridSpec

__all__ = ["ToolboxConfig", "load_config", "parse_config"]

_KEYS = {
    "infinity",
    "mode",
    "grid_begin",
    "grid_spacing",
    "grid_count",
    "epsilon_merge",
    "strict_parse",
}


@dataclass(frozen=True)
class ToolboxConfig:
    infinity_magic: float = sys.float_info.max
    mode: str = "exact"
    grid_begin: float | None = None
    grid_spacing: float | None = None
    grid_count: int | None = None
    epsilon_merge: float = 0.0
    strict_parse: bool = False

    def __post_init__(self):
        if self.mode not in ("exact", "grid"):
            raise ValueError(f"mode must be 'exact' or 'grid', got {self.mode!r}")
        if not math.isfinite(self.infinity_magic):
            raise ValueError("infinity magic number must be finite")
        if self.epsilon_merge < 0:
            raise ValueError("epsilon_merge must be >= 0")
        if self.mode == "grid":
            if self.grid_begin is None or self.grid_spacing is None or self.grid_count is None:
                raise ValueError(
                    "grid mode requires grid_begin, grid_spacing and grid_count"
                )
            self.grid_spec()  # validates ranges

    def grid_spec(self) -> GridSpec:
        if self.grid_begin is None or self.grid_spacing is None or self.grid_count is None:
            raise ValueError("grid geometry not configured")
        return GridSpec(self.grid_begin, self.grid_spacing, int(self.grid_count))


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


_CONVERTERS = {
    "infinity": ("infinity_magic", float),
    "mode": ("mode", str),
    "grid_begin": ("grid_begin", float),
    "grid_spacing": ("grid_spacing", float),
    "grid_count": ("grid_count", int),
    "epsilon_merge": ("epsilon_merge", float),
    "strict_parse": ("strict_parse", _parse_bool),
}


def parse_config(text: str) -> ToolboxConfig:
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        field, convert = _CONVERTERS[key]
        try:
            fields[field] = convert(value)
        except ValueError as exc:
            raise ValueError(f"config line {lineno}: {exc}") from None
    return ToolboxConfig(**fields)


def load_config(path: str | Path) -> ToolboxConfig:
    return parse_config(Path(path).read_text())
