"""Scenario configuration: dataclass plus a plain key = value file parser.

Config files are UTF-8 text, one ``key = value`` per line, ``#`` starts a
comment, blank lines ignored. Nested fields use dotted keys (``bump.width``,
``grid.N``). Every key is optional; the defaults reproduce the frequency-shift
suite the acceptance tests run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import calibration
from .errors import ConfigError
from .fields import BumpSpec, GridSpec

_TIER_NAMES = ("simple", "improved", "refined")


def _default_probes() -> tuple[float, ...]:
    return tuple(np.linspace(0.5, 32.0, 64))


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one frequency-shift run needs.

    ``bump`` holds the unmodulated profile; each zeta in ``zeta_list``
    becomes that bump's modulation frequency for one sub-run.
    """

    zeta_list: tuple[float, ...] = (8.0, 16.0, 32.0, 64.0)
    bump: BumpSpec = field(default_factory=lambda: BumpSpec(center=0.0, width=0.5))
    grid: GridSpec = field(default_factory=lambda: GridSpec(half_width=4.0, count=4096))
    k_probe: tuple[float, ...] = field(default_factory=_default_probes)
    tiers: tuple[str, ...] = _TIER_NAMES
    c_refined: float = calibration.REFINED_C
    output_dir: str = "."

    def __post_init__(self) -> None:
        if not self.zeta_list:
            raise ConfigError("zeta_list must not be empty")
        if any(z < 0 for z in self.zeta_list):
            raise ConfigError("zeta values must be nonnegative")
        if any(b <= a for a, b in zip(self.zeta_list, self.zeta_list[1:])):
            raise ConfigError("zeta_list must be strictly increasing")
        if not self.k_probe:
            raise ConfigError("k_probe must not be empty")
        if not all(math.isfinite(k) for k in self.k_probe):
            raise ConfigError("probe frequencies must be finite")
        if not self.tiers:
            raise ConfigError("tiers must not be empty")
        bad = [t for t in self.tiers if t not in _TIER_NAMES]
        if bad:
            raise ConfigError(f"unknown tier(s) {bad}; choose from {_TIER_NAMES}")
        if not (math.isfinite(self.c_refined) and self.c_refined > 0):
            raise ConfigError(f"c_refined must be positive, got {self.c_refined}")
        if self.bump.modulation_frequency != 0.0:
            raise ConfigError(
                "bump.modulation is set per zeta by the scenario runner; "
                "leave it at zero in the config"
            )
        if not self.bump.width > 0:
            raise ConfigError(f"bump width must be positive, got {self.bump.width}")
        n = self.grid.count
        if n < 64 or n & (n - 1) != 0:
            raise ConfigError(f"grid.N must be a power of two >= 64, got {n}")
        if abs(self.bump.center) + self.bump.width >= self.grid.half_width:
            raise ConfigError(
                "bump support must sit strictly inside the grid: "
                f"|{self.bump.center}| + {self.bump.width} >= {self.grid.half_width}"
            )


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _parse_probes(text: str) -> tuple[float, ...]:
    """Either an explicit comma list or ``lin:lo:hi:count``."""
    if text.startswith("lin:"):
        pieces = text.split(":")
        if len(pieces) != 4:
            raise ValueError(f"expected lin:lo:hi:count, got {text!r}")
        lo, hi, count = float(pieces[1]), float(pieces[2]), int(pieces[3])
        if count < 2:
            raise ValueError("probe count must be at least 2")
        return tuple(np.linspace(lo, hi, count))
    return _parse_floats(text)


def parse_config_text(text: str) -> ScenarioConfig:
    """Build a ScenarioConfig from key = value lines."""
    config = ScenarioConfig()
    bump = config.bump
    grid = config.grid
    updates: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            if key == "zeta_list":
                updates["zeta_list"] = _parse_floats(value)
            elif key == "bump.center":
                bump = replace(bump, center=float(value))
            elif key == "bump.width":
                bump = replace(bump, width=float(value))
            elif key == "bump.amplitude":
                bump = replace(bump, amplitude=float(value))
            elif key == "grid.L":
                grid = replace(grid, half_width=float(value))
            elif key == "grid.N":
                grid = replace(grid, count=int(value))
            elif key == "k_probe":
                updates["k_probe"] = _parse_probes(value)
            elif key == "tiers":
                updates["tiers"] = tuple(
                    part.strip() for part in value.split(",") if part.strip()
                )
            elif key == "c_refined":
                updates["c_refined"] = float(value)
            elif key == "output_dir":
                updates["output_dir"] = value
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ConfigError:
            raise
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    try:
        return replace(config, bump=bump, grid=grid, **updates)
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str) -> ScenarioConfig:
    """Read and parse one config file."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config_text(text)
