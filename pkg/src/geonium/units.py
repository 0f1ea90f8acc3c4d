"""Parsing of quantities with explicit unit suffixes.

Every dimensional input must carry a unit ("150 kG", "10kV", "1.36 cm");
bare numbers are rejected so Gaussian/SI slips such as kG vs T cannot pass
silently. Frequencies in Hz-family units are returned as angular frequencies
(rad/s); "rad/s" is accepted as-is.
"""

from __future__ import annotations

import math
import re

from .constants import G_EARTH
from .errors import ConfigError

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_QUANTITY = re.compile(rf"^\s*({_NUMBER})\s*([^\s\d.+-][^\s]*)?\s*$")

UNITS: dict[str, dict[str, float]] = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9},
    "voltage": {"V": 1.0, "kV": 1e3, "mV": 1e-3},
    "magnetic_field": {"T": 1.0, "mT": 1e-3, "G": 1e-4, "kG": 0.1},
    "frequency": {
        "rad/s": 1.0,
        "Hz": 2.0 * math.pi,
        "kHz": 2.0 * math.pi * 1e3,
        "MHz": 2.0 * math.pi * 1e6,
        "GHz": 2.0 * math.pi * 1e9,
        "THz": 2.0 * math.pi * 1e12,
    },
    "temperature": {"K": 1.0, "mK": 1e-3},
    "acceleration": {"m/s^2": 1.0, "m/s2": 1.0, "g": G_EARTH},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9, "ps": 1e-12},
    "power_density": {"W/Hz": 1.0},
}


def parse_quantity(text: str, dimension: str, *, where: str | None = None) -> float:
    """Return the SI value of ``text``, which must carry a unit of ``dimension``."""
    table = UNITS[dimension]
    m = _QUANTITY.match(str(text))
    if not m:
        raise ConfigError(f"cannot parse {text!r} as a {dimension.replace('_', ' ')}", where)
    value, unit = float(m.group(1)), m.group(2)
    if unit is None:
        raise ConfigError(
            f"{text!r} has no unit; a {dimension.replace('_', ' ')} needs one of {', '.join(table)}", where
        )
    if unit not in table:
        raise ConfigError(f"unit {unit!r} is not a {dimension.replace('_', ' ')} unit ({', '.join(table)})", where)
    return value * table[unit]


def parse_number(text: str, *, where: str | None = None) -> float:
    """Dimensionless value; any unit suffix is an error."""
    m = _QUANTITY.match(str(text))
    if not m or m.group(2) is not None:
        raise ConfigError(f"expected a plain number, got {text!r}", where)
    return float(m.group(1))


def parse_int(text: str, *, where: str | None = None) -> int:
    value = parse_number(text, where=where)
    if value != int(value):
        raise ConfigError(f"expected an integer, got {text!r}", where)
    return int(value)
