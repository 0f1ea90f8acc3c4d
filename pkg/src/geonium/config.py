"""Run configuration: ``key = value`` files with dotted section keys.

Example::

    preset = rogers            # start from a built-in parameter set
    trap.B = 150 kG            # override single values
    cavity.Q = 1e4
    spectrum.worldline = circular

Command-line ``--set key=value`` entries (and the dedicated flags) are merged
on top of the file, so flags win.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .experiment import AmplifierModel, CavityGeometry, RadiometerModel, lorentz_gamma, relativistic_cyclotron
from .presets import PRESET_NAMES, Preset, get_preset
from .trap import FieldConfiguration, TrapConfiguration, TrapGeometry, TrapKind
from .units import parse_int, parse_number, parse_quantity

# key -> dimension (None: plain number, "str": free text)
SCHEMA: dict[str, str | None] = {
    "preset": "str",
    "trap.z0": "length",
    "trap.r0": "length",
    "trap.U0": "voltage",
    "trap.B": "magnetic_field",
    "trap.kind": "str",
    "trap.label": "str",
    "trap.comp_height_ratio": None,
    "trap.slit_width": "length",
    "experiment.beta": None,
    "experiment.dpdf_source": "str",
    "experiment.ksy_table": "str",
    "experiment.ksy_n_max": "int",
    "cavity.radius": "length",
    "cavity.length": "length",
    "cavity.Q": None,
    "amplifier.noise_temperature": "temperature",
    "radiometer.threshold": None,
    "radiometer.bandwidth": "frequency_hz",
    "trajectory.periods": None,
    "trajectory.method": "str",
    "trajectory.rtol": None,
    "trajectory.dt": "time",
    "trajectory.samples": "int",
    "trajectory.r_c": "length",
    "trajectory.r_m": "length",
    "trajectory.r_z": "length",
    "spectrum.worldline": "str",
    "spectrum.a": "acceleration",
    "spectrum.beta": None,
    "spectrum.omega_lab": "frequency",
    "spectrum.omega_min": "frequency",
    "spectrum.omega_max": "frequency",
    "spectrum.points": "int",
    "spectrum.spacing": "str",
    "spectrum.producers": "str",
    "spectrum.ksy_table": "str",
    "spectrum.n_max": "int",
    "spectrum.epsilon": "time",
    "spectrum.tau_max": "time",
    "spectrum.n_nodes": "int",
    "sweep.param": "str",
    "sweep.start": "str",
    "sweep.stop": "str",
    "sweep.points": "int",
    "sweep.workers": "int",
    "output.dir": "str",
}

# keys that change where or how fast a run happens, not its results
EXECUTION_KEYS = ("output.dir", "sweep.workers")

SWEEP_DIMENSIONS = {
    "B": "magnetic_field",
    "U0": "voltage",
    "z0": "length",
    "r0": "length",
    "beta": None,
    "cavity_radius": "length",
}


def parse_lines(text: str, source: str = "<config>") -> dict[str, tuple[str, str]]:
    """Raw ``key -> (value, location)`` pairs from a config file body."""
    out: dict[str, tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", where)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError(f"unknown key {key!r}", where)
        out[key] = (value, where)
    return out


def load_file(path) -> dict[str, tuple[str, str]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}", str(path)) from None
    return parse_lines(text, str(path))


def _convert(key: str, raw: str, where: str):
    kind = SCHEMA[key]
    if kind == "str":
        return raw
    if kind == "int":
        return parse_int(raw, where=where)
    if kind is None:
        return parse_number(raw, where=where)
    if kind == "frequency_hz":
        return parse_quantity(raw, "frequency", where=where) / (2.0 * math.pi)
    return parse_quantity(raw, kind, where=where)


@dataclass
class RunConfig:
    """Typed view over merged configuration values (SI units, angular frequencies)."""

    values: dict
    sources: dict

    @classmethod
    def build(cls, raw: dict[str, tuple[str, str]]) -> "RunConfig":
        values, sources = {}, {}
        for key, (text, where) in raw.items():
            values[key] = _convert(key, text, where)
            sources[key] = where
        if "preset" in values and values["preset"] not in PRESET_NAMES:
            raise ConfigError(f"unknown preset {values['preset']!r} ({', '.join(PRESET_NAMES)})", sources["preset"])
        return cls(values, sources)

    def get(self, key, default=None):
        return self.values.get(key, default)

    def where(self, key):
        return self.sources.get(key, key)

    @property
    def preset(self) -> Preset | None:
        name = self.values.get("preset")
        return get_preset(name) if name else None

    def canonical(self) -> dict:
        """Result-relevant values; output location and thread count are excluded."""
        return {
            k: (repr(v) if isinstance(v, float) else v)
            for k, v in sorted(self.values.items())
            if k not in EXECUTION_KEYS
        }

    def fingerprint(self, command: str = "") -> str:
        blob = json.dumps({"command": command, "config": self.canonical()}, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    # --- section builders ---------------------------------------------------

    def trap(self) -> TrapConfiguration:
        preset = self.preset
        base_geom = preset.trap.geom if preset else None
        base_field = preset.trap.field if preset else None

        def pick(key, base_value):
            if key in self.values:
                return self.values[key]
            if base_value is None:
                raise ConfigError("missing value (give it or choose a preset)", key)
            return base_value

        kind = pick("trap.kind", base_geom.kind.value if base_geom else "hyperbolic")
        try:
            kind = TrapKind(kind)
        except ValueError:
            raise ConfigError(f"unknown trap kind {kind!r}", self.where("trap.kind")) from None
        cyl = kind is TrapKind.CYLINDRICAL
        try:
            geom = TrapGeometry(
                z0=pick("trap.z0", base_geom and base_geom.z0),
                r0=pick("trap.r0", base_geom and base_geom.r0),
                kind=kind,
                comp_height_ratio=self.values.get("trap.comp_height_ratio", base_geom.comp_height_ratio if base_geom and cyl else None),
                slit_width=self.values.get("trap.slit_width", base_geom.slit_width if base_geom and cyl else None),
            )
            field = FieldConfiguration(
                U0=pick("trap.U0", base_field and base_field.U0),
                B=pick("trap.B", base_field and base_field.B),
            )
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc), "trap") from None
        label = self.values.get("trap.label", preset.trap.label if preset else "custom")
        return TrapConfiguration(geom, field, label)

    def r0_inferred(self) -> bool:
        preset = self.preset
        return bool(preset and preset.r0_inferred and "trap.r0" not in self.values)

    def beta(self, required: bool = True) -> float | None:
        preset = self.preset
        beta = self.values.get("experiment.beta", preset.beta if preset else None)
        if beta is None and required:
            raise ConfigError("missing orbit speed", "experiment.beta")
        if beta is not None and not 0.0 < beta < 1.0:
            raise ConfigError(f"beta must lie in (0, 1), got {beta}", self.where("experiment.beta"))
        return beta

    def cavity(self, required: bool = True) -> CavityGeometry | None:
        base = self.preset.cavity if self.preset else None
        keys = ("cavity.radius", "cavity.length", "cavity.Q")
        if base is None and not any(k in self.values for k in keys):
            if required:
                raise ConfigError("missing cavity section (radius, length, Q)", "cavity")
            return None
        vals = {}
        for key, attr in zip(keys, ("radius", "length", "Q")):
            if key in self.values:
                vals[attr] = self.values[key]
            elif base is not None:
                vals[attr] = getattr(base, attr)
            else:
                raise ConfigError("missing value", key)
        try:
            return CavityGeometry(**vals)
        except ValueError as exc:
            raise ConfigError(str(exc), "cavity") from None

    def amplifier(self) -> AmplifierModel:
        base = self.preset.amplifier if self.preset else None
        t_n = self.values.get("amplifier.noise_temperature", base.noise_temperature if base else None)
        if t_n is None:
            raise ConfigError("missing amplifier noise temperature", "amplifier.noise_temperature")
        try:
            return AmplifierModel(t_n)
        except ValueError as exc:
            raise ConfigError(str(exc), self.where("amplifier.noise_temperature")) from None

    def radiometer(self) -> RadiometerModel:
        try:
            return RadiometerModel(
                threshold=self.values.get("radiometer.threshold", 3.0),
                bandwidth_hz=self.values.get("radiometer.bandwidth"),
            )
        except ValueError as exc:
            raise ConfigError(str(exc), "radiometer") from None

    def omega_lab(self) -> float:
        """Relativistic orbital frequency from the trap field and beta."""
        return relativistic_cyclotron(self.trap().field, lorentz_gamma(self.beta()))
