"""Named trap/cavity parameter sets.

rogers
    2z0 = 2 mm, U0 = 10 kV, B = 150 kG, cavity 1 cm long with 1.36 cm radius
    and Q = 1e4, orbit speed beta = 0.6. The ring radius is not quoted; it is
    solved so that gamma·omega_z lands on 10.57 GHz.
dehmelt
    2z0 = 8 mm, B = 5 T, a few volts on the electrodes (10 V assumed) and the
    standard hyperbolic ratio r0 = sqrt(2)·z0 (assumed).
cylindrical
    orthogonalized cylindrical trap (r0 = z0 = 4 mm assumed), compensation
    electrodes of height 0.20·z0 and 0.015 cm slits; B and U0 calibrated to
    f_c = 166 GHz and f_z = 63 MHz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .experiment import AmplifierModel, CavityGeometry, PUBLISHED_DPDF, lorentz_gamma
from .trap import (
    FieldConfiguration,
    TrapConfiguration,
    TrapGeometry,
    TrapKind,
    field_for_cyclotron,
    ring_radius_for_axial,
    voltage_for_axial,
)

TWO_PI = 2.0 * math.pi

ROGERS_Z0 = 1.0e-3
ROGERS_U0 = 1.0e4
ROGERS_B = 15.0
ROGERS_BETA = 0.6
ROGERS_F_OBS = 10.57e9
ROGERS_CAVITY = CavityGeometry(radius=1.36e-2, length=1.0e-2, Q=1.0e4)
ROGERS_SNR = 0.3
ROGERS_DETECTION_TIME = 12e-3
#: amplifier noise temperature reproducing S/N = 0.3 from the quoted dP/df
ROGERS_T_N = 11.3

DEHMELT_Z0 = 4.0e-3
DEHMELT_U0 = 10.0
DEHMELT_B = 5.0

CYL_Z0 = 4.0e-3
CYL_F_C = 166e9
CYL_F_Z = 63e6
CYL_F_M = 12e3
CYL_COMP_RATIO = 0.20
CYL_SLIT = 1.5e-4


@dataclass(frozen=True)
class Preset:
    name: str
    trap: TrapConfiguration
    beta: float | None = None
    cavity: CavityGeometry | None = None
    amplifier: AmplifierModel | None = None
    r0_inferred: bool = False
    provenance: dict = field(default_factory=dict)


def rogers_ring_radius() -> float:
    omega_z = TWO_PI * ROGERS_F_OBS / lorentz_gamma(ROGERS_BETA)
    return ring_radius_for_axial(ROGERS_Z0, ROGERS_U0, omega_z)


def _rogers() -> Preset:
    geom = TrapGeometry(z0=ROGERS_Z0, r0=rogers_ring_radius(), kind=TrapKind.HYPERBOLIC)
    trap = TrapConfiguration(geom, FieldConfiguration(U0=ROGERS_U0, B=ROGERS_B), "rogers")
    return Preset(
        "rogers",
        trap,
        beta=ROGERS_BETA,
        cavity=ROGERS_CAVITY,
        amplifier=AmplifierModel(ROGERS_T_N),
        r0_inferred=True,
        provenance={"z0": "published", "U0": "published", "B": "published", "r0": "inferred", "beta": "published",
                    "cavity": "published", "noise_temperature": "calibrated", "dPdf": f"published ({PUBLISHED_DPDF} W/Hz)"},
    )


def _dehmelt() -> Preset:
    geom = TrapGeometry(z0=DEHMELT_Z0, r0=math.sqrt(2.0) * DEHMELT_Z0)
    trap = TrapConfiguration(geom, FieldConfiguration(U0=DEHMELT_U0, B=DEHMELT_B), "dehmelt")
    return Preset("dehmelt", trap, provenance={"z0": "published", "B": "published", "U0": "assumed", "r0": "assumed"})


def _cylindrical() -> Preset:
    geom = TrapGeometry(
        z0=CYL_Z0,
        r0=CYL_Z0,
        kind=TrapKind.CYLINDRICAL,
        comp_height_ratio=CYL_COMP_RATIO,
        slit_width=CYL_SLIT,
    )
    B = field_for_cyclotron(TWO_PI * CYL_F_C)
    U0 = voltage_for_axial(geom, TWO_PI * CYL_F_Z)
    trap = TrapConfiguration(geom, FieldConfiguration(U0=U0, B=B), "cylindrical")
    return Preset(
        "cylindrical",
        trap,
        provenance={"z0": "assumed", "r0": "published (r0 = z0)", "B": "calibrated (f_c = 166 GHz)",
                    "U0": "calibrated (f_z = 63 MHz)", "comp_height_ratio": "published", "slit_width": "published"},
    )


_BUILDERS = {"rogers": _rogers, "dehmelt": _dehmelt, "cylindrical": _cylindrical}
PRESET_NAMES = tuple(_BUILDERS)


def get_preset(name: str) -> Preset:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}") from None
