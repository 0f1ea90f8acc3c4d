"""Ideal Penning trap: quadrupole field, eigenfrequencies, trapping condition.

Everything is SI and angular (rad/s). The electron charge enters through its
magnitude ``e``; a positive ``U0`` is the polarity that confines an electron
axially.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import E, HBAR, M_E
from .errors import NonConfiningPotential


class TrapKind(str, enum.Enum):
    HYPERBOLIC = "hyperbolic"
    CYLINDRICAL = "cylindrical"


@dataclass(frozen=True)
class TrapGeometry:
    z0: float
    r0: float
    kind: TrapKind = TrapKind.HYPERBOLIC
    comp_height_ratio: float | None = None
    slit_width: float | None = None

    def __post_init__(self):
        if not (self.z0 > 0 and self.r0 > 0):
            raise ValueError(f"z0 and r0 must be positive (z0={self.z0}, r0={self.r0})")
        object.__setattr__(self, "kind", TrapKind(self.kind))
        if self.kind is TrapKind.HYPERBOLIC and (
            self.comp_height_ratio is not None or self.slit_width is not None
        ):
            raise ValueError("compensation electrodes and slits only apply to cylindrical traps")

    @property
    def characteristic_length_sq(self) -> float:
        """r0² + 2 z0², the denominator of the quadrupole strength."""
        return self.r0**2 + 2.0 * self.z0**2

    def is_orthogonalized(self, rtol: float = 1e-9) -> bool:
        if self.kind is not TrapKind.CYLINDRICAL:
            raise ValueError("the r0 = z0 orthogonalized predicate is defined for cylindrical traps")
        return math.isclose(self.r0, self.z0, rel_tol=rtol)


@dataclass(frozen=True)
class FieldConfiguration:
    U0: float
    B: float

    def __post_init__(self):
        if self.B < 0:
            raise ValueError(f"B must be non-negative, got {self.B}")
        if self.U0 == 0 or not math.isfinite(self.U0):
            raise ValueError(f"U0 must be finite and nonzero, got {self.U0}")


@dataclass(frozen=True)
class TrapConfiguration:
    geom: TrapGeometry
    field: FieldConfiguration
    label: str = ""


@dataclass(frozen=True)
class ModeFrequencies:
    """Axial, free cyclotron, modified cyclotron and magnetron angular frequencies.

    ``omega_c_prime`` and ``omega_m`` are None when the trapping condition
    fails (``stable`` is False), except on the exact boundary where both equal
    omega_c / 2.
    """

    omega_z: float
    omega_c: float
    omega_c_prime: float | None
    omega_m: float | None
    stable: bool

    def as_hz(self) -> dict:
        out = {}
        for name in ("omega_z", "omega_c", "omega_c_prime", "omega_m"):
            w = getattr(self, name)
            out["f" + name[len("omega"):]] = None if w is None else w / (2.0 * math.pi)
        return out


def quadrupole_potential(geom: TrapGeometry, U0: float, point) -> float:
    p = np.asarray(point, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return U0 * (2.0 * z**2 - x**2 - y**2) / (2.0 * geom.z0**2 + geom.r0**2)


def axial_frequency_squared(geom: TrapGeometry, field: FieldConfiguration) -> float:
    return 4.0 * E * field.U0 / (M_E * geom.characteristic_length_sq)


def axial_frequency(geom: TrapGeometry, field: FieldConfiguration) -> float:
    wz2 = axial_frequency_squared(geom, field)
    if not wz2 > 0:
        raise NonConfiningPotential(
            f"omega_z^2 = {wz2:.4g} rad^2/s^2 <= 0; U0 = {field.U0} V does not confine an electron"
        )
    return math.sqrt(wz2)


def cyclotron_frequency(field: FieldConfiguration | float) -> float:
    """Free cyclotron frequency eB/m_e (SI form of the Gaussian eB/mc)."""
    B = field.B if isinstance(field, FieldConfiguration) else float(field)
    if B < 0:
        raise ValueError(f"B must be non-negative, got {B}")
    return E * B / M_E


def mode_frequencies(omega_c: float, omega_z: float) -> ModeFrequencies:
    """Eigenfrequencies from the free cyclotron and axial frequencies.

    The magnetron root is taken as (omega_z²/2)/omega_c' rather than the
    difference omega_c/2 - sqrt(...), which cancels catastrophically when
    omega_z << omega_c.
    """
    half = 0.5 * omega_c
    disc = half * half - 0.5 * omega_z * omega_z
    stable = omega_c * omega_c > 2.0 * omega_z * omega_z
    if not stable:
        if disc < 0:
            return ModeFrequencies(omega_z, omega_c, None, None, False)
        # boundary: degenerate double root
        return ModeFrequencies(omega_z, omega_c, half, half, False)
    wcp = half + math.sqrt(disc)
    wm = 0.5 * omega_z * omega_z / wcp
    return ModeFrequencies(omega_z, omega_c, wcp, wm, True)


def eigenfrequencies(geom: TrapGeometry, field: FieldConfiguration) -> ModeFrequencies:
    return mode_frequencies(cyclotron_frequency(field), axial_frequency(geom, field))


def is_trapped(geom: TrapGeometry, field: FieldConfiguration) -> bool:
    wz2 = axial_frequency_squared(geom, field)
    if wz2 <= 0:
        return False
    wc = cyclotron_frequency(field)
    return wc * wc > 2.0 * wz2


def landau_cell_area(B: float) -> float:
    """Momentum-plane cell scale e·B·ħ, in (kg·m/s)²."""
    if B < 0:
        raise ValueError(f"B must be non-negative, got {B}")
    return E * B * HBAR


# --- calibration helpers (inverse problems used by the presets) ---

def field_for_cyclotron(omega_c: float) -> float:
    """Magnetic field (T) giving free cyclotron frequency omega_c."""
    return omega_c * M_E / E


def voltage_for_axial(geom: TrapGeometry, omega_z: float) -> float:
    """Ring-cap voltage (V) giving axial frequency omega_z in geometry ``geom``."""
    return omega_z**2 * M_E * geom.characteristic_length_sq / (4.0 * E)


def ring_radius_for_axial(z0: float, U0: float, omega_z: float) -> float:
    """Ring radius r0 (m) giving axial frequency omega_z for given z0 and U0."""
    r0_sq = 4.0 * E * U0 / (M_E * omega_z**2) - 2.0 * z0**2
    if r0_sq <= 0:
        raise ValueError(
            f"no ring radius reaches omega_z={omega_z:.4g} rad/s with z0={z0} m, U0={U0} V"
        )
    return math.sqrt(r0_sq)
