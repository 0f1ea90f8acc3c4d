"""Physical constants (CODATA values via scipy.constants), SI units."""

from dataclasses import dataclass

import scipy.constants as sc


@dataclass(frozen=True)
class PhysicalConstants:
    e: float = sc.e
    m_e: float = sc.m_e
    c: float = sc.c
    hbar: float = sc.hbar
    k_B: float = sc.k
    g_earth: float = sc.g
    epsilon_0: float = sc.epsilon_0

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"constant {name} must be positive, got {value}")


CONSTANTS = PhysicalConstants()

E = CONSTANTS.e
M_E = CONSTANTS.m_e
C = CONSTANTS.c
HBAR = CONSTANTS.hbar
K_B = CONSTANTS.k_B
G_EARTH = CONSTANTS.g_earth
EPSILON_0 = CONSTANTS.epsilon_0
