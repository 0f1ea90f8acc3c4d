"""Penning-trap electron dynamics and vacuum-noise response of accelerated detectors."""

from .constants import CONSTANTS, PhysicalConstants
from .dynamics import (
    ElectronState,
    IntegratorSettings,
    Method,
    MotionAmplitudes,
    Trajectory,
    analytic_state,
    analytic_trajectory,
    integrate,
    position_error,
    project_modes,
    solve_amplitudes,
)
from .errors import *  # noqa: F401,F403
from .experiment import AmplifierModel, CavityGeometry, FeasibilityReport, RadiometerModel, feasibility
from .presets import PRESET_NAMES, get_preset
from .trap import (
    FieldConfiguration,
    ModeFrequencies,
    TrapConfiguration,
    TrapGeometry,
    TrapKind,
    eigenfrequencies,
    is_trapped,
    mode_frequencies,
)
from .vacuum_noise import (
    KSYParameters,
    NoiseSpectrum,
    Producer,
    RegularizationSettings,
    SpectrumGrid,
    Worldline,
    planck_response,
    response_spectrum,
    unruh_temperature,
)

__version__ = "0.1.0"
