"""Electron motion in the ideal trap.

Two independent routes: the closed-form superposition of axial, modified
cyclotron and magnetron modes, and direct numerical integration of

    z'' + omega_z² z = 0
    r'' = omega_z²/2 r - i omega_c r',      r = x + i y

The integrator exists to cross-check the analytic engine over short windows;
long runs should use ``analytic_state`` / ``analytic_trajectory``.
"""

from __future__ import annotations

import cmath
import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DegenerateModes, StepSizeUnderflow, UnstableTrap
from .trap import ModeFrequencies, TrapConfiguration, axial_frequency_squared, cyclotron_frequency

LOGGER = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _wrap_phase(phi: float) -> float:
    """Map an angle into (-pi, pi]."""
    phi = math.remainder(phi, TWO_PI)
    return math.pi if phi <= -math.pi else phi


@dataclass(frozen=True)
class ElectronState:
    t: float
    position: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        pos = np.array(self.position, dtype=float).reshape(3)
        vel = np.array(self.velocity, dtype=float).reshape(3)
        if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(vel)) and math.isfinite(self.t)):
            raise ValueError("electron state must be finite")
        pos.flags.writeable = False
        vel.flags.writeable = False
        object.__setattr__(self, "position", pos)
        object.__setattr__(self, "velocity", vel)

    @property
    def r(self) -> complex:
        return complex(self.position[0], self.position[1])

    @property
    def r_dot(self) -> complex:
        return complex(self.velocity[0], self.velocity[1])


@dataclass(frozen=True)
class MotionAmplitudes:
    """Mode amplitudes; complex amplitudes carry their phase."""

    r_z: float
    phase_z: float
    r_c: complex
    r_m: complex

    @property
    def cyclotron(self) -> tuple[float, float]:
        return abs(self.r_c), _wrap_phase(cmath.phase(self.r_c))

    @property
    def magnetron(self) -> tuple[float, float]:
        return abs(self.r_m), _wrap_phase(cmath.phase(self.r_m))


def _require_stable(freqs: ModeFrequencies):
    if not freqs.stable and freqs.omega_c_prime is not None:
        raise DegenerateModes("stability boundary: omega_c' == omega_m")
    if not freqs.stable:
        raise UnstableTrap("mode amplitudes are only defined for a trapped configuration")
    if freqs.omega_c_prime == freqs.omega_m:
        raise DegenerateModes("modified cyclotron and magnetron frequencies coincide")


def solve_amplitudes(initial: ElectronState, freqs: ModeFrequencies) -> MotionAmplitudes:
    """Mode amplitudes reproducing ``initial`` at t = 0.

    Solves r(0) = r_c + r_m, r'(0) = -i w'_c r_c - i w_m r_m and the axial pair
    z(0) = r_z cos(phase), z'(0) = -r_z w_z sin(phase). The state's own time
    stamp is ignored; amplitudes always refer to t = 0.
    """
    _require_stable(freqs)
    wcp, wm, wz = freqs.omega_c_prime, freqs.omega_m, freqs.omega_z

    r0, v0 = initial.r, initial.r_dot
    dw = wcp - wm
    r_c = (1j * v0 - wm * r0) / dw
    r_m = (wcp * r0 - 1j * v0) / dw

    z, vz = initial.position[2], initial.velocity[2]
    if wz > 0:
        r_z = math.hypot(z, vz / wz)
        phase_z = _wrap_phase(math.atan2(-vz / wz, z)) if r_z > 0 else 0.0
    else:
        if vz != 0:
            raise ValueError("free axial drift has no oscillation amplitude (omega_z = 0, vz != 0)")
        r_z, phase_z = abs(z), (0.0 if z >= 0 else math.pi)
    return MotionAmplitudes(r_z, phase_z, complex(r_c), complex(r_m))


def analytic_arrays(amps: MotionAmplitudes, freqs: ModeFrequencies, t):
    """Vectorized analytic solution: returns (t, positions (N,3), velocities (N,3))."""
    _require_stable(freqs)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    wcp, wm, wz = freqs.omega_c_prime, freqs.omega_m, freqs.omega_z
    ec = np.exp(-1j * wcp * t)
    em = np.exp(-1j * wm * t)
    r = amps.r_c * ec + amps.r_m * em
    rd = -1j * wcp * amps.r_c * ec - 1j * wm * amps.r_m * em
    ph = wz * t + amps.phase_z
    z = amps.r_z * np.cos(ph)
    vz = -amps.r_z * wz * np.sin(ph)
    pos = np.column_stack([r.real, r.imag, z])
    vel = np.column_stack([rd.real, rd.imag, vz])
    return t, pos, vel


def analytic_state(amps: MotionAmplitudes, freqs: ModeFrequencies, t: float) -> ElectronState:
    _, pos, vel = analytic_arrays(amps, freqs, t)
    return ElectronState(float(t), pos[0], vel[0])


def exb_drift_frequency(freqs: ModeFrequencies) -> float:
    """E×B drift estimate omega_z²/(2 omega_c) of the magnetron frequency.

    Only meaningful when omega_m << omega_c'; near the trapping boundary it
    departs from the exact root by tens of percent.
    """
    if freqs.omega_z == 0:
        return 0.0
    return freqs.omega_z**2 / (2.0 * freqs.omega_c)


# --- numerical integration ---------------------------------------------------


class Method(str, enum.Enum):
    RK4 = "rk4"
    RK45 = "rk45"
    DOP853 = "dop853"


@dataclass(frozen=True)
class IntegratorSettings:
    t_end: float
    method: Method = Method.DOP853
    dt: float | None = None
    rtol: float = 1e-12
    stride: int = 1
    n_samples: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not self.t_end > 0:
            raise ValueError("t_end must be positive")
        if self.method is Method.RK4:
            if self.dt is None or not self.dt > 0:
                raise ValueError("fixed-step rk4 needs dt > 0")
        elif not self.rtol > 0:
            raise ValueError("adaptive methods need rtol > 0")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    config: TrapConfiguration | None = None
    integrator_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.t.ndim != 1 or self.positions.shape != (len(self.t), 3):
            raise ValueError("inconsistent trajectory arrays")
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("sample times must be strictly increasing")
        for a in (self.t, self.positions, self.velocities):
            a.flags.writeable = False

    def __len__(self):
        return len(self.t)

    def __iter__(self):
        for i in range(len(self.t)):
            yield ElectronState(self.t[i], self.positions[i], self.velocities[i])

    @property
    def samples(self) -> list[ElectronState]:
        return list(self)

    @property
    def r(self) -> np.ndarray:
        return self.positions[:, 0] + 1j * self.positions[:, 1]


def _rhs_factory(wz2: float, wc: float):
    half = 0.5 * wz2

    def rhs(t, y):
        x, yy, z, vx, vy, vz = y
        return np.array([vx, vy, vz, half * x + wc * vy, half * yy - wc * vx, -wz2 * z])

    return rhs


def equations_of_motion_rhs(config: TrapConfiguration, state: np.ndarray) -> np.ndarray:
    """Time derivative of the (x, y, z, vx, vy, vz) state vector."""
    rhs = _rhs_factory(axial_frequency_squared(config.geom, config.field), cyclotron_frequency(config.field))
    return rhs(0.0, np.asarray(state, dtype=float))


def _rk4(rhs, y0, h, n_steps, keep_every):
    out = [y0.copy()]
    y = y0.copy()
    for i in range(1, n_steps + 1):
        k1 = rhs(0.0, y)
        k2 = rhs(0.0, y + 0.5 * h * k1)
        k3 = rhs(0.0, y + 0.5 * h * k2)
        k4 = rhs(0.0, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if i % keep_every == 0 or i == n_steps:
            out.append(y.copy())
    return np.array(out)


def integrate(initial: ElectronState, config: TrapConfiguration, settings: IntegratorSettings) -> Trajectory:
    """Integrate the trap equations of motion from ``initial``.

    Internally time is scaled by the fastest trap frequency and lengths by the
    initial orbit size, so a single relative tolerance controls every
    component. Untrapped configurations are integrated as well; the growth of
    the transverse radius is reported in ``integrator_meta['diagnostics']``.
    """
    wz2 = axial_frequency_squared(config.geom, config.field)
    wc = cyclotron_frequency(config.field)
    w_ref = max(wc, math.sqrt(abs(wz2)), 1e-300)
    t0 = initial.t
    y0_si = np.concatenate([initial.position, initial.velocity])
    length = float(max(np.max(np.abs(initial.position)), np.max(np.abs(initial.velocity)) / w_ref))
    if length == 0:
        length = 1.0
    scale = np.array([length] * 3 + [length * w_ref] * 3)

    # dimensionless system: s = w_ref t, u = y / scale
    rhs = _rhs_factory(wz2 / w_ref**2, wc / w_ref)
    u0 = y0_si / scale
    s_end = settings.t_end * w_ref
    meta = {"method": settings.method.value, "w_ref": w_ref, "length_scale": length}

    if settings.method is Method.RK4:
        n_steps = int(round(settings.t_end / settings.dt))
        if n_steps < 1:
            raise ValueError("dt exceeds t_end")
        h = settings.dt * w_ref
        u = _rk4(rhs, u0, h, n_steps, settings.stride)
        idx = np.arange(0, n_steps + 1, settings.stride)
        if idx[-1] != n_steps:
            idx = np.append(idx, n_steps)
        s = idx * h
        meta.update(dt=settings.dt, n_steps=n_steps, nfev=4 * n_steps)
    else:
        if settings.n_samples is not None:
            t_eval = np.linspace(0.0, s_end, settings.n_samples)
        else:
            t_eval = None
        sol = solve_ivp(
            rhs,
            (0.0, s_end),
            u0,
            method="RK45" if settings.method is Method.RK45 else "DOP853",
            rtol=settings.rtol,
            atol=settings.rtol,
            t_eval=t_eval,
        )
        if not sol.success:
            raise StepSizeUnderflow(f"adaptive integration failed: {sol.message}")
        s, u = sol.t, sol.y.T
        if t_eval is None and settings.stride > 1:
            keep = np.arange(0, len(s), settings.stride)
            if keep[-1] != len(s) - 1:
                keep = np.append(keep, len(s) - 1)
            s, u = s[keep], u[keep]
        meta.update(rtol=settings.rtol, nfev=int(sol.nfev))

    y = u * scale
    t = t0 + s / w_ref
    pos, vel = y[:, :3], y[:, 3:]

    meta["max_residual"] = _residual(t, pos, vel, wz2, wc)
    if wz2 > 0:
        energy = 0.5 * vel[:, 2] ** 2 + 0.5 * wz2 * pos[:, 2] ** 2
        meta["axial_energy_drift"] = float(np.max(np.abs(energy - energy[0])) / energy[0]) if energy[0] > 0 else 0.0
    trapped = wz2 > 0 and wc * wc > 2.0 * wz2
    rho = np.hypot(pos[:, 0], pos[:, 1])
    meta["diagnostics"] = {
        "trapped": bool(trapped),
        "radius_start": float(rho[0]),
        "radius_end": float(rho[-1]),
        "radius_max": float(np.max(rho)),
    }
    if not trapped:
        LOGGER.warning("configuration is not trapped; transverse radius grew to %.3g m", rho[-1])
    return Trajectory(t, pos, vel, config, meta)


def _residual(t, pos, vel, wz2, wc):
    """Relative mismatch of the sampled acceleration against the equations of motion.

    Acceleration comes from central differences of sampled velocities, so the
    figure is O(Δt_sample²) and only informative for finely sampled runs.
    """
    if len(t) < 3:
        return 0.0
    dt_l = t[1:-1] - t[:-2]
    dt_r = t[2:] - t[1:-1]
    acc = (
        (vel[2:] - vel[1:-1]) * (dt_l / dt_r)[:, None] + (vel[1:-1] - vel[:-2]) * (dt_r / dt_l)[:, None]
    ) / (dt_l + dt_r)[:, None]
    p, v = pos[1:-1], vel[1:-1]
    rhs = np.column_stack([
        0.5 * wz2 * p[:, 0] + wc * v[:, 1],
        0.5 * wz2 * p[:, 1] - wc * v[:, 0],
        -wz2 * p[:, 2],
    ])
    scale = np.max(np.abs(rhs))
    if scale == 0:
        return float(np.max(np.abs(acc)))
    return float(np.max(np.abs(acc - rhs)) / scale)


def analytic_trajectory(initial: ElectronState, freqs: ModeFrequencies, t, config=None) -> Trajectory:
    """Propagate ``initial`` analytically to the sample times ``t`` (relative to initial.t)."""
    amps = solve_amplitudes(initial, freqs)
    t = np.asarray(t, dtype=float)
    _, pos, vel = analytic_arrays(amps, freqs, t)
    return Trajectory(initial.t + t, pos, vel, config, {"method": "analytic"})


def position_error(traj: Trajectory, freqs: ModeFrequencies) -> float:
    """Max position deviation of ``traj`` from the analytic solution, relative to orbit size."""
    first = ElectronState(0.0, traj.positions[0], traj.velocities[0])
    amps = solve_amplitudes(first, freqs)
    _, pos, _ = analytic_arrays(amps, freqs, traj.t - traj.t[0])
    size = np.max(np.abs(pos))
    diff = np.max(np.abs(pos - traj.positions))
    return float(diff / size) if size > 0 else float(diff)


def project_modes(traj: Trajectory, freqs: ModeFrequencies) -> tuple[complex, complex]:
    """Least-squares fit of the transverse motion onto e^{-i w'_c t} and e^{-i w_m t}.

    Returns the fitted (r_c, r_m) referred to the first sample time.
    """
    _require_stable(freqs)
    t = traj.t - traj.t[0]
    basis = np.column_stack([np.exp(-1j * freqs.omega_c_prime * t), np.exp(-1j * freqs.omega_m * t)])
    coef, *_ = np.linalg.lstsq(basis, traj.r, rcond=None)
    return complex(coef[0]), complex(coef[1])
