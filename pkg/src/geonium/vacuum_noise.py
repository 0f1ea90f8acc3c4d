"""Vacuum noise seen by a point detector on a classical worldline.

Three producers of a spectral density on a frequency grid:

``planck_analytic``
    closed-form thermal response of a uniformly accelerated detector.
``wightman_numeric``
    windowed trapezoid Fourier transform of the massless-scalar Wightman
    function along the worldline, with the inertial vacuum subtracted inside
    the integrand.
``ksy_closed_form``
    the truncated velocity series for circular motion, zero-point term plus
    step-function sums whose coefficients come from an external table.

Units
-----
Proper time in seconds, angular frequencies in rad/s. The Wightman function
is written in time units, G = -1/(4π²) · 1/(Δt² - |Δx|²/c²), so it carries
s⁻² and its transform (the detector response) carries s⁻¹. Multiply G by
1/c² for the m⁻² normalization.
"""

from __future__ import annotations

import enum
import hashlib
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy.optimize import brentq
from scipy.signal import find_peaks

from .constants import C, HBAR, K_B
from .errors import CoefficientTableMissing, QuadratureNotConverged, WrongProducer

LOGGER = logging.getLogger(__name__)

FOUR_PI_SQ = 4.0 * math.pi**2


class WorldlineKind(str, enum.Enum):
    INERTIAL = "inertial"
    LINEAR = "linear"
    CIRCULAR = "circular"


@dataclass(frozen=True)
class Worldline:
    """Stationary detector trajectory.

    Use the constructors :meth:`inertial`, :meth:`linear` and :meth:`circular`.
    """

    kind: WorldlineKind
    a: float | None = None
    omega_lab: float | None = None
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", WorldlineKind(self.kind))
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta}")
        if self.kind is WorldlineKind.LINEAR and not (self.a is not None and self.a > 0):
            raise ValueError("linear worldline needs a > 0")
        if self.kind is WorldlineKind.CIRCULAR and not (self.omega_lab is not None and self.omega_lab > 0):
            raise ValueError("circular worldline needs omega_lab > 0")

    @classmethod
    def inertial(cls, beta: float = 0.0) -> "Worldline":
        return cls(WorldlineKind.INERTIAL, beta=beta)

    @classmethod
    def linear(cls, a: float) -> "Worldline":
        return cls(WorldlineKind.LINEAR, a=a)

    @classmethod
    def circular(cls, omega_lab: float, beta: float) -> "Worldline":
        return cls(WorldlineKind.CIRCULAR, omega_lab=omega_lab, beta=beta)

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta**2)

    @property
    def radius(self) -> float:
        if self.kind is not WorldlineKind.CIRCULAR:
            raise AttributeError("radius is defined for circular worldlines only")
        return self.beta * C / self.omega_lab

    @property
    def proper_orbital_frequency(self) -> float:
        """Orbital angular frequency per unit proper time, gamma·omega_lab."""
        return self.gamma * self.omega_lab

    @property
    def proper_acceleration(self) -> float:
        if self.kind is WorldlineKind.LINEAR:
            return self.a
        if self.kind is WorldlineKind.CIRCULAR:
            return self.gamma**2 * self.beta * C * self.omega_lab
        return 0.0

    def embedding(self, tau):
        """Lab coordinates (c t, x, y, z) in metres at proper time ``tau``.

        ``tau`` may be complex; the coordinate functions are entire, which is
        what the iε prescription relies on.
        """
        tau = np.asarray(tau)
        zero = np.zeros_like(tau)
        if self.kind is WorldlineKind.INERTIAL:
            g = self.gamma
            return C * g * tau, C * g * self.beta * tau, zero, zero
        if self.kind is WorldlineKind.LINEAR:
            k = self.a / C
            return (C / k) * np.sinh(k * tau), (C / k) * np.cosh(k * tau), zero, zero
        g = self.gamma
        phase = self.omega_lab * g * tau
        rho = self.radius
        return C * g * tau, rho * np.cos(phase), rho * np.sin(phase), zero

    def analyticity_half_width(self) -> float:
        """Distance (s) from the real proper-time axis to the nearest non-origin pole of G."""
        if self.kind is WorldlineKind.LINEAR:
            return 2.0 * math.pi * C / self.a
        if self.kind is WorldlineKind.CIRCULAR and self.beta > 0:
            # s = 2iy/Ω with y = β sinh y, the imaginary root of u = β sin u
            b = self.beta
            hi = 1.0
            while b * math.sinh(hi) <= hi:
                hi *= 2.0
            y = brentq(lambda y: b * math.sinh(y) - y, 1e-8, hi)
            return 2.0 * y / self.proper_orbital_frequency
        return math.inf

    def fingerprint(self) -> dict:
        return {"kind": self.kind.value, "a": self.a, "omega_lab": self.omega_lab, "beta": self.beta}


def unruh_temperature(a: float) -> float:
    """Vacuum temperature ħa/(2π c k_B) of a detector with proper acceleration a."""
    if a < 0:
        raise ValueError("acceleration must be non-negative")
    return HBAR * a / (2.0 * math.pi * C * K_B)


def thermal_frequency(a: float) -> float:
    """k_B T_V / ħ = a/(2πc), the angular frequency set by the vacuum temperature."""
    return a / (2.0 * math.pi * C)


def planck_response(omega, a: float):
    """Response (ω/2π)/(exp(2πcω/a) - 1) of a uniformly accelerated detector, in s⁻¹.

    Valid for either sign of ω; at ω → 0 it tends to a/(4π²c).
    """
    omega = np.asarray(omega, dtype=float)
    if not a > 0:
        raise ValueError("planck_response needs a > 0")
    x = 2.0 * math.pi * C * omega / a
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(x == 0, a / (FOUR_PI_SQ * C), omega / (2.0 * math.pi) / np.expm1(x))
    return out[()] if out.ndim == 0 else out


def wightman_correlator(w: Worldline, dtau, eps: float, tau0: float = 0.0):
    """Positive-frequency Wightman function between proper times tau0 ± (dtau - iε)/2.

    Returns -1/(4π²) / (Δt² - Δx·Δx/c²) in s⁻². The spatial separation is
    squared bilinearly (no complex conjugation) so the expression stays
    analytic in the regularized separation. Separations whose interval
    overflows (hyperbolic motion at |dtau| >> c/a) return 0.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    s = np.asarray(dtau, dtype=float) - 1j * eps
    with np.errstate(over="ignore", invalid="ignore"):
        ct1, x1, y1, z1 = w.embedding(tau0 + 0.5 * s)
        ct0, x0, y0, z0 = w.embedding(tau0 - 0.5 * s)
        dct, dx, dy, dz = ct1 - ct0, x1 - x0, y1 - y0, z1 - z0
        sigma = (dct * dct - (dx * dx + dy * dy + dz * dz)) / C**2
    # an interval beyond float range means G has decayed to zero
    finite = np.isfinite(sigma)
    out = np.where(finite, -1.0 / (FOUR_PI_SQ * np.where(finite, sigma, 1.0)), 0.0)
    return out[()] if np.ndim(out) == 0 else out


def inertial_correlator(dtau, eps: float):
    s = np.asarray(dtau, dtype=float) - 1j * eps
    return -1.0 / (FOUR_PI_SQ * s * s)


def linear_correlator_closed_form(a: float, dtau, eps: float):
    """-(a/4πc)² / sinh²(a(dtau - iε)/2c), the hyperbolic-motion Wightman function."""
    s = np.asarray(dtau, dtype=float) - 1j * eps
    return -((a / (4.0 * math.pi * C)) ** 2) / np.sinh(a * s / (2.0 * C)) ** 2


# --- spectra ------------------------------------------------------------------


class Producer(str, enum.Enum):
    PLANCK = "planck_analytic"
    WIGHTMAN = "wightman_numeric"
    KSY = "ksy_closed_form"


@dataclass(frozen=True)
class SpectrumGrid:
    omegas: np.ndarray

    def __post_init__(self):
        w = np.array(self.omegas, dtype=float).reshape(-1)
        if w.size == 0 or not np.all(w > 0) or not np.all(np.diff(w) > 0):
            raise ValueError("grid frequencies must be positive and strictly increasing")
        w.flags.writeable = False
        object.__setattr__(self, "omegas", w)

    @classmethod
    def logspace(cls, omega_min: float, omega_max: float, n: int) -> "SpectrumGrid":
        return cls(np.geomspace(omega_min, omega_max, n))

    @classmethod
    def linspace(cls, omega_min: float, omega_max: float, n: int) -> "SpectrumGrid":
        return cls(np.linspace(omega_min, omega_max, n))

    def __len__(self):
        return len(self.omegas)


@dataclass(frozen=True)
class RegularizationSettings:
    """Numerical knobs of the Wightman transform.

    epsilon      iε scale (s); its effect is removed exactly by the factor e^{-ωε}
    tau_max      half-length of the proper-time window (s)
    taper_width  length of the cosine roll-off at each end of the window (s)
    n_nodes      trapezoid nodes over [-tau_max, tau_max] (coarse level)
    rtol         node-doubling convergence tolerance
    """

    epsilon: float
    tau_max: float
    taper_width: float
    n_nodes: int
    rtol: float = 1e-3
    window: str = "cosine"
    scheme: str = "trapezoid"

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.tau_max > 0 or not 0 < self.taper_width <= self.tau_max:
            raise ValueError("need tau_max > 0 and 0 < taper_width <= tau_max")
        if self.n_nodes < 3:
            raise ValueError("need at least 3 quadrature nodes")
        if self.window != "cosine" or self.scheme != "trapezoid":
            raise ValueError("only the cosine window with trapezoid quadrature is implemented")

    @classmethod
    def default_for(cls, w: Worldline, grid: SpectrumGrid) -> "RegularizationSettings":
        w_min, w_max = float(grid.omegas[0]), float(grid.omegas[-1])
        # 50 periods of the slowest grid frequency, and never shorter than 200/ω_min
        tau_max = max(200.0, 100.0 * math.pi) / w_min
        d = w.analyticity_half_width()
        h = math.pi / (2.0 * w_max)
        if math.isfinite(d):
            # trapezoid aliasing error ~ exp(-2πd/h + ω d); keep the exponent below -36
            h = min(h, 2.0 * math.pi * d / (36.0 + w_max * d))
        n = int(math.ceil(2.0 * tau_max / h)) + 1
        n += (n + 1) % 2  # odd, so τ = 0 is a node
        return cls(epsilon=1e-3 / w_max, tau_max=tau_max, taper_width=0.5 * tau_max, n_nodes=n)

    def check_covers(self, grid: SpectrumGrid):
        need = 50.0 * 2.0 * math.pi / float(grid.omegas[0])
        if self.tau_max < need * (1 - 1e-12):
            raise ValueError(
                f"tau_max={self.tau_max:.4g} s covers fewer than 50 periods of the slowest "
                f"grid frequency (needs >= {need:.4g} s)"
            )

    def fingerprint(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class NoiseSpectrum:
    grid: SpectrumGrid
    values: np.ndarray
    producer: Producer
    worldline: Worldline | None = None
    negative_values: np.ndarray | None = None
    settings: dict = field(default_factory=dict)
    units: str = "1/s per (rad/s) detector response"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if v.shape != self.grid.omegas.shape or not np.all(np.isfinite(v)):
            raise ValueError("spectrum values must be finite and match the grid")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "producer", Producer(self.producer))

    @property
    def omegas(self) -> np.ndarray:
        return self.grid.omegas

    @property
    def fingerprint(self) -> str:
        payload = {
            "producer": self.producer.value,
            "worldline": self.worldline.fingerprint() if self.worldline else None,
            "settings": self.settings,
        }
        blob = json.dumps(payload, sort_keys=True, default=float).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def planck_spectrum(a: float, grid: SpectrumGrid) -> NoiseSpectrum:
    w = grid.omegas
    return NoiseSpectrum(
        grid,
        planck_response(w, a),
        Producer.PLANCK,
        Worldline.linear(a),
        negative_values=planck_response(-w, a),
        settings={"a": a},
    )


def _window(tau, tau_max, taper):
    flat = tau_max - taper
    u = np.clip((np.abs(tau) - flat) / taper, 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(math.pi * u))


_SERIES_RADIUS = 0.5


def _sin_minus_id(u):
    """sin(u) - u without cancellation for small |u|."""
    small = np.abs(u) < _SERIES_RADIUS
    u2 = u * u
    series = -u * u2 / 6.0 * (1 - u2 / 20.0 * (1 - u2 / 42.0 * (1 - u2 / 72.0 * (1 - u2 / 110.0 * (1 - u2 / 156.0)))))
    return np.where(small, series, np.sin(u) - u)


def _sinh_minus_id(v):
    """sinh(v) - v without cancellation for small |v|."""
    small = np.abs(v) < _SERIES_RADIUS
    v2 = v * v
    series = v * v2 / 6.0 * (1 + v2 / 20.0 * (1 + v2 / 42.0 * (1 + v2 / 72.0 * (1 + v2 / 110.0 * (1 + v2 / 156.0)))))
    with np.errstate(over="ignore", invalid="ignore"):
        direct = np.sinh(v) - v
    return np.where(small, series, direct)


def subtracted_correlator(w: Worldline, dtau, eps: float):
    """G(dtau - iε) - G_inertial(dtau - iε), written to avoid the 1/s² cancellation.

    Hyperbolic motion, v = a s / 2c:
        -(a/4πc)² (v - sinh v)(v + sinh v) / (v² sinh² v)
    Circular motion, u = γ ω_lab s / 2:
        -(Ωβ/4π)² (sin u - u)(sin u + u) / (u² (u² - β² sin² u))
    """
    s = np.asarray(dtau, dtype=float) - 1j * eps
    if w.kind is WorldlineKind.INERTIAL:
        # the interval of uniform motion is exactly the proper-time interval
        return np.zeros_like(s)
    with np.errstate(over="ignore", invalid="ignore"):
        if w.kind is WorldlineKind.LINEAR:
            v = w.a * s / (2.0 * C)
            dm = _sinh_minus_id(v)
            sh = dm + v
            out = ((w.a / (4.0 * math.pi * C)) ** 2) * dm * (sh + v) / (v * v * sh * sh)
            # once sinh overflows only the inertial term survives
            out = np.where(np.isfinite(out), out, 1.0 / (FOUR_PI_SQ * s * s))
            return out
        omega = w.proper_orbital_frequency
        b = w.beta
        u = 0.5 * omega * s
        dm = _sin_minus_id(u)
        sn = dm + u
        return -((omega * b / (4.0 * math.pi)) ** 2) * dm * (sn + u) / (u * u * (u * u - b * b * sn * sn))


def _subtracted_integrand(w: Worldline, tau, eps):
    return subtracted_correlator(w, tau, eps)


def _transform(w: Worldline, omegas, reg: RegularizationSettings, n_nodes: int, workers: int | None):
    tau = np.linspace(-reg.tau_max, reg.tau_max, n_nodes)
    h = tau[1] - tau[0]
    g = _subtracted_integrand(w, tau, reg.epsilon) * _window(tau, reg.tau_max, reg.taper_width)
    g[0] *= 0.5
    g[-1] *= 0.5
    g *= h

    def chunk(ws):
        return np.exp(-1j * np.outer(ws, tau)) @ g

    size = max(1, int(2_000_000 // n_nodes))
    pieces = [omegas[i:i + size] for i in range(0, len(omegas), size)]
    if workers and workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(chunk, pieces))
    else:
        parts = [chunk(p) for p in pieces]
    out = np.concatenate(parts) if parts else np.zeros(0, complex)
    # contour shift: the ε-regularized transform equals e^{ωε} times the ε → 0 limit
    return out * np.exp(-omegas * reg.epsilon)


def response_spectrum(
    w: Worldline,
    grid: SpectrumGrid,
    reg: RegularizationSettings | None = None,
    *,
    check_convergence: bool = True,
    workers: int | None = None,
) -> NoiseSpectrum:
    """Numerical vacuum-subtracted detector response along ``w``.

    The positive-frequency values are the noise above the inertial vacuum,
    which itself vanishes for ω > 0. Negative-frequency values (de-excitation)
    are stored in ``negative_values`` with the inertial piece |ω|/2π added
    back, as required for detailed-balance checks.

    The transform is evaluated on ``n_nodes`` and again on twice the node
    density; the finer result is returned and QuadratureNotConverged is raised
    if the two differ by more than ``reg.rtol`` anywhere above a floor of
    1e-9 of the spectrum's peak.
    """
    reg = reg or RegularizationSettings.default_for(w, grid)
    reg.check_covers(grid)
    omegas = grid.omegas
    both = np.concatenate([omegas, -omegas])

    fine_nodes = 2 * reg.n_nodes - 1
    fine = _transform(w, both, reg, fine_nodes, workers)
    meta = {"regularization": reg.fingerprint(), "fine_nodes": fine_nodes}
    if check_convergence:
        coarse = _transform(w, both, reg, reg.n_nodes, workers)
        scale = np.max(np.abs(fine.real))
        err = np.abs(fine.real - coarse.real)
        bound = reg.rtol * np.abs(fine.real) + 1e-9 * scale
        meta["max_doubling_change"] = float(np.max(err / np.maximum(np.abs(fine.real), 1e-300)))
        if np.any(err > bound) and scale > 0:
            worst = int(np.argmax(err / bound))
            raise QuadratureNotConverged(
                f"node doubling changed F({both[worst]:.4g} rad/s) by {err[worst]:.3g} "
                f"(> {bound[worst]:.3g}); increase n_nodes or tau_max"
            )
    meta["max_imag_residue"] = float(np.max(np.abs(fine.imag))) if fine.size else 0.0

    n = len(omegas)
    pos = fine.real[:n]
    neg = fine.real[n:] + omegas / (2.0 * math.pi)
    return NoiseSpectrum(grid, pos, Producer.WIGHTMAN, w, negative_values=neg, settings=meta)


def kms_deviation(spec: NoiseSpectrum, a: float) -> float:
    """Max relative departure of F(-ω)/F(ω) from exp(ħω / k_B T_V(a))."""
    ok = spec.producer is Producer.PLANCK or (
        spec.producer is Producer.WIGHTMAN
        and spec.worldline is not None
        and spec.worldline.kind is WorldlineKind.LINEAR
    )
    if not ok or spec.negative_values is None:
        raise WrongProducer(
            f"KMS check needs a linear-acceleration spectrum with negative frequencies, got {spec.producer.value}"
        )
    boltzmann = np.exp(2.0 * math.pi * C * spec.omegas / a)
    ratio = spec.negative_values / spec.values
    return float(np.max(np.abs(ratio - boltzmann) / boltzmann))


def spectral_peaks(spec: NoiseSpectrum, prominence: float = 0.0):
    """Grid frequencies of local maxima of the spectrum (rad/s)."""
    idx, _ = find_peaks(spec.values, prominence=prominence)
    return spec.omegas[idx]


def log_slope_features(spec: NoiseSpectrum):
    """Local maxima of d ln F / dω (rad/s).

    A monotone spectrum can still carry ripples; these show up as maxima of
    the logarithmic slope even when ``spectral_peaks`` finds nothing.
    """
    values = np.asarray(spec.values)
    if np.any(values <= 0.0) or len(values) < 3:
        return np.array([])
    slope = np.gradient(np.log(values), spec.omegas)
    idx, _ = find_peaks(slope)
    return spec.omegas[idx]


# --- closed-form circular series ---------------------------------------------


def parse_ksy_table(text: str) -> dict[tuple[int, int], float]:
    """Parse ``n k coefficient`` lines; '#' starts a comment."""
    table: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'n k coefficient', got {raw!r}")
        try:
            n, k, coef = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if n < 0:
            raise ValueError(f"line {lineno}: n must be non-negative")
        if (n, k) in table:
            raise ValueError(f"line {lineno}: duplicate entry for n={n}, k={k}")
        table[(n, k)] = coef
    return table


def load_ksy_table(path) -> dict[tuple[int, int], float]:
    return parse_ksy_table(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class KSYParameters:
    gamma: float
    v: float
    omega_0: float
    n_max: int = 3
    coefficient_table: dict | None = None

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if not 0.0 <= self.v < 1.0:
            raise ValueError("v must lie in [0, 1)")
        if not self.gamma >= 1.0 or not self.omega_0 > 0:
            raise ValueError("need gamma >= 1 and omega_0 > 0")

    @classmethod
    def for_orbit(cls, beta: float, omega_0: float, table=None, n_max: int = 3) -> "KSYParameters":
        return cls(1.0 / math.sqrt(1.0 - beta * beta), beta, omega_0, n_max, table)

    def require_table(self):
        if self.coefficient_table is None:
            raise CoefficientTableMissing("no KSY coefficient table supplied")
        have = {n for n, _ in self.coefficient_table}
        missing = [n for n in range(self.n_max + 1) if n not in have]
        if missing:
            raise CoefficientTableMissing(f"coefficient table lacks orders n={missing} (n_max={self.n_max})")
        return self.coefficient_table


def ksy_series(r, params: KSYParameters):
    """Σ_{n≤n_max} v^{2n} f_n(r), with f_n(r) = Σ_k c_nk θ(n - k - r) and θ(0) = 0."""
    table = params.require_table()
    r = np.asarray(r, dtype=float)
    total = np.zeros_like(r)
    for (n, k), coef in sorted(table.items()):
        if n > params.n_max:
            continue
        total = total + params.v ** (2 * n) * coef * ((n - k - r) > 0)
    return total


def ksy_excess_occupation(omega, params: KSYParameters):
    """The bracket term beyond 1/2: (1/(2γ² r)) Σ v^{2n} f_n(r), r = ω/(γ ω_0)."""
    omega = np.asarray(omega, dtype=float)
    r = omega / (params.gamma * params.omega_0)
    return ksy_series(r, params) / (2.0 * params.gamma**2 * r)


def zero_point_density(omega):
    """Zero-point part ħω³/(2π²c³) of the spectral energy density (J·s/m³)."""
    omega = np.asarray(omega, dtype=float)
    return HBAR * omega**3 / (math.pi**2 * C**3) * 0.5


def ksy_spectral_density(omega, params: KSYParameters):
    """Spectral energy density per unit ω, ħω³/(π²c³)·(1/2 + excess), in J·s/m³."""
    omega = np.asarray(omega, dtype=float)
    if not np.all(omega > 0):
        raise ValueError("omega must be positive")
    pref = HBAR * omega**3 / (math.pi**2 * C**3)
    out = pref * (0.5 + ksy_excess_occupation(omega, params))
    return out[()] if out.ndim == 0 else out


def ksy_spectrum(params: KSYParameters, grid: SpectrumGrid) -> NoiseSpectrum:
    return NoiseSpectrum(
        grid,
        ksy_spectral_density(grid.omegas, params),
        Producer.KSY,
        Worldline.circular(params.omega_0, params.v),
        settings={"gamma": params.gamma, "v": params.v, "omega_0": params.omega_0, "n_max": params.n_max},
        units="J*s/m^3 energy density per (rad/s)",
    )
