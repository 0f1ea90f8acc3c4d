"""Acceptance gate: one check per criterion, each at its stated tolerance.

A PASS/FAIL line per criterion is printed in the terminal summary (see
conftest.py) and also when this file is run as a script.
"""

import math
import time

import numpy as np
import pytest

from geonium import vacuum_noise as vn
from geonium.dynamics import IntegratorSettings, Method, MotionAmplitudes, analytic_state, integrate, position_error
from geonium.experiment import XI_01, feasibility, proper_acceleration_circular, relativistic_cyclotron, tm010_frequency
from geonium.presets import ROGERS_DETECTION_TIME, get_preset
from geonium.trap import FieldConfiguration, TrapGeometry, eigenfrequencies

TWO_PI = 2 * math.pi
G0 = 9.80665

RESULTS: dict[int, list[tuple[bool, str]]] = {}
# not reproducible at desk scale; a substitute check runs but carries no verdict
EXCLUDED = {10}


def record(n: int, ok: bool, detail: str) -> bool:
    RESULTS.setdefault(n, []).append((bool(ok), detail))
    return ok


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(RESULTS):
        parts = RESULTS[n]
        verdict = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        if n in EXCLUDED:
            verdict = f"EXCLUDED (substitute {verdict.lower()})"
        lines.append(f"criterion {n:2d}: {verdict}  " + "; ".join(d for _, d in parts))
    return lines


@pytest.fixture(scope="module")
def rogers_report():
    p = get_preset("rogers")
    return feasibility(p.trap, p.cavity, p.beta, p.amplifier, r0_inferred=p.r0_inferred)


def test_criterion_1_cylindrical_magnetron():
    p = get_preset("cylindrical")
    f = eigenfrequencies(p.trap.geom, p.trap.field).as_hz()
    ok = 11.95e3 <= f["f_m"] <= 12.0e3 and abs(f["f_m"] / 12e3 - 1) < 0.01
    assert record(1, ok, f"f_m = {f['f_m']:.2f} Hz (f_c = {f['f_c'] / 1e9:.3f} GHz, f_z = {f['f_z'] / 1e6:.3f} MHz)")


def test_criterion_2_eigenfrequency_identities():
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    worst_sum = worst_prod = 0.0
    n = 0
    while n < 10_000:
        z0 = 10 ** rng.uniform(-4, -2)
        geom = TrapGeometry(z0, z0 * rng.uniform(0.5, 3.0))
        field = FieldConfiguration(10 ** rng.uniform(-1, 4), 10 ** rng.uniform(-1, 1.5))
        f = eigenfrequencies(geom, field)
        if not f.stable:
            continue
        worst_sum = max(worst_sum, abs(f.omega_c_prime + f.omega_m - f.omega_c) / f.omega_c)
        worst_prod = max(worst_prod, abs(f.omega_c_prime * f.omega_m / (f.omega_z**2 / 2) - 1))
        n += 1
    elapsed = time.perf_counter() - start
    ok = worst_sum < 1e-12 and worst_prod < 1e-12 and elapsed < 1.0
    assert record(2, ok, f"{n} configs, max rel err sum {worst_sum:.1e}, product {worst_prod:.1e}, {elapsed:.2f} s")


def test_criterion_3_unruh_temperature():
    t = vn.unruh_temperature(6e19 * G0)
    assert record(3, 2.35 <= t <= 2.45, f"T_V = {t:.4f} K")


def test_criterion_4_circular_acceleration():
    a = proper_acceleration_circular(0.6, relativistic_cyclotron(15.0, 1.25))
    dev = a / (6e19 * G0) - 1
    assert record(4, abs(dev) < 0.03, f"a = {a:.4e} m/s^2, {100 * dev:+.2f}% from 6e19 g")


def test_criterion_5_linear_unruh_spectrum():
    a = 2.466e20
    wt = vn.thermal_frequency(a)
    start = time.perf_counter()
    spec = vn.response_spectrum(vn.Worldline.linear(a), vn.SpectrumGrid.logspace(0.1 * wt, 10 * wt, 41))
    elapsed = time.perf_counter() - start
    err = float(np.max(np.abs(spec.values / vn.planck_response(spec.omegas, a) - 1)))
    kms = vn.kms_deviation(spec, a)
    ok = err < 0.01 and kms < 0.02 and elapsed <= 60
    assert record(5, ok, f"max rel err {err:.2e}, KMS deviation {kms:.2e}, {elapsed:.1f} s")


def test_criterion_6_integrator_equivalence():
    p = get_preset("cylindrical")
    f = eigenfrequencies(p.trap.geom, p.trap.field)
    amps = MotionAmplitudes(1e-6, 0.2, 1e-7, 1e-6)
    initial = analytic_state(amps, f, 0.0)
    period = TWO_PI / f.omega_c_prime
    start = time.perf_counter()
    traj = integrate(initial, p.trap, IntegratorSettings(t_end=100 * period, n_samples=4001))
    err = position_error(traj, f)
    errs = [
        position_error(integrate(initial, p.trap, IntegratorSettings(t_end=10 * period, method=Method.RK4, dt=period / n)), f)
        for n in (20, 40, 80)
    ]
    elapsed = time.perf_counter() - start
    ratios = [a / b for a, b in zip(errs, errs[1:])]
    ok = err < 1e-8 and all(12 <= r <= 20 for r in ratios) and elapsed <= 30
    assert record(6, ok, f"adaptive err {err:.1e} over 100 periods, RK4 halving ratios "
                         + ", ".join(f"{r:.1f}" for r in ratios) + f", {elapsed:.1f} s")


def test_criterion_7_observation_frequency(rogers_report):
    f_obs = rogers_report.omega_obs / TWO_PI
    dev = f_obs / 10.57e9 - 1
    ok = abs(dev) < 0.005 and rogers_report.gamma == pytest.approx(1.25) and abs(rogers_report.r0 - 0.70e-3) < 0.01e-3
    assert record(7, ok, f"gamma*f_z = {f_obs / 1e9:.4f} GHz, r0 = {rogers_report.r0 * 1e3:.4f} mm (inferred)")


def test_criterion_8_tm010(rogers_report):
    f = tm010_frequency(1.36e-2) / TWO_PI
    surfaced = rogers_report.tm010_obs_mismatch is not None and "omega_tm010" in rogers_report.notes
    ok = round(XI_01, 3) == 2.405 and abs(f / 8.44e9 - 1) < 0.005 and surfaced
    assert record(8, ok, f"xi01 = {XI_01:.6f}, f_TM010 = {f / 1e9:.4f} GHz, "
                         f"mismatch vs observation {100 * rogers_report.tm010_obs_mismatch:+.1f}%")


def test_criterion_9_snr(rogers_report):
    assert record(9, abs(rogers_report.snr - 0.30) <= 0.01, f"S/N = {rogers_report.snr:.4f}")


def test_criterion_9_detection_time(rogers_report):
    t = rogers_report.detection_time
    factor = max(t / ROGERS_DETECTION_TIME, ROGERS_DETECTION_TIME / t)
    assert record(9, factor <= 3, f"detection time {t * 1e3:.3g} ms vs 12 ms (factor {factor:.0f}; "
                                  f"bandwidth {rogers_report.bandwidth_hz:.4g} Hz, threshold {rogers_report.threshold:g})")


def test_criterion_10_substitute_zero_point_exactness():
    table = {(0, 0): 0.0, (1, 0): 1.0, (2, 0): 0.5, (2, 1): 0.25, (3, 0): 0.125, (3, 2): 0.0625}
    params = vn.KSYParameters.for_orbit(0.6, 2.11e12, table, n_max=3)
    w = np.array([4.0, 7.5, 50.0]) * params.gamma * params.omega_0
    ok = np.array_equal(vn.ksy_spectral_density(w, params), vn.zero_point_density(w))
    assert record(10, ok, "zero-point term exact beyond the last step threshold: "
                          + ("holds" if ok else "broken"))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
