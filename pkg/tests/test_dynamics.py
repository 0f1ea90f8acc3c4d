import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from geonium.dynamics import (
    ElectronState,
    IntegratorSettings,
    Method,
    MotionAmplitudes,
    Trajectory,
    analytic_arrays,
    analytic_state,
    equations_of_motion_rhs,
    exb_drift_frequency,
    integrate,
    position_error,
    project_modes,
    solve_amplitudes,
)
from geonium.errors import DegenerateModes, UnstableTrap
from geonium.trap import FieldConfiguration, TrapConfiguration, TrapGeometry, eigenfrequencies, mode_frequencies

TWO_PI = 2 * math.pi


@pytest.fixture(scope="module")
def cyl(cylindrical):
    return cylindrical.trap, eigenfrequencies(cylindrical.trap.geom, cylindrical.trap.field)


def state(pos, vel, t=0.0):
    return ElectronState(t, np.array(pos, float), np.array(vel, float))


def rel_close(a, b, tol):
    a, b = np.asarray(a), np.asarray(b)
    return np.max(np.abs(a - b)) <= tol * max(np.max(np.abs(b)), 1e-300)


class TestAmplitudes:
    def test_pure_axial(self, cyl):
        _, f = cyl
        amps = solve_amplitudes(state([0, 0, 2e-6], [0, 0, 0]), f)
        assert amps.r_z == 2e-6 and amps.phase_z == 0.0
        assert amps.r_c == 0 and amps.r_m == 0

    def test_single_cyclotron_mode(self, cyl):
        _, f = cyl
        rho = 1e-7
        amps = solve_amplitudes(state([rho, 0, 0], [0, -f.omega_c_prime * rho, 0]), f)
        assert abs(amps.r_c - rho) <= 1e-15 * rho * 1e3
        assert abs(amps.r_m) <= 1e-12 * rho

    @given(
        st.tuples(*[st.floats(-1e-5, 1e-5)] * 3),
        st.tuples(st.floats(-1e5, 1e5), st.floats(-1e5, 1e5), st.floats(-1e3, 1e3)),
        st.floats(0.05, 0.7),
    )
    def test_round_trip(self, pos, vel, ratio):
        f = mode_frequencies(1e11, ratio * 1e11)
        s = state(pos, vel)
        back = analytic_state(solve_amplitudes(s, f), f, 0.0)
        scale = max(np.max(np.abs(pos)), np.max(np.abs(vel)) / 1e11, 1e-30)
        assert np.max(np.abs(back.position - s.position)) <= 1e-12 * scale
        assert np.max(np.abs(back.velocity - s.velocity)) <= 1e-12 * scale * 1e11

    def test_phase_range(self, cyl):
        _, f = cyl
        amps = solve_amplitudes(state([0, 0, -1e-6], [0, 0, 0]), f)
        assert amps.phase_z == pytest.approx(math.pi)
        for p in np.linspace(-3, 3, 13):
            a = MotionAmplitudes(1.0, 0.0, complex(math.cos(p), math.sin(p)), 1j)
            assert -math.pi < a.cyclotron[1] <= math.pi
            assert a.magnetron == (1.0, pytest.approx(math.pi / 2))

    def test_requires_trapped(self):
        with pytest.raises(UnstableTrap):
            solve_amplitudes(state([1, 0, 0], [0, 0, 0]), mode_frequencies(1.0, 1.0))

    def test_boundary_is_degenerate(self):
        from test_trap import boundary_pair

        with pytest.raises(DegenerateModes):
            solve_amplitudes(state([1, 0, 0], [0, 0, 0]), mode_frequencies(*boundary_pair()))


class TestAnalytic:
    def test_pure_magnetron_radius_constant(self, cyl):
        _, f = cyl
        amps = MotionAmplitudes(0.0, 0.0, 0j, 3e-6 * np.exp(0.4j))
        _, pos, _ = analytic_arrays(amps, f, np.linspace(0, 1e-3, 1000))
        assert np.allclose(np.hypot(pos[:, 0], pos[:, 1]), 3e-6, rtol=1e-13, atol=0)

    def test_axial_periodicity(self, cyl):
        _, f = cyl
        amps = MotionAmplitudes(1e-6, 0.3, 0j, 0j)
        a, b = analytic_state(amps, f, 0.0), analytic_state(amps, f, TWO_PI / f.omega_z)
        assert rel_close(b.position, a.position, 1e-12)
        assert rel_close(b.velocity, a.velocity, 1e-12)

    def test_axial_energy_exact(self, cyl):
        _, f = cyl
        amps = MotionAmplitudes(1e-6, 0.3, 1e-7, 1e-6)
        _, pos, vel = analytic_arrays(amps, f, np.linspace(0, 1e-6, 777))
        energy = 0.5 * vel[:, 2] ** 2 + 0.5 * f.omega_z**2 * pos[:, 2] ** 2
        assert np.ptp(energy) <= 1e-14 * energy[0]

    def test_satisfies_equations_of_motion(self, cyl):
        # second-order central difference converges as h²
        trap, f = cyl
        amps = MotionAmplitudes(1e-6, 0.1, 1e-7 * np.exp(1j), 1e-6)
        t0 = 3.3e-9
        errs = []
        for h in (1e-13, 5e-14, 2.5e-14):
            _, pos, vel = analytic_arrays(amps, f, [t0 - h, t0, t0 + h])
            acc = (pos[2] - 2 * pos[1] + pos[0]) / h**2
            rhs = equations_of_motion_rhs(trap, np.concatenate([pos[1], vel[1]]))[3:]
            errs.append(np.max(np.abs(acc - rhs)) / np.max(np.abs(rhs)))
        assert 3.0 < errs[0] / errs[1] < 5.0
        assert 3.0 < errs[1] / errs[2] < 5.0


class TestExB:
    def test_cylindrical(self, cyl):
        _, f = cyl
        assert exb_drift_frequency(f) / TWO_PI == pytest.approx(11.95e3, rel=1e-3)
        assert exb_drift_frequency(f) == pytest.approx(f.omega_m, rel=1e-3)

    def test_zero_axial(self):
        assert exb_drift_frequency(mode_frequencies(1.0, 0.0)) == 0.0

    def test_breaks_down_near_boundary(self):
        f = mode_frequencies(1.0, 0.7)
        assert abs(exb_drift_frequency(f) / f.omega_m - 1) > 0.10


class TestIntegrator:
    def test_settings_validation(self):
        with pytest.raises(ValueError):
            IntegratorSettings(t_end=0.0)
        with pytest.raises(ValueError):
            IntegratorSettings(t_end=1.0, method=Method.RK4)
        with pytest.raises(ValueError):
            IntegratorSettings(t_end=1.0, rtol=0.0)

    def test_trajectory_invariants(self):
        with pytest.raises(ValueError):
            Trajectory(np.array([0.0, 0.0]), np.zeros((2, 3)), np.zeros((2, 3)))
        traj = Trajectory(np.array([0.0, 1.0]), np.zeros((2, 3)), np.zeros((2, 3)))
        assert not traj.positions.flags.writeable
        assert len(traj.samples) == 2

    def test_zero_state(self, cyl):
        trap, f = cyl
        traj = integrate(state([0, 0, 0], [0, 0, 0]), trap, IntegratorSettings(t_end=10 * TWO_PI / f.omega_c))
        assert not np.any(traj.positions) and not np.any(traj.velocities)

    def test_hundred_cyclotron_periods(self, cyl):
        trap, f = cyl
        amps = MotionAmplitudes(1e-6, 0.2, 1e-7, 1e-6)
        traj = integrate(analytic_state(amps, f, 0.0), trap,
                         IntegratorSettings(t_end=100 * TWO_PI / f.omega_c_prime, n_samples=2001))
        assert position_error(traj, f) < 1e-8

    def test_spec_default_rk45_is_weaker(self, cyl):
        # the embedded 4/5 pair at rtol 1e-10 does not reach 1e-8 here; see DOP853 default
        trap, f = cyl
        amps = MotionAmplitudes(1e-6, 0.2, 1e-7, 1e-6)
        traj = integrate(analytic_state(amps, f, 0.0), trap,
                         IntegratorSettings(t_end=100 * TWO_PI / f.omega_c_prime, method="rk45", rtol=1e-10, n_samples=2001))
        err = position_error(traj, f)
        assert 1e-9 < err < 1e-6

    def test_rk4_fourth_order(self, cyl):
        trap, f = cyl
        amps = MotionAmplitudes(1e-6, 0.2, 1e-7, 1e-6)
        period = TWO_PI / f.omega_c_prime
        errs = []
        for n in (20, 40, 80):
            traj = integrate(analytic_state(amps, f, 0.0), trap,
                             IntegratorSettings(t_end=10 * period, method=Method.RK4, dt=period / n))
            errs.append(position_error(traj, f))
        for coarse, fine in zip(errs, errs[1:]):
            assert 12 < coarse / fine < 20

    def test_projection_recovers_amplitudes(self, cyl):
        trap, f = cyl
        amps = MotionAmplitudes(0.0, 0.0, 1e-7 * np.exp(0.5j), 1e-6 * np.exp(-1j))
        traj = integrate(analytic_state(amps, f, 0.0), trap,
                         IntegratorSettings(t_end=50 * TWO_PI / f.omega_c_prime, n_samples=3001))
        r_c, r_m = project_modes(traj, f)
        assert abs(r_c) == pytest.approx(abs(amps.r_c), rel=1e-6)
        assert abs(r_m) == pytest.approx(abs(amps.r_m), rel=1e-6)

    def test_untrapped_radius_runs_away(self):
        g = TrapGeometry(1e-3, 1e-3)
        trap = TrapConfiguration(g, FieldConfiguration(10.0, 1e-3), "untrapped")
        traj = integrate(state([1e-6, 0, 0], [0, 0, 0]), trap, IntegratorSettings(t_end=2e-8, n_samples=400))
        rho = np.hypot(traj.positions[:, 0], traj.positions[:, 1])
        assert not traj.integrator_meta["diagnostics"]["trapped"]
        assert rho[-1] > 1e6 * rho[0]
        assert np.all(np.diff(rho[1:]) > 0)

    def test_axial_energy_over_ten_thousand_periods(self, cyl):
        trap, f = cyl
        traj = integrate(state([0, 0, 1e-6], [0, 0, 0]), trap,
                         IntegratorSettings(t_end=1e4 * TWO_PI / f.omega_z, n_samples=20001))
        assert traj.integrator_meta["axial_energy_drift"] < 1e-8
