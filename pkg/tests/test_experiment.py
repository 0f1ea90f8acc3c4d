import dataclasses
import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from geonium import vacuum_noise as vn
from geonium.constants import K_B
from geonium.errors import OutOfCavity, UnresolvedPowerModel, UnstableTrap
from geonium.experiment import (
    PUBLISHED_DPDF,
    XI_01,
    AmplifierModel,
    CavityGeometry,
    RadiometerModel,
    bessel_j0_first_zero,
    feasibility,
    lorentz_gamma,
    observation_frequency,
    proper_acceleration_circular,
    relativistic_cyclotron,
    synchrotron_damping_width,
    tm010_frequency,
    tm010_profile,
)
from geonium.presets import ROGERS_CAVITY, get_preset, rogers_ring_radius
from geonium.trap import FieldConfiguration, TrapConfiguration, cyclotron_frequency, mode_frequencies

TWO_PI = 2 * math.pi
G0 = 9.80665

# 50-digit oracle values
OMEGA_LAB_15T = 2110584010053.5981
A_ROGERS = 5.9319109517762332e20
T_V_ROGERS = 2.4053979139911487
R0_ROGERS = 0.00070160570645840376
GAMMA_C_15T = 87.231861047891297
XI01 = 2.4048255576957727686
F_TM010_136 = 8436950576.1183863
SNR_ROGERS = 0.30125629579989049
T_DET_ROGERS = 9.3819963269243917e-5


@pytest.fixture(scope="module")
def report():
    p = get_preset("rogers")
    return feasibility(p.trap, p.cavity, p.beta, p.amplifier, r0_inferred=True, with_noise_ratio=True)


class TestKinematics:
    def test_gamma(self):
        assert lorentz_gamma(0.6) == pytest.approx(1.25, rel=1e-15)
        with pytest.raises(ValueError):
            lorentz_gamma(1.0)

    def test_relativistic_cyclotron(self):
        assert relativistic_cyclotron(15.0, 1.0) == cyclotron_frequency(15.0)
        assert relativistic_cyclotron(15.0, 1.25) == pytest.approx(OMEGA_LAB_15T, rel=1e-12)
        assert relativistic_cyclotron(0.0, 1.25) == 0.0

    def test_rogers_acceleration(self):
        a = proper_acceleration_circular(0.6, relativistic_cyclotron(15.0, 1.25))
        assert a == pytest.approx(A_ROGERS, rel=1e-12)
        assert abs(a / (6e19 * G0) - 1) < 0.03
        assert vn.unruh_temperature(5.89e20) == pytest.approx(2.39, abs=0.005)

    def test_acceleration_linear_in_small_beta(self):
        a1 = proper_acceleration_circular(1e-4, 1e12)
        a2 = proper_acceleration_circular(2e-4, 1e12)
        assert a2 / a1 == pytest.approx(2.0, rel=1e-7)

    @given(st.floats(0.01, 0.95), st.floats(1e9, 1e13), st.floats(0.1, 10.0))
    def test_temperature_homogeneous_in_frequency(self, beta, w, k):
        t1 = vn.unruh_temperature(proper_acceleration_circular(beta, w))
        t2 = vn.unruh_temperature(proper_acceleration_circular(beta, k * w))
        assert t2 == pytest.approx(k * t1, rel=1e-13)

    def test_observation_frequency(self):
        f = mode_frequencies(1e13, TWO_PI * 8.456e9)
        assert observation_frequency(f, 1.25) / TWO_PI == pytest.approx(10.57e9, rel=1e-4)
        assert observation_frequency(f, 1.0) == f.omega_z
        assert observation_frequency(f, 2.5) == pytest.approx(2 * observation_frequency(f, 1.25))


class TestDamping:
    def test_frozen_value(self):
        assert synchrotron_damping_width(cyclotron_frequency(15.0)) == pytest.approx(GAMMA_C_15T, rel=1e-12)

    def test_scaling(self):
        assert synchrotron_damping_width(0.0) == 0.0
        assert synchrotron_damping_width(4e12) == pytest.approx(16 * synchrotron_damping_width(1e12), rel=1e-14)


class TestCavity:
    def test_bessel_zero(self):
        assert bessel_j0_first_zero() == pytest.approx(XI01, rel=1e-14)
        assert round(XI_01, 3) == 2.405

    def test_tm010(self):
        assert tm010_frequency(1.36e-2) / TWO_PI == pytest.approx(F_TM010_136, rel=1e-12)
        assert tm010_frequency(1.086e-2) / TWO_PI == pytest.approx(10.57e9, rel=2e-3)
        assert tm010_frequency(2.0) == pytest.approx(tm010_frequency(1.0) / 2, rel=1e-15)

    def test_profile(self):
        cav = ROGERS_CAVITY
        assert tm010_profile(cav, 0.0, 0.0) == 1.0
        assert abs(tm010_profile(cav, cav.radius, 0.0)) < 1e-9
        assert tm010_profile(cav, 5e-3, 1e-3) == tm010_profile(cav, 5e-3, 9e-3)
        rho = np.linspace(0, cav.radius, 1000, endpoint=False)
        assert np.all(tm010_profile(cav, rho, 0.0) > 0)
        with pytest.raises(OutOfCavity):
            tm010_profile(cav, 2 * cav.radius, 0.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            CavityGeometry(0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            AmplifierModel(0.0)
        with pytest.raises(ValueError):
            RadiometerModel(threshold=0.0)


class TestPresets:
    def test_rogers_ring_radius(self):
        assert rogers_ring_radius() == pytest.approx(R0_ROGERS, rel=1e-11)

    def test_values_exact(self):
        p = get_preset("rogers")
        assert (p.trap.geom.z0, p.trap.field.U0, p.trap.field.B, p.beta) == (1e-3, 1e4, 15.0, 0.6)
        assert p.provenance["r0"] == "inferred" and p.r0_inferred
        d = get_preset("dehmelt")
        assert d.trap.geom.z0 == 4e-3 and d.trap.field.B == 5.0
        c = get_preset("cylindrical")
        assert c.trap.geom.is_orthogonalized()
        assert (c.trap.geom.comp_height_ratio, c.trap.geom.slit_width) == (0.20, 1.5e-4)
        with pytest.raises(KeyError):
            get_preset("nope")


class TestFeasibility:
    def test_rogers_numbers(self, report):
        assert report.gamma == pytest.approx(1.25, rel=1e-15)
        assert report.a == pytest.approx(A_ROGERS, rel=1e-12)
        assert report.T_V == pytest.approx(T_V_ROGERS, rel=1e-12)
        assert report.omega_obs / TWO_PI == pytest.approx(10.57e9, rel=1e-12)
        assert report.snr == pytest.approx(SNR_ROGERS, rel=1e-12)
        assert report.detection_time == pytest.approx(T_DET_ROGERS, rel=1e-12)
        assert report.Gamma_c == pytest.approx(GAMMA_C_15T, rel=1e-12)
        assert report.omega_tm010 / TWO_PI == pytest.approx(F_TM010_136, rel=1e-12)
        assert report.tm010_obs_mismatch == pytest.approx(F_TM010_136 / 10.57e9 - 1, rel=1e-10)

    def test_provenance(self, report):
        prov = report.provenance
        assert prov["dPdf"] == "published" and prov["r0"] == "inferred"
        assert prov["noise_temperature"] == "calibrated" and prov["T_V"] == "derived"
        assert set(prov.values()) <= {"published", "derived", "inferred", "calibrated"}
        doc = json.loads(report.to_json())
        assert doc["provenance"] == prov

    def test_internal_consistency(self, report):
        assert report.T_V == vn.unruh_temperature(report.a)
        assert report.omega_obs == report.gamma * report.omega_z
        assert report.snr * K_B * report.noise_temperature == pytest.approx(report.dPdf, rel=1e-15)

    def test_recomputation_bit_identical(self, report):
        p = get_preset("rogers")
        again = feasibility(p.trap, p.cavity, p.beta, p.amplifier, r0_inferred=True, with_noise_ratio=True)
        assert again == report

    def test_circular_to_unruh_ratio_reported(self, report):
        # reported, no tolerance asserted on what counts as negligible
        assert 0 < report.circular_to_unruh_ratio < 10

    def test_noise_temperature_linear(self):
        p = get_preset("rogers")
        base = feasibility(p.trap, p.cavity, p.beta, AmplifierModel(11.3))
        doubled = feasibility(p.trap, p.cavity, p.beta, AmplifierModel(22.6))
        assert doubled.snr == pytest.approx(base.snr / 2, rel=1e-15)

    def test_calibrated_amplifier(self):
        assert AmplifierModel.calibrated(PUBLISHED_DPDF, 0.3).noise_temperature == pytest.approx(11.35, abs=0.01)

    def test_radiometer_knobs(self):
        p = get_preset("rogers")
        r = feasibility(p.trap, p.cavity, p.beta, p.amplifier, radiometer=RadiometerModel(threshold=6.0, bandwidth_hz=1e3))
        assert r.detection_time == pytest.approx((6.0 / r.snr) ** 2 / 1e3, rel=1e-14)
        assert r.provenance["bandwidth_hz"] == "calibrated"

    def test_ksy_needs_table(self):
        p = get_preset("rogers")
        with pytest.raises(UnresolvedPowerModel):
            feasibility(p.trap, p.cavity, p.beta, p.amplifier, "ksy_estimate")

    def test_ksy_estimate_opt_in(self):
        p = get_preset("rogers")
        table = {(0, 0): 0.0, (1, 0): 1.0, (2, 0): 0.5, (3, 0): 0.25}
        r = feasibility(p.trap, p.cavity, p.beta, p.amplifier, "ksy_estimate", ksy_table=table)
        assert r.provenance["dPdf"] == "derived" and r.dPdf > 0 and "dPdf" in r.notes

    def test_untrapped_rejected(self):
        p = get_preset("rogers")
        trap = TrapConfiguration(p.trap.geom, FieldConfiguration(p.trap.field.U0, 0.1), "weak")
        with pytest.raises(UnstableTrap):
            feasibility(trap, p.cavity, p.beta, p.amplifier)

    def test_report_frozen(self, report):
        with pytest.raises(dataclasses.FrozenInstanceError):
            report.snr = 1.0
