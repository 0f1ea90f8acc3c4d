"""Command-line front end.

    geonium freqs --preset cylindrical
    geonium feasibility --preset rogers --amp-noise-K 22.6
    geonium spectrum --worldline linear --a 2.466e20m/s^2
    geonium trajectory --preset cylindrical --periods 100
    geonium sweep --preset rogers --param B --start 0.01T --stop 20T --points 50
    geonium presets

Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
4 I/O failure. Output files go to --out, else $GEONIUM_OUT, else the config's
``output.dir``, else ./geonium_out.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from . import vacuum_noise as vn
from .config import SCHEMA, SWEEP_DIMENSIONS, RunConfig, load_file
from .dynamics import IntegratorSettings, Method, MotionAmplitudes, analytic_state, exb_drift_frequency, integrate, position_error
from .errors import (
    ConfigError,
    GeoniumError,
    NonConfiningPotential,
    QuadratureNotConverged,
    StepSizeUnderflow,
    UnstableTrap,
)
from .experiment import (
    CavityGeometry,
    feasibility,
    lorentz_gamma,
    observation_frequency,
    proper_acceleration_circular,
    relativistic_cyclotron,
    tm010_frequency,
)
from .presets import PRESET_NAMES, get_preset
from .trap import FieldConfiguration, ModeFrequencies, TrapConfiguration, eigenfrequencies, landau_cell_area
from .units import parse_number, parse_quantity

LOGGER = logging.getLogger("geonium")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
TWO_PI = 2.0 * math.pi

# flag dest -> config key
FLAG_KEYS = {
    "B": "trap.B",
    "U0": "trap.U0",
    "z0": "trap.z0",
    "r0": "trap.r0",
    "kind": "trap.kind",
    "beta": "experiment.beta",
    "amp_noise_K": "amplifier.noise_temperature",
    "dpdf_source": "experiment.dpdf_source",
    "ksy_table": "experiment.ksy_table",
    "threshold": "radiometer.threshold",
    "periods": "trajectory.periods",
    "method": "trajectory.method",
    "worldline": "spectrum.worldline",
    "a": "spectrum.a",
    "omega_lab": "spectrum.omega_lab",
    "omega_min": "spectrum.omega_min",
    "omega_max": "spectrum.omega_max",
    "points": "spectrum.points",
    "param": "sweep.param",
    "start": "sweep.start",
    "stop": "sweep.stop",
    "workers": "sweep.workers",
}


class Output:
    """Collects files written by a subcommand under one directory."""

    def __init__(self, directory: Path, fingerprint: str, command: str, cfg: RunConfig):
        self.dir = directory
        self.fingerprint = fingerprint
        self.command = command
        self.cfg = cfg

    def json(self, name: str, results: dict, provenance: dict | None = None) -> Path:
        payload = {
            "command": self.command,
            "config": self.cfg.canonical(),
            "config_fingerprint": self.fingerprint,
            "results": results,
            "provenance": provenance or {},
        }
        return io.write_json(self.dir / name, payload)

    def csv(self, name: str, header, rows) -> Path:
        return io.write_csv(self.dir / name, header, rows, self.fingerprint)


def _print_table(rows, title=None):
    if title:
        print(title)
    width = max(len(str(r[0])) for r in rows) if rows else 0
    for r in rows:
        print(f"  {str(r[0]).ljust(width)}  " + "  ".join(io.human(v) for v in r[1:]))


# --- freqs ------------------------------------------------------------------


def _frequencies(trap: TrapConfiguration) -> ModeFrequencies | None:
    try:
        return eigenfrequencies(trap.geom, trap.field)
    except NonConfiningPotential:
        return None


def cmd_freqs(cfg: RunConfig, out: Output) -> int:
    trap = cfg.trap()
    freqs = _frequencies(trap)
    results = {"label": trap.label, "stable": bool(freqs and freqs.stable)}
    rows = []
    names = ("omega_z", "omega_c", "omega_c_prime", "omega_m")
    for name in names:
        w = getattr(freqs, name) if freqs else None
        if name == "omega_c" and freqs is None:
            w = relativistic_cyclotron(trap.field, 1.0)
        results[name] = w
        rows.append((name, w, None if w is None else w / TWO_PI))
    if freqs is not None and freqs.stable:
        results["omega_exb"] = exb_drift_frequency(freqs)
        rows.append(("omega_exb (approx. omega_m)", results["omega_exb"], results["omega_exb"] / TWO_PI))
    beta = cfg.beta(required=False)
    if beta is not None and freqs is not None:
        gamma = lorentz_gamma(beta)
        results["gamma"] = gamma
        results["omega_obs"] = observation_frequency(freqs, gamma)
        rows.append((f"omega_obs = gamma*omega_z (gamma={gamma:.4g})", results["omega_obs"], results["omega_obs"] / TWO_PI))
    results["landau_cell_area"] = landau_cell_area(trap.field.B)

    out.csv("freqs.csv", ("quantity", "omega_rad_s", "f_hz"), rows)
    provenance = {"r0": "inferred" if cfg.r0_inferred() else "input"}
    out.json("freqs.json", results, provenance)
    _print_table([(n, w, "rad/s", f, "Hz") for n, w, f in rows], f"trap '{trap.label}'")
    print(f"  trapped: {'yes' if results['stable'] else 'no'}")
    print(f"  Landau cell area e*B*hbar: {results['landau_cell_area']:.4g} (kg m/s)^2")
    if cfg.r0_inferred():
        print("  note: r0 inferred from the observation frequency")
    return EXIT_OK


# --- trajectory ---------------------------------------------------------------


def cmd_trajectory(cfg: RunConfig, out: Output) -> int:
    trap = cfg.trap()
    freqs = _frequencies(trap)
    if freqs is None or not freqs.stable:
        raise UnstableTrap(f"trap '{trap.label}' is not trapped; no bounded trajectory to compare")
    z0 = trap.geom.z0
    amps = MotionAmplitudes(
        r_z=cfg.get("trajectory.r_z", 1e-3 * z0),
        phase_z=0.0,
        r_c=complex(cfg.get("trajectory.r_c", 1e-4 * z0)),
        r_m=complex(cfg.get("trajectory.r_m", 1e-3 * z0)),
    )
    initial = analytic_state(amps, freqs, 0.0)
    period = TWO_PI / freqs.omega_c_prime
    periods = cfg.get("trajectory.periods", 100.0)
    method = Method(cfg.get("trajectory.method", "dop853"))
    t_end = periods * period
    if method is Method.RK4:
        settings = IntegratorSettings(t_end=t_end, method=method, dt=cfg.get("trajectory.dt", period / 64))
    else:
        samples = cfg.get("trajectory.samples", int(20 * periods) + 1)
        settings = IntegratorSettings(t_end=t_end, method=method, rtol=cfg.get("trajectory.rtol", 1e-12), n_samples=samples)
    traj = integrate(initial, trap, settings)
    deviation = position_error(traj, freqs)
    path = io.write_trajectory_csv(traj, out.dir / "trajectory.csv", out.fingerprint)
    meta = dict(traj.integrator_meta)
    out.json("trajectory.json", {"max_relative_deviation": deviation, "samples": len(traj), "integrator": meta,
                                 "amplitudes": {"r_z": amps.r_z, "r_c": abs(amps.r_c), "r_m": abs(amps.r_m)}})
    print(f"wrote {path} ({len(traj)} samples, {periods:g} cyclotron periods, {method.value})")
    print(f"max analytic-vs-numeric deviation (relative): {deviation:.3e}")
    return EXIT_OK


# --- spectrum -------------------------------------------------------------------


def _worldline(cfg: RunConfig) -> vn.Worldline:
    kind = cfg.get("spectrum.worldline")
    if kind is None:
        kind = "circular" if cfg.preset and cfg.preset.beta else None
    if kind is None:
        raise ConfigError("choose a worldline (inertial, linear, circular)", "spectrum.worldline")
    if kind == "inertial":
        return vn.Worldline.inertial(cfg.get("spectrum.beta", 0.0))
    if kind == "linear":
        a = cfg.get("spectrum.a")
        if a is None:
            raise ConfigError("linear worldline needs an acceleration", "spectrum.a")
        return vn.Worldline.linear(a)
    if kind == "circular":
        beta = cfg.get("spectrum.beta", cfg.beta(required=False))
        if beta is None:
            raise ConfigError("circular worldline needs beta", "spectrum.beta")
        omega_lab = cfg.get("spectrum.omega_lab")
        if omega_lab is None:
            omega_lab = relativistic_cyclotron(cfg.trap().field, lorentz_gamma(beta))
        return vn.Worldline.circular(omega_lab, beta)
    raise ConfigError(f"unknown worldline {kind!r}", cfg.where("spectrum.worldline"))


def _grid(cfg: RunConfig, w: vn.Worldline) -> vn.SpectrumGrid:
    lo, hi = cfg.get("spectrum.omega_min"), cfg.get("spectrum.omega_max")
    if w.kind is vn.WorldlineKind.LINEAR:
        wt = vn.thermal_frequency(w.a)
        lo, hi, spacing, n = lo or 0.1 * wt, hi or 10 * wt, "log", 41
    elif w.kind is vn.WorldlineKind.CIRCULAR:
        om = w.proper_orbital_frequency
        lo, hi, spacing, n = lo or 0.05 * om, hi or 5.0 * om, "lin", 100
    else:
        if lo is None or hi is None:
            raise ConfigError("inertial worldline needs spectrum.omega_min and spectrum.omega_max", "spectrum")
        spacing, n = "log", 41
    n = cfg.get("spectrum.points", n)
    spacing = cfg.get("spectrum.spacing", spacing)
    if not (0 < lo < hi) or n < 2:
        raise ConfigError("need 0 < omega_min < omega_max and at least 2 points", "spectrum")
    if spacing == "log":
        return vn.SpectrumGrid.logspace(lo, hi, n)
    if spacing == "lin":
        return vn.SpectrumGrid.linspace(lo, hi, n)
    raise ConfigError(f"spacing must be 'log' or 'lin', got {spacing!r}", cfg.where("spectrum.spacing"))


def _ksy_table(cfg: RunConfig, key: str):
    path = cfg.get(key)
    if path is None:
        return None
    try:
        return vn.load_ksy_table(path)
    except OSError as exc:
        raise ConfigError(f"cannot read KSY table: {exc}", cfg.where(key)) from None
    except ValueError as exc:
        raise ConfigError(f"bad KSY table: {exc}", cfg.where(key)) from None


def cmd_spectrum(cfg: RunConfig, out: Output) -> int:
    w = _worldline(cfg)
    grid = _grid(cfg, w)
    reg = vn.RegularizationSettings.default_for(w, grid)
    overrides = {k: cfg.get(f"spectrum.{k}") for k in ("epsilon", "tau_max", "n_nodes") if cfg.get(f"spectrum.{k}") is not None}
    if overrides:
        try:
            reg = dataclasses.replace(reg, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc), "spectrum") from None
    producers = [p.strip() for p in cfg.get("spectrum.producers", "wightman,planck,ksy").split(",") if p.strip()]
    spectra, summary = [], {"worldline": w.fingerprint()}

    if "wightman" in producers:
        numeric = vn.response_spectrum(w, grid, reg)
        spectra.append(numeric)
    if "planck" in producers and w.kind is vn.WorldlineKind.LINEAR:
        spectra.append(vn.planck_spectrum(w.a, grid))
    if "ksy" in producers and w.kind is vn.WorldlineKind.CIRCULAR:
        table = _ksy_table(cfg, "spectrum.ksy_table")
        if table is not None:
            params = vn.KSYParameters.for_orbit(w.beta, w.omega_lab, table, cfg.get("spectrum.n_max", 3))
            spectra.append(vn.ksy_spectrum(params, grid))

    lines = [f"worldline: {w.kind.value}"]
    if "wightman" in producers:
        if w.kind is vn.WorldlineKind.LINEAR:
            planck = vn.planck_response(grid.omegas, w.a)
            err = float(np.max(np.abs(numeric.values / planck - 1.0)))
            kms = vn.kms_deviation(numeric, w.a)
            summary.update(max_rel_error_vs_planck=err, kms_deviation=kms, T_V=vn.unruh_temperature(w.a))
            lines.append(f"T_V = {summary['T_V']:.4g} K")
            lines.append(f"numeric vs Planck max relative error: {err:.3e}")
            lines.append(f"KMS deviation: {kms:.3e}")
        elif w.kind is vn.WorldlineKind.CIRCULAR:
            om = w.proper_orbital_frequency
            peaks = vn.spectral_peaks(numeric)
            ripples = vn.log_slope_features(numeric)
            summary.update(orbital_frequency=om, peaks=peaks, log_slope_maxima=ripples)
            lines.append(f"proper orbital frequency: {om:.4g} rad/s")
            lines.append("local maxima (units of orbital frequency): "
                         + (", ".join(f"{p / om:.3f}" for p in peaks) if len(peaks) else "none (monotone spectrum)"))
            lines.append("log-slope maxima (units of orbital frequency): "
                         + ", ".join(f"{p / om:.3f}" for p in ripples))
        else:
            summary["max_abs_value"] = float(np.max(np.abs(numeric.values)))
            lines.append(f"max |F| = {summary['max_abs_value']:.3e} (inertial: no noise above vacuum)")
        summary["quadrature"] = numeric.settings

    csv_path = io.write_spectrum_csv(spectra, out.dir / "spectrum.csv", out.fingerprint)
    out.json("spectrum.json", {"spectra": [io.spectrum_payload(s) for s in spectra], "summary": summary},
             {s.producer.value: "derived" for s in spectra})
    print("\n".join(lines))
    print(f"wrote {csv_path}")
    return EXIT_OK


# --- feasibility ----------------------------------------------------------------


def cmd_feasibility(cfg: RunConfig, out: Output) -> int:
    source = cfg.get("experiment.dpdf_source", "published_value")
    source = {"published": "published_value", "ksy": "ksy_estimate"}.get(source, source)
    if source not in ("published_value", "ksy_estimate"):
        raise ConfigError(f"dPdf source must be published or ksy, got {source!r}", cfg.where("experiment.dpdf_source"))
    report = feasibility(
        cfg.trap(),
        cfg.cavity(),
        cfg.beta(),
        cfg.amplifier(),
        source,
        ksy_table=_ksy_table(cfg, "experiment.ksy_table"),
        ksy_n_max=cfg.get("experiment.ksy_n_max", 3),
        radiometer=cfg.radiometer(),
        r0_inferred=cfg.r0_inferred(),
        with_noise_ratio=True,
    )
    data = report.as_dict()
    provenance = data.pop("provenance")
    out.json("feasibility.json", data, provenance)
    rows = [
        ("beta", report.beta, ""),
        ("gamma", report.gamma, ""),
        ("orbital frequency", report.omega_lab / TWO_PI, "Hz"),
        ("proper acceleration", report.a, "m/s^2"),
        ("  in units of g", report.a / 9.80665, "g"),
        ("vacuum temperature T_V", report.T_V, "K"),
        ("axial frequency", report.omega_z / TWO_PI, "Hz"),
        ("observation gamma*omega_z", report.omega_obs / TWO_PI, "Hz"),
        ("TM010 of cavity", report.omega_tm010 / TWO_PI, "Hz"),
        ("  TM010 / observation - 1", report.tm010_obs_mismatch, ""),
        ("synchrotron width Gamma_c", report.Gamma_c, "1/s"),
        ("dP/df", report.dPdf, "W/Hz"),
        ("  thermal at T_V", report.thermal_dPdf, "W/Hz"),
        ("amplifier noise temperature", report.noise_temperature, "K"),
        ("S/N", report.snr, ""),
        ("radiometer bandwidth", report.bandwidth_hz, "Hz"),
        ("detection time", report.detection_time, "s"),
        ("circular / Unruh response", report.circular_to_unruh_ratio, ""),
        ("ring radius r0", report.r0, "m"),
    ]
    _print_table([(name, value, unit, f"[{provenance.get(_prov_key(name), 'derived')}]") for name, value, unit in rows],
                 "feasibility report")
    return EXIT_OK


def _prov_key(row_name: str) -> str:
    return {
        "beta": "beta", "vacuum temperature T_V": "T_V", "dP/df": "dPdf", "amplifier noise temperature": "noise_temperature",
        "ring radius r0": "r0", "S/N": "snr", "detection time": "detection_time",
    }.get(row_name, "")


# --- sweep --------------------------------------------------------------------------

SWEEP_COLUMNS = (
    "value", "stable", "omega_z", "omega_c", "omega_c_prime", "omega_m", "omega_exb",
    "gamma", "omega_lab", "a", "T_V", "omega_obs", "omega_tm010",
)


def sweep_point(trap: TrapConfiguration, beta, cavity, param: str, value: float) -> list:
    """One sweep row; pure function of its inputs."""
    geom, field = trap.geom, trap.field
    if param == "B":
        field = FieldConfiguration(field.U0, value)
    elif param == "U0":
        if value == 0.0:
            # no quadrupole at all: nothing confines the electron axially
            row = {"value": value, "stable": False, "omega_c": relativistic_cyclotron(field, 1.0)}
            return [row.get(col) for col in SWEEP_COLUMNS]
        field = FieldConfiguration(value, field.B)
    elif param == "z0":
        geom = dataclasses.replace(geom, z0=value)
    elif param == "r0":
        geom = dataclasses.replace(geom, r0=value)
    elif param == "beta":
        beta = value
    elif param == "cavity_radius":
        cavity = dataclasses.replace(cavity, radius=value) if cavity else CavityGeometry(value, 1.0, 1.0)
    trap = TrapConfiguration(geom, field, trap.label)
    freqs = _frequencies(trap)
    stable = bool(freqs and freqs.stable)
    row = {"value": value, "stable": stable, "omega_c": relativistic_cyclotron(field, 1.0)}
    if freqs is not None:
        row.update(omega_z=freqs.omega_z, omega_c_prime=freqs.omega_c_prime, omega_m=freqs.omega_m)
        if stable:
            row["omega_exb"] = exb_drift_frequency(freqs)
    if beta is not None:
        gamma = lorentz_gamma(beta)
        row.update(gamma=gamma, omega_lab=relativistic_cyclotron(field, gamma))
        if row["omega_lab"] > 0:
            row["a"] = proper_acceleration_circular(beta, row["omega_lab"])
            row["T_V"] = vn.unruh_temperature(row["a"])
        if freqs is not None:
            row["omega_obs"] = observation_frequency(freqs, gamma)
    if cavity is not None:
        row["omega_tm010"] = tm010_frequency(cavity)
    return [row.get(col) for col in SWEEP_COLUMNS]


def cmd_sweep(cfg: RunConfig, out: Output) -> int:
    param = cfg.get("sweep.param")
    if param not in SWEEP_DIMENSIONS:
        raise ConfigError(f"cannot sweep {param!r}; choose from {', '.join(SWEEP_DIMENSIONS)}", cfg.where("sweep.param"))
    dim = SWEEP_DIMENSIONS[param]
    bounds = []
    for key in ("sweep.start", "sweep.stop"):
        raw = cfg.get(key)
        if raw is None:
            raise ConfigError("missing sweep bound", key)
        bounds.append(parse_number(raw, where=cfg.where(key)) if dim is None else parse_quantity(raw, dim, where=cfg.where(key)))
    n = cfg.get("sweep.points", 21)
    if n < 2:
        raise ConfigError("need at least 2 sweep points", cfg.where("sweep.points"))
    values = np.linspace(bounds[0], bounds[1], n)
    trap = cfg.trap()
    beta = cfg.beta(required=param == "beta") if param != "beta" else None
    cavity = cfg.cavity(required=param == "cavity_radius")

    def run(v):
        try:
            return sweep_point(trap, beta, cavity, param, float(v))
        except ValueError as exc:
            raise ConfigError(f"sweep value {v:g} invalid: {exc}", "sweep") from None

    workers = cfg.get("sweep.workers", 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(run, values))
    else:
        rows = [run(v) for v in values]
    path = out.csv("sweep.csv", (f"{param}",) + SWEEP_COLUMNS[1:], rows)
    flips = sum(1 for a, b in zip(rows, rows[1:]) if a[1] != b[1])
    print(f"wrote {path} ({len(rows)} points over {param}); stability changes: {flips}")
    return EXIT_OK


# --- presets ------------------------------------------------------------------------


def cmd_presets(cfg: RunConfig, out: Output) -> int:
    results = {}
    for name in PRESET_NAMES:
        p = get_preset(name)
        g, f = p.trap.geom, p.trap.field
        entry = {"z0": g.z0, "r0": g.r0, "kind": g.kind.value, "U0": f.U0, "B": f.B, "beta": p.beta,
                 "comp_height_ratio": g.comp_height_ratio, "slit_width": g.slit_width}
        if p.cavity:
            entry.update(cavity_radius=p.cavity.radius, cavity_length=p.cavity.length, cavity_Q=p.cavity.Q)
        if p.amplifier:
            entry["noise_temperature"] = p.amplifier.noise_temperature
        results[name] = entry
        print(f"{name}:")
        for k, v in entry.items():
            if v is not None:
                print(f"  {k:18s} {io.human(v)}  [{p.provenance.get(k, 'published')}]")
    out.json("presets.json", results, {name: get_preset(name).provenance for name in PRESET_NAMES})
    return EXIT_OK


COMMANDS = {
    "freqs": cmd_freqs,
    "trajectory": cmd_trajectory,
    "spectrum": cmd_spectrum,
    "feasibility": cmd_feasibility,
    "sweep": cmd_sweep,
    "presets": cmd_presets,
}


HELP = {
    "freqs": "trap eigenfrequencies and stability verdict",
    "trajectory": "integrate the equations of motion and compare with the analytic solution",
    "spectrum": "vacuum-noise response spectrum along a worldline",
    "feasibility": "derived quantities of the circular-orbit detection scheme",
    "sweep": "scan one parameter and tabulate derived quantities",
    "presets": "list built-in parameter sets",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--preset", choices=PRESET_NAMES)
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a config key")
    common.add_argument("--out", help="output directory")
    common.add_argument("-v", "--verbose", action="store_true")
    for flag in FLAG_KEYS:
        common.add_argument("--" + flag.replace("_", "-"), dest=flag, help=f"sets {FLAG_KEYS[flag]}")

    parser = argparse.ArgumentParser(prog="geonium", description="Penning-trap electron and vacuum-noise calculator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=HELP[name], description=HELP[name])
    return parser


def _raw_config(args) -> dict:
    raw = load_file(args.config) if args.config else {}
    if args.preset:
        raw["preset"] = (args.preset, "--preset")
    for flag, key in FLAG_KEYS.items():
        value = getattr(args, flag)
        if value is None:
            continue
        if flag == "points" and args.command == "sweep":
            key = "sweep.points"
        if flag == "amp_noise_K":
            try:
                float(value)
                value = f"{value} K"
            except ValueError:
                pass
        raw[key] = (value, "--" + flag.replace("_", "-"))
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"expected KEY=VALUE, got {item!r}", "--set")
        key, value = (s.strip() for s in item.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError(f"unknown key {key!r}", "--set")
        raw[key] = (value, "--set")
    return raw


def _output_dir(args, cfg: RunConfig) -> Path:
    if args.out:
        return Path(args.out)
    if os.environ.get("GEONIUM_OUT"):
        return Path(os.environ["GEONIUM_OUT"])
    return Path(cfg.get("output.dir", "geonium_out"))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.build(_raw_config(args))
        out = Output(_output_dir(args, cfg), cfg.fingerprint(args.command), args.command, cfg)
        return COMMANDS[args.command](cfg, out)
    except (QuadratureNotConverged, StepSizeUnderflow) as exc:
        print(f"error: numerical non-convergence: {exc}", file=sys.stderr)
        if isinstance(exc, QuadratureNotConverged):
            print("hint: raise spectrum.n_nodes or spectrum.tau_max, or narrow the frequency grid", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GeoniumError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
