"""CSV / JSON writers and readers with deterministic formatting.

CSV files are UTF-8, comma separated, LF terminated. The first line is a
``# config_fingerprint=<hex>`` comment, the second the header row. Floats are
written with 12 significant digits (``%.11e``).
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .dynamics import Trajectory
from .vacuum_noise import NoiseSpectrum, Producer, SpectrumGrid

FLOAT_FMT = "{:.11e}"  # 12 significant digits
TRAJECTORY_COLUMNS = ("t", "x", "y", "z", "vx", "vy", "vz")
SPECTRUM_COLUMNS = ("omega_rad_s", "value", "producer")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT.format(float(value))
    return str(value)


def human(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.4g}"
    return str(value)


def write_csv(path, header, rows, fingerprint: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# config_fingerprint={fingerprint}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def read_csv(path) -> tuple[str | None, list[str], list[list[str]]]:
    """Return (fingerprint, header, rows) of a file written by :func:`write_csv`."""
    with Path(path).open(encoding="utf-8", newline="") as fh:
        first = fh.readline().rstrip("\n")
        fingerprint = first.split("=", 1)[1] if first.startswith("# config_fingerprint=") else None
        if fingerprint is None:
            fh.seek(0)
        reader = csv.reader(fh)
        header = next(reader)
        return fingerprint, header, [row for row in reader]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def write_trajectory_csv(traj: Trajectory, path, fingerprint: str) -> Path:
    rows = np.column_stack([traj.t, traj.positions, traj.velocities])
    return write_csv(path, TRAJECTORY_COLUMNS, rows.tolist(), fingerprint)


def read_trajectory_csv(path) -> Trajectory:
    _, header, rows = read_csv(path)
    if tuple(header) != TRAJECTORY_COLUMNS:
        raise ValueError(f"unexpected trajectory header {header}")
    data = np.array(rows, dtype=float).reshape(-1, 7)
    return Trajectory(data[:, 0].copy(), data[:, 1:4].copy(), data[:, 4:7].copy())


def write_spectrum_csv(spectra, path, fingerprint: str) -> Path:
    rows = []
    for spec in spectra:
        for w, v in zip(spec.omegas, spec.values):
            rows.append([float(w), float(v), spec.producer.value])
    return write_csv(path, SPECTRUM_COLUMNS, rows, fingerprint)


def read_spectrum_csv(path) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    _, header, rows = read_csv(path)
    if tuple(header) != SPECTRUM_COLUMNS:
        raise ValueError(f"unexpected spectrum header {header}")
    out: dict[str, list] = {}
    for w, v, producer in rows:
        out.setdefault(producer, []).append((float(w), float(v)))
    return {p: (np.array([r[0] for r in pts]), np.array([r[1] for r in pts])) for p, pts in out.items()}


def spectrum_payload(spec: NoiseSpectrum) -> dict:
    return {
        "producer": spec.producer.value,
        "grid": spec.omegas,
        "values": spec.values,
        "negative_values": spec.negative_values,
        "units": spec.units,
        "worldline": spec.worldline.fingerprint() if spec.worldline else None,
        "settings": spec.settings,
        "settings_fingerprint": spec.fingerprint,
    }


def spectrum_from_payload(payload: dict) -> NoiseSpectrum:
    from .vacuum_noise import Worldline

    wl = payload.get("worldline")
    neg = payload.get("negative_values")
    return NoiseSpectrum(
        SpectrumGrid(np.array(payload["grid"], dtype=float)),
        np.array(payload["values"], dtype=float),
        Producer(payload["producer"]),
        Worldline(**wl) if wl else None,
        negative_values=None if neg is None else np.array(neg, dtype=float),
        settings=payload.get("settings", {}),
        units=payload.get("units", ""),
    )
