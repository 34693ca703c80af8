"""CSV and JSON emission shared by the command-line front end.

CSV tables carry a single header line and 17-significant-digit floats so
that every value round-trips to the exact binary double.  JSON documents
mirror the columns as arrays next to a metadata object.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .spectrum import AngularPowerSpectrum

__all__ = [
    "SpectrumFileError",
    "fmt",
    "render_csv",
    "render_json",
    "field_samples_table",
    "spectrum_table",
    "load_spectrum_csv",
    "load_spectrum_json",
    "load_spectrum",
]


class SpectrumFileError(Exception):
    """Malformed spectrum input file."""


def fmt(value) -> str:
    """17-significant-digit text for floats; everything else via str."""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render_csv(sections) -> str:
    """Render [(header_list, rows)] sections, blank-line separated."""
    chunks = []
    for header, rows in sections:
        lines = [",".join(header)]
        lines.extend(",".join(fmt(v) for v in row) for row in rows)
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def render_json(metadata: dict, tables: dict) -> str:
    """One JSON document: column arrays per table plus metadata."""
    doc = {"metadata": metadata}
    for name, (header, rows) in tables.items():
        doc[name] = {
            col: [row[i] for row in rows] for i, col in enumerate(header)
        }
    return json.dumps(doc, indent=2, default=_jsonify) + "\n"


def _jsonify(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    raise TypeError(f"not JSON serializable: {type(value)!r}")


def field_samples_table(field):
    """(header, rows) for sampled field values, one row per grid node."""
    header = ["theta_index", "phi_index", "re", "im"]
    rows = [
        (p, q, float(field.values[p, q].real), float(field.values[p, q].imag))
        for p in range(field.grid.n_theta)
        for q in range(field.grid.n_phi)
    ]
    return header, rows


def spectrum_table(spec):
    """(header, rows) for a power spectrum, one row per multipole."""
    header = ["ell", "C_E", "C_B"]
    rows = [
        (ell, float(spec.C_E[ell - spec.s]), float(spec.C_B[ell - spec.s]))
        for ell in range(spec.s, spec.L_max + 1)
    ]
    return header, rows


def _build_spectrum(s, rows, origin):
    if not rows:
        raise SpectrumFileError(f"{origin}: no spectrum rows")
    ells = [r[0] for r in rows]
    if ells != list(range(ells[0], ells[0] + len(ells))):
        raise SpectrumFileError(f"{origin}: multipoles must be consecutive")
    if s is None:
        s = ells[0]
    elif s != ells[0]:
        raise SpectrumFileError(f"{origin}: first multipole {ells[0]} != spin {s}")
    c_e = np.array([r[1] for r in rows])
    c_b = np.array([r[2] for r in rows])
    try:
        return AngularPowerSpectrum(s=s, L_max=ells[-1], C_E=c_e, C_B=c_b)
    except ValueError as exc:
        raise SpectrumFileError(f"{origin}: {exc}") from exc


def load_spectrum_csv(path, s: int | None = None) -> AngularPowerSpectrum:
    """Read an (ell, C_E, C_B) CSV table.

    Raises SpectrumFileError citing the offending row on malformed input.
    """
    rows = []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise SpectrumFileError(f"{path}: {exc}") from exc
    if not lines:
        raise SpectrumFileError(f"{path}: empty file")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise SpectrumFileError(f"{path}: row {lineno}: expected 3 columns, got {len(parts)}")
        try:
            ell = int(parts[0])
            c_e, c_b = float(parts[1]), float(parts[2])
        except ValueError as exc:
            raise SpectrumFileError(f"{path}: row {lineno}: {exc}") from exc
        if c_e < 0 or c_b < 0:
            raise SpectrumFileError(f"{path}: row {lineno}: negative spectrum value")
        rows.append((ell, c_e, c_b))
    return _build_spectrum(s, rows, str(path))


def load_spectrum_json(path, s: int | None = None) -> AngularPowerSpectrum:
    """Read a spectrum JSON document with ell / C_E / C_B arrays."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpectrumFileError(f"{path}: {exc}") from exc
    table = doc.get("spectrum", doc)
    try:
        ells = [int(v) for v in table["ell"]]
        c_e = [float(v) for v in table["C_E"]]
        c_b = [float(v) for v in table["C_B"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpectrumFileError(f"{path}: missing or malformed columns ({exc})") from exc
    if not (len(ells) == len(c_e) == len(c_b)):
        raise SpectrumFileError(f"{path}: column length mismatch")
    return _build_spectrum(s, list(zip(ells, c_e, c_b)), str(path))


def load_spectrum(path, s: int | None = None) -> AngularPowerSpectrum:
    if str(path).endswith(".json"):
        return load_spectrum_json(path, s)
    return load_spectrum_csv(path, s)
