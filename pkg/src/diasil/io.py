"""Deterministic file I/O: CSV reports, PGM field maps, monitor dumps.

Every output file starts with a comment header carrying the tool version
and the configuration hash; floats are formatted to 9 significant digits so
identical inputs produce byte-identical files across platforms.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import os
from pathlib import Path

import numpy as np

from . import __version__


class IOFormatError(ValueError):
    """Input file does not match the documented schema."""


def format_float(x) -> str:
    """Shortest representation at 9 significant digits."""
    return f"{float(x):.9g}"


def config_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def header_lines(cfg_hash: str, extra: dict | None = None) -> list[str]:
    lines = [f"# diasil v{__version__} config={cfg_hash}"]
    for k, v in (extra or {}).items():
        lines.append(f"# {k}={v}")
    return lines


def artifact_root() -> Path | None:
    root = os.environ.get("DIASIL_ARTIFACT_ROOT")
    return Path(root) if root else None


def resolve_out_dir(out: str | Path) -> Path:
    out = Path(out)
    root = artifact_root()
    if root is not None and not out.is_absolute():
        out = root / out
    out.mkdir(parents=True, exist_ok=True)
    return out


def write_csv(path, columns, rows, cfg_hash: str, extra_header: dict | None = None):
    """CSV with comment header; every float rendered at 9 significant digits."""
    buf = _io.StringIO()
    for line in header_lines(cfg_hash, extra_header):
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
        )
    Path(path).write_text(buf.getvalue())


def read_csv_columns(path, required: list[str], optional: list[str] | None = None):
    """Read numeric columns from a headered CSV, skipping '#' comments."""
    optional = optional or []
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if not rows:
        raise IOFormatError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    missing = [c for c in required if c not in header]
    if missing:
        raise IOFormatError(
            f"{path}: missing required columns {missing}; header is {header}"
        )
    idx = {c: header.index(c) for c in required + [c for c in optional if c in header]}
    out = {c: [] for c in idx}
    for r_i, row in enumerate(rows[1:], start=2):
        for c, i in idx.items():
            try:
                out[c].append(float(row[i]))
            except (IndexError, ValueError) as exc:
                raise IOFormatError(
                    f"{path}: line {r_i}: bad value for column {c!r}"
                ) from exc
    return {c: np.asarray(v) for c, v in out.items()}


# -- PGM ----------------------------------------------------------------------


def write_pgm(path, intensity: np.ndarray, maxval: int = 255, comment: str = ""):
    """P2 (ASCII) PGM of a [0, 1] intensity map, value = round(I * maxval)."""
    if maxval not in (255, 65535):
        raise ValueError("maxval must be 255 (8-bit) or 65535 (16-bit)")
    arr = np.asarray(intensity, dtype=float)
    if arr.ndim != 2:
        raise ValueError("intensity map must be 2D")
    if arr.min() < 0 or arr.max() > 1.0 + 1e-12:
        raise ValueError("intensity map must lie in [0, 1]")
    vals = np.rint(arr * maxval).astype(np.int64)
    lines = ["P2"]
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{arr.shape[1]} {arr.shape[0]}")
    lines.append(str(maxval))
    for row in vals:
        lines.append(" ".join(str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Read a P2 PGM back into a float intensity map in [0, 1]."""
    tokens = []
    for line in Path(path).read_text().splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            tokens.extend(stripped.split())
    if not tokens or tokens[0] != "P2":
        raise IOFormatError(f"{path}: not an ASCII (P2) PGM")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    data = np.array([int(t) for t in tokens[4:]], dtype=np.int64)
    if data.size != w * h:
        raise IOFormatError(f"{path}: expected {w * h} samples, got {data.size}")
    return data.reshape(h, w) / maxval, maxval


# -- monitor serialisation ----------------------------------------------------


def write_monitor_csv(path, result, wavelength_nm: float, cfg_hash: str):
    """One monitor at one wavelength: header rows then row-major re/im columns."""
    names = sorted(result.fields)
    arrays = [result.field_at(name, wavelength_nm) for name in names]
    shape = arrays[0].shape
    buf = _io.StringIO()
    for line in header_lines(cfg_hash):
        buf.write(line + "\n")
    buf.write(f"# monitor_kind,{result.monitor_kind.value}\n")
    buf.write(f"# label,{result.label}\n")
    buf.write(f"# wavelength_nm,{format_float(wavelength_nm)}\n")
    buf.write(f"# dims,{','.join(str(s) for s in shape)}\n")
    buf.write(f"# cell_um,{format_float(result.cell_um)}\n")
    cols = []
    for n in names:
        cols += [f"{n}_re", f"{n}_im"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    flat = [a.reshape(-1) for a in arrays]
    for i in range(flat[0].size):
        row = []
        for a in flat:
            row += [format_float(a[i].real), format_float(a[i].imag)]
        writer.writerow(row)
    Path(path).write_text(buf.getvalue())


def read_monitor_csv(path):
    """Round-trip reader for `write_monitor_csv` (kind, wavelength, arrays)."""
    meta = {}
    with open(path, newline="") as fh:
        rows = []
        for raw in fh:
            if raw.startswith("#"):
                body = raw[1:].strip()
                if "," in body:
                    key, _, val = body.partition(",")
                    meta[key.strip()] = val.strip()
                continue
            rows.append(raw.rstrip("\n"))
    if "dims" not in meta or "monitor_kind" not in meta:
        raise IOFormatError(f"{path}: missing monitor header rows")
    dims = tuple(int(v) for v in meta["dims"].split(","))
    reader = csv.reader(rows)
    header = next(reader)
    data = np.array([[float(v) for v in row] for row in reader])
    fields = {}
    for c in range(0, len(header), 2):
        name = header[c][:-3]
        arr = (data[:, c] + 1j * data[:, c + 1]).reshape(dims)
        fields[name] = arr
    return meta, fields
