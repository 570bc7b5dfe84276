"""Deterministic dataset emission: CSV files and the per-run manifest.

Every numeric cell is printed with repr-faithful 17 significant digits and a
dot decimal separator, newlines are always "\n", and rows are written in a
fixed order, so identical config + version means identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import os


def format_cell(value) -> str:
    """One CSV cell: floats at 17 significant digits, ints/strings verbatim."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: str, header: str, rows) -> None:
    """Write `header` then one comma-joined line per row ("\n" endings)."""
    lines = [header]
    lines.extend(",".join(format_cell(cell) for cell in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines))
        handle.write("\n")


def write_matrix_csv(path: str, comment: str, matrix) -> None:
    """Dump a dense matrix with a single self-describing comment line on top."""
    lines = [f"# {comment}"]
    lines.extend(
        ",".join(format_cell(float(cell)) for cell in row) for row in matrix
    )
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines))
        handle.write("\n")


def sha256_of(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def write_manifest(
    out_dir: str,
    command: str,
    version: str,
    config_echo: dict,
    output_names,
    wall_clock: float,
    convergence: dict,
    metadata: dict,
    error: dict | None = None,
) -> str:
    """Emit manifest.json next to the outputs; returns its path.

    Checksums are computed from the files as written, so a reader can verify
    the dataset round-trips. `error` is the machine-readable failure record
    for partial runs.
    """
    outputs = []
    for name in output_names:
        path = os.path.join(out_dir, name)
        outputs.append(
            {
                "file": name,
                "sha256": sha256_of(path),
                "bytes": os.path.getsize(path),
            }
        )
    manifest = {
        "command": command,
        "version": version,
        "config": config_echo,
        "outputs": outputs,
        "wall_clock_seconds": wall_clock,
        "convergence": convergence,
        "metadata": metadata,
    }
    if error is not None:
        manifest["error"] = error
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8", newline="") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path
