"""Text formats used across the toolkit.

Matrix files: first line "N M", then N lines of M decimal values separated
by single spaces, printed with 17 significant digits (lossless for float64).

Adjustment files: a header line "pattern side base target N", the Givens
schedule one rotation per line ("layer i j theta"), then the realized matrix
in the matrix format above.  Rotation lines have four tokens and the matrix
dimension line has two, so the boundary is unambiguous.

Gray maps: binary 8-bit PGM, darker pixels = larger magnitudes.
"""
from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .design import (
    AdjustmentMatrix,
    GivensSchedule,
    PlaneRotation,
    Side,
    SparsityPattern,
    givens_to_matrix,
)
from .errors import MatrixFormatError
from .transforms import TransformKind


def format_float(v: float) -> str:
    return f"{v:.17g}"


def write_matrix(target, matrix: np.ndarray) -> None:
    """Write a 2-D array in the matrix text format."""
    m = np.atleast_2d(np.asarray(matrix, dtype=float))
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    for row in m:
        lines.append(" ".join(format_float(v) for v in row))
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text)
    else:
        target.write(text)


def _read_lines(source) -> list[str]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    return [ln for ln in text.splitlines() if ln.strip()]


def _parse_matrix_lines(lines: list[str], start: int) -> tuple[np.ndarray, int]:
    if start >= len(lines):
        raise MatrixFormatError("empty matrix data")
    header = lines[start].split()
    if len(header) != 2:
        raise MatrixFormatError(f"expected 'N M' dimension line, got {lines[start]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MatrixFormatError(f"bad dimension line {lines[start]!r}") from exc
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"non-positive dimensions {rows} x {cols}")
    if start + 1 + rows > len(lines):
        raise MatrixFormatError(f"expected {rows} matrix rows, file has fewer")
    data = []
    for r in range(rows):
        parts = lines[start + 1 + r].split()
        if len(parts) != cols:
            raise MatrixFormatError(
                f"row {r} has {len(parts)} values, expected {cols}"
            )
        try:
            data.append([float(p) for p in parts])
        except ValueError as exc:
            raise MatrixFormatError(f"bad value in row {r}") from exc
    return np.array(data, dtype=float), start + 1 + rows


def read_matrix(source) -> np.ndarray:
    lines = _read_lines(source)
    matrix, end = _parse_matrix_lines(lines, 0)
    if end != len(lines):
        raise MatrixFormatError("trailing content after matrix data")
    return matrix


def write_adjustment(target, adj: AdjustmentMatrix) -> None:
    buf = io.StringIO()
    buf.write(
        f"{adj.pattern.label()} {adj.side.value} {adj.base.value} "
        f"{adj.target.value} {adj.pattern.size}\n"
    )
    for layer_idx, layer in enumerate(adj.schedule.layers):
        for rot in layer:
            buf.write(f"{layer_idx} {rot.i} {rot.j} {format_float(rot.theta)}\n")
    write_matrix(buf, adj.realized)
    text = buf.getvalue()
    if isinstance(target, (str, Path)):
        Path(target).write_text(text)
    else:
        target.write(text)


def read_adjustment(source) -> AdjustmentMatrix:
    lines = _read_lines(source)
    if not lines:
        raise MatrixFormatError("empty adjustment file")
    head = lines[0].split()
    if len(head) != 5:
        raise MatrixFormatError(f"bad adjustment header {lines[0]!r}")
    try:
        size = int(head[4])
        pattern = SparsityPattern.from_label(head[0], size)
        side = Side(head[1])
        base = TransformKind(head[2])
        target = TransformKind(head[3])
    except (ValueError, KeyError) as exc:
        raise MatrixFormatError(f"bad adjustment header {lines[0]!r}") from exc

    idx = 1
    rotations: list[tuple[int, PlaneRotation]] = []
    while idx < len(lines) and len(lines[idx].split()) == 4:
        parts = lines[idx].split()
        try:
            layer = int(parts[0])
            rot = PlaneRotation(int(parts[1]), int(parts[2]), float(parts[3]))
        except ValueError as exc:
            raise MatrixFormatError(f"bad rotation line {lines[idx]!r}") from exc
        rotations.append((layer, rot))
        idx += 1

    n_layers = 1 + max((l for l, _ in rotations), default=-1)
    layers = tuple(
        tuple(rot for l, rot in rotations if l == layer_idx)
        for layer_idx in range(n_layers)
    )
    schedule = GivensSchedule(size, layers)
    realized, end = _parse_matrix_lines(lines, idx)
    if end != len(lines):
        raise MatrixFormatError("trailing content after adjustment matrix")
    if realized.shape != (size, size):
        raise MatrixFormatError(
            f"adjustment matrix is {realized.shape}, header says {size}"
        )
    if np.max(np.abs(realized - givens_to_matrix(schedule))) > 1e-9:
        raise MatrixFormatError("realized matrix does not match its Givens schedule")
    return AdjustmentMatrix(
        pattern=pattern, side=side, base=base, target=target,
        schedule=schedule, realized=realized,
    )


def write_pgm(target, magnitudes: np.ndarray) -> None:
    """8-bit binary PGM of a magnitude map in [0, 1]; darker = larger."""
    m = np.asarray(magnitudes, dtype=float)
    if m.ndim != 2:
        raise MatrixFormatError("gray map must be 2-D")
    pixels = np.round(255.0 * (1.0 - np.clip(m, 0.0, 1.0))).astype(np.uint8)
    header = f"P5\n{m.shape[1]} {m.shape[0]}\n255\n".encode("ascii")
    data = header + pixels.tobytes()
    if isinstance(target, (str, Path)):
        Path(target).write_bytes(data)
    else:
        target.write(data)


def write_csv(target, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            format_float(v) if isinstance(v, float) else str(v) for v in row
        ))
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text)
    else:
        target.write(text)
