"""File formats: barcode files, landscape files, file lists, gnuplot output.

Barcode files are "b d" pairs, one per line.  Landscape files start with the
homological degree, then one ``#lambda_i`` block per layer (file index 0 is
the outermost layer), each block listing "x y" critical points with
increasing x.  Numbers are written with 17 significant digits so round trips
are value-exact.  Output files are written atomically.
"""

from __future__ import annotations

import os
import tempfile
import warnings
from pathlib import Path

import numpy as np

from .barcodes import Barcode, ParseError, parse_barcode, serialize_barcode
from .landscapes import INF, Landscape

__all__ = [
    "atomic_write_text",
    "detect_and_load",
    "emit_gnuplot",
    "read_barcode_file",
    "read_file_list",
    "read_landscape_file",
    "write_barcode_file",
    "write_landscape_file",
]


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_barcode_file(
    path: str | Path,
    *,
    degree: int = 0,
    infinity: float | None = None,
    strict: bool = True,
) -> Barcode:
    return parse_barcode(
        Path(path).read_text(), degree=degree, infinity=infinity, strict=strict
    )


def write_barcode_file(
    barcode: Barcode, path: str | Path, *, infinity: float | None = None
) -> None:
    atomic_write_text(path, serialize_barcode(barcode, infinity=infinity))


def _num(x: float, infinity: float | None) -> str:
    if infinity is not None:
        if x == INF:
            return format(infinity, ".17g")
        if x == -INF:
            return format(-infinity, ".17g")
    return format(x, ".17g")


def write_landscape_file(
    landscape: Landscape, path: str | Path, *, infinity: float | None = None
) -> None:
    """Degree line, then one #lambda_i block per layer (finite sentinels implicit).

    Layers carrying infinite critical values require an infinity magic number,
    otherwise truncate the barcode first.
    """
    if infinity is None and not landscape.is_finite:
        raise ValueError(
            "landscape has infinite critical values; pass an infinity magic number "
            "or truncate the barcode before writing"
        )
    lines = [str(landscape.degree)]
    for idx, layer in enumerate(landscape.layers):
        lines.append(f"#lambda_{idx}")
        for x, y in layer:
            if x == -INF and y == 0.0:
                continue
            if x == INF and y == 0.0:
                continue
            lines.append(f"{_num(float(x), infinity)} {_num(float(y), infinity)}")
    atomic_write_text(path, "\n".join(lines) + "\n\n")


def read_landscape_file(path: str | Path, *, infinity: float | None = None) -> Landscape:
    """Inverse of :func:`write_landscape_file`; implicit sentinels are restored."""
    lines = Path(path).read_text().splitlines()
    degree: int | None = None
    layers: list[np.ndarray] = []
    current: list[tuple[float, float]] | None = None

    def finish_block(block, lineno):
        xs = [-INF]
        ys = [0.0]
        closing_y = 0.0
        for x, y in block:
            if x == -INF:
                if xs == [-INF]:
                    ys[0] = y
                    continue
                raise ParseError("-inf critical number not at the start of a layer", lineno)
            if x == INF:
                closing_y = y
                continue
            if xs[-1] != -INF and x <= xs[-1]:
                raise ParseError(
                    f"critical numbers must increase within a layer (got {x} after {xs[-1]})",
                    lineno,
                )
            xs.append(x)
            ys.append(y)
        xs.append(INF)
        ys.append(closing_y)
        return np.column_stack([xs, ys])

    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#lambda_"):
            if degree is None:
                raise ParseError("missing degree header before first #lambda block", lineno)
            try:
                index = int(stripped[len("#lambda_"):])
            except ValueError:
                raise ParseError(f"bad layer header {stripped!r}", lineno) from None
            if index != len(layers) + (0 if current is None else 1):
                raise ParseError(
                    f"expected #lambda_{len(layers) + (0 if current is None else 1)}, got {stripped!r}",
                    lineno,
                )
            if current is not None:
                layers.append(finish_block(current, lineno))
            current = []
            continue
        if degree is None:
            try:
                degree = int(stripped)
            except ValueError:
                raise ParseError(
                    f"first line must be the homological degree, got {stripped!r}", lineno
                ) from None
            if degree < 0:
                raise ParseError("degree must be nonnegative", lineno)
            continue
        if current is None:
            raise ParseError(f"point data before any #lambda header: {raw!r}", lineno)
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'x y', got {raw!r}", lineno)
        try:
            x, y = float(tokens[0]), float(tokens[1])
        except ValueError:
            raise ParseError(f"non-numeric token in {raw!r}", lineno) from None
        if infinity is not None:
            if x == infinity:
                x = INF
            elif x == -infinity:
                x = -INF
            if y == infinity:
                y = INF
            elif y == -infinity:
                y = -INF
        current.append((x, y))
    if degree is None:
        raise ParseError("missing degree header", 1)
    if current is not None:
        layers.append(finish_block(current, len(lines)))
    return Landscape(layers, degree=degree)


def detect_and_load(
    path: str | Path,
    *,
    infinity: float | None = None,
    strict: bool = True,
) -> Barcode | Landscape:
    """Load a file as a landscape if it carries #lambda markers, else a barcode."""
    text = Path(path).read_text()
    if any(line.lstrip().startswith("#lambda_") for line in text.splitlines()):
        return read_landscape_file(path, infinity=infinity)
    try:
        return parse_barcode(text, infinity=infinity, strict=strict)
    except ParseError as barcode_error:
        try:
            return read_landscape_file(path, infinity=infinity)
        except ParseError as landscape_error:
            raise ParseError(
                f"{path}: not a barcode ({barcode_error}) and not a landscape "
                f"({landscape_error})"
            ) from None


def read_file_list(path: str | Path) -> list[Path]:
    """Nonempty lines are file paths; relative ones resolve against the list's folder."""
    path = Path(path)
    base = path.parent
    out = []
    for raw in path.read_text().splitlines():
        entry = raw.strip()
        if not entry or entry.startswith("#"):
            continue
        candidate = Path(entry)
        out.append(candidate if candidate.is_absolute() else base / candidate)
    if not out:
        raise ValueError(f"file list {path} names no files")
    return out


def emit_gnuplot(
    landscape: Landscape, k_from: int, k_to: int, path: str | Path
) -> None:
    """Write layers [k_from, k_to) (file indexing, 0-based) as gnuplot data blocks.

    Blocks are separated by two blank lines; infinite endpoints are clipped to
    the landscape's finite support.  A companion plot script ``<path>.gp``
    referencing the data file is written alongside.
    """
    if k_from < 0 or k_from >= k_to:
        raise ValueError(f"need 0 <= k_from < k_to, got {k_from}, {k_to}")
    lo, hi = landscape.support()
    blocks = []
    indices = []
    for file_idx in range(k_from, k_to):
        k = file_idx + 1
        if k > landscape.depth:
            warnings.warn(f"layer {file_idx} beyond depth {landscape.depth}; block omitted")
            continue
        layer = landscape.layers[k - 1]
        points = []
        for x, y in layer:
            if x == -INF:
                if y != 0.0:
                    points.append((lo, landscape.evaluate(k, lo)))
                continue
            if x == INF:
                if y != 0.0:
                    points.append((hi, landscape.evaluate(k, hi)))
                continue
            points.append((float(x), float(y)))
        if not points:
            warnings.warn(f"layer {file_idx} has no finite critical points; block omitted")
            continue
        blocks.append("\n".join(f"{format(x, 'g')} {format(y, 'g')}" for x, y in points))
        indices.append(file_idx)
    if not blocks:
        raise ValueError("no layers to plot in the requested range")
    atomic_write_text(path, "\n\n\n".join(blocks) + "\n")
    data_name = Path(path).name
    plot_terms = ", ".join(
        f"'{data_name}' index {i} with lines title 'lambda_{idx}'"
        for i, idx in enumerate(indices)
    )
    script = (
        "set xlabel 'x'\n"
        "set ylabel 'landscape value'\n"
        f"plot {plot_terms}\n"
        "pause -1\n"
    )
    atomic_write_text(str(path) + ".gp", script)
