"""Grid-based landscapes: integer column construction, sampling, error bounds.

A grid landscape over ``GridSpec(a, s, m)`` is a K x (2m + 1) matrix whose
column ``i`` holds layer values at the half-spacing position ``a + i * s / 2``.
Values are kept in rescaled units (multiples of ``s / 2``; exact integers when
built from a grid barcode) and converted to original units only at the API
boundary: original value = stored value * s / 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .barcodes import GridBarcode, GridSpec
from .landscapes import Landscape, layer_from_interior

__all__ = [
    "GridLandscape",
    "build_grid_landscape",
    "evaluate_grid",
    "grid_error_bounds",
    "grid_to_landscape",
    "sample_exact_to_grid",
]


@dataclass(frozen=True)
class GridLandscape:
    """Layer values on the refined grid, rescaled units; rows nested, 1-Lipschitz."""

    spec: GridSpec
    values: np.ndarray  # shape (K, 2 * count + 1)
    degree: int = 0

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        width = 2 * self.spec.count + 1
        if arr.ndim != 2 or (arr.size and arr.shape[1] != width):
            raise ValueError(f"values must have {width} columns, got shape {arr.shape}")
        if arr.size == 0:
            arr = arr.reshape(0, width)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def depth(self) -> int:
        return self.values.shape[0]

    def values_original(self) -> np.ndarray:
        """The matrix in original units (rescaled values times spacing / 2)."""
        return self.values * (self.spec.spacing / 2.0)


def build_grid_landscape(gb: GridBarcode) -> GridLandscape:
    """Column construction: each pair appends its tent heights to the columns
    it covers, columns are sorted in decreasing order and transposed into V.

    All arithmetic is on integers, so the result is exact.
    """
    m = gb.spec.count
    width = 2 * m + 1
    cols: list[list[int]] = [[] for _ in range(width)]
    for i, j in gb.pairs:
        b, d = 2 * i, 2 * j
        half = (d - b) // 2
        for step in range(1, half + 1):
            cols[b + step].append(step)
        for step in range(1, half):
            cols[d - step].append(step)
    for col in cols:
        col.sort(reverse=True)
    K = max((len(col) for col in cols), default=0)
    values = np.zeros((K, width))
    for i, col in enumerate(cols):
        for k, v in enumerate(col):
            values[k, i] = v
    return GridLandscape(gb.spec, values, gb.degree)


def evaluate_grid(gl: GridLandscape, k: int, x):
    """Layer k at x (original units), interpolating between adjacent columns."""
    if k < 1:
        raise ValueError("layer index k must be >= 1")
    spec = gl.spec
    scalar = np.isscalar(x) or np.ndim(x) == 0
    xq = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(xq < spec.origin) or np.any(xq > spec.upper):
        raise ValueError(f"x outside grid range [{spec.origin}, {spec.upper}]")
    if k > gl.depth:
        out = np.zeros_like(xq)
        return float(out[0]) if scalar else out
    half = spec.spacing / 2.0
    u = (xq - spec.origin) / half
    out = np.interp(u, np.arange(2 * spec.count + 1), gl.values[k - 1]) * half
    return float(out[0]) if scalar else out


def sample_exact_to_grid(landscape: Landscape, spec: GridSpec) -> GridLandscape:
    """Evaluate an exact landscape at every half-spacing grid position."""
    if not landscape.is_finite:
        raise ValueError("cannot sample an infinite landscape onto a grid; truncate first")
    nodes = spec.half_nodes()
    half = spec.spacing / 2.0
    rows = [landscape.evaluate(k, nodes) / half for k in range(1, landscape.depth + 1)]
    values = np.vstack(rows) if rows else np.zeros((0, nodes.size))
    return GridLandscape(spec, values, landscape.degree)


def grid_to_landscape(gl: GridLandscape) -> Landscape:
    """Exact piecewise-linear landscape through the grid values (pruned)."""
    nodes = gl.spec.half_nodes()
    half = gl.spec.spacing / 2.0
    layers = []
    for row in gl.values:
        ys = row * half
        layers.append(layer_from_interior(nodes, ys))
    return Landscape(layers, degree=gl.degree, validate=False)


def grid_error_bounds(spec: GridSpec, depth: int) -> tuple[float, float]:
    """Sup and L1 error bounds for a grid estimate of a landscape.

    With spacing s and slopes in [-1, 1] the interpolant misses by at most
    s / 2 anywhere; the L1 error over a grid of size m with K nonzero layers
    is bounded by K * (m - 1) * s**2 / 4.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    s = spec.spacing
    return (s / 2.0, depth * (spec.count - 1) * s * s / 4.0)
