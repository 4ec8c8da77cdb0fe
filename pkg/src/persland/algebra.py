"""Linear combinations, sums, and averages of landscapes.

Combinations reuse the landscape encoding: per layer, the critical numbers of
all inputs are merged (sorted union without duplicates), every input is
evaluated there, and the weighted sum is taken.  The naive path merges all N
inputs at once; the tree path merges pairwise (divide and conquer), which is
asymptotically cheaper for large N.  Both produce the same function; stored
critical points may differ before pruning, so results are pruned to the true
slope-change vertices.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .grids import GridLandscape
from .landscapes import INF, Landscape, prune_slope_changes, trim_zero_tails

__all__ = [
    "average",
    "grid_average",
    "grid_linear_combination",
    "linear_combination",
    "merge_critical_numbers",
    "scale",
]


def merge_critical_numbers(
    sequences: Sequence[np.ndarray | Sequence[float]], *, epsilon: float = 0.0
) -> np.ndarray:
    """Sorted union of the input sequences, duplicates removed.

    With ``epsilon > 0``, values within epsilon of the previous kept value are
    coalesced onto it (opt-in; exact merging is the default because inputs
    from a shared pipeline repeat exact values).
    """
    arrays = [np.asarray(s, dtype=np.float64) for s in sequences if len(s)]
    if not arrays:
        return np.empty(0)
    merged = np.unique(np.concatenate(arrays))
    if epsilon > 0.0 and merged.size > 1:
        kept = [merged[0]]
        for x in merged[1:]:
            if x - kept[-1] > epsilon:
                kept.append(x)
        merged = np.asarray(kept)
    return merged


def _require_finite(landscape: Landscape) -> None:
    if not landscape.is_finite:
        raise ValueError(
            "landscape has infinite-valued layers; apply truncate_infinite to the "
            "barcode (or drop infinite intervals) before doing arithmetic"
        )


def _interior(layer: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return layer[1:-1, 0], layer[1:-1, 1]


def _prune_arrays(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Keep only points where the slope changes; trim redundant zero tails."""
    return trim_zero_tails(*prune_slope_changes(xs, ys))


def _seal(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    xs = np.concatenate([[-INF], xs, [INF]])
    ys = np.concatenate([[0.0], ys, [0.0]])
    layer = np.column_stack([xs, ys])
    layer.setflags(write=False)
    return layer


def _layer_at(landscape: Landscape, k: int) -> np.ndarray | None:
    return landscape.layers[k - 1] if k <= landscape.depth else None


def _combine_layers(
    layers: Sequence[np.ndarray | None], coeffs: Sequence[float], epsilon: float
) -> np.ndarray:
    xs = merge_critical_numbers(
        [_interior(layer)[0] for layer in layers if layer is not None], epsilon=epsilon
    )
    ys = np.zeros_like(xs)
    for layer, a in zip(layers, coeffs):
        if layer is None or a == 0.0:
            continue
        ix, iy = _interior(layer)
        if ix.size == 0:
            continue
        ys = ys + a * np.interp(xs, ix, iy, left=0.0, right=0.0)
    xs, ys = _prune_arrays(xs, ys)
    return _seal(xs, ys)


def scale(landscape: Landscape, a: float) -> Landscape:
    """The combination a * landscape (layer count preserved)."""
    _require_finite(landscape)
    layers = []
    for layer in landscape.layers:
        xs, ys = _interior(layer)
        layers.append(_seal(*_prune_arrays(xs.copy(), a * ys)))
    return Landscape(layers, degree=landscape.degree, validate=False)


def linear_combination(
    landscapes: Sequence[Landscape],
    coeffs: Sequence[float],
    *,
    method: str = "tree",
    epsilon: float = 0.0,
) -> Landscape:
    """The combination sum(a_j * landscape_j), layer count = max over inputs.

    ``method="naive"`` merges all inputs in one pass per layer;
    ``method="tree"`` merges pairwise (an odd element passes a level through
    unchanged).  The two agree as functions.
    """
    if len(landscapes) != len(coeffs):
        raise ValueError(
            f"{len(landscapes)} landscapes but {len(coeffs)} coefficients"
        )
    if not landscapes:
        raise ValueError("need at least one landscape")
    if method not in ("tree", "naive"):
        raise ValueError(f"unknown method {method!r}")
    for ls in landscapes:
        _require_finite(ls)
    degree = landscapes[0].degree

    if method == "naive" or len(landscapes) == 1:
        if len(landscapes) == 1:
            out = scale(landscapes[0], coeffs[0])
            return Landscape(out.layers, degree=degree, validate=False)
        depth = max(ls.depth for ls in landscapes)
        layers = [
            _combine_layers([_layer_at(ls, k) for ls in landscapes], coeffs, epsilon)
            for k in range(1, depth + 1)
        ]
        return Landscape(layers, degree=degree, validate=False)

    # tree: coefficients are consumed the first time an item takes part in a
    # merge; a leftover keeps its coefficient for the next level
    items: list[tuple[float, Landscape]] = list(zip(coeffs, landscapes))
    while len(items) > 1:
        merged = []
        for idx in range(0, len(items) - 1, 2):
            (ca, la), (cb, lb) = items[idx], items[idx + 1]
            depth = max(la.depth, lb.depth)
            layers = [
                _combine_layers(
                    [_layer_at(la, k), _layer_at(lb, k)], (ca, cb), epsilon
                )
                for k in range(1, depth + 1)
            ]
            merged.append((1.0, Landscape(layers, degree=degree, validate=False)))
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    coeff, result = items[0]
    if coeff != 1.0:
        result = scale(result, coeff)
    return Landscape(result.layers, degree=degree, validate=False)


def average(landscapes: Sequence[Landscape], *, epsilon: float = 0.0) -> Landscape:
    """Pointwise mean: binary-tree sum with unit weights, one division at the end."""
    if not landscapes:
        raise ValueError("need at least one landscape")
    n = len(landscapes)
    total = linear_combination(landscapes, [1.0] * n, method="tree", epsilon=epsilon)
    if n == 1:
        return total
    layers = []
    for layer in total.layers:
        scaled = layer.copy()
        scaled[1:-1, 1] /= n
        layers.append(scaled)
    return Landscape(layers, degree=total.degree, validate=False)


def _common_spec(gls: Sequence[GridLandscape]):
    spec = gls[0].spec
    for gl in gls[1:]:
        if gl.spec != spec:
            raise ValueError(f"grid spec mismatch: {gl.spec} != {spec}")
    return spec


def grid_linear_combination(
    gls: Sequence[GridLandscape], coeffs: Sequence[float]
) -> GridLandscape:
    """Entrywise weighted sum of grid matrices; rows zero-padded to the max depth."""
    if len(gls) != len(coeffs):
        raise ValueError(f"{len(gls)} grid landscapes but {len(coeffs)} coefficients")
    if not gls:
        raise ValueError("need at least one grid landscape")
    spec = _common_spec(gls)
    depth = max(gl.depth for gl in gls)
    out = np.zeros((depth, 2 * spec.count + 1))
    for gl, a in zip(gls, coeffs):
        if gl.depth:
            out[: gl.depth] += a * gl.values
    return GridLandscape(spec, out, gls[0].degree)


def grid_average(gls: Sequence[GridLandscape]) -> GridLandscape:
    """Entrywise mean (summed then divided once, so identical inputs average exactly)."""
    total = grid_linear_combination(gls, [1.0] * len(gls))
    return GridLandscape(total.spec, total.values / len(gls), total.degree)
