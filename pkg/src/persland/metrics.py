"""Norms, distances, and inner products of landscapes.

All integrals are taken in closed form over the linear segments between
consecutive critical numbers: |ax + b|**p integrates to a difference of
(p+1)-th powers, splitting at the sign change when there is one.  The sup
norm is the largest absolute critical value, since a piecewise-linear
function attains its extrema at critical points.
"""

from __future__ import annotations

import math
import numpy as np

from .grids import GridLandscape
from .landscapes import Landscape
from .algebra import merge_critical_numbers, _interior, _require_finite

__all__ = [
    "grid_lp_distance",
    "inner_product",
    "lp_distance",
    "lp_norm",
    "segment_lp_integral",
    "sup_norm",
]

INF = math.inf


def _power_mean(ya: np.ndarray, yb: np.ndarray, p: float) -> np.ndarray:
    """(yb**(p+1) - ya**(p+1)) / ((yb - ya) * (p + 1)) for ya, yb >= 0.

    This is the exact mean value of t**p for t running linearly from ya to yb.
    Small integer p uses the factored power sum, which is stable when ya == yb.
    """
    if p == 1.0:
        return (ya + yb) / 2.0
    if p == 2.0:
        return (ya * ya + ya * yb + yb * yb) / 3.0
    if p == 3.0:
        return (ya + yb) * (ya * ya + yb * yb) / 4.0
    if p == 4.0:
        ya2, yb2 = ya * ya, yb * yb
        return (ya2 * ya2 + ya2 * ya * yb + ya2 * yb2 + ya * yb * yb2 + yb2 * yb2) / 5.0
    # general p: write small = big * (1 + e); the naive difference of powers
    # cancels catastrophically for e near 0, expm1/log1p stays accurate
    q = p + 1.0
    big = np.maximum(ya, yb)
    small = np.minimum(ya, yb)
    same = big == small
    big_zero = big == 0.0
    safe_big = np.where(big_zero, 1.0, big)
    e = (small - safe_big) / safe_big
    with np.errstate(invalid="ignore", divide="ignore"):
        out = safe_big**p * np.expm1(q * np.log1p(e)) / (q * e)
    out = np.where(same, big**p, out)
    return np.where(big_zero, 0.0, out)


def _segments_lp(x0, y0, x1, y1, p: float) -> np.ndarray:
    """Vectorized integral of |segment|**p over [x0, x1], splitting sign changes."""
    dx = x1 - x0
    crossing = (y0 * y1) < 0.0
    ya = np.abs(y0)
    yb = np.abs(y1)
    plain = dx * _power_mean(ya, yb, p)
    if not np.any(crossing):
        return plain
    # split at the zero of the segment: two triangles, each with one zero end
    with np.errstate(invalid="ignore", divide="ignore"):
        dx0 = np.where(crossing, -y0 * dx / (y1 - y0), 0.0)
    left = dx0 * (ya**p) / (p + 1.0)
    right = (dx - dx0) * (yb**p) / (p + 1.0)
    return np.where(crossing, left + right, plain)


def segment_lp_integral(x0: float, y0: float, x1: float, y1: float, p: float) -> float:
    """Integral of |l(x)|**p over [x0, x1] for the line through the two points."""
    if not (x0 < x1) or not (math.isfinite(x0) and math.isfinite(x1)):
        raise ValueError(f"need finite x0 < x1, got {x0}, {x1}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return float(
        _segments_lp(
            np.float64(x0), np.float64(y0), np.float64(x1), np.float64(y1), float(p)
        )
    )


def _layer_lp(xs: np.ndarray, ys: np.ndarray, p: float) -> float:
    if xs.size < 2:
        return 0.0
    return float(np.sum(_segments_lp(xs[:-1], ys[:-1], xs[1:], ys[1:], p)))


def lp_norm(f: Landscape, p: float) -> float:
    """(sum over layers of the layer integrals of |.|**p) ** (1/p); p=inf allowed."""
    if p == INF:
        return sup_norm(f)
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    _require_finite(f)
    parts = [_layer_lp(*_interior(layer), p) for layer in f.layers]
    total = math.fsum(parts)
    return total ** (1.0 / p)


def sup_norm(f: Landscape) -> float:
    """Largest absolute critical value over all layers."""
    _require_finite(f)
    best = 0.0
    for layer in f.layers:
        ys = layer[1:-1, 1]
        if ys.size:
            best = max(best, float(np.max(np.abs(ys))))
    return best


def lp_distance(f: Landscape, g: Landscape, p: float) -> float:
    """Lp (or sup, p=inf) distance: the norm of the layerwise difference.

    The difference is formed layer by layer on the merged critical numbers and
    integrated immediately, so no combined landscape is materialized.
    """
    if p != INF and p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    _require_finite(f)
    _require_finite(g)
    depth = max(f.depth, g.depth)
    sup = 0.0
    parts = []
    for k in range(1, depth + 1):
        seqs = []
        for ls in (f, g):
            if k <= ls.depth:
                seqs.append(_interior(ls.layers[k - 1])[0])
        xs = merge_critical_numbers(seqs)
        if xs.size == 0:
            continue
        dy = f.evaluate(k, xs) - g.evaluate(k, xs)
        if p == INF:
            if dy.size:
                sup = max(sup, float(np.max(np.abs(dy))))
        else:
            parts.append(_layer_lp(xs, dy, p))
    if p == INF:
        return sup
    return math.fsum(parts) ** (1.0 / p)


def inner_product(f: Landscape, g: Landscape) -> float:
    """sum_k integral f_k * g_k, segment-exact on the merged critical numbers."""
    _require_finite(f)
    _require_finite(g)
    depth = min(f.depth, g.depth)
    parts = []
    for k in range(1, depth + 1):
        fx, fy = _interior(f.layers[k - 1])
        gx, gy = _interior(g.layers[k - 1])
        if fx.size == 0 or gx.size == 0:
            continue
        xs = merge_critical_numbers([fx, gx])
        a = np.interp(xs, fx, fy, left=0.0, right=0.0)
        b = np.interp(xs, gx, gy, left=0.0, right=0.0)
        dx = np.diff(xs)
        a0, a1 = a[:-1], a[1:]
        b0, b1 = b[:-1], b[1:]
        # exact integral of the product of two linear functions on each cell
        parts.append(float(np.sum(dx / 6.0 * (a0 * (2 * b0 + b1) + a1 * (b0 + 2 * b1)))))
    return math.fsum(parts)


def grid_lp_distance(ga: GridLandscape, gb: GridLandscape, p: float) -> float:
    """Distance of the piecewise-linear interpolants of two grid matrices.

    Exact segment integration between adjacent columns, not a Riemann sum.
    """
    if ga.spec != gb.spec:
        raise ValueError(f"grid spec mismatch: {ga.spec} != {gb.spec}")
    if p != INF and p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    depth = max(ga.depth, gb.depth)
    if depth == 0:
        return 0.0
    width = 2 * ga.spec.count + 1
    diff = np.zeros((depth, width))
    if ga.depth:
        diff[: ga.depth] += ga.values_original()
    if gb.depth:
        diff[: gb.depth] -= gb.values_original()
    if p == INF:
        return float(np.max(np.abs(diff)))
    h = ga.spec.spacing / 2.0
    cells = _segments_lp(0.0, diff[:, :-1], h, diff[:, 1:], p)
    return float(math.fsum(np.sum(cells, axis=1)) ** (1.0 / p))
