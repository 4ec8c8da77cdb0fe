"""Exact persistence landscapes: construction, evaluation, structural counts.

The landscape of a barcode is the sequence of functions ``layer k = k-th
largest of the triangle functions`` of its pairs.  Each layer is stored
exactly as its critical points, as an (m, 2) float array sorted by x, with
sentinel rows at x = -inf and x = +inf.  For layers produced from finite
pairs the sentinels are (-inf, 0) and (inf, 0); layers arising from infinite
intervals carry (-inf, inf) or (inf, inf) instead, meaning the layer keeps
falling/rising with slope -+1 beyond its last finite critical point.

Construction is a single sorted sweep per layer: pairs are consumed in
(birth asc, death desc) order, each overtaking pair contributes the crossing
point and its own peak, and the overtaken remainder is pushed back for the
next layer.  The sweep costs O(n log n + n K) total.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .barcodes import Barcode

__all__ = [
    "Landscape",
    "build_landscape",
    "critical_count",
    "pointwise_kmax_oracle",
    "triangle_eval",
]

INF = math.inf


def triangle_eval(pair: tuple[float, float], x) -> float | np.ndarray:
    """Tent function of one pair: 0 outside (b, d), slope +-1 inside, peak (d-b)/2.

    Infinite endpoints follow the natural limits: (b, inf) rises forever,
    (-inf, d) falls from the left, (-inf, inf) is identically +inf.
    """
    b, d = pair
    x = np.asarray(x, dtype=np.float64)
    if b == -INF and d == INF:
        out = np.full(x.shape, INF)
        return out if out.ndim else float(INF)
    out = np.maximum(0.0, np.minimum(x - b, d - x))
    return out if out.ndim else float(out)


def prune_slope_changes(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Keep the endpoints and every point where the slope changes.

    A piecewise-linear function is the same whatever redundant points its
    representation carries, so true vertices are exactly the slope changes
    between consecutive stored points.
    """
    if xs.size >= 3:
        dx = np.diff(xs)
        dy = np.diff(ys)
        keep = np.empty(xs.size, dtype=bool)
        keep[0] = keep[-1] = True
        keep[1:-1] = dy[:-1] * dx[1:] != dy[1:] * dx[:-1]
        return xs[keep], ys[keep]
    return xs, ys


def trim_zero_tails(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Drop zero points outside the support, keeping one on each boundary."""
    nz = np.flatnonzero(ys != 0.0)
    if nz.size == 0:
        return xs[:0], ys[:0]
    lo = max(int(nz[0]) - 1, 0)
    hi = min(int(nz[-1]) + 1, ys.size - 1)
    return xs[lo : hi + 1], ys[lo : hi + 1]


def _seal_interior(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    layer = np.empty((xs.size + 2, 2))
    layer[0] = (-INF, 0.0)
    layer[-1] = (INF, 0.0)
    layer[1:-1, 0] = xs
    layer[1:-1, 1] = ys
    layer.setflags(write=False)
    return layer


def layer_from_interior(xs: Sequence[float], ys: Sequence[float], *, prune: bool = True) -> np.ndarray:
    """Wrap finite critical points with (-inf, 0) / (inf, 0) sentinels."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if prune:
        xs, ys = prune_slope_changes(xs, ys)
        xs, ys = trim_zero_tails(xs, ys)
    return _seal_interior(xs, ys)


def _finish_layer(xs: list[float], ys: list[float]) -> np.ndarray:
    """Freeze one sweep layer: prune the interior, keep the sentinel rows.

    Interior points next to the sentinels are never redundant for swept
    layers (an opening zero is always followed by a peak), so pruning only
    needs the finite block.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    ix, iy = prune_slope_changes(x[1:-1], y[1:-1])
    layer = np.empty((ix.size + 2, 2))
    layer[0] = (x[0], y[0])
    layer[-1] = (x[-1], y[-1])
    layer[1:-1, 0] = ix
    layer[1:-1, 1] = iy
    layer.setflags(write=False)
    return layer


class Landscape:
    """A persistence landscape or a linear combination of landscapes.

    Layers are indexed k = 1..K.  For a landscape proper all critical values
    are >= 0 and layers are pointwise nested; combinations reuse the same
    encoding with arbitrary real critical values.
    """

    __slots__ = ("layers", "degree")

    def __init__(self, layers: Iterable[np.ndarray], degree: int = 0, *, validate: bool = True):
        frozen = []
        for layer in layers:
            arr = np.asarray(layer, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ValueError("each layer must be an (m, 2) array of critical points")
            if validate:
                if np.isnan(arr).any():
                    raise ValueError("NaN critical point")
                if not np.all(np.diff(arr[:, 0]) > 0):
                    raise ValueError("critical numbers must be strictly increasing")
                if arr.shape[0] < 2 or arr[0, 0] != -INF or arr[-1, 0] != INF:
                    raise ValueError("layer must carry -inf/+inf sentinel rows")
            if not arr.flags.writeable:
                frozen.append(arr)
            else:
                arr = arr.copy()
                arr.setflags(write=False)
                frozen.append(arr)
        object.__setattr__(self, "layers", tuple(frozen))
        object.__setattr__(self, "degree", int(degree))

    def __setattr__(self, name, value):
        raise AttributeError("Landscape is immutable")

    @property
    def depth(self) -> int:
        """K, the number of stored layers."""
        return len(self.layers)

    @property
    def is_finite(self) -> bool:
        return all(np.isfinite(layer[1:-1, 1]).all() and layer[0, 1] == 0.0 and layer[-1, 1] == 0.0
                   for layer in self.layers)

    def support(self) -> tuple[float, float]:
        """Smallest interval containing all finite critical numbers (0, 0 if none)."""
        lo, hi = INF, -INF
        for layer in self.layers:
            xs = layer[1:-1, 0]
            if xs.size:
                lo = min(lo, xs[0])
                hi = max(hi, xs[-1])
        if lo > hi:
            return (0.0, 0.0)
        return (float(lo), float(hi))

    def evaluate(self, k: int, x):
        """Value of layer k at x (scalar or array), by linear interpolation."""
        if k < 1:
            raise ValueError("layer index k must be >= 1")
        scalar = np.isscalar(x) or np.ndim(x) == 0
        xq = np.atleast_1d(np.asarray(x, dtype=np.float64))
        if k > self.depth:
            out = np.zeros_like(xq)
            return float(out[0]) if scalar else out
        layer = self.layers[k - 1]
        out = _evaluate_layer(layer, xq)
        return float(out[0]) if scalar else out

    def __call__(self, k: int, x):
        return self.evaluate(k, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Landscape):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.depth == other.depth
            and all(np.array_equal(a, b) for a, b in zip(self.layers, other.layers))
        )

    def __hash__(self):
        return hash((self.degree, self.depth))

    def __repr__(self) -> str:
        return f"<Landscape degree={self.degree} K={self.depth} P={critical_count(self)}>"


def _evaluate_layer(layer: np.ndarray, xq: np.ndarray) -> np.ndarray:
    xs = layer[:, 0]
    ys = layer[:, 1]
    interior_x = xs[1:-1]
    interior_y = ys[1:-1]
    if interior_x.size == 0:
        # only sentinels: the zero layer, or the (-inf, inf) full line
        fill = INF if (ys[0] == INF and ys[-1] == INF) else 0.0
        return np.full(xq.shape, fill)
    out = np.interp(xq, interior_x, interior_y, left=0.0, right=0.0)
    if ys[0] == INF:
        mask = xq < interior_x[0]
        out[mask] = interior_y[0] + (interior_x[0] - xq[mask])
    if ys[-1] == INF:
        mask = xq > interior_x[-1]
        out[mask] = interior_y[-1] + (xq[mask] - interior_x[-1])
    return out


def build_landscape(barcode: Barcode) -> Landscape:
    """Construct the exact landscape of a barcode by the sorted sweep.

    Layer k is the pointwise k-th largest of the pairs' triangle functions.
    Duplicated pairs are honoured (they yield identical consecutive layers);
    infinite endpoints produce layers with infinite sentinels.  Pairs nested
    inside the layer's current interval are carried to later layers, as is
    the overtaken remainder (b', d) of each crossing.
    """
    ordered = sorted(barcode.pairs, key=lambda p: (p[0], -p[1]))
    births = [p[0] for p in ordered]
    deaths = [p[1] for p in ordered]
    layers: list[np.ndarray] = []
    while births:
        nxt_b: list[float] = []
        nxt_d: list[float] = []
        carry_b = nxt_b.append
        carry_d = nxt_d.append
        b = births[0]
        d = deaths[0]
        i = 1
        count = len(births)
        closed = False
        if b == -INF and d == INF:
            xs = [-INF, INF]
            ys = [INF, INF]
            closed = True
        elif d == INF:
            xs = [-INF, b, INF]
            ys = [0.0, 0.0, INF]
            closed = True
        elif b == -INF:
            xs = [-INF]
            ys = [INF]
        else:
            half = (d - b) / 2
            xs = [-INF, b, b + half]
            ys = [0.0, 0.0, half]
        add_x = xs.append
        add_y = ys.append
        while not closed:
            # pairs inside the current interval wait for later layers
            while i < count and deaths[i] <= d:
                carry_b(births[i])
                carry_d(deaths[i])
                i += 1
            if i == count:
                add_x(d)
                add_y(0.0)
                add_x(INF)
                add_y(0.0)
                break
            bp = births[i]
            dp = deaths[i]
            i += 1
            if bp > d:
                add_x(d)
                add_y(0.0)
            if bp >= d:
                add_x(bp)
                add_y(0.0)
            else:
                half = (d - bp) / 2
                add_x(bp + half)
                add_y(half)
                # push back the overtaken remainder (bp, d) in sorted order:
                # deeper pairs sharing birth bp with larger death go first
                while i < count and births[i] == bp and deaths[i] > d:
                    carry_b(bp)
                    carry_d(deaths[i])
                    i += 1
                carry_b(bp)
                carry_d(d)
            if dp == INF:
                add_x(INF)
                add_y(INF)
                closed = True
            else:
                half = (dp - bp) / 2
                add_x(bp + half)
                add_y(half)
                b, d = bp, dp
        if i < count:
            nxt_b.extend(births[i:])
            nxt_d.extend(deaths[i:])
        layers.append(_finish_layer(xs, ys))
        births = nxt_b
        deaths = nxt_d
    return Landscape(layers, degree=barcode.degree, validate=False)


def critical_count(landscape: Landscape) -> int:
    """Total number of finite critical points over all layers (P)."""
    return sum(int(np.isfinite(layer[:, 0]).sum()) for layer in landscape.layers)


def pointwise_kmax_oracle(barcode: Barcode, k: int, x: float) -> float:
    """Direct evaluation of the defining property: k-th largest triangle value at x.

    Independent of the sweep construction; used to cross-check it.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not barcode.is_finite:
        raise ValueError("oracle requires a finite barcode")
    arr = barcode.as_array()
    if arr.shape[0] < k:
        return 0.0
    values = np.maximum(0.0, np.minimum(x - arr[:, 0], arr[:, 1] - x))
    values.sort()
    return float(values[-k])
