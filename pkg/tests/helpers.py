"""Independent oracles shared by the test modules.

Everything here deliberately avoids the library's closed-form code paths:
integrals go through scipy's adaptive quadrature, landscape values through
the k-th-largest-of-tents definition, and counts through brute force over
pairs.
"""

from __future__ import annotations

import math
import random

import numpy as np
from scipy.integrate import quad

from persland import Barcode, Landscape, build_landscape, random_barcode


def quad_layer_lp(xs: np.ndarray, ys: np.ndarray, p: float) -> float:
    """Adaptive quadrature of |piecewise linear|**p, one quad call per segment.

    Zero crossings are passed to quad as breakpoints; |.|**p has a kink there
    that defeats the adaptive rule otherwise.
    """
    total = []
    for x0, x1, y0, y1 in zip(xs[:-1], xs[1:], ys[:-1], ys[1:]):
        if x1 <= x0:
            continue
        f = lambda t, x0=x0, x1=x1, y0=y0, y1=y1: (
            abs(y0 + (y1 - y0) * (t - x0) / (x1 - x0)) ** p
        )
        breaks = None
        if y0 * y1 < 0:
            breaks = [x0 - y0 * (x1 - x0) / (y1 - y0)]
        total.append(quad(f, x0, x1, points=breaks, limit=200)[0])
    return math.fsum(total)


def quad_lp_norm(landscape: Landscape, p: float) -> float:
    parts = []
    for layer in landscape.layers:
        xs = layer[1:-1, 0]
        ys = layer[1:-1, 1]
        parts.append(quad_layer_lp(xs, ys, p))
    return math.fsum(parts) ** (1.0 / p)


def quad_lp_distance(f: Landscape, g: Landscape, p: float) -> float:
    parts = []
    for k in range(1, max(f.depth, g.depth) + 1):
        xs = np.unique(
            np.concatenate(
                [ls.layers[k - 1][1:-1, 0] for ls in (f, g) if k <= ls.depth]
            )
        )
        if xs.size < 2:
            continue
        ys = f.evaluate(k, xs) - g.evaluate(k, xs)
        parts.append(quad_layer_lp(xs, ys, p))
    return math.fsum(parts) ** (1.0 / p)


def quad_inner_product(f: Landscape, g: Landscape) -> float:
    parts = []
    for k in range(1, min(f.depth, g.depth) + 1):
        lo = min(f.layers[k - 1][1, 0], g.layers[k - 1][1, 0])
        hi = max(f.layers[k - 1][-2, 0], g.layers[k - 1][-2, 0])
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
            continue
        xs = np.unique(
            np.concatenate([f.layers[k - 1][1:-1, 0], g.layers[k - 1][1:-1, 0]])
        )
        integrand = lambda t, k=k: f.evaluate(k, t) * g.evaluate(k, t)
        parts.append(
            math.fsum(
                quad(integrand, a, b, limit=200)[0] for a, b in zip(xs[:-1], xs[1:])
            )
        )
    return math.fsum(parts)


def kmax_values(pairs: np.ndarray, x: float) -> np.ndarray:
    """All tent values at x, sorted in decreasing order."""
    vals = np.maximum(0.0, np.minimum(x - pairs[:, 0], pairs[:, 1] - x))
    return np.sort(vals)[::-1]


def overlap_depth(pairs) -> int:
    """Max number of open intervals containing a common point."""
    events = sorted({x for b, d in pairs for x in (b, d)})
    best = 0
    for a, b in zip(events[:-1], events[1:]):
        mid = a + (b - a) / 2
        best = max(best, sum(1 for bb, dd in pairs if bb < mid < dd))
    return best


def count_pairwise_intersections(pairs) -> int:
    """Number of unordered pairs of open intervals with nonempty intersection."""
    p = list(pairs)
    count = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if max(p[i][0], p[j][0]) < min(p[i][1], p[j][1]):
                count += 1
    return count


def mc_mean_bar_length(samples: int = 200_000, seed: int = 20240817) -> float:
    """Monte-Carlo estimate of E|U1 - U2| with the stdlib generator."""
    rng = random.Random(seed)
    return math.fsum(abs(rng.random() - rng.random()) for _ in range(samples)) / samples


def random_landscapes(count: int, max_pairs: int, seed: int) -> list[Landscape]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_pairs + 1))
        out.append(build_landscape(random_barcode(n, int(rng.integers(0, 2**32)))))
    return out


def jittered_triangle_barcode(center: float, width: float, rng) -> Barcode:
    """A few bars around one triangle, for building well-separated classes."""
    n = int(rng.integers(1, 4))
    pairs = []
    for _ in range(n):
        b = center - width / 2 + rng.uniform(-0.05, 0.05) * width
        d = center + width / 2 + rng.uniform(-0.05, 0.05) * width
        pairs.append((min(b, d), max(b, d)))
    return Barcode(pairs)
