"""Barcodes (birth-death pair multisets): parsing, validation, snapping, generation.

A barcode is a finite multiset of pairs ``(b, d)`` with ``-inf <= b < d <= inf``.
Endpoints live in the extended reals; NaN is never representable after
construction.  All objects in this module are immutable and every operation
is pure, so values can be shared freely between threads.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Barcode",
    "BarcodeWarning",
    "GridBarcode",
    "GridSpec",
    "ParseError",
    "canonical_sort",
    "parse_barcode",
    "random_barcode",
    "serialize_barcode",
    "snap_to_grid",
    "staircase_barcode",
    "truncate_infinite",
]

INF = math.inf


class ParseError(ValueError):
    """Raised for malformed barcode or landscape text, with a line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BarcodeWarning(UserWarning):
    """Non-fatal irregularities: reordered pairs, dropped degenerate pairs."""


def _check_pair(b: float, d: float) -> tuple[float, float]:
    b = float(b)
    d = float(d)
    if math.isnan(b) or math.isnan(d):
        raise ValueError(f"NaN endpoint in pair ({b}, {d})")
    if not b < d:
        raise ValueError(f"birth must be strictly below death, got ({b}, {d})")
    return b, d


class Barcode:
    """Immutable multiset of birth-death pairs with a homological degree tag.

    Duplicate pairs are retained: averages and layer construction need
    multiplicity.  Equality is multiset equality (order does not matter).
    """

    __slots__ = ("pairs", "degree")

    def __init__(self, pairs: Iterable[tuple[float, float]], degree: int = 0):
        if degree < 0 or int(degree) != degree:
            raise ValueError(f"degree must be a nonnegative integer, got {degree}")
        object.__setattr__(self, "pairs", tuple(_check_pair(b, d) for b, d in pairs))
        object.__setattr__(self, "degree", int(degree))

    def __setattr__(self, name, value):
        raise AttributeError("Barcode is immutable")

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.degree == other.degree and sorted(self.pairs) == sorted(other.pairs)

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.pairs))))

    def __repr__(self) -> str:
        return f"Barcode({list(self.pairs)!r}, degree={self.degree})"

    def as_array(self) -> np.ndarray:
        """Pairs as an (n, 2) float array (empty barcode gives shape (0, 2))."""
        if not self.pairs:
            return np.empty((0, 2))
        return np.asarray(self.pairs, dtype=np.float64)

    @property
    def is_finite(self) -> bool:
        return all(math.isfinite(b) and math.isfinite(d) for b, d in self.pairs)


@dataclass(frozen=True)
class GridSpec:
    """Evenly spaced grid ``origin, origin + spacing, ..., origin + count * spacing``."""

    origin: float
    spacing: float
    count: int

    def __post_init__(self):
        if not math.isfinite(self.origin):
            raise ValueError("grid origin must be finite")
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise ValueError("grid spacing must be positive and finite")
        if self.count < 1:
            raise ValueError("grid count must be >= 1")

    @property
    def upper(self) -> float:
        return self.origin + self.count * self.spacing

    def nodes(self) -> np.ndarray:
        """The count + 1 node positions."""
        return self.origin + self.spacing * np.arange(self.count + 1)

    def half_nodes(self) -> np.ndarray:
        """The 2 * count + 1 positions at half spacing (columns of a grid landscape)."""
        return self.origin + (self.spacing / 2.0) * np.arange(2 * self.count + 1)


@dataclass(frozen=True)
class GridBarcode:
    """Barcode with endpoints snapped to grid node indices.

    A pair ``(i, j)`` refers to the nodes ``origin + i * spacing`` and
    ``origin + j * spacing``; after the canonical rescaling those map to the
    even integers ``2i`` and ``2j`` in ``{0, 2, ..., 2 * count}``.
    """

    spec: GridSpec
    pairs: tuple[tuple[int, int], ...]
    degree: int = 0

    def __post_init__(self):
        for i, j in self.pairs:
            if not (0 <= i < j <= self.spec.count):
                raise ValueError(f"grid index pair ({i}, {j}) outside 0..{self.spec.count}")

    def __len__(self) -> int:
        return len(self.pairs)

    def to_barcode(self) -> Barcode:
        """Back to original units (endpoints exactly on grid nodes)."""
        a, s = self.spec.origin, self.spec.spacing
        return Barcode([(a + i * s, a + j * s) for i, j in self.pairs], self.degree)


def parse_barcode(
    text: str,
    *,
    degree: int = 0,
    infinity: float | None = None,
    strict: bool = True,
) -> Barcode:
    """Parse whitespace-separated "b d" lines into a barcode.

    ``infinity`` is the magic number encoding the infinities: a value equal to
    ``+infinity`` reads as +inf and ``-infinity`` as -inf.  Blank lines are
    ignored.  In strict mode a pair with ``death <= birth`` is an error; in
    lenient mode out-of-order pairs are reordered and degenerate pairs
    (``b == d``) dropped, both with a :class:`BarcodeWarning`.
    """
    pairs: list[tuple[float, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected 2 numbers, got {len(tokens)}", lineno)
        try:
            b, d = float(tokens[0]), float(tokens[1])
        except ValueError:
            raise ParseError(f"non-numeric token in {tokens!r}", lineno) from None
        if math.isnan(b) or math.isnan(d):
            raise ParseError("NaN is not a valid endpoint", lineno)
        if infinity is not None:
            if b == infinity:
                b = INF
            elif b == -infinity:
                b = -INF
            if d == infinity:
                d = INF
            elif d == -infinity:
                d = -INF
        if not b < d:
            if strict:
                raise ParseError(f"death <= birth in pair ({b}, {d})", lineno)
            if b == d:
                warnings.warn(
                    f"line {lineno}: dropping degenerate pair ({b}, {d})", BarcodeWarning
                )
                continue
            warnings.warn(
                f"line {lineno}: reordering pair ({b}, {d})", BarcodeWarning
            )
            b, d = d, b
        pairs.append((b, d))
    return Barcode(pairs, degree=degree)


def _format_number(x: float, infinity: float | None) -> str:
    if infinity is not None:
        if x == INF:
            return format(infinity, ".17g")
        if x == -INF:
            return format(-infinity, ".17g")
    return format(x, ".17g")


def serialize_barcode(barcode: Barcode, *, infinity: float | None = None) -> str:
    """One "b d" pair per line, 17 significant digits (value-exact round trip)."""
    lines = [
        f"{_format_number(b, infinity)} {_format_number(d, infinity)}"
        for b, d in barcode.pairs
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def canonical_sort(barcode: Barcode) -> Barcode:
    """Sort by increasing birth, ties by decreasing death; stable on duplicates."""
    return Barcode(sorted(barcode.pairs, key=lambda p: (p[0], -p[1])), barcode.degree)


def truncate_infinite(barcode: Barcode, cutoff: float, policy: str = "truncate") -> Barcode:
    """Resolve infinite endpoints: replace by +-cutoff, or drop the pair.

    With ``policy="truncate"`` a death of +inf becomes ``cutoff`` and a birth
    of -inf becomes ``-cutoff``; the result must still satisfy b < d.
    """
    if policy not in ("truncate", "drop"):
        raise ValueError(f"policy must be 'truncate' or 'drop', got {policy!r}")
    if not math.isfinite(cutoff):
        raise ValueError("cutoff must be finite")
    out = []
    for b, d in barcode.pairs:
        if math.isfinite(b) and math.isfinite(d):
            out.append((b, d))
            continue
        if policy == "drop":
            continue
        nb = -cutoff if b == -INF else b
        nd = cutoff if d == INF else d
        if not nb < nd:
            raise ValueError(
                f"truncating ({b}, {d}) at {cutoff} gives degenerate pair ({nb}, {nd})"
            )
        out.append((nb, nd))
    return Barcode(out, barcode.degree)


def snap_to_grid(barcode: Barcode, spec: GridSpec) -> GridBarcode:
    """Round each endpoint to the nearest grid node (exact ties round up).

    Endpoints must be finite and inside ``[origin, origin + count * spacing]``.
    Each endpoint moves by at most spacing / 2.  Pairs whose endpoints collapse
    onto the same node are dropped with a :class:`BarcodeWarning`.
    """
    pairs = []
    for b, d in barcode.pairs:
        idx = []
        for x in (b, d):
            if not math.isfinite(x) or not (spec.origin <= x <= spec.upper):
                raise ValueError(
                    f"endpoint {x} outside grid range [{spec.origin}, {spec.upper}]"
                )
            i = math.floor((x - spec.origin) / spec.spacing + 0.5)
            idx.append(min(max(i, 0), spec.count))
        i, j = idx
        if i == j:
            warnings.warn(
                f"pair ({b}, {d}) collapsed onto grid node {i}; dropped", BarcodeWarning
            )
            continue
        pairs.append((i, j))
    return GridBarcode(spec, tuple(pairs), barcode.degree)


def random_barcode(n: int, seed: int, degree: int = 0) -> Barcode:
    """n pairs, each from two independent uniform [0,1] draws, smaller = birth."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed % 2**64)
    u = rng.random((n, 2))
    births = np.minimum(u[:, 0], u[:, 1])
    deaths = np.maximum(u[:, 0], u[:, 1])
    # a tie between the two draws would give b == d; resample those rows
    while np.any(births == deaths):
        mask = births == deaths
        u = rng.random((int(mask.sum()), 2))
        births[mask] = np.minimum(u[:, 0], u[:, 1])
        deaths[mask] = np.maximum(u[:, 0], u[:, 1])
    return Barcode(zip(births.tolist(), deaths.tolist()), degree=degree)


def staircase_barcode(n: int, degree: int = 0) -> Barcode:
    """n intervals (j, j + n) for j = 0..n-1: every pair properly overlaps.

    This family realizes the worst-case critical point counts: layer k has
    2n + 3 - 2k interior critical points, n**2 + 2n in total.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return Barcode([(float(j), float(j + n)) for j in range(n)], degree=degree)
