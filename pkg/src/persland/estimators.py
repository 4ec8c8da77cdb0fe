"""Scikit-learn style estimators wrapping the landscape machinery.

Both estimators follow the fit/transform/predict + get_params/set_params
protocol, so they compose with scikit-learn pipelines, grid search and
cloning.  scikit-learn is optional: when it is installed the estimators pick
up BaseEstimator (for tags and HTML repr), otherwise they stand alone.

Inputs may be :class:`~persland.barcodes.Barcode` objects, (n, 2) arrays of
birth-death pairs, or prebuilt :class:`~persland.landscapes.Landscape`
objects; arrays are validated and converted.
"""

from __future__ import annotations

import inspect
from typing import Sequence

import numpy as np

from .algebra import average
from .barcodes import Barcode
from .landscapes import Landscape, build_landscape
from .metrics import lp_distance

try:
    from sklearn.base import BaseEstimator as _SklearnBase
except ImportError:  # pragma: no cover - exercised only without sklearn
    class _SklearnBase:
        pass

__all__ = ["LandscapeTransformer", "NearestAverageLandscapeClassifier"]


def as_landscape(item) -> Landscape:
    """Coerce a barcode, an (n, 2) pair array, or a landscape to a Landscape."""
    if isinstance(item, Landscape):
        return item
    if isinstance(item, Barcode):
        return build_landscape(item)
    arr = np.asarray(item, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(
            f"expected a Landscape, Barcode, or (n, 2) array of pairs; got shape {arr.shape}"
        )
    return build_landscape(Barcode(map(tuple, arr)))


class _ParamsMixin(_SklearnBase):
    """get_params/set_params from the __init__ signature (sklearn protocol)."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [name for name in sig.parameters if name != "self"]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise ValueError(f"invalid parameter {key!r} for {type(self).__name__}")
            setattr(self, key, value)
        return self

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({inner})"


class LandscapeTransformer(_ParamsMixin):
    """Vectorize barcodes as landscape values sampled on a common grid.

    The feature vector of a sample is
    ``[layer_1(x_1..x_r), layer_2(x_1..x_r), ..., layer_L(x_1..x_r)]``
    over ``r = resolution`` evenly spaced points.  The sampling window is
    ``sample_range`` when given, otherwise the extent of the training
    barcodes (inferred during fit).
    """

    def __init__(self, num_layers: int = 5, resolution: int = 100,
                 sample_range: tuple[float, float] | None = None):
        self.num_layers = num_layers
        self.resolution = resolution
        self.sample_range = sample_range

    def fit(self, X: Sequence, y=None) -> "LandscapeTransformer":
        if self.num_layers < 1 or self.resolution < 2:
            raise ValueError("need num_layers >= 1 and resolution >= 2")
        if self.sample_range is not None:
            lo, hi = self.sample_range
        else:
            landscapes = [as_landscape(item) for item in X]
            if not landscapes:
                raise ValueError("fit received an empty collection")
            bounds = [ls.support() for ls in landscapes if ls.depth]
            if not bounds:
                raise ValueError("no nonempty barcode to infer a sample range from")
            lo = min(b[0] for b in bounds)
            hi = max(b[1] for b in bounds)
        if not hi > lo:
            raise ValueError(f"need an increasing sample range, got ({lo}, {hi})")
        self.grid_ = np.linspace(lo, hi, self.resolution)
        self.is_fitted_ = True
        return self

    def transform(self, X: Sequence) -> np.ndarray:
        if not getattr(self, "is_fitted_", False):
            raise RuntimeError("LandscapeTransformer must be fitted before transform()")
        rows = []
        for item in X:
            landscape = as_landscape(item)
            parts = [landscape.evaluate(k, self.grid_)
                     for k in range(1, self.num_layers + 1)]
            rows.append(np.concatenate(parts))
        return np.vstack(rows) if rows else np.empty((0, self.num_layers * self.resolution))

    def fit_transform(self, X: Sequence, y=None) -> np.ndarray:
        return self.fit(X, y).transform(X)


class NearestAverageLandscapeClassifier(_ParamsMixin):
    """Classify by Lp distance to per-class average landscapes.

    fit() averages the landscapes of each class; predict() returns, for each
    query, the label whose class average is nearest (ties to the class seen
    first).
    """

    def __init__(self, p: float = 2.0):
        self.p = p

    def fit(self, X: Sequence, y: Sequence) -> "NearestAverageLandscapeClassifier":
        X = list(X)
        y = np.asarray(y)
        if len(X) != len(y):
            raise ValueError(f"{len(X)} samples but {len(y)} labels")
        if len(X) == 0:
            raise ValueError("fit received an empty collection")
        self.classes_ = np.unique(y)
        self.averages_ = []
        for label in self.classes_:
            members = [as_landscape(X[i]) for i in np.flatnonzero(y == label)]
            self.averages_.append(average(members))
        return self

    def _distances(self, item) -> np.ndarray:
        query = as_landscape(item)
        return np.array([lp_distance(query, avg, self.p) for avg in self.averages_])

    def predict(self, X: Sequence) -> np.ndarray:
        if not hasattr(self, "averages_"):
            raise RuntimeError("classifier must be fitted before predict()")
        return np.array([self.classes_[int(np.argmin(self._distances(item)))] for item in X])

    def predict_ranked(self, X: Sequence) -> list[list[tuple[float, object]]]:
        """For each query, (distance, label) pairs sorted by increasing distance."""
        if not hasattr(self, "averages_"):
            raise RuntimeError("classifier must be fitted before predict_ranked()")
        out = []
        for item in X:
            dist = self._distances(item)
            order = sorted(range(len(dist)), key=lambda i: dist[i])
            out.append([(float(dist[i]), self.classes_[i]) for i in order])
        return out

    def score(self, X: Sequence, y: Sequence) -> float:
        return float(np.mean(self.predict(X) == np.asarray(y)))
