"""Statistics over collections of landscapes: distance matrices, permutation
tests, and nearest-average-landscape classification.

Every function accepts exact landscapes or grid landscapes (one kind per
collection); averaging and distances dispatch accordingly.  Randomized
procedures derive the randomness of each trial from (seed, trial index), so
results are identical regardless of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .algebra import average, grid_average
from .grids import GridLandscape
from .landscapes import Landscape
from .metrics import grid_lp_distance, lp_distance

__all__ = [
    "ClassifierModel",
    "DistanceMatrix",
    "PermutationTestResult",
    "classifier_all_dims",
    "classifier_classify",
    "classifier_construct",
    "distance_matrix",
    "pairwise_permutation_matrix",
    "permutation_test",
]


def _mean(items: Sequence) -> Landscape | GridLandscape:
    if isinstance(items[0], GridLandscape):
        return grid_average(items)
    return average(items)


def _dist(f, g, p: float) -> float:
    if isinstance(f, GridLandscape) or isinstance(g, GridLandscape):
        return grid_lp_distance(f, g, p)
    return lp_distance(f, g, p)


def _format_value(x: float) -> str:
    return format(x, "g")


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances with a zero diagonal."""

    labels: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.float64)
        n = len(self.labels)
        if arr.shape != (n, n):
            raise ValueError(f"entries shape {arr.shape} does not match {n} labels")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def to_text(self) -> str:
        """Tab-separated rows, 6 significant digits."""
        lines = ["\t".join(_format_value(v) for v in row) for row in self.entries]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PermutationTestResult:
    observed_delta: float
    trials: int
    exceed_count: int
    p_value: float
    seed: int


@dataclass(frozen=True)
class ClassifierModel:
    """One average landscape per class, compared with the Lp distance."""

    class_labels: tuple
    class_averages: tuple
    p: float

    def __post_init__(self):
        if len(self.class_labels) != len(self.class_averages):
            raise ValueError("one average per class label required")
        if not self.class_labels:
            raise ValueError("model needs at least one class")


def distance_matrix(
    inputs: Sequence, p: float, labels: Sequence[str] | None = None
) -> DistanceMatrix:
    """All pairwise Lp distances; each unordered pair is computed once."""
    if not inputs:
        raise ValueError("need at least one input")
    n = len(inputs)
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise ValueError(f"{n} inputs but {len(labels)} labels")
    entries = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = _dist(inputs[i], inputs[j], p)
            entries[i, j] = entries[j, i] = d
    return DistanceMatrix(tuple(str(s) for s in labels), entries)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed % 2**64, trial]))


def permutation_test(
    class_a: Sequence,
    class_b: Sequence,
    trials: int,
    p: float = 2.0,
    seed: int = 0,
    progress: Callable[[int, int], None] | None = None,
) -> PermutationTestResult:
    """Two-sample test on the distance between class average landscapes.

    The observed statistic is the distance between the two class averages.
    Each trial pools both classes, splits the pool at random into subsets of
    the original sizes, and recomputes the averaged distance; the p-value is
    the proportion of trials strictly exceeding the observed distance.
    (On fully degenerate identical classes the strict inequality never holds
    and the p-value is 0.)
    """
    if not class_a or not class_b:
        raise ValueError("both classes must be nonempty")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    observed = _dist(_mean(class_a), _mean(class_b), p)
    pooled = list(class_a) + list(class_b)
    na = len(class_a)
    exceed = 0
    for t in range(trials):
        rng = _trial_rng(seed, t)
        order = rng.permutation(len(pooled))
        left = [pooled[i] for i in order[:na]]
        right = [pooled[i] for i in order[na:]]
        if _dist(_mean(left), _mean(right), p) > observed:
            exceed += 1
        if progress is not None:
            progress(t + 1, trials)
    return PermutationTestResult(
        observed_delta=observed,
        trials=trials,
        exceed_count=exceed,
        p_value=exceed / trials,
        seed=seed,
    )


def pairwise_permutation_matrix(
    classes: Sequence[Sequence],
    trials: int,
    p: float = 2.0,
    seed: int = 0,
    progress: Callable[[int, int, int, int], None] | None = None,
) -> np.ndarray:
    """Symmetric matrix of permutation-test p-values; the diagonal is 1."""
    m = len(classes)
    if m < 2:
        raise ValueError("need at least two classes")
    out = np.ones((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            pair_seed = int(np.random.SeedSequence([seed % 2**64, i, j]).generate_state(1)[0])
            tick = None
            if progress is not None:
                tick = lambda t, n, i=i, j=j: progress(i, j, t, n)
            result = permutation_test(
                classes[i], classes[j], trials, p, pair_seed, progress=tick
            )
            out[i, j] = out[j, i] = result.p_value
    return out


def classifier_construct(
    training: Sequence[Sequence], p: float = 2.0, labels: Sequence | None = None
) -> ClassifierModel:
    """Average each training class; classification is nearest average."""
    if not training:
        raise ValueError("need at least one class")
    for i, cls in enumerate(training):
        if not cls:
            raise ValueError(f"class {i} is empty")
    if labels is None:
        labels = list(range(1, len(training) + 1))
    if len(labels) != len(training):
        raise ValueError("one label per class required")
    averages = tuple(_mean(cls) for cls in training)
    return ClassifierModel(tuple(labels), averages, float(p))


def classifier_classify(model: ClassifierModel, query, mode: str = "best"):
    """Nearest class average for a query.

    ``mode="best"`` returns the winning label (ties go to the lowest class
    index); ``mode="ranked"`` returns all (distance, label) pairs sorted by
    increasing distance.
    """
    if mode not in ("best", "ranked"):
        raise ValueError(f"mode must be 'best' or 'ranked', got {mode!r}")
    distances = [_dist(query, avg, model.p) for avg in model.class_averages]
    if mode == "best":
        return model.class_labels[int(np.argmin(distances))]
    order = sorted(range(len(distances)), key=lambda i: distances[i])
    return [(distances[i], model.class_labels[i]) for i in order]


def classifier_all_dims(
    models: Mapping[int, ClassifierModel],
    queries: Mapping[int, object],
    p: float,
    mode: str = "best",
):
    """Classify using several homological degrees at once.

    Every degree must provide a model over the same class labels and a query;
    the per-class score is the sum over degrees of the distance to that
    class's average, and the winner is the smallest score.
    """
    if mode not in ("best", "ranked"):
        raise ValueError(f"mode must be 'best' or 'ranked', got {mode!r}")
    if not models:
        raise ValueError("need at least one degree")
    if set(models.keys()) != set(queries.keys()):
        raise ValueError(
            f"degree mismatch: model degrees {sorted(models)} vs query degrees {sorted(queries)}"
        )
    degrees = sorted(models)
    labels = models[degrees[0]].class_labels
    for deg in degrees[1:]:
        if models[deg].class_labels != labels:
            raise ValueError(f"class labels differ between degrees {degrees[0]} and {deg}")
    scores = np.zeros(len(labels))
    for deg in degrees:
        model = models[deg]
        query = queries[deg]
        scores += [_dist(query, avg, p) for avg in model.class_averages]
    if mode == "best":
        return labels[int(np.argmin(scores))]
    order = sorted(range(len(labels)), key=lambda i: scores[i])
    return [(float(scores[i]), labels[i]) for i in order]
