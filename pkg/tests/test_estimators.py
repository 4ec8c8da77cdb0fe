import numpy as np
import pytest

from persland import (
    Barcode,
    LandscapeTransformer,
    NearestAverageLandscapeClassifier,
    build_landscape,
    random_barcode,
)
from helpers import jittered_triangle_barcode


def make_classes(centers, per_class, seed):
    rng = np.random.default_rng(seed)
    X, y = [], []
    for label, center in enumerate(centers):
        for _ in range(per_class):
            X.append(jittered_triangle_barcode(center, 2.0, rng))
            y.append(label)
    return X, np.asarray(y)


class TestLandscapeTransformer:
    def test_feature_shape(self):
        X = [random_barcode(5, seed=i) for i in range(4)]
        vec = LandscapeTransformer(num_layers=3, resolution=16)
        out = vec.fit_transform(X)
        assert out.shape == (4, 48)

    def test_accepts_arrays_barcodes_landscapes(self):
        items = [
            np.array([[0.0, 2.0]]),
            Barcode([(0, 2)]),
            build_landscape(Barcode([(0, 2)])),
        ]
        vec = LandscapeTransformer(num_layers=1, resolution=5, sample_range=(0, 2))
        out = vec.fit(items).transform(items)
        assert np.array_equal(out[0], out[1])
        assert np.array_equal(out[0], out[2])
        assert np.array_equal(out[0], [0.0, 0.5, 1.0, 0.5, 0.0])

    def test_range_inferred_from_fit_data(self):
        vec = LandscapeTransformer(num_layers=1, resolution=3)
        vec.fit([Barcode([(1, 5)])])
        assert np.array_equal(vec.grid_, [1.0, 3.0, 5.0])

    def test_transform_before_fit_raises(self):
        with pytest.raises(RuntimeError):
            LandscapeTransformer().transform([Barcode([(0, 2)])])

    def test_missing_layers_are_zero_features(self):
        vec = LandscapeTransformer(num_layers=4, resolution=8, sample_range=(0, 2))
        out = vec.fit([Barcode([(0, 2)])]).transform([Barcode([(0, 2)])])
        assert np.all(out[0, 8:] == 0.0)

    def test_bad_array_shape_rejected(self):
        vec = LandscapeTransformer(sample_range=(0, 1))
        vec.fit([Barcode([(0, 1)])])
        with pytest.raises(ValueError):
            vec.transform([np.zeros((3, 3))])

    def test_get_set_params(self):
        vec = LandscapeTransformer(num_layers=2)
        params = vec.get_params()
        assert params["num_layers"] == 2 and "resolution" in params
        vec.set_params(resolution=7)
        assert vec.resolution == 7
        with pytest.raises(ValueError):
            vec.set_params(bogus=1)

    def test_sklearn_clone_compatible(self):
        sklearn = pytest.importorskip("sklearn")
        from sklearn.base import clone

        vec = LandscapeTransformer(num_layers=2, resolution=9)
        twin = clone(vec)
        assert twin.get_params() == vec.get_params()

    def test_sklearn_pipeline_integration(self):
        pytest.importorskip("sklearn")
        from sklearn.neighbors import KNeighborsClassifier
        from sklearn.pipeline import make_pipeline

        X, y = make_classes([1.0, 10.0], per_class=8, seed=3)
        pipe = make_pipeline(
            LandscapeTransformer(num_layers=2, resolution=32), KNeighborsClassifier(3)
        )
        pipe.fit(X, y)
        assert pipe.score(X, y) == 1.0


class TestNearestAverageClassifier:
    def test_perfect_on_separated_classes(self):
        X, y = make_classes([1.0, 10.0, 20.0], per_class=6, seed=1)
        Xq, yq = make_classes([1.0, 10.0, 20.0], per_class=3, seed=2)
        clf = NearestAverageLandscapeClassifier(p=2).fit(X, y)
        assert clf.score(Xq, yq) == 1.0

    def test_predict_ranked_sorted(self):
        X, y = make_classes([1.0, 10.0], per_class=4, seed=4)
        clf = NearestAverageLandscapeClassifier().fit(X, y)
        ranked = clf.predict_ranked([X[0]])[0]
        assert [d for d, _ in ranked] == sorted(d for d, _ in ranked)
        assert {label for _, label in ranked} == {0, 1}

    def test_sup_norm_variant(self):
        X, y = make_classes([1.0, 10.0], per_class=4, seed=5)
        clf = NearestAverageLandscapeClassifier(p=np.inf).fit(X, y)
        assert set(clf.predict(X)) <= {0, 1}

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            NearestAverageLandscapeClassifier().fit([Barcode([(0, 2)])], [0, 1])

    def test_predict_before_fit(self):
        with pytest.raises(RuntimeError):
            NearestAverageLandscapeClassifier().predict([Barcode([(0, 2)])])

    def test_string_labels(self):
        X, y = make_classes([1.0, 10.0], per_class=4, seed=6)
        labels = np.where(np.asarray(y) == 0, "low", "high")
        clf = NearestAverageLandscapeClassifier().fit(X, labels)
        assert set(clf.predict(X)) <= {"low", "high"}
