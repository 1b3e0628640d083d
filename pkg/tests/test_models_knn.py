import numpy as np
import pytest

from fakereviews.errors import BadK, DimMismatch
from fakereviews.models import KNearestNeighbors

from oracles import knn_oracle


class TestKnn:
    def test_nearest_point(self):
        X = np.array([[0.0, 0.0], [1.0, 1.0]])
        y = np.array([0, 1])
        model = KNearestNeighbors(k=1).fit(X, y)
        assert model.predict(np.array([[0.1, 0.0]])).tolist() == [0]

    def test_equidistant_class_tie_goes_to_zero(self):
        X = np.array([[-1.0], [1.0]])
        y = np.array([0, 1])
        model = KNearestNeighbors(k=2).fit(X, y)
        assert model.predict(np.array([[0.0]])).tolist() == [0]

    def test_distance_tie_prefers_lower_row_index(self):
        # two training points at the same location with different labels
        X = np.array([[0.0], [0.0], [5.0]])
        y = np.array([1, 0, 0])
        model = KNearestNeighbors(k=1).fit(X, y)
        assert model.predict(np.array([[0.0]])).tolist() == [1]

    def test_matches_bruteforce_oracle(self, rng):
        for _ in range(30):
            X = rng.normal(size=(50, 8))
            y = rng.integers(0, 2, size=50)
            queries = rng.normal(size=(20, 8))
            for k in (1, 3, 5):
                model = KNearestNeighbors(k=k).fit(X, y)
                assert np.array_equal(model.predict(queries),
                                      knn_oracle(X, y, queries, k))

    def test_bad_k(self):
        with pytest.raises(BadK):
            KNearestNeighbors(k=3).fit(np.zeros((2, 1)), [0, 1])
        with pytest.raises(BadK):
            KNearestNeighbors(k=0).fit(np.zeros((2, 1)), [0, 1])

    def test_dim_mismatch(self):
        model = KNearestNeighbors(k=1).fit(np.zeros((2, 2)), [0, 1])
        with pytest.raises(DimMismatch):
            model.predict(np.zeros((1, 3)))
