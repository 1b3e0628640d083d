import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fakereviews.data import (
    SplitSpec,
    concat_datasets,
    drop_unlabeled,
    load_reviews_csv,
    train_test_split,
    write_dataset_csv,
)
from fakereviews.errors import BadLabel, DegenerateSplit, MalformedRow, MissingColumn

from conftest import make_dataset, write_csv

# reference Fisher-Yates outputs for N=10, test_fraction=0.2, recorded from
# an independent reimplementation of the shuffle (see test_matches_reference)
GOLDEN_TEST_IDS = {9: {1, 5}, 10: {3, 6}}


class TestLoadReviewsCsv:
    def test_field_mapping(self, tmp_path):
        path = write_csv(tmp_path / "a.csv",
                         ['"http://x","4","Great phone","teamA","1"'])
        ds = load_reviews_csv(path)
        assert len(ds) == 1
        r = ds.reviews[0]
        assert (r.url, r.rating, r.text, r.collected_by, r.label) == (
            "http://x", 4.0, "Great phone", "teamA", 1)
        assert r.id == 0

    def test_header_only(self, tmp_path):
        ds = load_reviews_csv(write_csv(tmp_path / "a.csv", []))
        assert len(ds) == 0

    def test_bad_label_names_row(self, tmp_path):
        path = write_csv(tmp_path / "a.csv",
                         ['u,4,fine,t,1', 'u,4,meh,t,2'])
        with pytest.raises(BadLabel, match="row 3"):
            load_reviews_csv(path)

    def test_missing_review_column(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["a,b"], header="url,label")
        with pytest.raises(MissingColumn):
            load_reviews_csv(path)

    def test_malformed_row_names_row(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["u,4,fine,t,1", "u,4,fine"])
        with pytest.raises(MalformedRow, match="row 3"):
            load_reviews_csv(path)

    def test_missing_label_column_yields_unlabeled(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["u,4,fine,t"],
                         header="url,rating,review,collected_by")
        ds = load_reviews_csv(path)
        assert ds.reviews[0].label is None

    def test_column_matching_case_insensitive(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["u,4,fine,t,1"],
                         header="URL,Rating,Review,Collected_By,Label")
        ds = load_reviews_csv(path)
        assert ds.reviews[0].label == 1
        assert ds.reviews[0].text == "fine"

    def test_empty_text_rows_dropped_and_reported(self, tmp_path, caplog):
        path = write_csv(tmp_path / "a.csv",
                         ["u,4,fine,t,1", "u,4,,t,0", "u,4,ok,t,0"])
        with caplog.at_level(logging.WARNING):
            ds = load_reviews_csv(path)
        assert len(ds) == 2  # output rows = input rows - rejected rows
        assert any("row 3" in m for m in caplog.messages)
        assert [r.id for r in ds.reviews] == [0, 1]

    def test_keep_empty_preserves_alignment(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", ["u,4,fine,t,1", "u,4,,t,0"])
        ds = load_reviews_csv(path, keep_empty=True)
        assert len(ds) == 2
        assert ds.reviews[1].text == ""

    def test_bad_rating_ignored_with_warning(self, tmp_path, caplog):
        path = write_csv(tmp_path / "a.csv", ["u,9,fine,t,1", "u,x,ok,t,0"])
        with caplog.at_level(logging.WARNING):
            ds = load_reviews_csv(path)
        assert [r.rating for r in ds.reviews] == [None, None]

    def test_roundtrip_via_canonical_csv(self, tmp_path):
        ds = make_dataset(["good phone", "bad, very bad"], labels=[1, 0],
                          ratings=[4.0, None])
        out = tmp_path / "canon.csv"
        write_dataset_csv(ds, out)
        back = load_reviews_csv(out)
        assert [r.text for r in back.reviews] == ["good phone", "bad, very bad"]
        assert [r.label for r in back.reviews] == [1, 0]
        assert [r.rating for r in back.reviews] == [4.0, None]


class TestConcat:
    def test_orders_and_renumbers(self):
        a = make_dataset(["r0", "r1"], labels=[0, 1])
        b = make_dataset(["r2", "r3", "r4"], labels=[1, 1, 0])
        merged = concat_datasets([a, b])
        assert len(merged) == 5
        assert [r.id for r in merged.reviews] == [0, 1, 2, 3, 4]
        assert [r.text for r in merged.reviews] == ["r0", "r1", "r2", "r3", "r4"]

    def test_single_part_identity_up_to_ids(self):
        a = make_dataset(["x", "y"])
        a.reviews[0].id = 17
        merged = concat_datasets([a])
        assert [r.id for r in merged.reviews] == [0, 1]
        assert [r.text for r in merged.reviews] == ["x", "y"]

    def test_empty(self):
        assert len(concat_datasets([])) == 0

    def test_associative_row_order(self):
        a = make_dataset(["a1", "a2"])
        b = make_dataset(["b1"])
        c = make_dataset(["c1", "c2"])
        nested = concat_datasets([a, concat_datasets([b, c])])
        flat = concat_datasets([a, b, c])
        assert [r.text for r in nested.reviews] == [r.text for r in flat.reviews]


class TestDropUnlabeled:
    def test_filters(self):
        ds = make_dataset(list("abcde"), labels=[1, None, 0, None, 1])
        out = drop_unlabeled(ds)
        assert [r.text for r in out.reviews] == ["a", "c", "e"]
        assert [r.id for r in out.reviews] == [0, 1, 2]

    def test_all_labeled_identity_count(self):
        ds = make_dataset(["a", "b"], labels=[0, 1])
        assert len(drop_unlabeled(ds)) == 2

    def test_none_labeled_warns(self, caplog):
        ds = make_dataset(["a", "b"])
        with caplog.at_level(logging.WARNING):
            out = drop_unlabeled(ds)
        assert len(out) == 0
        assert any("no labeled rows" in m for m in caplog.messages)


class TestTrainTestSplit:
    def _ds(self, n=10):
        return make_dataset([f"t{i}" for i in range(n)], labels=[i % 2 for i in range(n)])

    def test_sizes_and_partition(self):
        train, test = train_test_split(self._ds(), SplitSpec(0.2, seed=9))
        assert (len(train), len(test)) == (8, 2)
        train_ids = {r.id for r in train.reviews}
        test_ids = {r.id for r in test.reviews}
        assert train_ids.isdisjoint(test_ids)
        assert train_ids | test_ids == set(range(10))

    def test_deterministic(self):
        a = train_test_split(self._ds(), SplitSpec(0.2, seed=9))
        b = train_test_split(self._ds(), SplitSpec(0.2, seed=9))
        assert [r.id for r in a[0].reviews] == [r.id for r in b[0].reviews]
        assert [r.id for r in a[1].reviews] == [r.id for r in b[1].reviews]

    def test_matches_reference_shuffle(self):
        # independent Fisher-Yates over PCG64(seed), test = shuffled prefix
        def reference(n, fraction, seed):
            gen = np.random.Generator(np.random.PCG64(seed))
            idx = list(range(n))
            for i in range(n - 1, 0, -1):
                j = int(gen.integers(0, i + 1))
                idx[i], idx[j] = idx[j], idx[i]
            return set(idx[: math.ceil(n * fraction)])

        for seed in (9, 10):
            _, test = train_test_split(self._ds(), SplitSpec(0.2, seed=seed))
            assert {r.id for r in test.reviews} == reference(10, 0.2, seed)
            assert {r.id for r in test.reviews} == GOLDEN_TEST_IDS[seed]

    def test_different_seeds_differ(self):
        _, t9 = train_test_split(self._ds(), SplitSpec(0.2, seed=9))
        _, t10 = train_test_split(self._ds(), SplitSpec(0.2, seed=10))
        assert {r.id for r in t9.reviews} != {r.id for r in t10.reviews}

    def test_unlabeled_rows_excluded(self):
        ds = make_dataset(list("abcdef"), labels=[1, None, 0, 1, None, 0])
        train, test = train_test_split(ds, SplitSpec(0.34, seed=9))
        ids = {r.id for r in train.reviews} | {r.id for r in test.reviews}
        assert ids == {0, 2, 3, 5}

    def test_degenerate(self):
        with pytest.raises(DegenerateSplit):
            train_test_split(make_dataset(["a"], labels=[1]), SplitSpec(0.5, 9))

    def test_stratified_keeps_class_balance(self):
        ds = make_dataset([f"t{i}" for i in range(20)],
                          labels=[0] * 10 + [1] * 10)
        train, test = train_test_split(ds, SplitSpec(0.2, seed=9, stratify=True))
        assert sorted(r.label for r in test.reviews) == [0, 0, 1, 1]

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(2, 1000), seed=st.integers(0, 2**32 - 1))
    def test_partition_property(self, n, seed):
        ds = make_dataset([f"t{i}" for i in range(n)],
                          labels=[i % 2 for i in range(n)])
        train, test = train_test_split(ds, SplitSpec(0.2, seed=seed))
        train_ids = {r.id for r in train.reviews}
        test_ids = {r.id for r in test.reviews}
        assert train_ids.isdisjoint(test_ids)
        assert train_ids | test_ids == set(range(n))
        assert len(test_ids) == math.ceil(n * 0.2)
