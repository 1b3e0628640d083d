import json
import logging
import math

import numpy as np
import pytest

from fakereviews.errors import EmptyVocabulary
from fakereviews.rng import make_rng
from fakereviews.textprep import TokenDoc
from fakereviews.word2vec import (
    SgnsConfig,
    SgnsState,
    build_sgns_vocab,
    build_training_pairs,
    init_state,
    make_unigram_table,
    negative_sample,
    sgns_step,
    train_sgns,
    train_sgns_detailed,
)

from conftest import make_docs, two_cluster_docs
from oracles import fd_gradient, relative_error, sgns_pair_loss

LN2 = math.log(2.0)


def _tiny_state(dim=1, vocab=3):
    return SgnsState(
        terms=[f"t{i}" for i in range(vocab)],
        input_vectors=np.zeros((vocab, dim)),
        output_vectors=np.zeros((vocab, dim)),
        unigram_table=np.linspace(1 / vocab, 1.0, vocab),
    )


class TestTrainingPairs:
    def test_window_one_pairs(self):
        docs = make_docs([["a", "b", "c"]])
        terms, _ = build_sgns_vocab(docs, 1)
        index = {t: i for i, t in enumerate(terms)}
        pairs = list(build_training_pairs(docs, 1, make_rng(0), index))
        names = [(terms[c], terms[x]) for c, x in pairs]
        assert names == [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")]

    def test_single_token_doc_yields_nothing(self):
        docs = make_docs([["solo"]])
        index = {"solo": 0}
        assert list(build_training_pairs(docs, 5, make_rng(0), index)) == []

    def test_stream_deterministic(self):
        docs, _ = two_cluster_docs(20, seed=3)
        terms, _ = build_sgns_vocab(docs, 1)
        index = {t: i for i, t in enumerate(terms)}
        a = list(build_training_pairs(docs, 5, make_rng(7), index))
        b = list(build_training_pairs(docs, 5, make_rng(7), index))
        assert a == b

    def test_oov_tokens_removed_before_windows(self):
        docs = make_docs([["a", "zzz", "b"]])
        index = {"a": 0, "b": 1}
        pairs = list(build_training_pairs(docs, 1, make_rng(0), index))
        # with zzz gone, a and b become adjacent
        assert pairs == [(0, 1), (1, 0)]


class TestSgnsStep:
    def test_zero_state_positive_term_is_ln2(self):
        state = _tiny_state()
        loss = sgns_step(state, (0, 1), np.array([], dtype=np.int64), lr=0.0)
        assert loss == pytest.approx(LN2, abs=1e-15)

    def test_zero_state_loss_with_negatives(self):
        state = _tiny_state()
        loss = sgns_step(state, (0, 1), np.array([2], dtype=np.int64), lr=0.0)
        assert loss == pytest.approx(2 * LN2, abs=1e-15)

    def test_lr_zero_leaves_state_unchanged(self):
        rng = make_rng(1)
        state = _tiny_state(dim=4)
        state.input_vectors = rng.normal(size=(3, 4))
        state.output_vectors = rng.normal(size=(3, 4))
        before_in = state.input_vectors.copy()
        before_out = state.output_vectors.copy()
        l1 = sgns_step(state, (0, 1), np.array([2]), lr=0.0)
        l2 = sgns_step(state, (0, 1), np.array([2]), lr=0.0)
        assert l1 == l2
        assert np.array_equal(state.input_vectors, before_in)
        assert np.array_equal(state.output_vectors, before_out)

    def test_loss_positive_and_finite(self, rng):
        state = _tiny_state(dim=8, vocab=6)
        state.input_vectors = rng.normal(scale=2.0, size=(6, 8))
        state.output_vectors = rng.normal(scale=2.0, size=(6, 8))
        for _ in range(50):
            pair = (int(rng.integers(0, 6)), int(rng.integers(0, 6)))
            negs = rng.integers(0, 6, size=5)
            loss = sgns_step(state, pair, negs, lr=0.01)
            assert math.isfinite(loss) and loss > 0.0

    def test_gradient_matches_finite_differences(self, rng):
        dim, vocab, k = 8, 7, 4
        for _ in range(60):
            center = int(rng.integers(0, vocab))
            context = int(rng.integers(0, vocab))
            negs = np.array([int(rng.integers(0, vocab)) for _ in range(k)])
            inp = rng.normal(scale=0.8, size=(vocab, dim))
            out = rng.normal(scale=0.8, size=(vocab, dim))

            out_idx = np.concatenate(([context], negs))
            labels = np.array([1.0] + [0.0] * k)

            def loss_at(flat):
                v = flat[:dim]
                u = flat[dim:].reshape(k + 1, dim)
                return sgns_pair_loss(v, u, labels)

            flat0 = np.concatenate([inp[center], out[out_idx].ravel()])
            numeric = fd_gradient(loss_at, flat0, eps=1e-5)

            # analytic gradient recovered from one unit-lr update
            state = SgnsState(terms=[], input_vectors=inp.copy(),
                              output_vectors=out.copy(),
                              unigram_table=np.array([1.0]))
            sgns_step(state, (center, context), negs, lr=1.0)
            grad_v = inp[center] - state.input_vectors[center]
            grad_u = np.zeros((k + 1, dim))
            delta = out - state.output_vectors
            # duplicated rows in out_idx accumulate; attribute per slot
            seen = {}
            for slot, row in enumerate(out_idx):
                seen.setdefault(int(row), []).append(slot)
            v0 = inp[center]
            scores = out[out_idx] @ v0
            g = 1.0 / (1.0 + np.exp(-scores)) - labels
            for slot in range(k + 1):
                grad_u[slot] = g[slot] * v0
            # verify the combined per-row update matches the analytic sum
            for row, slots in seen.items():
                assert np.allclose(delta[row], sum(grad_u[s] for s in slots),
                                   atol=1e-12)
            analytic = np.concatenate([grad_v, grad_u.ravel()])
            assert relative_error(analytic, numeric) <= 1e-4


class TestNegativeSampling:
    def test_two_tokens_excluded_forces_other(self):
        table = make_unigram_table(np.array([1.0, 1.0]), 0.75)
        draws = negative_sample(table, make_rng(0), 50, excluded=0)
        assert set(draws.tolist()) == {1}

    def test_empirical_frequencies_match_power_law(self):
        # all expected probabilities >= 0.1 so the 2% relative band is ~3 sigma
        counts = np.array([100.0, 30.0, 50.0, 20.0, 65.0])
        table = make_unigram_table(counts, 0.75)
        expected = counts ** 0.75 / (counts ** 0.75).sum()
        draws = negative_sample(table, make_rng(123), 200_000, excluded=None)
        freq = np.bincount(draws, minlength=5) / len(draws)
        assert np.all(np.abs(freq - expected) / expected <= 0.02)

    def test_deterministic(self):
        table = make_unigram_table(np.array([3.0, 2.0, 1.0]), 0.75)
        a = negative_sample(table, make_rng(5), 100, excluded=1)
        b = negative_sample(table, make_rng(5), 100, excluded=1)
        assert np.array_equal(a, b)
        assert not np.any(a == 1)

    def test_cumulative_table_shape(self):
        table = make_unigram_table(np.array([5.0, 1.0, 2.0]), 0.75)
        assert np.all(np.diff(table) > 0)
        assert table[-1] == 1.0


class TestTrainSgns:
    def test_cluster_semantics_small(self):
        docs, clusters = two_cluster_docs(200, seed=11)
        cfg = SgnsConfig(dim=16, window=3, negatives=5, epochs=5, seed=9)
        table, history = train_sgns_detailed(docs, cfg)

        def mean_cos(pairs):
            vals = []
            for a, b in pairs:
                va, vb = table.vectors[a], table.vectors[b]
                vals.append(va @ vb / (np.linalg.norm(va) * np.linalg.norm(vb)))
            return float(np.mean(vals))

        intra = [(a, b) for grp in clusters for a in grp for b in grp if a < b]
        inter = [(a, b) for a in clusters[0] for b in clusters[1]]
        assert mean_cos(intra) > mean_cos(inter)
        losses = [h["mean_loss"] for h in history]
        assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))

    def test_epochs_zero_returns_initial_table(self, caplog):
        docs, _ = two_cluster_docs(10, seed=2)
        cfg = SgnsConfig(dim=4, epochs=0, seed=9)
        with caplog.at_level(logging.WARNING):
            table = train_sgns(docs, cfg)
        assert any("epochs=0" in m for m in caplog.messages)
        terms, counts = build_sgns_vocab(docs, 1)
        expect = init_state(terms, counts, cfg, make_rng(9)).input_vectors
        got = np.vstack([table.vectors[t] for t in terms])
        assert np.array_equal(got, expect)

    def test_deterministic_tables(self):
        docs, _ = two_cluster_docs(30, seed=4)
        cfg = SgnsConfig(dim=8, epochs=2, seed=9)
        t1, _ = train_sgns_detailed(docs, cfg)
        t2, _ = train_sgns_detailed(docs, cfg)
        for term in t1.vectors:
            assert np.array_equal(t1.vectors[term], t2.vectors[term])

    def test_initialization_ranges(self):
        docs, _ = two_cluster_docs(10, seed=2)
        terms, counts = build_sgns_vocab(docs, 1)
        cfg = SgnsConfig(dim=25, seed=9)
        state = init_state(terms, counts, cfg, make_rng(9))
        bound = 0.5 / cfg.dim
        assert np.all(state.input_vectors >= -bound)
        assert np.all(state.input_vectors < bound)
        assert np.all(state.output_vectors == 0.0)

    def test_empty_vocab(self):
        with pytest.raises(EmptyVocabulary):
            build_sgns_vocab(make_docs([["rare"]]), min_count=2)

    def test_log_file_jsonl(self, tmp_path):
        docs, _ = two_cluster_docs(20, seed=5)
        log = tmp_path / "train.jsonl"
        train_sgns(docs, SgnsConfig(dim=4, epochs=2, seed=9), log_path=log)
        entries = [json.loads(line) for line in log.read_text().splitlines()]
        assert [e["epoch"] for e in entries] == [0, 1]
        assert all(set(e) == {"epoch", "mean_loss", "pairs"} for e in entries)
