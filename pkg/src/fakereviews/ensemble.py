"""Hard-voting ensembles, evaluation metrics, and the benchmark grid.

The grid evaluates eight model configurations under three text
representations on one shared holdout split.  All per-representation
statistics (vocabulary, idf, word vectors, scaler) are fit on the
training side only and applied unchanged to the test side.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, SplitSpec, train_test_split
from .errors import BadEnsemble, EmptyTestSet, PathError
from .features import (
    DENSE,
    DocEmbeddingFeaturizer,
    EmbeddingTable,
    TfidfFeaturizer,
    WordEmbeddingFeaturizer,
    count_annihilated,
)
from .models import (
    DecisionTree,
    KNearestNeighbors,
    LogisticRegression,
    NaiveBayes,
    RandomForest,
    SupportVectorMachine,
)
from .models.naive_bayes import resolve_variant
from .textprep import PipelineConfig, preprocess_all
from .word2vec import SgnsConfig, train_sgns_detailed

logger = logging.getLogger(__name__)

REPRESENTATIONS = ("tfidf", "word2vec", "doc-emb")
MODEL_COLUMNS = ("rf", "dt", "lr", "vote-rdl", "svm", "nb", "knn", "vote-dsk")

VOTING_MEMBERS = {
    "vote-dsk": ("dt", "svm", "knn"),
    "vote-rdl": ("rf", "dt", "lr"),
}


def vote(member_predictions) -> int:
    """Hard majority vote over binary labels; an exact tie gives 0."""
    preds = list(member_predictions)
    if len(preds) < 2:
        raise BadEnsemble(f"voting needs at least 2 predictions, got {len(preds)}")
    ones = sum(1 for p in preds if p == 1)
    return 1 if ones * 2 > len(preds) else 0


class VotingEnsemble:
    """Fits every member independently on identical data; predicts by vote."""

    def __init__(self, members: list[tuple[str, object]]):
        if len(members) < 2:
            raise BadEnsemble(f"an ensemble needs at least 2 members, got {len(members)}")
        self.members = members

    @property
    def member_names(self) -> list[str]:
        return [name for name, _ in self.members]

    def fit(self, X, y, representation: str | None = None) -> "VotingEnsemble":
        for _, model in self.members:
            if isinstance(model, NaiveBayes):
                model.fit(X, y, representation=representation)
            else:
                model.fit(X, y)
        return self

    def member_predictions(self, X) -> np.ndarray:
        """(n_members, n_rows) matrix of per-member labels."""
        return np.vstack([model.predict(X) for _, model in self.members])

    def predict(self, X) -> np.ndarray:
        votes = self.member_predictions(X)
        return np.array([vote(votes[:, i]) for i in range(votes.shape[1])],
                        dtype=np.int64)


def make_model(name: str, representation: str, seed: int = 9,
               hyper: dict | None = None):
    """Build a model column by name with per-model hyperparameter overrides."""
    hyper = hyper or {}

    def params(key: str, **defaults):
        merged = dict(defaults)
        merged.update(hyper.get(key, {}))
        return merged

    if name == "dt":
        return DecisionTree(**params("dt", max_depth=5, seed=seed))
    if name == "rf":
        return RandomForest(**params("rf", n_trees=100, max_depth=5, seed=seed))
    if name == "lr":
        return LogisticRegression(**params("lr", max_iter=1000, lr=0.1,
                                           l2=1e-4, tol=1e-6, seed=seed))
    if name == "knn":
        return KNearestNeighbors(**params("knn", k=5))
    if name == "svm":
        return SupportVectorMachine(**params("svm", C=1.0, kernel="rbf",
                                             gamma="scale", tol=1e-3,
                                             max_passes=10, seed=seed))
    if name == "nb":
        return NaiveBayes(**params("nb", variant=resolve_variant(representation),
                                   laplace=1.0, var_floor=1e-9))
    if name in VOTING_MEMBERS:
        members = [(m, make_model(m, representation, seed, hyper))
                   for m in VOTING_MEMBERS[name]]
        return VotingEnsemble(members)
    raise ValueError(f"unknown model name {name!r}")


@dataclass
class EvalReport:
    accuracy: float
    confusion: list[list[int]]  # rows = true label, cols = predicted
    precision: dict[int, float]
    recall: dict[int, float]
    f1: dict[int, float]
    n_test: int
    annihilated_docs: int = 0
    undefined_metrics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "confusion": self.confusion,
            "precision": {str(k): v for k, v in self.precision.items()},
            "recall": {str(k): v for k, v in self.recall.items()},
            "f1": {str(k): v for k, v in self.f1.items()},
            "n_test": self.n_test,
            "annihilated_docs": self.annihilated_docs,
            "undefined_metrics": self.undefined_metrics,
        }


def evaluate_predictions(preds, y_true, annihilated_docs: int = 0) -> EvalReport:
    preds = np.asarray(preds, dtype=np.int64)
    y_true = np.asarray(y_true, dtype=np.int64)
    n = len(y_true)
    if n == 0:
        raise EmptyTestSet("cannot evaluate on an empty test set")
    confusion = [[0, 0], [0, 0]]
    for t, p in zip(y_true, preds):
        confusion[int(t)][int(p)] += 1

    precision: dict[int, float] = {}
    recall: dict[int, float] = {}
    f1: dict[int, float] = {}
    undefined: list[str] = []
    for c in (0, 1):
        tp = confusion[c][c]
        predicted = confusion[0][c] + confusion[1][c]
        actual = confusion[c][0] + confusion[c][1]
        if predicted == 0:
            precision[c] = 0.0
            undefined.append(f"precision_{c}")
        else:
            precision[c] = tp / predicted
        if actual == 0:
            recall[c] = 0.0
            undefined.append(f"recall_{c}")
        else:
            recall[c] = tp / actual
        denom = precision[c] + recall[c]
        f1[c] = 0.0 if denom == 0.0 else 2.0 * precision[c] * recall[c] / denom

    accuracy = (confusion[0][0] + confusion[1][1]) / n
    return EvalReport(accuracy=accuracy, confusion=confusion, precision=precision,
                      recall=recall, f1=f1, n_test=n,
                      annihilated_docs=annihilated_docs,
                      undefined_metrics=undefined)


def evaluate(model, X_test, y_test, annihilated_docs: int = 0) -> EvalReport:
    """Fit-free evaluation of a fitted model on held-out data."""
    X_test = np.asarray(X_test)
    if X_test.shape[0] == 0:
        raise EmptyTestSet("cannot evaluate on an empty test set")
    return evaluate_predictions(model.predict(X_test), y_test, annihilated_docs)


@dataclass
class GridReport:
    representations: tuple[str, ...]
    models: tuple[str, ...]
    cells: dict[tuple[str, str], EvalReport]
    split: SplitSpec
    n_train: int
    n_test: int

    def accuracy(self, representation: str, model: str) -> float:
        return self.cells[(representation, model)].accuracy

    def to_csv(self, path) -> None:
        try:
            fh = open(path, "w", newline="", encoding="utf-8")
        except OSError as exc:
            raise PathError(f"cannot write {path}: {exc}") from exc
        with fh:
            writer = csv.writer(fh)
            writer.writerow(["representation", *self.models])
            for rep in self.representations:
                writer.writerow(
                    [rep] + [f"{self.accuracy(rep, m):.6f}" for m in self.models]
                )

    def to_json(self, path) -> None:
        payload = {
            "split": {"test_fraction": self.split.test_fraction,
                      "seed": self.split.seed},
            "n_train": self.n_train,
            "n_test": self.n_test,
            "cells": {
                f"{rep}/{model}": report.to_dict()
                for (rep, model), report in sorted(self.cells.items())
            },
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


@dataclass
class GridSources:
    """Where each representation's vectors come from."""

    word_table: EmbeddingTable | None = None  # None: train in-repo on the train split
    doc_embeddings_path: str | None = None
    sgns_config: SgnsConfig = field(default_factory=SgnsConfig)


@dataclass
class _SplitFeatures:
    X_train: np.ndarray
    X_test: np.ndarray
    tag: str  # representation tag the models see
    annihilated: int  # test docs with no surviving tokens


def _featurize_split(representation: str, sources: GridSources, train_ds: Dataset,
                     test_ds: Dataset, train_docs, test_docs) -> _SplitFeatures:
    """Fit representation statistics on the train side, apply to both."""
    if representation == "tfidf":
        f = TfidfFeaturizer().fit(train_docs)
        return _SplitFeatures(f.transform(train_docs).rows,
                              f.transform(test_docs).rows,
                              "tfidf", count_annihilated(test_docs))
    if representation == "word2vec":
        if sources.word_table is not None:
            table = sources.word_table
        else:
            logger.info("training word vectors on the train split")
            table, _ = train_sgns_detailed(train_docs, sources.sgns_config)
        f = WordEmbeddingFeaturizer(table).fit(train_docs)
        return _SplitFeatures(f.transform(train_docs).rows,
                              f.transform(test_docs).rows,
                              DENSE, count_annihilated(test_docs))
    if representation == "doc-emb":
        if sources.doc_embeddings_path is None:
            raise PathError("the doc-emb representation needs a document-embedding file")
        all_ids = train_ds.ids() + test_ds.ids()
        f = DocEmbeddingFeaturizer.from_file(sources.doc_embeddings_path, all_ids)
        f.fit(train_ds.ids())
        return _SplitFeatures(f.transform(train_ds.ids()).rows,
                              f.transform(test_ds.ids()).rows,
                              DENSE, 0)
    raise ValueError(f"unknown representation {representation!r}")


def _fit_and_score(name: str, feats: _SplitFeatures, y_train, y_test,
                   seed: int, hyper: dict | None) -> EvalReport:
    model = make_model(name, representation=feats.tag, seed=seed, hyper=hyper)
    if isinstance(model, (NaiveBayes, VotingEnsemble)):
        model.fit(feats.X_train, y_train, representation=feats.tag)
    else:
        model.fit(feats.X_train, y_train)
    return evaluate(model, feats.X_test, y_test, annihilated_docs=feats.annihilated)


def evaluate_single(ds: Dataset, split: SplitSpec, representation: str,
                    model_name: str, sources: GridSources,
                    pipeline_cfg: PipelineConfig | None = None, seed: int = 9,
                    hyper: dict | None = None) -> EvalReport:
    """Holdout evaluation of one model under one representation."""
    cfg = pipeline_cfg or PipelineConfig.default()
    train_ds, test_ds = train_test_split(ds, split)
    train_docs = preprocess_all(train_ds.reviews, cfg)
    test_docs = preprocess_all(test_ds.reviews, cfg)
    feats = _featurize_split(representation, sources, train_ds, test_ds,
                             train_docs, test_docs)
    return _fit_and_score(model_name, feats,
                          np.array(train_ds.labels(), dtype=np.int64),
                          np.array(test_ds.labels(), dtype=np.int64),
                          seed, hyper)


def benchmark_grid(ds: Dataset, split: SplitSpec, sources: GridSources,
                   pipeline_cfg: PipelineConfig | None = None, seed: int = 9,
                   hyper: dict | None = None) -> GridReport:
    """Train and evaluate every model under every representation.

    One shared split feeds all 24 cells; vocabulary, idf, embeddings and
    scalers are always fit on (or trained against) the train side only.
    """
    if sources.doc_embeddings_path is None:
        raise PathError("the doc-emb representation needs a document-embedding file")
    cfg = pipeline_cfg or PipelineConfig.default()
    train_ds, test_ds = train_test_split(ds, split)
    train_docs = preprocess_all(train_ds.reviews, cfg)
    test_docs = preprocess_all(test_ds.reviews, cfg)
    y_train = np.array(train_ds.labels(), dtype=np.int64)
    y_test = np.array(test_ds.labels(), dtype=np.int64)

    cells: dict[tuple[str, str], EvalReport] = {}
    for rep in REPRESENTATIONS:
        feats = _featurize_split(rep, sources, train_ds, test_ds,
                                 train_docs, test_docs)
        for name in MODEL_COLUMNS:
            report = _fit_and_score(name, feats, y_train, y_test, seed, hyper)
            cells[(rep, name)] = report
            logger.info("grid cell %s/%s: accuracy %.4f", rep, name, report.accuracy)

    return GridReport(representations=REPRESENTATIONS, models=MODEL_COLUMNS,
                      cells=cells, split=split,
                      n_train=len(train_ds), n_test=len(test_ds))
