"""Self-contained trained-model bundles: save, load, predict.

A bundle carries the pipeline tables, fitted featurizer state, and the
fitted model, so a loaded bundle reproduces predictions bit-for-bit on
any input.  On disk: one JSON header line (magic, format version,
payload checksum and size) followed by a pickle payload; the checksum
catches truncation and corruption.
"""

from __future__ import annotations

import hashlib
import json
import pickle
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .data import Dataset
from .ensemble import VotingEnsemble, make_model
from .errors import CorruptBundle, PathError, VersionMismatch
from .features import (
    DENSE,
    Scaler,
    TfidfFeaturizer,
    WordEmbeddingFeaturizer,
    count_annihilated,
    load_doc_embeddings,
    load_word_embeddings,
)
from .models import NaiveBayes
from .textprep import PipelineConfig, preprocess_all
from .word2vec import SgnsConfig, train_sgns_detailed

FORMAT_VERSION = 1
MAGIC = "fakereviews-bundle"


@dataclass
class ModelBundle:
    format_version: int
    representation: str  # tfidf | word2vec | doc-emb
    model_name: str
    seed: int
    steps: tuple[str, ...]
    stopwords: frozenset
    lemmas: dict
    featurizer: object  # TfidfFeaturizer | WordEmbeddingFeaturizer | Scaler
    model: object
    metadata: dict = field(default_factory=dict)

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig.with_tables(self.steps, self.stopwords, self.lemmas)

    def member_names(self) -> list[str]:
        if isinstance(self.model, VotingEnsemble):
            return self.model.member_names
        return []

    def predict_reviews(self, ds: Dataset, doc_emb_path=None) -> list[dict]:
        """Predict one label per review; rows align with ds.reviews.

        Returns dicts with id, review, predicted_label, annihilated and,
        for voting models, one vote_<member> entry per member.
        """
        cfg = self.pipeline_config()
        docs = preprocess_all(ds.reviews, cfg)
        if self.representation == "doc-emb":
            if doc_emb_path is None:
                raise PathError(
                    "this bundle uses external document embeddings; "
                    "a document-embedding file is required to predict"
                )
            matrix = load_doc_embeddings(doc_emb_path, [r.id for r in ds.reviews])
            X = self.featurizer.apply(matrix).rows
            annihilated = [0] * len(ds.reviews)
        else:
            X = self.featurizer.transform(docs).rows
            annihilated = [0 if d.tokens else 1 for d in docs]

        preds = self.model.predict(X)
        rows = []
        member_votes = None
        if isinstance(self.model, VotingEnsemble):
            member_votes = self.model.member_predictions(X)
        for i, review in enumerate(ds.reviews):
            row = {
                "id": review.id,
                "review": review.text,
                "predicted_label": int(preds[i]),
                "annihilated": annihilated[i],
            }
            if member_votes is not None:
                for m, name in enumerate(self.member_names()):
                    row[f"vote_{name}"] = int(member_votes[m, i])
            rows.append(row)
        return rows


def fit_bundle(ds: Dataset, representation: str, model_name: str,
               seed: int = 9, hyper: dict | None = None,
               pipeline_cfg: PipelineConfig | None = None,
               word_emb_path=None, doc_emb_path=None,
               sgns_cfg: SgnsConfig | None = None,
               corpus_fingerprint: str = "") -> tuple[ModelBundle, float]:
    """Fit a model on every labeled row and wrap it with its pipeline state.

    Returns (bundle, training accuracy).
    """
    cfg = pipeline_cfg or PipelineConfig.default()
    labeled = [r for r in ds.reviews if r.is_labeled()]
    if not labeled:
        raise ValueError("no labeled rows to train on")
    y = np.array([r.label for r in labeled], dtype=np.int64)
    docs = preprocess_all(labeled, cfg)

    if representation == "tfidf":
        featurizer = TfidfFeaturizer().fit(docs)
        X = featurizer.transform(docs).rows
        tag = "tfidf"
    elif representation == "word2vec":
        if word_emb_path is not None:
            table = load_word_embeddings(word_emb_path)
        else:
            table, _ = train_sgns_detailed(docs, sgns_cfg or SgnsConfig(seed=seed))
        featurizer = WordEmbeddingFeaturizer(table).fit(docs)
        X = featurizer.transform(docs).rows
        tag = DENSE
    elif representation == "doc-emb":
        if doc_emb_path is None:
            raise PathError("representation doc-emb requires a document-embedding file")
        matrix = load_doc_embeddings(doc_emb_path, [r.id for r in labeled])
        featurizer = Scaler.fit(matrix)
        X = featurizer.apply(matrix).rows
        tag = DENSE
    else:
        raise ValueError(f"unknown representation {representation!r}")

    model = make_model(model_name, representation=tag, seed=seed, hyper=hyper)
    if isinstance(model, (NaiveBayes, VotingEnsemble)):
        model.fit(X, y, representation=tag)
    else:
        model.fit(X, y)
    train_accuracy = float((model.predict(X) == y).mean())

    bundle = ModelBundle(
        format_version=FORMAT_VERSION,
        representation=representation,
        model_name=model_name,
        seed=seed,
        steps=cfg.steps,
        stopwords=cfg.stopwords,
        lemmas=cfg.lemmas,
        featurizer=featurizer,
        model=model,
        metadata={
            "created_at": datetime.now(timezone.utc).isoformat(),
            "corpus_fingerprint": corpus_fingerprint,
            "n_train": len(labeled),
            "train_accuracy": train_accuracy,
            "annihilated_docs": count_annihilated(docs),
        },
    )
    return bundle, train_accuracy


def save_model(bundle: ModelBundle, path) -> None:
    payload = pickle.dumps(bundle, protocol=pickle.HIGHEST_PROTOCOL)
    header = {
        "magic": MAGIC,
        "format_version": bundle.format_version,
        "sha256": hashlib.sha256(payload).hexdigest(),
        "payload_size": len(payload),
    }
    try:
        with open(path, "wb") as fh:
            fh.write(json.dumps(header).encode("utf-8") + b"\n")
            fh.write(payload)
    except OSError as exc:
        raise PathError(f"cannot write {path}: {exc}") from exc


def load_model(path) -> ModelBundle:
    try:
        with open(path, "rb") as fh:
            header_line = fh.readline()
            payload = fh.read()
    except OSError as exc:
        raise PathError(f"cannot read {path}: {exc}") from exc
    try:
        header = json.loads(header_line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptBundle(f"{path}: unreadable bundle header") from exc
    if header.get("magic") != MAGIC:
        raise CorruptBundle(f"{path}: not a model bundle")
    version = header.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(
            f"{path}: bundle format {version}, this build reads {FORMAT_VERSION}"
        )
    if len(payload) != header.get("payload_size"):
        raise CorruptBundle(
            f"{path}: payload is {len(payload)} bytes, "
            f"header declared {header.get('payload_size')}"
        )
    if hashlib.sha256(payload).hexdigest() != header.get("sha256"):
        raise CorruptBundle(f"{path}: checksum mismatch")
    bundle = pickle.loads(payload)
    if not isinstance(bundle, ModelBundle):
        raise CorruptBundle(f"{path}: payload is not a model bundle")
    return bundle
