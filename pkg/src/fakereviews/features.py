"""Feature extraction: token documents to numeric matrices.

Three representations are produced here: term counts / TF-IDF over a
train-fitted vocabulary, averaged word embeddings, and externally
computed per-document embeddings read from file.  Matrices are dense
float64 throughout; column order is lexicographic so results are
bit-reproducible across runs and platforms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadHeader,
    DimMismatch,
    DuplicateId,
    EmptyVocabulary,
    MissingId,
    NonFiniteValue,
    PathError,
)
from .textprep import TokenDoc

logger = logging.getLogger(__name__)

COUNTS = "counts"
TFIDF = "tfidf"
DENSE = "dense"


@dataclass
class Vocabulary:
    terms: list[str]
    index: dict[str, int]
    doc_freq: np.ndarray  # df per term, aligned with terms
    n_docs: int

    def __len__(self) -> int:
        return len(self.terms)

    def idf(self) -> np.ndarray:
        """Smoothed idf: ln((1+N)/(1+df)) + 1."""
        return np.log((1.0 + self.n_docs) / (1.0 + self.doc_freq)) + 1.0


@dataclass
class FeatureMatrix:
    rows: np.ndarray  # (n_rows, n_cols) float64
    representation: str
    row_ids: list[int]

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def n_cols(self) -> int:
        return self.rows.shape[1]


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)


def build_vocabulary(docs: list[TokenDoc], min_df: int = 1) -> Vocabulary:
    """Collect terms with document frequency >= min_df, lexicographic order."""
    if min_df < 1:
        raise ValueError(f"min_df must be >= 1, got {min_df}")
    df: dict[str, int] = {}
    for doc in docs:
        for term in set(doc.tokens):
            df[term] = df.get(term, 0) + 1
    terms = sorted(t for t, n in df.items() if n >= min_df)
    if not terms:
        raise EmptyVocabulary(
            f"no term reaches min_df={min_df} over {len(docs)} documents"
        )
    return Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        doc_freq=np.array([df[t] for t in terms], dtype=np.int64),
        n_docs=len(docs),
    )


def count_vectorize(docs: list[TokenDoc], vocab: Vocabulary) -> FeatureMatrix:
    """Raw term-occurrence counts; out-of-vocabulary tokens are ignored."""
    m = np.zeros((len(docs), len(vocab)), dtype=np.float64)
    for i, doc in enumerate(docs):
        for token in doc.tokens:
            j = vocab.index.get(token)
            if j is not None:
                m[i, j] += 1.0
    return FeatureMatrix(rows=m, representation=COUNTS,
                         row_ids=[d.review_id for d in docs])


def tfidf_transform(counts: FeatureMatrix, vocab: Vocabulary) -> FeatureMatrix:
    """tf * idf with smoothed idf, then L2 row normalization.

    Zero rows (documents annihilated by cleaning or fully OOV) stay zero.
    """
    if counts.representation != COUNTS:
        raise ValueError(f"expected a counts matrix, got {counts.representation}")
    if counts.n_cols != len(vocab):
        raise DimMismatch(
            f"counts have {counts.n_cols} columns, vocabulary has {len(vocab)}"
        )
    weighted = counts.rows * vocab.idf()[np.newaxis, :]
    norms = np.sqrt((weighted * weighted).sum(axis=1))
    nonzero = norms > 0.0
    weighted[nonzero] /= norms[nonzero, np.newaxis]
    return FeatureMatrix(rows=weighted, representation=TFIDF,
                         row_ids=list(counts.row_ids))


def load_word_embeddings(path) -> EmbeddingTable:
    """Read word2vec text format: a "V D" header, then "token v1 .. vD" rows."""
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise PathError(f"cannot open {path}: {exc}") from exc
    with fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise BadHeader(f"{path}: header must be 'V D', got {header!r}")
        try:
            declared, dim = int(header[0]), int(header[1])
        except ValueError:
            raise BadHeader(f"{path}: header must be two integers, got {header!r}")
        if dim < 1:
            raise BadHeader(f"{path}: dimension must be >= 1, got {dim}")
        vectors: dict[str, np.ndarray] = {}
        for line_no, line in enumerate(fh, start=2):
            parts = line.split()
            if not parts:
                continue
            token, values = parts[0], parts[1:]
            if len(values) != dim:
                raise DimMismatch(
                    f"{path}: line {line_no} has {len(values)} values, expected {dim}"
                )
            vec = np.array([float(v) for v in values], dtype=np.float64)
            if not np.all(np.isfinite(vec)):
                raise NonFiniteValue(f"{path}: line {line_no} has a non-finite value")
            if token in vectors:
                logger.warning("%s: duplicate token %r, last occurrence wins",
                               path, token)
            vectors[token] = vec
    if len(vectors) != declared:
        logger.warning("%s: header declared %d tokens, found %d",
                       path, declared, len(vectors))
    return EmbeddingTable(dim=dim, vectors=vectors)


def save_word_embeddings(table: EmbeddingTable, path) -> None:
    """Emit word2vec text format; floats use shortest round-trip repr."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(table.vectors)} {table.dim}\n")
        for token in table.vectors:
            values = " ".join(repr(float(v)) for v in table.vectors[token])
            fh.write(f"{token} {values}\n")


def average_embed(doc: TokenDoc, table: EmbeddingTable) -> np.ndarray:
    """Unweighted mean of in-vocabulary token vectors; zeros if none."""
    hits = [table.vectors[t] for t in doc.tokens if t in table.vectors]
    if not hits:
        return np.zeros(table.dim, dtype=np.float64)
    return np.mean(hits, axis=0)


def embed_matrix(docs: list[TokenDoc], table: EmbeddingTable) -> FeatureMatrix:
    rows = np.zeros((len(docs), table.dim), dtype=np.float64)
    n_zero = 0
    for i, doc in enumerate(docs):
        rows[i] = average_embed(doc, table)
        if not np.any(rows[i]):
            n_zero += 1
    if n_zero:
        logger.info("%d of %d documents averaged to a zero vector", n_zero, len(docs))
    return FeatureMatrix(rows=rows, representation=DENSE,
                         row_ids=[d.review_id for d in docs])


def load_doc_embeddings(path, expected_ids: list[int]) -> FeatureMatrix:
    """Read per-document vectors from TSV (header ``id v1..vD``).

    Output rows are aligned to expected_ids order; every expected id must
    appear exactly once.
    """
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise PathError(f"cannot open {path}: {exc}") from exc
    with fh:
        header = fh.readline().split("\t")
        if not header or header[0].strip() != "id":
            raise BadHeader(f"{path}: first TSV column must be 'id'")
        dim = len(header) - 1
        if dim < 1:
            raise BadHeader(f"{path}: no vector columns in header")
        by_id: dict[int, np.ndarray] = {}
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != dim + 1:
                raise DimMismatch(
                    f"{path}: line {line_no} has {len(parts) - 1} values, expected {dim}"
                )
            doc_id = int(parts[0])
            if doc_id in by_id:
                raise DuplicateId(f"{path}: id {doc_id} appears more than once")
            vec = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            if not np.all(np.isfinite(vec)):
                raise NonFiniteValue(f"{path}: line {line_no} has a non-finite value")
            by_id[doc_id] = vec
    rows = np.zeros((len(expected_ids), dim), dtype=np.float64)
    for i, doc_id in enumerate(expected_ids):
        if doc_id not in by_id:
            raise MissingId(f"{path}: no vector for document id {doc_id}")
        rows[i] = by_id[doc_id]
    extra = len(by_id) - len(expected_ids)
    if extra > 0:
        logger.warning("%s: %d vectors had no matching document id", path, extra)
    return FeatureMatrix(rows=rows, representation=DENSE, row_ids=list(expected_ids))


@dataclass
class Scaler:
    """Per-column standardization statistics fit on training data."""

    mean: np.ndarray
    std: np.ndarray  # floored at 1e-12

    STD_FLOOR = 1e-12

    @classmethod
    def fit(cls, m: FeatureMatrix) -> "Scaler":
        if m.n_rows < 2:
            raise ValueError(f"standardization needs >= 2 rows, got {m.n_rows}")
        mean = m.rows.mean(axis=0)
        std = m.rows.std(axis=0)  # population std
        return cls(mean=mean, std=np.maximum(std, cls.STD_FLOOR))

    def apply(self, m: FeatureMatrix) -> FeatureMatrix:
        return FeatureMatrix(
            rows=(m.rows - self.mean) / self.std,
            representation=m.representation,
            row_ids=list(m.row_ids),
        )


def standardize(m: FeatureMatrix) -> tuple[FeatureMatrix, Scaler]:
    """Fit a scaler on m and return (scaled matrix, scaler)."""
    scaler = Scaler.fit(m)
    return scaler.apply(m), scaler


def write_matrix_tsv(m: FeatureMatrix, path) -> None:
    """Audit export: id column followed by feature values."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("id\t" + "\t".join(f"v{j + 1}" for j in range(m.n_cols)) + "\n")
        for i, row_id in enumerate(m.row_ids):
            fh.write(str(row_id) + "\t"
                     + "\t".join(repr(float(v)) for v in m.rows[i]) + "\n")


def count_annihilated(docs: list[TokenDoc]) -> int:
    return sum(1 for d in docs if not d.tokens)


class TfidfFeaturizer:
    """Vocabulary + idf fit on training documents only, applied to any set."""

    def __init__(self, min_df: int = 1):
        self.min_df = min_df
        self.vocab_: Vocabulary | None = None

    def fit(self, train_docs: list[TokenDoc]) -> "TfidfFeaturizer":
        self.vocab_ = build_vocabulary(train_docs, min_df=self.min_df)
        return self

    def transform(self, docs: list[TokenDoc]) -> FeatureMatrix:
        if self.vocab_ is None:
            raise ValueError("featurizer is not fit")
        return tfidf_transform(count_vectorize(docs, self.vocab_), self.vocab_)


class WordEmbeddingFeaturizer:
    """Average word vectors per document, standardized with train statistics."""

    def __init__(self, table: EmbeddingTable):
        self.table = table
        self.scaler_: Scaler | None = None

    def fit(self, train_docs: list[TokenDoc]) -> "WordEmbeddingFeaturizer":
        self.scaler_ = Scaler.fit(embed_matrix(train_docs, self.table))
        return self

    def transform(self, docs: list[TokenDoc]) -> FeatureMatrix:
        if self.scaler_ is None:
            raise ValueError("featurizer is not fit")
        return self.scaler_.apply(embed_matrix(docs, self.table))


class DocEmbeddingFeaturizer:
    """External per-document vectors, standardized with train statistics."""

    def __init__(self, matrix: FeatureMatrix):
        self._by_id = {doc_id: matrix.rows[i]
                       for i, doc_id in enumerate(matrix.row_ids)}
        self.dim = matrix.n_cols
        self.scaler_: Scaler | None = None

    @classmethod
    def from_file(cls, path, all_ids: list[int]) -> "DocEmbeddingFeaturizer":
        return cls(load_doc_embeddings(path, all_ids))

    def _select(self, ids: list[int]) -> FeatureMatrix:
        rows = np.zeros((len(ids), self.dim), dtype=np.float64)
        for i, doc_id in enumerate(ids):
            if doc_id not in self._by_id:
                raise MissingId(f"no vector for document id {doc_id}")
            rows[i] = self._by_id[doc_id]
        return FeatureMatrix(rows=rows, representation=DENSE, row_ids=list(ids))

    def fit(self, train_ids: list[int]) -> "DocEmbeddingFeaturizer":
        self.scaler_ = Scaler.fit(self._select(train_ids))
        return self

    def transform(self, ids: list[int]) -> FeatureMatrix:
        if self.scaler_ is None:
            raise ValueError("featurizer is not fit")
        return self.scaler_.apply(self._select(ids))
