"""Skip-gram word-embedding training with negative sampling.

Single-threaded, fully seeded: identical configs give bit-identical
tables.  Input vectors start uniform in [-0.5/dim, 0.5/dim), output
vectors at zero; the learning rate decays linearly per corpus position
down to a 1e-4 floor.  Negatives are drawn from the unigram
distribution raised to a configurable power via inverse-CDF lookup.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .errors import EmptyVocabulary
from .features import EmbeddingTable
from .rng import make_rng
from .textprep import TokenDoc

logger = logging.getLogger(__name__)

MIN_LEARNING_RATE = 1e-4


@dataclass(frozen=True)
class SgnsConfig:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    min_count: int = 1
    seed: int = 9
    unigram_power: float = 0.75

    def __post_init__(self):
        if self.dim < 1 or self.window < 1 or self.negatives < 1:
            raise ValueError("dim, window and negatives must all be >= 1")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")


@dataclass
class SgnsState:
    terms: list[str]
    input_vectors: np.ndarray   # (V, dim)
    output_vectors: np.ndarray  # (V, dim)
    unigram_table: np.ndarray   # cumulative distribution, ends at 1


def build_sgns_vocab(docs: list[TokenDoc], min_count: int) -> tuple[list[str], np.ndarray]:
    """Terms with count >= min_count in lexicographic order, plus counts."""
    counts: dict[str, int] = {}
    for doc in docs:
        for token in doc.tokens:
            counts[token] = counts.get(token, 0) + 1
    terms = sorted(t for t, n in counts.items() if n >= min_count)
    if not terms:
        raise EmptyVocabulary(f"no token reaches min_count={min_count}")
    return terms, np.array([counts[t] for t in terms], dtype=np.float64)


def make_unigram_table(counts: np.ndarray, power: float) -> np.ndarray:
    """Cumulative distribution proportional to count**power."""
    weights = counts ** power
    cum = np.cumsum(weights / weights.sum())
    cum[-1] = 1.0
    return cum


def init_state(terms: list[str], counts: np.ndarray, cfg: SgnsConfig, rng) -> SgnsState:
    v = len(terms)
    input_vectors = (rng.random((v, cfg.dim)) - 0.5) / cfg.dim
    return SgnsState(
        terms=terms,
        input_vectors=input_vectors,
        output_vectors=np.zeros((v, cfg.dim), dtype=np.float64),
        unigram_table=make_unigram_table(counts, cfg.unigram_power),
    )


def negative_sample(unigram_table: np.ndarray, rng, k: int, excluded: int | None) -> np.ndarray:
    """Draw k token indices by inverse-CDF lookup, redrawing on excluded."""
    out = np.empty(k, dtype=np.int64)
    for i in range(k):
        while True:
            idx = int(np.searchsorted(unigram_table, rng.random(), side="right"))
            if excluded is None or idx != excluded:
                break
        out[i] = idx
    return out


def _doc_positions(doc: TokenDoc, index: dict[str, int]) -> list[int]:
    # out-of-vocabulary tokens are removed before windows are formed
    return [index[t] for t in doc.tokens if t in index]


def build_training_pairs(docs: list[TokenDoc], window: int, rng,
                         index: dict[str, int]):
    """Yield (center, context) index pairs with a dynamic window.

    Each position draws its effective window size uniformly from
    1..window, so nearer contexts are sampled more often; the stream is
    deterministic under a seeded rng.
    """
    for doc in docs:
        seq = _doc_positions(doc, index)
        for pos in range(len(seq)):
            b = int(rng.integers(1, window + 1))
            for pos2 in range(max(0, pos - b), min(len(seq), pos + b + 1)):
                if pos2 != pos:
                    yield seq[pos], seq[pos2]


def sgns_step(state: SgnsState, pair: tuple[int, int],
              negatives: np.ndarray, lr: float) -> float:
    """One gradient step on a (center, context) pair; returns the pair loss.

    The update is simultaneous: gradients for the center input vector
    and the touched output vectors are both evaluated at the incoming
    state.  Updates mutate the state in place.
    """
    center, context = pair
    out_idx = np.empty(len(negatives) + 1, dtype=np.int64)
    out_idx[0] = context
    out_idx[1:] = negatives
    labels = np.zeros(len(out_idx))
    labels[0] = 1.0

    v = state.input_vectors[center].copy()
    u = state.output_vectors[out_idx]
    scores = u @ v
    # -ln sigmoid(s) = softplus(-s); -ln sigmoid(-s) = softplus(s)
    loss = float(np.logaddexp(0.0, np.where(labels > 0, -scores, scores)).sum())
    if lr == 0.0:
        return loss
    g = 1.0 / (1.0 + np.exp(-scores)) - labels
    state.input_vectors[center] -= lr * (g @ u)
    np.add.at(state.output_vectors, out_idx, -lr * np.outer(g, v))
    return loss


def train_sgns_detailed(docs: list[TokenDoc],
                        cfg: SgnsConfig) -> tuple[EmbeddingTable, list[dict]]:
    """Train embeddings and return (table, per-epoch log entries)."""
    terms, counts = build_sgns_vocab(docs, cfg.min_count)
    rng = make_rng(cfg.seed)
    state = init_state(terms, counts, cfg, rng)
    index = {t: i for i, t in enumerate(terms)}

    if cfg.epochs == 0:
        logger.warning("epochs=0: returning the untrained random table")
        return _to_table(state, cfg.dim), []

    sequences = [_doc_positions(d, index) for d in docs]
    total_positions = cfg.epochs * sum(len(s) for s in sequences)
    lr0 = cfg.learning_rate
    processed = 0
    history: list[dict] = []

    for epoch in range(cfg.epochs):
        epoch_loss = 0.0
        epoch_pairs = 0
        for seq in sequences:
            for pos in range(len(seq)):
                lr = max(
                    MIN_LEARNING_RATE,
                    lr0 + (MIN_LEARNING_RATE - lr0) * (processed / total_positions),
                )
                processed += 1
                b = int(rng.integers(1, cfg.window + 1))
                for pos2 in range(max(0, pos - b), min(len(seq), pos + b + 1)):
                    if pos2 == pos:
                        continue
                    pair = (seq[pos], seq[pos2])
                    negs = negative_sample(state.unigram_table, rng,
                                           cfg.negatives, excluded=pair[1])
                    epoch_loss += sgns_step(state, pair, negs, lr)
                    epoch_pairs += 1
        mean_loss = epoch_loss / epoch_pairs if epoch_pairs else 0.0
        history.append({"epoch": epoch, "mean_loss": mean_loss, "pairs": epoch_pairs})
        logger.info("epoch %d: mean pair loss %.6f over %d pairs",
                    epoch, mean_loss, epoch_pairs)
    return _to_table(state, cfg.dim), history


def _to_table(state: SgnsState, dim: int) -> EmbeddingTable:
    return EmbeddingTable(
        dim=dim,
        vectors={t: state.input_vectors[i].copy() for i, t in enumerate(state.terms)},
    )


def train_sgns(docs: list[TokenDoc], cfg: SgnsConfig,
               log_path=None) -> EmbeddingTable:
    """Train embeddings; optionally write the per-epoch log as JSON lines."""
    table, history = train_sgns_detailed(docs, cfg)
    if log_path is not None:
        with open(log_path, "w", encoding="utf-8") as fh:
            for entry in history:
                fh.write(json.dumps(entry) + "\n")
    return table
