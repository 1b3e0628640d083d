"""Synthetic labeled review corpora for demos and end-to-end checks.

Reviews are built from class-conditional vocabularies (fake reviews
push hype words, useful reviews push concrete product words) mixed with
shared filler, then rendered with casing, punctuation and the odd emoji
so the cleaning pipeline has real work to do.  A noise rate swaps
individual tokens to the opposite class's vocabulary.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset, RawReview
from .rng import make_rng

FAKE_WORDS = (
    "amazing", "unbelievable", "perfect", "wow", "incredible", "awesome",
    "miracle", "flawless", "revolutionary", "magical", "stunning", "epic",
)

GENUINE_WORDS = (
    "sturdy", "reliable", "comfortable", "durable", "responsive", "crisp",
    "accurate", "quiet", "compact", "efficient", "consistent", "practical",
)

FILLER_WORDS = (
    "phone", "battery", "screen", "camera", "case", "button", "speaker",
    "charger", "cable", "keyboard", "delivery", "price",
)

STOPPERS = ("the", "is", "and", "it", "was", "very", "this", "a")

EMOJI = ("\U0001F600", "\U0001F680", "❤️")


def _render(words: list[str], rng) -> str:
    """Dress a token list up as review text."""
    out = []
    for w in words:
        if rng.random() < 0.30:
            out.append(STOPPERS[int(rng.integers(0, len(STOPPERS)))])
        style = rng.random()
        if style < 0.08:
            w = w.upper()
        elif style < 0.20:
            w = w.capitalize()
        if rng.random() < 0.15:
            w += "!" if rng.random() < 0.7 else ","
        out.append(w)
    text = " ".join(out)
    if rng.random() < 0.10:
        text += " " + EMOJI[int(rng.integers(0, len(EMOJI)))]
    return text


def make_review_corpus(n_reviews: int = 1000, noise: float = 0.15,
                       seed: int = 7) -> Dataset:
    """Generate a labeled corpus; label 1 = genuine/useful, 0 = fake."""
    rng = make_rng(seed)
    class_words = {0: FAKE_WORDS, 1: GENUINE_WORDS}
    reviews: list[RawReview] = []
    for i in range(n_reviews):
        label = int(rng.integers(0, 2))
        length = int(rng.integers(8, 16))
        words = []
        for _ in range(length):
            if rng.random() < 0.35:
                pool = FILLER_WORDS
            else:
                effective = label
                if rng.random() < noise:
                    effective = 1 - label
                pool = class_words[effective]
            words.append(pool[int(rng.integers(0, len(pool)))])
        rating = 5.0 if label == 0 and rng.random() < 0.8 else float(rng.integers(1, 6))
        reviews.append(
            RawReview(
                id=i,
                url=f"http://shop.example/item{i % 40}",
                rating=rating,
                text=_render(words, rng),
                collected_by="teamA" if i % 2 == 0 else "teamB",
                label=label,
            )
        )
    return Dataset(reviews=reviews, source_files=["<synthetic>"])


def write_doc_embedding_file(ds: Dataset, path, dim: int = 16,
                             separation: float = 1.0, noise: float = 1.0,
                             seed: int = 7) -> None:
    """Emit a synthetic per-document embedding TSV aligned to dataset ids.

    Stands in for vectors an external encoder would produce: one class
    mean per label plus gaussian noise.  Unlabeled rows get pure noise.
    """
    rng = make_rng(seed)
    means = {
        0: rng.normal(0.0, separation, size=dim),
        1: rng.normal(0.0, separation, size=dim),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("id\t" + "\t".join(f"v{j + 1}" for j in range(dim)) + "\n")
        for r in ds.reviews:
            base = means[r.label] if r.label is not None else np.zeros(dim)
            vec = base + rng.normal(0.0, noise, size=dim)
            fh.write(str(r.id) + "\t" + "\t".join(repr(float(v)) for v in vec) + "\n")
