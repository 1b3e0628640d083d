import numpy as np
import pytest

from fakereviews.data import Dataset, RawReview
from fakereviews.textprep import TokenDoc


def make_dataset(texts, labels=None, ratings=None) -> Dataset:
    reviews = []
    for i, text in enumerate(texts):
        reviews.append(
            RawReview(
                id=i,
                url=f"http://x/{i}",
                rating=None if ratings is None else ratings[i],
                text=text,
                collected_by="tester",
                label=None if labels is None else labels[i],
            )
        )
    return Dataset(reviews=reviews, source_files=["<memory>"])


def make_docs(token_lists) -> list[TokenDoc]:
    return [TokenDoc(review_id=i, tokens=list(t)) for i, t in enumerate(token_lists)]


def write_csv(path, rows, header="url,rating,review,collected_by,label"):
    lines = [header] + list(rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


def two_cluster_docs(n_sentences: int, seed: int, length: int = 6):
    """Sentences drawn entirely from one of two disjoint 10-token clusters."""
    gen = np.random.Generator(np.random.PCG64(seed))
    clusters = [
        [f"a{i}" for i in range(10)],
        [f"b{i}" for i in range(10)],
    ]
    docs = []
    for s in range(n_sentences):
        words = clusters[s % 2]
        tokens = [words[int(gen.integers(0, len(words)))] for _ in range(length)]
        docs.append(TokenDoc(review_id=s, tokens=tokens))
    return docs, clusters
