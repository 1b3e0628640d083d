"""Review CSV ingestion, dataset concatenation, and holdout splitting.

Input files are comma-separated UTF-8 with a header row; column names are
matched case-insensitively against {url, rating, review, collected_by,
label}.  Only the ``review`` column is required.  Labels are the binary
target: 0 = fake/useless, 1 = good/useful.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field

from .errors import BadLabel, DegenerateSplit, MalformedRow, MissingColumn, PathError
from .rng import make_rng

logger = logging.getLogger(__name__)

KNOWN_COLUMNS = ("url", "rating", "review", "collected_by", "label")


@dataclass
class RawReview:
    id: int
    url: str
    rating: float | None
    text: str
    collected_by: str
    label: int | None

    def is_labeled(self) -> bool:
        return self.label is not None


@dataclass
class Dataset:
    reviews: list[RawReview] = field(default_factory=list)
    source_files: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.reviews)

    def labels(self) -> list[int]:
        return [r.label for r in self.reviews if r.label is not None]

    def ids(self) -> list[int]:
        return [r.id for r in self.reviews]


@dataclass(frozen=True)
class SplitSpec:
    test_fraction: float = 0.2
    seed: int = 9
    stratify: bool = False

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise DegenerateSplit(
                f"test_fraction must lie in (0,1), got {self.test_fraction}"
            )


def _parse_rating(raw: str, row_no: int) -> float | None:
    raw = raw.strip()
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        logger.warning("row %d: unparseable rating %r ignored", row_no, raw)
        return None
    if not 1.0 <= value <= 5.0:
        logger.warning("row %d: rating %s outside [1,5] ignored", row_no, value)
        return None
    return value


def _parse_label(raw: str, row_no: int) -> int | None:
    raw = raw.strip()
    if not raw:
        return None
    if raw not in ("0", "1"):
        raise BadLabel(f"row {row_no}: label must be 0 or 1, got {raw!r}")
    return int(raw)


def load_reviews_csv(path, keep_empty: bool = False) -> Dataset:
    """Read one review CSV into a Dataset.

    Rows whose review text is empty after trimming are dropped with a
    warning (they cannot be vectorized); every drop is reported with its
    row number.  Prediction inputs pass keep_empty=True so output rows
    stay aligned with input rows.  A field-count mismatch or a label
    outside {0,1} aborts the load.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise PathError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingColumn(f"{path}: file is empty, no header row")
        columns = {name.strip().lower(): i for i, name in enumerate(header)}
        if "review" not in columns:
            raise MissingColumn(f"{path}: required column 'review' not found")
        n_fields = len(header)

        reviews: list[RawReview] = []
        next_id = 0
        for row_no, row in enumerate(reader, start=2):
            if len(row) != n_fields:
                raise MalformedRow(
                    f"{path}: row {row_no} has {len(row)} fields, expected {n_fields}"
                )

            def get(col: str) -> str:
                idx = columns.get(col)
                return row[idx] if idx is not None else ""

            text = get("review").strip()
            if not text and not keep_empty:
                logger.warning("%s: row %d dropped, empty review text", path, row_no)
                continue
            reviews.append(
                RawReview(
                    id=next_id,
                    url=get("url").strip(),
                    rating=_parse_rating(get("rating"), row_no),
                    text=text,
                    collected_by=get("collected_by").strip(),
                    label=_parse_label(get("label"), row_no),
                )
            )
            next_id += 1
    return Dataset(reviews=reviews, source_files=[str(path)])


def concat_datasets(parts: list[Dataset]) -> Dataset:
    """Concatenate datasets in order, reassigning ids 0..N-1."""
    merged = Dataset()
    for part in parts:
        for review in part.reviews:
            merged.reviews.append(
                RawReview(
                    id=len(merged.reviews),
                    url=review.url,
                    rating=review.rating,
                    text=review.text,
                    collected_by=review.collected_by,
                    label=review.label,
                )
            )
        for src in part.source_files:
            if src not in merged.source_files:
                merged.source_files.append(src)
    return merged


def drop_unlabeled(ds: Dataset) -> Dataset:
    """Keep only labeled rows, preserving order; ids are reassigned."""
    kept = [r for r in ds.reviews if r.is_labeled()]
    if not kept:
        logger.warning("drop_unlabeled: no labeled rows remain")
    out = Dataset(source_files=list(ds.source_files))
    for new_id, review in enumerate(kept):
        out.reviews.append(
            RawReview(
                id=new_id,
                url=review.url,
                rating=review.rating,
                text=review.text,
                collected_by=review.collected_by,
                label=review.label,
            )
        )
    return out


def _fisher_yates(indices: list[int], rng) -> list[int]:
    shuffled = list(indices)
    for i in range(len(shuffled) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        shuffled[i], shuffled[j] = shuffled[j], shuffled[i]
    return shuffled


def train_test_split(ds: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Seeded Fisher-Yates holdout split over the labeled rows.

    The shuffled prefix of ceil(N * test_fraction) rows becomes the test
    set.  Review ids are preserved (not reassigned) so external
    per-document files stay aligned.  Deterministic for a fixed
    (dataset, spec).
    """
    labeled = [r for r in ds.reviews if r.is_labeled()]
    n = len(labeled)
    if n < 2:
        raise DegenerateSplit(f"need at least 2 labeled rows to split, have {n}")
    n_test = math.ceil(n * spec.test_fraction)
    if n_test < 1 or n - n_test < 1:
        raise DegenerateSplit(
            f"test_fraction={spec.test_fraction} leaves an empty side for n={n}"
        )
    rng = make_rng(spec.seed)

    if spec.stratify:
        test_pos: list[int] = []
        train_pos: list[int] = []
        for cls in (0, 1):
            cls_pos = [i for i, r in enumerate(labeled) if r.label == cls]
            if not cls_pos:
                continue
            shuffled = _fisher_yates(cls_pos, rng)
            k = math.ceil(len(shuffled) * spec.test_fraction)
            test_pos.extend(shuffled[:k])
            train_pos.extend(shuffled[k:])
        if not test_pos or not train_pos:
            raise DegenerateSplit("stratified split left one side empty")
    else:
        shuffled = _fisher_yates(list(range(n)), rng)
        test_pos = shuffled[:n_test]
        train_pos = shuffled[n_test:]

    train = Dataset(
        reviews=[labeled[i] for i in train_pos], source_files=list(ds.source_files)
    )
    test = Dataset(
        reviews=[labeled[i] for i in test_pos], source_files=list(ds.source_files)
    )
    return train, test


def write_dataset_csv(ds: Dataset, path) -> None:
    """Emit the canonical merged-dataset CSV."""
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise PathError(f"cannot write {path}: {exc}") from exc
    with fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "url", "rating", "review", "collected_by", "label"])
        for r in ds.reviews:
            writer.writerow(
                [
                    r.id,
                    r.url,
                    "" if r.rating is None else format(r.rating, "g"),
                    r.text,
                    r.collected_by,
                    "" if r.label is None else r.label,
                ]
            )
