"""Text cleaning pipeline: raw review text to normalized token lists.

The default profile runs strip_emoji -> lowercase -> strip_punct ->
tokenize -> strip_stopwords -> stem.  Lemmatization (a dictionary
lookup) is an alternative to stemming, never combined with it: a
dictionary lemmatizer applied to stems is incoherent.
"""

from __future__ import annotations

import json
import logging
import string
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import porter
from .data import RawReview
from .errors import BadPipelineConfig, LemmaFileMissing, StopwordFileMissing

logger = logging.getLogger(__name__)

# the 32 ASCII punctuation characters; wider Unicode punctuation passes
# through (documented limitation)
PUNCTUATION = string.punctuation

# pictographic blocks, variation selector-16 and zero-width joiner
EMOJI_RANGES = (
    (0x1F300, 0x1FAFF),
    (0x2600, 0x27BF),
    (0xFE0F, 0xFE0F),
    (0x200D, 0x200D),
)

TEXT_STEPS = ("strip_emoji", "lowercase", "strip_punct")
TOKEN_STEPS = ("strip_stopwords", "stem", "lemmatize")
DEFAULT_STEPS = ("strip_emoji", "lowercase", "strip_punct", "tokenize",
                 "strip_stopwords", "stem")

_PUNCT_TABLE = str.maketrans({c: " " for c in PUNCTUATION})
_EMOJI_SET = frozenset(
    cp for lo, hi in EMOJI_RANGES for cp in range(lo, hi + 1)
)
_EMOJI_TABLE = {cp: None for cp in _EMOJI_SET}


@dataclass
class TokenDoc:
    review_id: int
    tokens: list[str]


def default_stopword_path() -> Path:
    return Path(resources.files("fakereviews") / "resources" / "stopwords.txt")


def default_lemma_path() -> Path:
    return Path(resources.files("fakereviews") / "resources" / "lemmas.tsv")


def load_stopwords(path) -> frozenset[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StopwordFileMissing(f"cannot read stopword list {path}: {exc}") from exc
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def load_lemma_table(path) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LemmaFileMissing(f"cannot read lemma table {path}: {exc}") from exc
    table: dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LemmaFileMissing(
                f"{path}: line {line_no} is not 'word<TAB>lemma'"
            )
        table[parts[0].strip()] = parts[1].strip()
    return table


@dataclass
class PipelineConfig:
    """Ordered cleaning steps plus the resource files they need.

    Validation enforces: a single tokenize step; text-level steps before
    it, token-level after; at most one of stem/lemmatize.
    """

    steps: tuple[str, ...] = DEFAULT_STEPS
    stopword_list: Path = field(default_factory=default_stopword_path)
    lemma_table: Path = field(default_factory=default_lemma_path)

    def __post_init__(self):
        self.steps = tuple(self.steps)
        known = set(TEXT_STEPS) | set(TOKEN_STEPS) | {"tokenize"}
        for s in self.steps:
            if s not in known:
                raise BadPipelineConfig(f"unknown step {s!r}")
        if self.steps.count("tokenize") != 1:
            raise BadPipelineConfig("pipeline must contain exactly one tokenize step")
        cut = self.steps.index("tokenize")
        for s in self.steps[:cut]:
            if s in TOKEN_STEPS:
                raise BadPipelineConfig(f"{s} must come after tokenize")
        for s in self.steps[cut + 1:]:
            if s in TEXT_STEPS:
                raise BadPipelineConfig(f"{s} must come before tokenize")
        if "stem" in self.steps and "lemmatize" in self.steps:
            raise BadPipelineConfig("stem and lemmatize are mutually exclusive")
        self._stopwords: frozenset[str] | None = None
        self._lemmas: dict[str, str] | None = None

    @classmethod
    def default(cls, use_lemmatize: bool = False) -> "PipelineConfig":
        steps = list(DEFAULT_STEPS)
        if use_lemmatize:
            steps[steps.index("stem")] = "lemmatize"
        return cls(steps=tuple(steps))

    @classmethod
    def with_tables(cls, steps, stopwords: frozenset[str],
                    lemmas: dict[str, str]) -> "PipelineConfig":
        """Build a config around already-loaded tables (bundle restore)."""
        cfg = cls(steps=tuple(steps))
        cfg._stopwords = frozenset(stopwords)
        cfg._lemmas = dict(lemmas)
        return cfg

    @property
    def stopwords(self) -> frozenset[str]:
        if self._stopwords is None:
            self._stopwords = load_stopwords(self.stopword_list)
        return self._stopwords

    @property
    def lemmas(self) -> dict[str, str]:
        if self._lemmas is None:
            self._lemmas = load_lemma_table(self.lemma_table)
        return self._lemmas


def lowercase(text: str) -> str:
    return text.lower()


def strip_punct(text: str) -> str:
    """Replace each ASCII punctuation character with a single space."""
    return text.translate(_PUNCT_TABLE)


def strip_emoji(text: str) -> str:
    return text.translate(_EMOJI_TABLE)


def tokenize(text: str) -> list[str]:
    """Split on runs of Unicode whitespace; never yields empty tokens."""
    return text.split()


def strip_stopwords(tokens: list[str], stopwords: frozenset[str]) -> list[str]:
    return [t for t in tokens if t not in stopwords]


def stem(tokens: list[str]) -> list[str]:
    """Porter-stem lowercase ASCII-alphabetic tokens; others pass through."""
    return [
        porter.stem(t) if t.isascii() and t.isalpha() else t
        for t in tokens
    ]


def lemmatize(tokens: list[str], table: dict[str, str]) -> list[str]:
    return [table.get(t, t) for t in tokens]


def preprocess(review: RawReview, cfg: PipelineConfig) -> TokenDoc:
    """Apply the configured steps in order to one review."""
    value = review.text
    cut = cfg.steps.index("tokenize")
    for step in cfg.steps[:cut]:
        if step == "strip_emoji":
            value = strip_emoji(value)
        elif step == "lowercase":
            value = lowercase(value)
        elif step == "strip_punct":
            value = strip_punct(value)
    tokens = tokenize(value)
    for step in cfg.steps[cut + 1:]:
        if step == "strip_stopwords":
            tokens = strip_stopwords(tokens, cfg.stopwords)
        elif step == "stem":
            tokens = stem(tokens)
        elif step == "lemmatize":
            tokens = lemmatize(tokens, cfg.lemmas)
    return TokenDoc(review_id=review.id, tokens=tokens)


def preprocess_all(reviews, cfg: PipelineConfig) -> list[TokenDoc]:
    docs = [preprocess(r, cfg) for r in reviews]
    annihilated = sum(1 for d in docs if not d.tokens)
    if annihilated:
        logger.info("%d of %d documents annihilated by cleaning", annihilated, len(docs))
    return docs


def write_token_docs(docs: list[TokenDoc], path) -> None:
    """One JSON object per line: {"id": ..., "tokens": [...]}."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps({"id": doc.review_id, "tokens": doc.tokens}) + "\n")


def read_token_docs(path) -> list[TokenDoc]:
    docs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            docs.append(TokenDoc(review_id=int(obj["id"]), tokens=list(obj["tokens"])))
    return docs
