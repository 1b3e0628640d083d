"""Fake-review detection with classical classifiers and voting ensembles.

The pipeline: ingest labeled review CSVs, normalize text to tokens,
vectorize (TF-IDF, averaged word vectors trained in-repo, or external
per-document embeddings), fit any of six from-scratch classifiers or a
hard-voting ensemble, and evaluate on a seeded holdout split.
"""

from .bundle import ModelBundle, fit_bundle, load_model, save_model
from .data import (
    Dataset,
    RawReview,
    SplitSpec,
    concat_datasets,
    drop_unlabeled,
    load_reviews_csv,
    train_test_split,
    write_dataset_csv,
)
from .ensemble import (
    EvalReport,
    GridReport,
    GridSources,
    VotingEnsemble,
    benchmark_grid,
    evaluate,
    evaluate_predictions,
    evaluate_single,
    make_model,
    vote,
)
from .features import (
    EmbeddingTable,
    FeatureMatrix,
    Scaler,
    TfidfFeaturizer,
    Vocabulary,
    WordEmbeddingFeaturizer,
    average_embed,
    build_vocabulary,
    count_vectorize,
    load_doc_embeddings,
    load_word_embeddings,
    save_word_embeddings,
    standardize,
    tfidf_transform,
)
from .models import (
    DecisionTree,
    KNearestNeighbors,
    LogisticRegression,
    NaiveBayes,
    RandomForest,
    SupportVectorMachine,
    kernel_eval,
    sigmoid,
)
from .synthetic import make_review_corpus, write_doc_embedding_file
from .textprep import PipelineConfig, TokenDoc, preprocess, preprocess_all
from .word2vec import SgnsConfig, train_sgns

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Dataset", "RawReview", "SplitSpec", "load_reviews_csv", "concat_datasets",
    "drop_unlabeled", "train_test_split", "write_dataset_csv",
    "PipelineConfig", "TokenDoc", "preprocess", "preprocess_all",
    "Vocabulary", "FeatureMatrix", "EmbeddingTable", "Scaler",
    "build_vocabulary", "count_vectorize", "tfidf_transform",
    "load_word_embeddings", "save_word_embeddings", "average_embed",
    "load_doc_embeddings", "standardize",
    "TfidfFeaturizer", "WordEmbeddingFeaturizer",
    "SgnsConfig", "train_sgns",
    "DecisionTree", "RandomForest", "LogisticRegression", "KNearestNeighbors",
    "SupportVectorMachine", "NaiveBayes", "kernel_eval", "sigmoid",
    "VotingEnsemble", "vote", "evaluate", "evaluate_predictions",
    "evaluate_single", "benchmark_grid", "make_model",
    "EvalReport", "GridReport", "GridSources",
    "ModelBundle", "fit_bundle", "save_model", "load_model",
    "make_review_corpus", "write_doc_embedding_file",
]
