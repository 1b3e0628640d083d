"""Command-line interface: ingest, preprocess, embed-train, train,
evaluate, predict, benchmark.

Standard output carries only each subcommand's declared artifact or
summary; diagnostics go to standard error.  Exit codes: 0 success, 1
user error (bad flags, bad files), 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys

from . import bundle as bundle_mod
from . import data as data_mod
from .ensemble import (
    GridSources,
    MODEL_COLUMNS,
    REPRESENTATIONS,
    benchmark_grid,
    evaluate_single,
)
from .errors import FakeReviewsError, PathError
from .features import load_word_embeddings, save_word_embeddings
from .textprep import PipelineConfig, preprocess_all, write_token_docs
from .word2vec import SgnsConfig, train_sgns_detailed

logger = logging.getLogger(__name__)

CONFIG_MODEL_KEYS = ("dt", "rf", "lr", "knn", "svm", "nb")


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise PathError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FakeReviewsError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise FakeReviewsError(f"config {path} must hold a JSON object")
    return cfg


def _resolve(flag_value, config: dict, key: str, default):
    if flag_value is not None:
        return flag_value
    if key in config:
        return config[key]
    return default


def _hyper_overrides(config: dict) -> dict:
    return {k: v for k, v in config.items() if k in CONFIG_MODEL_KEYS}


def _sgns_config(config: dict, seed: int) -> SgnsConfig:
    params = dict(config.get("sgns", {}))
    params.setdefault("seed", seed)
    return SgnsConfig(**params)


def _pipeline_config(config: dict) -> PipelineConfig:
    return PipelineConfig.default(use_lemmatize=bool(config.get("lemmatize", False)))


def _fingerprint(path) -> str:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return ""


def _load_merged(paths) -> data_mod.Dataset:
    return data_mod.concat_datasets([data_mod.load_reviews_csv(p) for p in paths])


def cmd_ingest(args) -> int:
    merged = _load_merged(args.inputs)
    data_mod.write_dataset_csv(merged, args.out)
    print(f"{len(merged)} reviews from {len(args.inputs)} files -> {args.out}")
    return 0


def cmd_preprocess(args) -> int:
    config = _load_config(args.config)
    cfg = _pipeline_config(config)
    if args.lemmatize:
        cfg = PipelineConfig.default(use_lemmatize=True)
    ds = data_mod.load_reviews_csv(args.data)
    docs = preprocess_all(ds.reviews, cfg)
    write_token_docs(docs, args.out)
    annihilated = sum(1 for d in docs if not d.tokens)
    print(f"{len(docs)} documents tokenized ({annihilated} empty) -> {args.out}")
    return 0


def cmd_embed_train(args) -> int:
    config = _load_config(args.config)
    seed = _resolve(args.seed, config, "seed", 9)
    params = dict(config.get("sgns", {}))
    for key in ("dim", "window", "negatives", "epochs", "min_count"):
        value = getattr(args, key.replace("-", "_"))
        if value is not None:
            params[key] = value
    if args.lr is not None:
        params["learning_rate"] = args.lr
    params["seed"] = seed
    cfg = SgnsConfig(**params)

    ds = data_mod.load_reviews_csv(args.data)
    docs = preprocess_all(ds.reviews, _pipeline_config(config))
    table, history = train_sgns_detailed(docs, cfg)
    save_word_embeddings(table, args.out)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            for entry in history:
                fh.write(json.dumps(entry) + "\n")
    final = history[-1]["mean_loss"] if history else float("nan")
    print(f"{len(table.vectors)} vectors (dim {table.dim}), "
          f"final mean pair loss {final:.6f} -> {args.out}")
    return 0


def cmd_train(args) -> int:
    config = _load_config(args.config)
    seed = _resolve(args.seed, config, "seed", 9)
    ds = data_mod.load_reviews_csv(args.data)
    b, train_acc = bundle_mod.fit_bundle(
        ds,
        representation=args.repr,
        model_name=args.model,
        seed=seed,
        hyper=_hyper_overrides(config),
        pipeline_cfg=_pipeline_config(config),
        word_emb_path=args.word_emb,
        doc_emb_path=args.doc_emb,
        sgns_cfg=_sgns_config(config, seed),
        corpus_fingerprint=_fingerprint(args.data),
    )
    bundle_mod.save_model(b, args.out)
    print(f"trained {args.model} ({args.repr}) on {b.metadata['n_train']} rows; "
          f"train accuracy {train_acc:.4f}; bundle -> {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    config = _load_config(args.config)
    seed = _resolve(args.seed, config, "seed", 9)
    test_fraction = _resolve(args.test_fraction, config, "test_fraction", 0.2)
    ds = data_mod.load_reviews_csv(args.data)
    sources = GridSources(
        word_table=load_word_embeddings(args.word_emb) if args.word_emb else None,
        doc_embeddings_path=args.doc_emb,
        sgns_config=_sgns_config(config, seed),
    )
    report = evaluate_single(
        ds,
        data_mod.SplitSpec(test_fraction=test_fraction, seed=seed),
        representation=args.repr,
        model_name=args.model,
        sources=sources,
        pipeline_cfg=_pipeline_config(config),
        seed=seed,
        hyper=_hyper_overrides(config),
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"accuracy {report.accuracy:.4f} on {report.n_test} test rows")
    return 0


def cmd_predict(args) -> int:
    b = bundle_mod.load_model(args.bundle)
    ds = data_mod.load_reviews_csv(args.data, keep_empty=True)
    rows = b.predict_reviews(ds, doc_emb_path=args.doc_emb)
    fieldnames = ["id", "review", "predicted_label"]
    fieldnames += [f"vote_{name}" for name in b.member_names()]
    fieldnames += ["annihilated"]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    print(f"{len(rows)} predictions -> {args.out}")
    return 0


def cmd_benchmark(args) -> int:
    config = _load_config(args.config)
    seed = _resolve(args.seed, config, "seed", 9)
    test_fraction = _resolve(args.test_fraction, config, "test_fraction", 0.2)
    ds = data_mod.load_reviews_csv(args.data)
    sources = GridSources(
        word_table=load_word_embeddings(args.word_emb) if args.word_emb else None,
        doc_embeddings_path=args.doc_emb,
        sgns_config=_sgns_config(config, seed),
    )
    grid = benchmark_grid(
        ds,
        data_mod.SplitSpec(test_fraction=test_fraction, seed=seed),
        sources,
        pipeline_cfg=_pipeline_config(config),
        seed=seed,
        hyper=_hyper_overrides(config),
    )
    grid.to_csv(args.out)
    if args.json:
        grid.to_json(args.json)
    print("representation," + ",".join(MODEL_COLUMNS))
    for rep in REPRESENTATIONS:
        print(rep + "," + ",".join(f"{grid.accuracy(rep, m):.6f}"
                                   for m in MODEL_COLUMNS))
    print(f"grid ({len(grid.cells)} cells, {grid.n_train} train / "
          f"{grid.n_test} test rows) -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fakereviews",
        description="Detect fake product reviews with classical classifiers "
                    "and hard-voting ensembles.",
    )
    parser.add_argument("--verbose", action="store_true",
                        help="log progress details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="merge review CSVs into one dataset")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("preprocess", help="tokenize reviews to JSON lines")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lemmatize", action="store_true",
                   help="replace stemming with dictionary lemmatization")
    p.add_argument("--config")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("embed-train", help="train word vectors on a corpus")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--negatives", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--min-count", type=int, dest="min_count")
    p.add_argument("--seed", type=int)
    p.add_argument("--log", help="write per-epoch JSON-lines training log here")
    p.add_argument("--config")
    p.set_defaults(func=cmd_embed_train)

    p = sub.add_parser("train", help="fit a model and save it as a bundle")
    p.add_argument("--repr", required=True, choices=REPRESENTATIONS)
    p.add_argument("--model", required=True, choices=MODEL_COLUMNS)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--word-emb", dest="word_emb")
    p.add_argument("--doc-emb", dest="doc_emb")
    p.add_argument("--config")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="holdout-evaluate one model")
    p.add_argument("--repr", required=True, choices=REPRESENTATIONS)
    p.add_argument("--model", required=True, choices=MODEL_COLUMNS)
    p.add_argument("--data", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--test-fraction", type=float, dest="test_fraction")
    p.add_argument("--word-emb", dest="word_emb")
    p.add_argument("--doc-emb", dest="doc_emb")
    p.add_argument("--out", help="write the full JSON report here")
    p.add_argument("--config")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("predict", help="label new reviews with a saved bundle")
    p.add_argument("--bundle", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--doc-emb", dest="doc_emb")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("benchmark",
                       help="accuracy grid: all models x all representations")
    p.add_argument("--data", required=True)
    p.add_argument("--word-emb", dest="word_emb",
                   help="word2vec text file; omitted: vectors are trained in-repo")
    p.add_argument("--doc-emb", dest="doc_emb", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json", help="also write per-cell reports as JSON")
    p.add_argument("--seed", type=int)
    p.add_argument("--test-fraction", type=float, dest="test_fraction")
    p.add_argument("--config")
    p.set_defaults(func=cmd_benchmark)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints its own message; normalize bad usage to exit 1
        return 0 if exc.code == 0 else 1
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except FakeReviewsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: internal: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
