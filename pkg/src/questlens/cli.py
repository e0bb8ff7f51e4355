"""Command-line entry points: ingest, extract, validate, irr, analyze,
sample, serve.

Exit codes: 0 success, 1 runtime failure, 2 unknown command or bad
configuration. Machine-readable output via --format json|csv.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .analytics import documents
from .corpus import (
    Corpus,
    CorpusError,
    corpus_stats,
    load_corpus,
    serialize_game,
)
from .evaluation import (
    agreement_stats,
    align_predictions,
    kappa_by_dimension,
    load_gold_set,
    load_rating_grid,
    max_step_delta,
    sample_counts,
    sequence_metrics,
    stratified_sample,
    weighted_kappa,
)
from .extract import (
    BackendConfig,
    ExtractionLog,
    HttpBackend,
    extract_sequence,
    stub_backend,
)
from .ingest import (
    FetchPolicy,
    PageMissingError,
    Rejection,
    SnapshotStore,
    WikiFetcher,
    admit_mission,
    parse_walkthrough,
)
from .jsonio import canonical_dumps, format_float

CONFIG_ENV = "QUESTLENS_CONFIG"


def _load_config(path: str | None) -> dict:
    location = path or os.environ.get(CONFIG_ENV)
    if not location:
        return {}
    return json.loads(Path(location).read_text(encoding="utf-8"))


def _corpus_sources(paths: list[str]) -> list[Path]:
    sources: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            sources.extend(sorted(path.glob("*.json")))
        else:
            sources.append(path)
    return sources


def _load_corpus_arg(args: argparse.Namespace, config: dict) -> Corpus:
    paths = args.corpus or config.get("corpus") or []
    if isinstance(paths, str):
        paths = [paths]
    if not paths:
        print("no corpus given: pass --corpus or set it in the config", file=sys.stderr)
        raise SystemExit(2)
    return load_corpus(_corpus_sources(list(paths)))


def _emit(document: dict, fmt: str, csv_text: str | None = None) -> None:
    if fmt == "csv":
        if csv_text is None:
            raise ValueError("csv output is not available for this command")
        sys.stdout.write(csv_text)
    else:
        print(canonical_dumps(document, indent=2))


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_ingest(args: argparse.Namespace, config: dict) -> int:
    titles = json.loads(Path(args.titles).read_text(encoding="utf-8"))
    policy = FetchPolicy(
        rate_limit_s=args.rate_limit,
        max_retries=args.retries,
        timeout_s=args.timeout,
    )
    fetcher = WikiFetcher(args.endpoint, policy=policy)
    store = SnapshotStore(args.out)
    admitted, rejected, missing = 0, 0, 0
    records = []
    for entry in titles:
        title = entry["title"]
        quest_type = entry.get("quest_type", "Side")
        try:
            result = fetcher.fetch_mission_page(title)
        except PageMissingError:
            missing += 1
            print(f"missing: {title}", file=sys.stderr)
            continue
        store.save(result)
        parsed = parse_walkthrough(result.raw_html)
        outcome = admit_mission(
            parsed.text,
            title,
            quest_type,
            result.snapshot,
            game_id=args.game_id,
        )
        if isinstance(outcome, Rejection):
            rejected += 1
            print(f"rejected ({outcome.reason}): {title}", file=sys.stderr)
            continue
        admitted += 1
        records.append(outcome)
    manifest = {
        "game_id": args.game_id,
        "admitted": admitted,
        "rejected": rejected,
        "missing": missing,
        "missions": [
            {
                "mission_id": r.mission_id,
                "title": r.title,
                "quest_type": r.quest_type,
                "walkthrough_text": r.walkthrough_text,
                "word_count": r.word_count,
                "snapshot": {
                    "revision_id": r.snapshot.revision_id,
                    "snapshot_url": r.snapshot.snapshot_url,
                    "retrieved_at": r.snapshot.retrieved_at,
                    "license": r.snapshot.license,
                    "html_sha256": r.snapshot.html_sha256,
                },
            }
            for r in records
        ],
    }
    out = Path(args.out) / f"{args.game_id}_missions.json"
    out.write_text(canonical_dumps(manifest, indent=2), encoding="utf-8")
    print(f"admitted {admitted}, rejected {rejected}, missing {missing} -> {out}")
    return 0


def _cmd_extract(args: argparse.Namespace, config: dict) -> int:
    corpus = _load_corpus_arg(args, config)
    game = corpus.game(args.game)
    if args.backend == "stub":
        backend = stub_backend(game.library)
    else:
        backend = HttpBackend(url=args.backend, model_id=args.model)
    backend_config = BackendConfig(
        model_id=args.model or "offline-stub",
        max_retries=args.retries,
        rate_limit_s=args.rate_limit,
        timeout_s=args.timeout,
    )
    log = ExtractionLog(args.log) if args.log else None
    done = log.completed_missions() if (log and args.resume) else set()
    updated = []
    extracted = failed = skipped = 0
    for record in game.missions:
        if record.mission_id in done or (record.extracted and args.resume):
            skipped += 1
            updated.append(record)
            continue
        outcome = extract_sequence(record, game.library, backend, backend_config, log=log)
        if outcome.ok and outcome.sequence is not None:
            extracted += 1
            updated.append(replace(record, sequence=outcome.sequence))
        else:
            failed += 1
            updated.append(record)
    new_game = replace(game, missions=tuple(updated))
    out = Path(args.out) if args.out else Path(f"{game.game_id}.json")
    out.write_text(serialize_game(new_game), encoding="utf-8")
    print(f"extracted {extracted}, failed {failed}, skipped {skipped} -> {out}")
    return 0 if failed == 0 else 1


def _cmd_validate(args: argparse.Namespace, config: dict) -> int:
    gold = load_gold_set(args.gold)
    if args.corpus:
        gold.validate_against(load_corpus(_corpus_sources(list(args.corpus))))
    predictions = json.loads(Path(args.pred).read_text(encoding="utf-8"))
    if "predictions" in predictions:
        predictions = predictions["predictions"]
    reports = align_predictions(gold, predictions)
    metrics = sequence_metrics(reports, resamples=args.resamples, seed=args.seed)
    rows = [
        ("precision", metrics.precision),
        ("recall", metrics.recall),
        ("f1", metrics.f1),
        ("exact_match_rate", metrics.exact_match_rate),
        ("mean_ned", metrics.mean_ned),
    ]
    document = {
        "kind": "sequence_metrics",
        "missions": metrics.missions,
        "metrics": {
            name: {"value": value.value, "ci": list(value.ci) if value.ci else None}
            for name, value in rows
        },
    }
    csv_lines = ["metric,value,ci_lo,ci_hi"]
    for name, value in rows:
        lo = format_float(value.ci[0]) if value.ci else ""
        hi = format_float(value.ci[1]) if value.ci else ""
        csv_lines.append(f"{name},{format_float(value.value)},{lo},{hi}")
    _emit(document, args.format, "\n".join(csv_lines) + "\n")
    return 0


def _cmd_irr(args: argparse.Namespace, config: dict) -> int:
    grid = load_rating_grid(args.grid)
    pooled = weighted_kappa(grid, resamples=args.resamples, seed=args.seed)
    dims = kappa_by_dimension(grid, resamples=args.resamples, seed=args.seed)
    stats = agreement_stats(grid)
    deltas = max_step_delta(grid)
    document = {
        "kind": "irr",
        "items": len(grid.items),
        "pooled": {
            "kappa_w": pooled.value,
            "ci": list(pooled.ci) if pooled.ci else None,
            "degenerate": pooled.degenerate,
        },
        "per_dimension": {
            dim: {
                "kappa_w": result.value,
                "ci": list(result.ci) if result.ci else None,
                "degenerate": result.degenerate,
            }
            for dim, result in dims.items()
        },
        "agreement": {
            "exact_rate": stats.exact_rate,
            "off_by_one_rate": stats.off_by_one_rate,
            "mad": stats.mad,
        },
        "max_step_delta_2_items": sorted(
            item for item, delta in deltas.items() if delta >= 2
        ),
    }
    csv_lines = ["scope,kappa_w,ci_lo,ci_hi"]
    csv_lines.append(
        "pooled,{},{},{}".format(
            format_float(pooled.value) if pooled.value is not None else "",
            format_float(pooled.ci[0]) if pooled.ci else "",
            format_float(pooled.ci[1]) if pooled.ci else "",
        )
    )
    for dim, result in dims.items():
        csv_lines.append(
            "{},{},{},{}".format(
                dim,
                format_float(result.value) if result.value is not None else "",
                format_float(result.ci[0]) if result.ci else "",
                format_float(result.ci[1]) if result.ci else "",
            )
        )
    _emit(document, args.format, "\n".join(csv_lines) + "\n")
    return 0


_ANALYZE_BUILDERS = {
    "flows": lambda corpus, args: documents.flow_document(corpus, args.mission, sigma=args.sigma),
    "timeline": lambda corpus, args: documents.timeline_document(corpus, args.mission),
    "storyboard": lambda corpus, args: documents.storyboard_document(corpus, args.mission),
    "summary": lambda corpus, args: documents.summary_document(corpus, args.mission),
    "radar": lambda corpus, args: documents.radar_document(corpus, kind=args.kind, normalize=args.normalize),
    "centroids": lambda corpus, args: documents.centroids_document(corpus, kind=args.kind),
    "pca": lambda corpus, args: documents.pca_document(corpus, kind=args.kind),
    "distance": lambda corpus, args: documents.distance_document(corpus, kind=args.kind),
    "dendrogram": lambda corpus, args: documents.dendrogram_document(corpus, kind=args.kind),
    "motifs": lambda corpus, args: documents.motifs_document(corpus, level=args.level, k=args.k),
    "topk": lambda corpus, args: documents.topk_document(corpus, level=args.level, k=args.k),
}


def _cmd_analyze(args: argparse.Namespace, config: dict) -> int:
    corpus = _load_corpus_arg(args, config)
    if args.what == "stats":
        stats = corpus_stats(corpus)
        document = {
            "kind": "corpus_stats",
            "total_missions": stats.total_missions,
            "extracted_missions": stats.extracted_missions,
            "counts_by_type": stats.counts_by_type,
            "mean_steps": stats.mean_steps,
            "mean_steps_by_type": stats.mean_steps_by_type,
        }
        _emit(document, args.format)
        return 0
    if args.what in ("flows", "timeline", "storyboard", "summary") and not args.mission:
        print(f"analyze {args.what} needs --mission", file=sys.stderr)
        return 2
    document = _ANALYZE_BUILDERS[args.what](corpus, args)
    csv_text = None
    if args.what == "centroids":
        csv_text = documents.centroids_csv(corpus, kind=args.kind)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(canonical_dumps(document, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {out}")
    else:
        _emit(document, args.format, csv_text)
    return 0


def _cmd_sample(args: argparse.Namespace, config: dict) -> int:
    corpus = _load_corpus_arg(args, config)
    sample = stratified_sample(corpus, n=args.n, seed=args.seed)
    document = {
        "kind": "stratified_sample",
        "n": args.n,
        "seed": args.seed,
        "counts_by_type": sample_counts(sample),
        "missions": [
            {
                "mission_id": record.mission_id,
                "game_id": record.game_id,
                "quest_type": record.quest_type,
            }
            for record in sample
        ],
    }
    csv_lines = ["mission_id,game_id,quest_type"]
    csv_lines += [
        f"{r.mission_id},{r.game_id},{r.quest_type}" for r in sample
    ]
    _emit(document, args.format, "\n".join(csv_lines) + "\n")
    return 0


def _cmd_serve(args: argparse.Namespace, config: dict) -> int:
    import uvicorn

    from .service import create_app

    corpus = _load_corpus_arg(args, config)
    origins = tuple(config.get("cors_origins", ["*"]))
    app = create_app(corpus, cors_origins=origins)
    if args.frontend:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=args.frontend, html=True), name="frontend")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="questlens",
        description="Mission-design analytics over action-sequence corpora.",
    )
    parser.add_argument("--version", action="version", version=f"questlens {__version__}")
    parser.add_argument("--config", help=f"config file (or set ${CONFIG_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="fetch mission pages into a snapshot store")
    p.add_argument("--endpoint", required=True, help="MediaWiki api.php URL")
    p.add_argument("--titles", required=True, help="JSON list of {title, quest_type}")
    p.add_argument("--game-id", required=True)
    p.add_argument("--out", required=True, help="snapshot store directory")
    p.add_argument("--rate-limit", type=float, default=5.0)
    p.add_argument("--retries", type=int, default=5)
    p.add_argument("--timeout", type=float, default=30.0)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("extract", help="extract action sequences for one game")
    p.add_argument("--corpus", nargs="+", help="game document files or directory")
    p.add_argument("--game", required=True)
    p.add_argument("--backend", default="stub", help='"stub" or a completion-service URL')
    p.add_argument("--model", default="")
    p.add_argument("--out", help="output game document (default <game>.json)")
    p.add_argument("--resume", action="store_true", help="skip missions already done")
    p.add_argument("--log", help="JSONL attempt log path")
    p.add_argument("--rate-limit", type=float, default=5.0)
    p.add_argument("--retries", type=int, default=5)
    p.add_argument("--timeout", type=float, default=30.0)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("validate", help="gold-set alignment metrics")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--corpus", nargs="+", help="validate gold steps against the corpus libraries")
    p.add_argument("--resamples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("irr", help="two-rater agreement statistics")
    p.add_argument("--grid", required=True)
    p.add_argument("--resamples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_irr)

    p = sub.add_parser("analyze", help="emit chart-data documents")
    p.add_argument("what", choices=sorted(list(_ANALYZE_BUILDERS) + ["stats"]))
    p.add_argument("--corpus", nargs="+")
    p.add_argument("--mission", help="mission id for per-mission documents")
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--kind", choices=("action", "mission"), default="action")
    p.add_argument("--level", choices=("category", "action"), default="category")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out", help="write the document to a file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sample", help="stratified mission sample")
    p.add_argument("--corpus", nargs="+")
    p.add_argument("--n", type=int, default=80)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("serve", help="run the read-only JSON service")
    p.add_argument("--corpus", nargs="+")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--frontend", help="static dashboard bundle to serve at /")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"bad config: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, config)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (CorpusError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
