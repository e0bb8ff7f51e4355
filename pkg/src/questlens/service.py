"""Read-only JSON service over a loaded corpus.

Every payload is wrapped in an envelope carrying the request params and the
corpus content digest. Responses are rendered through the canonical JSON
writer and cached by (endpoint, params), so two identical requests against
an unchanged corpus return byte-identical bodies.
"""
from __future__ import annotations

import threading
from typing import Callable

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .analytics import documents
from .corpus import Corpus, CorpusError
from .jsonio import canonical_dumps

VALID_KINDS = ("action", "mission")
VALID_LEVELS = ("category", "action")


class BadParams(ValueError):
    pass


def _parse_sigma(raw: str | None) -> float:
    if raw is None:
        return 2.0
    try:
        sigma = float(raw)
    except ValueError:
        raise BadParams(f"sigma must be a number, got {raw!r}")
    if sigma < 0 or sigma > 1000:
        raise BadParams(f"sigma must be in [0, 1000], got {sigma}")
    return sigma


def _parse_flag(raw: str | None, name: str) -> bool:
    if raw is None or raw == "0":
        return False
    if raw == "1":
        return True
    raise BadParams(f"{name} must be 0 or 1, got {raw!r}")


def _parse_choice(raw: str | None, choices: tuple[str, ...], default: str, name: str) -> str:
    if raw is None:
        return default
    if raw not in choices:
        raise BadParams(f"{name} must be one of {choices}, got {raw!r}")
    return raw


def _parse_k(raw: str | None, default: int) -> int:
    if raw is None:
        return default
    try:
        k = int(raw)
    except ValueError:
        raise BadParams(f"k must be an integer, got {raw!r}")
    if k < 1:
        raise BadParams(f"k must be >= 1, got {k}")
    return k


def create_app(corpus: Corpus, cors_origins: tuple[str, ...] = ("*",)) -> FastAPI:
    app = FastAPI(title="questlens", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    digest = corpus.digest()
    cache: dict[tuple[str, tuple[tuple[str, str], ...]], bytes] = {}
    cache_lock = threading.Lock()

    def envelope(request: Request, build: Callable[[], dict]) -> Response:
        params = tuple(sorted(request.query_params.multi_items()))
        key = (request.url.path, params)
        with cache_lock:
            cached = cache.get(key)
        if cached is not None:
            return Response(content=cached, media_type="application/json")
        try:
            data = build()
            body = {
                "status": "ok",
                "data": data,
                "params_echo": {k: v for k, v in params},
                "corpus_digest": digest,
            }
            status = 200
        except BadParams as exc:
            body = {
                "status": "error",
                "error": {"kind": "bad-params", "detail": str(exc)},
                "params_echo": {k: v for k, v in params},
                "corpus_digest": digest,
            }
            status = 400
        except CorpusError as exc:
            body = {
                "status": "error",
                "error": {"kind": "not-found", "detail": str(exc)},
                "params_echo": {k: v for k, v in params},
                "corpus_digest": digest,
            }
            status = 404
        rendered = canonical_dumps(body).encode("utf-8")
        if status == 200:
            with cache_lock:
                cache[key] = rendered
        return Response(content=rendered, media_type="application/json", status_code=status)

    def subset(request: Request) -> Corpus:
        raw = request.query_params.get("games")
        if raw is None or raw == "":
            return corpus
        requested = [g for g in raw.split(",") if g]
        return corpus.subset(requested)

    @app.get("/games")
    def games(request: Request) -> Response:
        return envelope(request, lambda: documents.games_document(corpus))

    @app.get("/games/{game_id}/actions")
    def game_actions(game_id: str, request: Request) -> Response:
        return envelope(request, lambda: documents.actions_document(corpus, game_id))

    @app.get("/games/{game_id}/missions")
    def game_missions(game_id: str, request: Request) -> Response:
        return envelope(request, lambda: documents.missions_document(corpus, game_id))

    @app.get("/missions/{mission_id}/flow")
    def mission_flow(mission_id: str, request: Request) -> Response:
        def build() -> dict:
            sigma = _parse_sigma(request.query_params.get("sigma"))
            return documents.flow_document(corpus, mission_id, sigma=sigma)

        return envelope(request, build)

    @app.get("/missions/{mission_id}/timeline")
    def mission_timeline(mission_id: str, request: Request) -> Response:
        return envelope(request, lambda: documents.timeline_document(corpus, mission_id))

    @app.get("/missions/{mission_id}/storyboard")
    def mission_storyboard(mission_id: str, request: Request) -> Response:
        return envelope(request, lambda: documents.storyboard_document(corpus, mission_id))

    @app.get("/missions/{mission_id}/summary")
    def mission_summary(mission_id: str, request: Request) -> Response:
        return envelope(request, lambda: documents.summary_document(corpus, mission_id))

    @app.get("/compare/radar")
    def compare_radar(request: Request) -> Response:
        def build() -> dict:
            normalize = _parse_flag(request.query_params.get("normalize"), "normalize")
            kind = _parse_choice(request.query_params.get("kind"), VALID_KINDS, "mission", "kind")
            return documents.radar_document(subset(request), kind=kind, normalize=normalize)

        return envelope(request, build)

    @app.get("/compare/centroids")
    def compare_centroids(request: Request) -> Response:
        def build() -> dict:
            kind = _parse_choice(request.query_params.get("kind"), VALID_KINDS, "action", "kind")
            return documents.centroids_document(subset(request), kind=kind)

        return envelope(request, build)

    @app.get("/compare/pca")
    def compare_pca(request: Request) -> Response:
        def build() -> dict:
            kind = _parse_choice(request.query_params.get("kind"), VALID_KINDS, "action", "kind")
            sub = subset(request)
            if len(sub.games) < 2:
                raise BadParams("pca needs at least 2 games")
            return documents.pca_document(sub, kind=kind)

        return envelope(request, build)

    @app.get("/compare/distance")
    def compare_distance(request: Request) -> Response:
        def build() -> dict:
            kind = _parse_choice(request.query_params.get("kind"), VALID_KINDS, "action", "kind")
            return documents.distance_document(subset(request), kind=kind)

        return envelope(request, build)

    @app.get("/compare/dendrogram")
    def compare_dendrogram(request: Request) -> Response:
        def build() -> dict:
            kind = _parse_choice(request.query_params.get("kind"), VALID_KINDS, "action", "kind")
            sub = subset(request)
            if len(sub.games) < 2:
                raise BadParams("dendrogram needs at least 2 games")
            return documents.dendrogram_document(sub, kind=kind)

        return envelope(request, build)

    @app.get("/compare/motifs")
    def compare_motifs(request: Request) -> Response:
        def build() -> dict:
            level = _parse_choice(request.query_params.get("level"), VALID_LEVELS, "category", "level")
            k = _parse_k(request.query_params.get("k"), 3)
            return documents.motifs_document(subset(request), level=level, k=k)

        return envelope(request, build)

    @app.get("/compare/topk")
    def compare_topk(request: Request) -> Response:
        def build() -> dict:
            level = _parse_choice(request.query_params.get("level"), VALID_LEVELS, "category", "level")
            k = _parse_k(request.query_params.get("k"), 5)
            return documents.topk_document(subset(request), level=level, k=k)

        return envelope(request, build)

    return app
