"""Fetching mission pages from a MediaWiki-compatible API.

The pipeline is: candidate slugs for a title -> polite fetch with retries
and provenance capture -> heuristic walkthrough extraction -> word-count
admission. Analytics never re-fetch; everything downstream keys on the
recorded revision snapshot.
"""
from __future__ import annotations

import hashlib
import json
import re
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from html.parser import HTMLParser
from pathlib import Path
from typing import Callable

import requests

from .corpus import MissionRecord, SnapshotMeta, word_count

MIN_WORDS = 35

# Disambiguation suffixes tried after the exact form; extend via config.
SLUG_SUFFIXES = ("_(Quest)", "_(Mission)", "_(quest)")

# Articles/prepositions whose casing wikis disagree on.
STOP_WORDS = frozenset({"a", "an", "the", "of", "to", "in", "on", "at", "for", "and"})

MAX_CANDIDATES = 16

# Element classes/ids stripped before section extraction. Deliberately a
# module-level config: wikis differ and deployments may need to extend it.
STRIP_CLASS_PATTERNS = (
    "navbox",
    "infobox",
    "advert",
    "advertisement",
    "toc",
    "navigation",
    "sidebar",
    "mw-editsection",
    "reference",
    "gallery",
)

SECTION_PRIORITY = ("Walkthrough", "Quest Stages", "Description")


@dataclass(frozen=True)
class SlugCandidate:
    slug: str
    variant_kind: str  # exact | suffix | case-permuted


def _underscore(title: str) -> str:
    return "_".join(title.split())


def generate_slug_candidates(title: str) -> list[SlugCandidate]:
    """Deterministic candidate slugs: exact, suffixed, then case-permuted.

    Case permutations toggle interior stop words between lowercase and
    capitalized. The list is de-duplicated and capped at MAX_CANDIDATES.
    """
    if not title.strip():
        raise ValueError("title must be non-empty")
    exact = _underscore(title)
    candidates = [SlugCandidate(slug=exact, variant_kind="exact")]
    for suffix in SLUG_SUFFIXES:
        candidates.append(SlugCandidate(slug=exact + suffix, variant_kind="suffix"))

    tokens = title.split()
    stop_positions = [
        i for i, tok in enumerate(tokens) if i > 0 and tok.lower() in STOP_WORDS
    ]
    for mask in range(1, 1 << len(stop_positions)):
        variant = list(tokens)
        for bit, pos in enumerate(stop_positions):
            if mask & (1 << bit):
                tok = tokens[pos]
                variant[pos] = tok.capitalize() if tok == tok.lower() else tok.lower()
        candidates.append(
            SlugCandidate(slug=_underscore(" ".join(variant)), variant_kind="case-permuted")
        )

    seen: set[str] = set()
    unique = []
    for candidate in candidates:
        if candidate.slug not in seen:
            seen.add(candidate.slug)
            unique.append(candidate)
        if len(unique) >= MAX_CANDIDATES:
            break
    return unique


class RateLimiter:
    """Serializes calls so consecutive requests are >= min_interval apart."""

    def __init__(
        self,
        min_interval: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.min_interval = min_interval
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._last: float | None = None

    def wait(self) -> None:
        with self._lock:
            now = self._clock()
            if self._last is not None:
                gap = now - self._last
                if gap < self.min_interval:
                    self._sleep(self.min_interval - gap)
                    now = self._clock()
            self._last = now


@dataclass
class FetchPolicy:
    """Retry/rate configuration for one API endpoint."""

    rate_limit_s: float = 5.0
    max_retries: int = 5
    timeout_s: float = 30.0
    license_label: str = "CC BY-SA 3.0"


class PageMissingError(Exception):
    """The slug does not resolve to a page (try the next candidate)."""


class FetchError(Exception):
    """Transient failures exhausted the retry budget."""


@dataclass(frozen=True)
class FetchResult:
    raw_html: bytes
    final_slug: str
    redirect_chain: tuple[str, ...]
    snapshot: SnapshotMeta


def _default_transport(url: str, params: dict, timeout: float) -> tuple[int, bytes]:
    response = requests.get(url, params=params, timeout=timeout)
    return response.status_code, response.content


class WikiFetcher:
    """Fetches page snapshots through one MediaWiki Action API endpoint.

    Requests to the same endpoint are serialized through a shared rate
    limiter; distinct endpoints may be fetched concurrently. The transport,
    clock, and sleep are injectable so tests can run against stubs.
    """

    def __init__(
        self,
        api_endpoint: str,
        policy: FetchPolicy | None = None,
        transport: Callable[[str, dict, float], tuple[int, bytes]] = _default_transport,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
        now: Callable[[], datetime] = lambda: datetime.now(timezone.utc),
    ):
        self.api_endpoint = api_endpoint
        self.policy = policy or FetchPolicy()
        self._transport = transport
        self._now = now
        self.limiter = RateLimiter(self.policy.rate_limit_s, clock=clock, sleep=sleep)

    def _snapshot_url(self, revision_id: int) -> str:
        base = self.api_endpoint
        if base.endswith("api.php"):
            base = base[: -len("api.php")] + "index.php"
        return f"{base}?oldid={revision_id}"

    def fetch_page(self, slug: str) -> FetchResult:
        """Fetch one slug, following redirects and retrying transient errors."""
        params = {
            "action": "parse",
            "page": slug,
            "format": "json",
            "redirects": 1,
            "prop": "text|revid",
        }
        attempts = 0
        last_error: Exception | None = None
        while attempts < self.policy.max_retries:
            attempts += 1
            self.limiter.wait()
            try:
                status, body = self._transport(
                    self.api_endpoint, params, self.policy.timeout_s
                )
            except Exception as exc:  # connection-level failure: retry
                last_error = exc
                continue
            if status == 404:
                raise PageMissingError(slug)
            if status >= 500 or status == 429:
                last_error = FetchError(f"HTTP {status} for {slug!r}")
                continue
            if status != 200:
                raise FetchError(f"HTTP {status} for {slug!r}")
            try:
                document = json.loads(body.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                last_error = exc
                continue
            if "error" in document:
                code = document["error"].get("code", "")
                if code in ("missingtitle", "pagecannotexist", "invalidtitle"):
                    raise PageMissingError(slug)
                last_error = FetchError(f"API error {code!r} for {slug!r}")
                continue
            parse = document.get("parse", {})
            html = parse.get("text", {}).get("*", "")
            raw = html.encode("utf-8")
            revision_id = int(parse.get("revid", 0))
            redirects = tuple(
                r.get("to", "") for r in parse.get("redirects", []) if r.get("to")
            )
            final_slug = _underscore(parse.get("title", slug))
            snapshot = SnapshotMeta(
                revision_id=revision_id,
                snapshot_url=self._snapshot_url(revision_id),
                retrieved_at=self._now().isoformat(),
                license=self.policy.license_label,
                html_sha256=hashlib.sha256(raw).hexdigest(),
            )
            return FetchResult(
                raw_html=raw,
                final_slug=final_slug,
                redirect_chain=redirects,
                snapshot=snapshot,
            )
        raise FetchError(
            f"gave up on {slug!r} after {attempts} attempts: {last_error}"
        )

    def fetch_mission_page(self, title: str) -> FetchResult:
        """Try candidate slugs in order until one resolves."""
        missing: list[str] = []
        for candidate in generate_slug_candidates(title):
            try:
                return self.fetch_page(candidate.slug)
            except PageMissingError:
                missing.append(candidate.slug)
        raise PageMissingError(f"no candidate slug found for {title!r}: {missing}")


# ---------------------------------------------------------------------------
# Walkthrough extraction


class _Node:
    __slots__ = ("tag", "attrs", "children", "text")

    def __init__(self, tag: str, attrs: dict[str, str]):
        self.tag = tag
        self.attrs = attrs
        self.children: list[_Node] = []
        self.text: list[str] = []


_VOID_TAGS = {"br", "img", "hr", "input", "meta", "link", "area", "base", "col", "embed", "source", "track", "wbr"}


class _TreeBuilder(HTMLParser):
    """Tolerant tree builder; malformed markup never raises."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = _Node("document", {})
        self.stack = [self.root]

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        node = _Node(tag, {k: (v or "") for k, v in attrs})
        self.stack[-1].children.append(node)
        if tag not in _VOID_TAGS:
            self.stack.append(node)

    def handle_endtag(self, tag: str) -> None:
        for idx in range(len(self.stack) - 1, 0, -1):
            if self.stack[idx].tag == tag:
                del self.stack[idx:]
                return
        # stray close tag: ignore

    def handle_data(self, data: str) -> None:
        if data.strip():
            self.stack[-1].text.append(data)


def _is_boilerplate(node: _Node) -> bool:
    blob = " ".join(
        node.attrs.get(key, "") for key in ("class", "id", "role")
    ).lower()
    return any(pattern in blob for pattern in STRIP_CLASS_PATTERNS)


def _node_text(node: _Node) -> str:
    if _is_boilerplate(node) or node.tag in ("script", "style", "table"):
        return ""
    parts = list(node.text)
    for child in node.children:
        child_text = _node_text(child)
        if child_text:
            parts.append(child_text)
    return " ".join(parts)


def _heading_title(node: _Node) -> str:
    text = _node_text(node)
    text = re.sub(r"\[.*?\]", "", text)  # drop edit-link brackets
    return re.sub(r"\s+", " ", text).strip().lower()


def _flatten_sections(root: _Node) -> tuple[dict[str, list[str]], list[str]]:
    """Walk top-level flow, grouping paragraph text under h2/h3 headings."""
    sections: dict[str, list[str]] = {}
    intro: list[str] = []
    current: str | None = None

    def walk(node: _Node) -> None:
        nonlocal current
        for child in node.children:
            if _is_boilerplate(child):
                continue
            if child.tag in ("h1", "h2", "h3"):
                current = _heading_title(child)
                sections.setdefault(current, [])
            elif child.tag in ("p", "li", "dd", "blockquote"):
                text = re.sub(r"\s+", " ", _node_text(child)).strip()
                if text:
                    if current is None:
                        intro.append(text)
                    else:
                        sections[current].append(text)
            else:
                walk(child)

    walk(root)
    return sections, intro


@dataclass(frozen=True)
class ParsedWalkthrough:
    """Extracted text and the section it came from; empty text means the
    page had no usable prose."""

    text: str
    section: str | None


def parse_walkthrough(raw_html: bytes | str) -> ParsedWalkthrough:
    """Extract the highest-priority prose section from page HTML.

    Priority: Walkthrough > Quest Stages > Description > intro paragraphs.
    Navigation boxes, infoboxes, and advertisements are stripped first.
    """
    html = raw_html.decode("utf-8", errors="replace") if isinstance(raw_html, bytes) else raw_html
    builder = _TreeBuilder()
    builder.feed(html)
    sections, intro = _flatten_sections(builder.root)
    for wanted in SECTION_PRIORITY:
        key = wanted.lower()
        if sections.get(key):
            return ParsedWalkthrough(text="\n".join(sections[key]), section=wanted)
    if intro:
        return ParsedWalkthrough(text="\n".join(intro), section=None)
    return ParsedWalkthrough(text="", section=None)


# ---------------------------------------------------------------------------
# Admission


@dataclass(frozen=True)
class Rejection:
    reason: str  # too-short | empty
    title: str
    words: int


def admit_mission(
    text: str,
    title: str,
    quest_type: str,
    snapshot: SnapshotMeta | None,
    mission_id: str | None = None,
    game_id: str = "",
) -> MissionRecord | Rejection:
    """Admit a cleaned walkthrough iff it has at least MIN_WORDS tokens."""
    words = word_count(text)
    if not text.strip():
        return Rejection(reason="empty", title=title, words=0)
    if words < MIN_WORDS:
        return Rejection(reason="too-short", title=title, words=words)
    return MissionRecord(
        mission_id=mission_id or _underscore(title),
        game_id=game_id,
        title=title,
        quest_type=quest_type,
        walkthrough_text=text,
        word_count=words,
        snapshot=snapshot,
    )


# ---------------------------------------------------------------------------
# Snapshot store


class SnapshotStore:
    """One HTML file plus one metadata file per page, keyed by revision id."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def save(self, result: FetchResult) -> Path:
        html_path = self.directory / f"{result.snapshot.revision_id}.html"
        meta_path = self.directory / f"{result.snapshot.revision_id}.json"
        html_path.write_bytes(result.raw_html)
        meta_path.write_text(
            json.dumps(
                {
                    "revision_id": result.snapshot.revision_id,
                    "snapshot_url": result.snapshot.snapshot_url,
                    "retrieved_at": result.snapshot.retrieved_at,
                    "license": result.snapshot.license,
                    "html_sha256": result.snapshot.html_sha256,
                    "final_slug": result.final_slug,
                    "redirect_chain": list(result.redirect_chain),
                },
                ensure_ascii=False,
                indent=2,
            ),
            encoding="utf-8",
        )
        return html_path

    def load_html(self, revision_id: int) -> bytes:
        return (self.directory / f"{revision_id}.html").read_bytes()

    def load_meta(self, revision_id: int) -> dict:
        return json.loads(
            (self.directory / f"{revision_id}.json").read_text(encoding="utf-8")
        )
