"""Walkthrough-to-sequence conversion through a pluggable completion backend.

The prompt is instantiated byte-for-byte from a fixed template; decoding is
deterministic (temperature 0, top_p 1). Responses must parse as a JSON
array of strings whose every element is a member of the game's closed
action vocabulary; one corrective retry is attempted on vocabulary
violations before the mission is marked failed. Nothing is ever fuzzy
matched into the vocabulary.
"""
from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

import requests

from .corpus import ActionLibrary, ActionSequence, MissionRecord
from .ingest import RateLimiter

SYSTEM_MESSAGE = (
    "You are an expert game analyst who converts free-form mission "
    "descriptions into ordered lists of predefined game actions. "
    "Your task is to break down mission walkthroughs into elementary "
    "action steps and map each step to exactly one predefined action."
)

USER_TEMPLATE = (
    "Predefined actions (choose only from this list):\n"
    "{actions}\n\n"
    "Instruction:\n"
    "1. Read the mission description.\n"
    "2. Break it into elementary action steps.\n"
    "3. Map each step to exactly one predefined action.\n"
    "4. Ignore narrative or non-action details.\n"
    "5. Output ONLY the ordered list of action names as a JSON array.\n\n"
    "Mission description:\n\"{description}\""
)

REPAIR_NOTE = (
    "\n\nNote: your previous answer used names outside the predefined list. "
    "Use only exact names from the list."
)


@dataclass(frozen=True)
class PromptBundle:
    system_message: str
    user_message: str


@dataclass(frozen=True)
class BackendConfig:
    """Decoding and retry settings for one completion backend."""

    model_id: str = "offline-stub"
    temperature: float = 0.0
    top_p: float = 1.0
    timeout_s: float = 30.0
    max_retries: int = 5
    rate_limit_s: float = 5.0

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


@dataclass(frozen=True)
class ExtractionOutcome:
    status: str  # ok | failed
    sequence: ActionSequence | None
    attempts: int
    failure_reason: str | None = None  # malformed-json | non-string-element | unknown-action | backend-error

    @property
    def ok(self) -> bool:
        return self.status == "ok"


class Backend(Protocol):
    """Completion backend: request fields in, raw response text out."""

    def __call__(self, request: dict) -> str: ...


def build_prompt(library: ActionLibrary, walkthrough_text: str) -> PromptBundle:
    """Byte-exact prompt instantiation for one mission."""
    if not library.actions:
        raise ValueError("library must be non-empty")
    if not walkthrough_text:
        raise ValueError("walkthrough text must be non-empty")
    actions_json = json.dumps(library.names(), ensure_ascii=False)
    return PromptBundle(
        system_message=SYSTEM_MESSAGE,
        user_message=USER_TEMPLATE.format(
            actions=actions_json, description=walkthrough_text
        ),
    )


_FENCE_RE = re.compile(r"^```[a-zA-Z0-9]*\n(.*?)\n?```$", re.DOTALL)


def strip_code_fence(text: str) -> str:
    """Remove a wrapping markdown code fence, a common response artifact."""
    stripped = text.strip()
    fenced = _FENCE_RE.match(stripped)
    return fenced.group(1).strip() if fenced else stripped


def parse_response(text: str, library: ActionLibrary) -> tuple[list[str] | None, str | None]:
    """Validate one raw response; returns (steps, failure_reason)."""
    try:
        data = json.loads(strip_code_fence(text))
    except json.JSONDecodeError:
        return None, "malformed-json"
    if not isinstance(data, list):
        return None, "malformed-json"
    if not all(isinstance(item, str) for item in data):
        return None, "non-string-element"
    unknown = [item for item in data if item not in library]
    if unknown:
        return None, "unknown-action"
    return data, None


def extract_sequence(
    mission: MissionRecord,
    library: ActionLibrary,
    backend: Backend,
    config: BackendConfig | None = None,
    limiter: RateLimiter | None = None,
    sleep: Callable[[float], None] = time.sleep,
    log: Callable[[dict], None] | None = None,
) -> ExtractionOutcome:
    """Run the extraction loop for one mission.

    Each attempt sends the prompt (with a corrective note after a
    vocabulary violation), validates the response, and sleeps the rate
    limit between attempts. The attempt budget covers all failure kinds;
    a second vocabulary violation fails immediately.
    """
    config = config or BackendConfig()
    prompt = build_prompt(library, mission.walkthrough_text)
    attempts = 0
    reason: str | None = None
    repaired = False
    while attempts < config.max_retries:
        if limiter is not None:
            limiter.wait()  # gates every call, including across missions
        elif attempts > 0:
            sleep(config.rate_limit_s)  # plain inter-retry sleep
        attempts += 1
        user_message = prompt.user_message + (REPAIR_NOTE if repaired else "")
        request = {
            "system": prompt.system_message,
            "user": user_message,
            "temperature": config.temperature,
            "top_p": config.top_p,
            "timeout": config.timeout_s,
        }
        try:
            response = backend(request)
        except Exception:
            reason = "backend-error"
            if log:
                log({"mission_id": mission.mission_id, "attempt": attempts, "status": "retry", "reason": reason})
            continue
        steps, reason = parse_response(response, library)
        if steps is not None:
            if log:
                log({"mission_id": mission.mission_id, "attempt": attempts, "status": "ok", "reason": None})
            if not steps:
                # valid-but-empty output: mission stays unextracted
                return ExtractionOutcome(status="ok", sequence=None, attempts=attempts)
            return ExtractionOutcome(
                status="ok", sequence=ActionSequence(steps=tuple(steps)), attempts=attempts
            )
        if log:
            log({"mission_id": mission.mission_id, "attempt": attempts, "status": "retry", "reason": reason})
        if reason == "unknown-action":
            if repaired:
                break  # persistent vocabulary violation: do not fuzzy match
            repaired = True
    if log:
        log({"mission_id": mission.mission_id, "attempt": attempts, "status": "failed", "reason": reason})
    return ExtractionOutcome(status="failed", sequence=None, attempts=attempts, failure_reason=reason)


# ---------------------------------------------------------------------------
# Backends

_TOKEN_RE = re.compile(r"[a-z0-9]+")

_STUB_STOP_WORDS = frozenset(
    {"a", "an", "and", "at", "for", "in", "of", "on", "the", "to", "with"}
)


def _keywords(text: str) -> list[str]:
    return [t for t in _TOKEN_RE.findall(text.lower()) if t not in _STUB_STOP_WORDS]


def stub_backend(library: ActionLibrary) -> Backend:
    """Deterministic offline backend for tests and demos.

    Scans the mission description token by token; a token matching any
    keyword of an action's name, category, or description emits that action
    (library order breaks keyword collisions; consecutive duplicates
    collapse). No randomness, so identical inputs yield identical output.
    """
    keyword_map: dict[str, str] = {}
    for action in library.actions:
        for word in _keywords(f"{action.name} {action.category} {action.description}"):
            keyword_map.setdefault(word, action.name)

    def run(request: dict) -> str:
        match = re.search(r"Mission description:\n\"(.*)\"", request["user"], re.DOTALL)
        description = match.group(1) if match else request["user"]
        steps: list[str] = []
        for token in _keywords(description):
            name = keyword_map.get(token)
            if name and (not steps or steps[-1] != name):
                steps.append(name)
        return json.dumps(steps, ensure_ascii=False)

    return run


@dataclass
class HttpBackend:
    """POSTs the wire-contract request to a completion service URL.

    Request body: {system, user, temperature, top_p, timeout}; the response
    body is treated as the raw completion text.
    """

    url: str
    model_id: str = ""
    headers: dict = field(default_factory=dict)

    def __call__(self, request: dict) -> str:
        payload = dict(request)
        if self.model_id:
            payload["model"] = self.model_id
        response = requests.post(
            self.url, json=payload, headers=self.headers, timeout=request["timeout"]
        )
        response.raise_for_status()
        return response.text


# ---------------------------------------------------------------------------
# Extraction log


class ExtractionLog:
    """Append-only JSONL log: one line per attempt."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def __call__(self, entry: dict) -> None:
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(entry, ensure_ascii=False) + "\n")

    def completed_missions(self) -> set[str]:
        """Mission ids with a terminal ok/failed entry (for --resume)."""
        done: set[str] = set()
        if not self.path.exists():
            return done
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            entry = json.loads(line)
            if entry.get("status") in ("ok", "failed"):
                done.add(entry["mission_id"])
        return done
