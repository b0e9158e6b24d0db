"""Timed typing-session scoring: edit distance and penalized CPM."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

# Every unit of edit distance costs one extra second of typing time.
TYPO_PENALTY_S = 1.0


class InvalidRecord(ValueError):
    """A session record that cannot be scored."""


class SessionFileError(ValueError):
    """Session file is malformed."""


@dataclass(frozen=True)
class SessionRecord:
    target: str
    typed: str
    elapsed_ms: int
    layout_id: str = ""
    subject_id: str = ""
    timestamp: str = ""


@dataclass(frozen=True)
class SessionScore:
    edit_distance: int
    effective_seconds: float
    cpm: float


def levenshtein(a: str, b: str) -> int:
    """Minimal number of single-character inserts, deletes and substitutions."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[-1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def score_session(rec: SessionRecord) -> SessionScore:
    """CPM over target length, with elapsed time stretched by typo penalties."""
    if rec.elapsed_ms <= 0:
        raise InvalidRecord("elapsed_ms must be positive")
    if not rec.target:
        raise InvalidRecord("target text is empty")
    distance = levenshtein(rec.target, rec.typed)
    effective = rec.elapsed_ms / 1000.0 + distance * TYPO_PENALTY_S
    return SessionScore(distance, effective, 60.0 * len(rec.target) / effective)


def load_session_file(path: str | Path) -> tuple[str, str, list[SessionRecord]]:
    """Read a session file: {layout_id, subject_id, sessions: [...]}."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SessionFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("sessions"), list):
        raise SessionFileError("missing 'sessions' list")
    layout_id = str(doc.get("layout_id", ""))
    subject_id = str(doc.get("subject_id", ""))
    records = []
    for entry in doc["sessions"]:
        try:
            records.append(
                SessionRecord(
                    target=entry["target"],
                    typed=entry["typed"],
                    elapsed_ms=int(entry["elapsed_ms"]),
                    layout_id=layout_id,
                    subject_id=subject_id,
                    timestamp=str(entry.get("timestamp", "")),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SessionFileError(f"bad session entry {entry!r}") from exc
    return layout_id, subject_id, records


def save_session_file(
    path: str | Path, layout_id: str, subject_id: str, records: list[SessionRecord]
) -> None:
    doc = {
        "layout_id": layout_id,
        "subject_id": subject_id,
        "sessions": [
            {
                "target": r.target,
                "typed": r.typed,
                "elapsed_ms": r.elapsed_ms,
                "timestamp": r.timestamp,
            }
            for r in records
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
