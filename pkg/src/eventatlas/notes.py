"""Append-only note storage backed by a line-delimited JSON file."""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, asdict
from datetime import datetime, timezone
from pathlib import Path


class NoteError(Exception):
    pass


@dataclass(frozen=True)
class Note:
    id: int
    article_id: str
    title: str
    keywords: tuple[str, ...]
    body: str
    created_at: str  # UTC ISO-8601, immutable after creation

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["keywords"] = list(self.keywords)
        return doc


class NoteStore:
    """Durable note list; writes are serialized and appended atomically."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._notes: list[Note] = []
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        lines = self.path.read_text(encoding="utf-8").splitlines()
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
                note = Note(
                    id=int(doc["id"]),
                    article_id=doc["article_id"],
                    title=doc["title"],
                    keywords=tuple(doc.get("keywords") or ()),
                    body=doc.get("body", ""),
                    created_at=doc["created_at"],
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                if lineno == len(lines):
                    # torn trailing write from a crashed process; keep the prefix
                    break
                raise NoteError(f"{self.path}:{lineno}: corrupt note record ({exc})") from exc
            self._notes.append(note)

    def create(self, article_id: str, title: str, keywords: list[str], body: str) -> Note:
        with self._lock:
            note = Note(
                id=(self._notes[-1].id + 1) if self._notes else 1,
                article_id=article_id,
                title=title,
                keywords=tuple(keywords),
                body=body,
                created_at=datetime.now(timezone.utc).isoformat(),
            )
            line = json.dumps(note.to_json()) + "\n"
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
            self._notes.append(note)
            return note

    def list(self) -> list[Note]:
        """Notes in newest-first order (created_at, then id)."""
        return sorted(self._notes, key=lambda n: (n.created_at, n.id), reverse=True)

    def get(self, note_id: int) -> Note:
        for note in self._notes:
            if note.id == note_id:
                return note
        raise NoteError(f"unknown note id {note_id}")

    def __len__(self) -> int:
        return len(self._notes)
