"""Article snapshot loading and seed-based event selection."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

EVENT_TYPE = "event"


class CorpusError(Exception):
    """Raised for unreadable snapshots or broken collection invariants."""


@dataclass
class Article:
    id: str
    title: str
    text: str
    categories: frozenset[str] = frozenset()
    ontology_types: frozenset[str] = frozenset()
    link_targets: frozenset[str] = frozenset()

    @property
    def is_event(self) -> bool:
        return EVENT_TYPE in self.ontology_types


@dataclass
class ArticleCollection:
    articles: dict[str, Article]
    seed_ids: frozenset[str] = frozenset()
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        missing = sorted(set(self.seed_ids) - set(self.articles))
        if missing:
            raise CorpusError(f"seed ids not found in snapshot: {missing}")

    def __len__(self) -> int:
        return len(self.articles)


def _parse_record(line: str) -> Article:
    rec = json.loads(line)
    if not isinstance(rec, dict):
        raise ValueError("record is not an object")
    for key in ("id", "title", "text"):
        if not isinstance(rec.get(key), str):
            raise ValueError(f"missing or non-string field {key!r}")
    if not rec["title"]:
        raise ValueError("empty title")
    return Article(
        id=rec["id"],
        title=rec["title"],
        text=rec["text"],
        categories=frozenset(rec.get("categories") or ()),
        ontology_types=frozenset(rec.get("ontology_types") or ()),
        link_targets=frozenset(rec.get("links") or ()),
    )


def load_articles(snapshot_path: str | Path, seed_ids: tuple[str, ...] | list[str] = ()) -> ArticleCollection:
    """Load a line-delimited JSON article snapshot.

    Malformed lines are skipped and reported in the collection's warnings;
    an unreadable file raises CorpusError.
    """
    path = Path(snapshot_path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read snapshot {path}: {exc}") from exc

    articles: dict[str, Article] = {}
    warnings: list[str] = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            art = _parse_record(line)
        except (json.JSONDecodeError, ValueError) as exc:
            warnings.append(f"line {lineno}: skipped malformed record ({exc})")
            continue
        if art.id in articles:
            warnings.append(f"line {lineno}: skipped duplicate id {art.id!r}")
            continue
        articles[art.id] = art

    log.info("loaded %d articles from %s (%d skipped)", len(articles), path, len(warnings))
    return ArticleCollection(articles=articles, seed_ids=frozenset(seed_ids), warnings=warnings)


def seed_categories(coll: ArticleCollection) -> frozenset[str]:
    """Union of the categories of all seed articles."""
    cats: set[str] = set()
    for sid in coll.seed_ids:
        cats.update(coll.articles[sid].categories)
    return frozenset(cats)


def select_event_articles(coll: ArticleCollection, transitive: bool = False) -> frozenset[str]:
    """Select the event-article working set from the seeds.

    An article is selected iff it shares a category with a seed (or is a
    seed itself) and carries the event ontology type. With ``transitive``
    the category frontier is expanded through matched articles until a
    fixpoint is reached (off by default).
    """
    if not coll.seed_ids:
        raise CorpusError("seed set is empty, nothing to expand from")

    frontier = set(seed_categories(coll))
    matched: set[str] = set(coll.seed_ids)
    while True:
        newly = {
            art.id
            for art in coll.articles.values()
            if art.id not in matched and art.categories & frontier
        }
        if not newly:
            break
        matched.update(newly)
        if not transitive:
            break
        before = len(frontier)
        for aid in newly:
            frontier.update(coll.articles[aid].categories)
        if len(frontier) == before:
            break

    return frozenset(aid for aid in matched if coll.articles[aid].is_event)
