"""Spatio-temporal queries over the indexed event corpus: year-binned
series, important-event dots with merging, zoom-grid marker clustering,
and the shared filter predicate."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .extraction import DateKey, EventRecord
from .relevance import ImportanceScores, RecMode, is_important

INDEX_FORMAT_VERSION = 1
CLUSTER_BASE_CELL_DEG = 180.0
ZOOM_MIN = 0
ZOOM_MAX = 18
FULL_EXTENT_YEARS = 100.0
MERGE_WINDOW_AT_FULL_EXTENT = 2.0


class QueryError(Exception):
    pass


class DateMode(str, Enum):
    FREQ = "FREQ_DATE"
    ALL = "ALL_DATE"


@dataclass(frozen=True)
class BBox:
    """Geographic rectangle; corners ordered min -> max."""

    min_lat: float
    min_lon: float
    max_lat: float
    max_lon: float

    def __post_init__(self) -> None:
        if self.min_lat > self.max_lat or self.min_lon > self.max_lon:
            raise QueryError(f"bbox corners out of order: {self}")

    def contains(self, lat: float, lon: float) -> bool:
        return self.min_lat <= lat <= self.max_lat and self.min_lon <= lon <= self.max_lon


@dataclass(frozen=True)
class FilterState:
    """The cross-view filter: time range, region, topics, modes, threshold."""

    year_from: int | None = None
    year_to: int | None = None
    bbox: BBox | None = None
    countries: frozenset[str] | None = None
    topics: frozenset[int] | None = None
    date_mode: DateMode = DateMode.FREQ
    normalized: bool = False
    rec_mode: RecMode = RecMode.TOPIC
    threshold: float = 0.5
    query: str = ""

    def __post_init__(self) -> None:
        if self.year_from is not None and self.year_to is not None and self.year_from > self.year_to:
            raise QueryError(f"year range out of order: [{self.year_from}, {self.year_to}]")
        if not 0.0 <= self.threshold <= 1.0:
            raise QueryError(f"threshold must be in [0, 1], got {self.threshold}")

    @property
    def has_region(self) -> bool:
        return self.bbox is not None or self.countries is not None

    @property
    def unrestricted_spacetime(self) -> bool:
        return self.year_from is None and self.year_to is None and not self.has_region


@dataclass(frozen=True)
class IndexedEvent:
    """Denormalized query row: one anchored-or-not event with its scores."""

    article_id: str
    title: str
    date: DateKey | None
    year: int | None
    all_years: tuple[int, ...]
    lat: float | None
    lon: float | None
    country: str | None
    location: str | None
    topic: int | None
    topic_weight: float
    pagerank: float
    popularity: float

    @property
    def anchored(self) -> bool:
        return self.year is not None and self.lat is not None and self.lon is not None

    def score(self, mode: RecMode) -> float:
        return self.topic_weight if mode is RecMode.TOPIC else self.popularity


@dataclass
class TimeSeries:
    topic: int | None
    bins: dict[int, float]
    date_mode: DateMode
    normalized: bool

    def total(self) -> float:
        return sum(self.bins.values())


@dataclass(frozen=True)
class Dot:
    topic: int
    start_year: int
    end_year: int
    member_ids: tuple[str, ...]

    @property
    def wide(self) -> bool:
        return len(self.member_ids) > 1


@dataclass(frozen=True)
class ClusterMarker:
    lat: float
    lon: float
    count: int
    member_ids: tuple[str, ...]
    zoom: int


def filter_events(
    events: Iterable[IndexedEvent],
    state: FilterState,
    important_only: bool = False,
) -> set[str]:
    """Intersection filter over anchored events.

    Applies time range (representative year), region (bbox point test and/or
    country membership), visible topics, and optionally the importance
    threshold of the active recommendation mode.
    """
    out = set()
    for e in events:
        if not e.anchored:
            continue
        if state.year_from is not None and e.year < state.year_from:
            continue
        if state.year_to is not None and e.year > state.year_to:
            continue
        if state.bbox is not None and not state.bbox.contains(e.lat, e.lon):
            continue
        if state.countries is not None and e.country not in state.countries:
            continue
        if state.topics is not None and e.topic not in state.topics:
            continue
        if important_only and not is_important(e.score(state.rec_mode), state.threshold):
            continue
        out.add(e.article_id)
    return out


def timeline(
    events: Sequence[IndexedEvent],
    state: FilterState,
    topic: int | None = None,
) -> TimeSeries:
    """Year-binned event counts; the summary series when topic is None.

    FREQ_DATE counts each event once at its representative year; ALL_DATE at
    every distinct year mentioned in the article, clipped to the active time
    range. Normalization divides by the series maximum.
    """
    selected = filter_events(events, state)
    bins: dict[int, float] = {}
    for e in events:
        if e.article_id not in selected:
            continue
        if topic is not None and e.topic != topic:
            continue
        if state.date_mode is DateMode.ALL:
            years = set(e.all_years)
        else:
            years = {e.year}
        for y in years:
            if state.year_from is not None and y < state.year_from:
                continue
            if state.year_to is not None and y > state.year_to:
                continue
            bins[y] = bins.get(y, 0.0) + 1.0

    if state.normalized and bins:
        peak = max(bins.values())
        if peak > 0:
            bins = {y: v / peak for y, v in bins.items()}
    return TimeSeries(topic=topic, bins=bins, date_mode=state.date_mode, normalized=state.normalized)


def default_merge_window(events: Sequence[IndexedEvent], state: FilterState) -> float:
    """Dot-merge window: 2 years at a 100-year extent, scaled to the range."""
    if state.year_from is not None and state.year_to is not None:
        span = state.year_to - state.year_from
    else:
        years = [e.year for e in events if e.year is not None]
        span = (max(years) - min(years)) if years else 0
    return MERGE_WINDOW_AT_FULL_EXTENT * (span / FULL_EXTENT_YEARS)


def important_dots(
    events: Sequence[IndexedEvent],
    state: FilterState,
    topic: int,
    merge_window_years: float | None = None,
) -> list[Dot]:
    """Dots for one topic row: filtered important events, adjacent ones merged.

    Events are ordered by representative year and greedily chained while the
    gap to the previous member stays within the merge window; a chain longer
    than one becomes a wide dot.
    """
    if merge_window_years is None:
        merge_window_years = default_merge_window(events, state)
    selected = filter_events(events, state, important_only=True)
    row = sorted(
        (e for e in events if e.article_id in selected and e.topic == topic),
        key=lambda e: (e.year, e.article_id),
    )
    dots: list[Dot] = []
    chain: list[IndexedEvent] = []
    for e in row:
        if chain and e.year - chain[-1].year <= merge_window_years:
            chain.append(e)
            continue
        if chain:
            dots.append(_chain_to_dot(topic, chain))
        chain = [e]
    if chain:
        dots.append(_chain_to_dot(topic, chain))
    return dots


def _chain_to_dot(topic: int, chain: list[IndexedEvent]) -> Dot:
    return Dot(
        topic=topic,
        start_year=chain[0].year,
        end_year=chain[-1].year,
        member_ids=tuple(e.article_id for e in chain),
    )


def cluster_markers(
    events: Sequence[IndexedEvent],
    state: FilterState,
    zoom: int,
    base_cell_deg: float = CLUSTER_BASE_CELL_DEG,
    zoom_min: int = ZOOM_MIN,
    zoom_max: int = ZOOM_MAX,
) -> list[ClusterMarker]:
    """Grid clustering of the filtered events at one zoom level.

    Cell size halves with each zoom step, so cells nest and markers can only
    split on zoom-in. At maximum zoom events are grouped by exact coordinate.
    """
    if not zoom_min <= zoom <= zoom_max:
        raise QueryError(f"zoom {zoom} outside [{zoom_min}, {zoom_max}]")
    selected = filter_events(events, state)
    cells: dict[tuple, list[IndexedEvent]] = {}
    if zoom >= zoom_max:
        for e in events:
            if e.article_id in selected:
                cells.setdefault((e.lat, e.lon), []).append(e)
    else:
        size = base_cell_deg / (2.0 ** zoom)
        for e in events:
            if e.article_id in selected:
                key = (math.floor(e.lat / size), math.floor(e.lon / size))
                cells.setdefault(key, []).append(e)

    markers = []
    for key in sorted(cells):
        members = sorted(cells[key], key=lambda e: e.article_id)
        markers.append(
            ClusterMarker(
                lat=sum(e.lat for e in members) / len(members),
                lon=sum(e.lon for e in members) / len(members),
                count=len(members),
                member_ids=tuple(e.article_id for e in members),
                zoom=zoom,
            )
        )
    return markers


def region_time_span(events: Iterable[IndexedEvent]) -> tuple[int, int] | None:
    """[min, max] representative years of the given events, None when empty."""
    years = [e.year for e in events if e.year is not None]
    if not years:
        return None
    return (min(years), max(years))


def build_index(
    records: Sequence[EventRecord],
    titles: Mapping[str, str],
    topic_of: Mapping[str, int],
    scores: ImportanceScores,
) -> list[IndexedEvent]:
    """Join extraction records, topic assignments and scores into query rows."""
    rows = []
    for rec in sorted(records, key=lambda r: r.article_id):
        rows.append(
            IndexedEvent(
                article_id=rec.article_id,
                title=titles.get(rec.article_id, rec.article_id),
                date=rec.representative_date.key if rec.representative_date else None,
                year=rec.year,
                all_years=tuple(sorted(rec.all_years())),
                lat=rec.geo.lat if rec.geo else None,
                lon=rec.geo.lon if rec.geo else None,
                country=rec.geo.country_code if rec.geo else None,
                location=rec.representative_location,
                topic=topic_of.get(rec.article_id),
                topic_weight=scores.topic_contribution.get(rec.article_id, 0.0),
                pagerank=scores.pagerank.get(rec.article_id, 0.0),
                popularity=scores.popularity.get(rec.article_id, 0.0),
            )
        )
    return rows


def _event_to_json(e: IndexedEvent) -> dict:
    return {
        "article_id": e.article_id,
        "title": e.title,
        "date": list(e.date) if e.date else None,
        "year": e.year,
        "all_years": list(e.all_years),
        "lat": e.lat,
        "lon": e.lon,
        "country": e.country,
        "location": e.location,
        "topic": e.topic,
        "topic_weight": e.topic_weight,
        "pagerank": e.pagerank,
        "popularity": e.popularity,
    }


def _event_from_json(doc: dict) -> IndexedEvent:
    date = tuple(doc["date"]) if doc.get("date") else None
    return IndexedEvent(
        article_id=doc["article_id"],
        title=doc["title"],
        date=date,
        year=doc.get("year"),
        all_years=tuple(doc.get("all_years") or ()),
        lat=doc.get("lat"),
        lon=doc.get("lon"),
        country=doc.get("country"),
        location=doc.get("location"),
        topic=doc.get("topic"),
        topic_weight=doc.get("topic_weight", 0.0),
        pagerank=doc.get("pagerank", 0.0),
        popularity=doc.get("popularity", 0.0),
    )


def save_index(events: Sequence[IndexedEvent], meta: dict, path: str | Path) -> None:
    doc = {
        "format_version": INDEX_FORMAT_VERSION,
        "meta": meta,
        "events": [_event_to_json(e) for e in events],
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_index(path: str | Path) -> tuple[list[IndexedEvent], dict]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    version = doc.get("format_version")
    if version != INDEX_FORMAT_VERSION:
        raise QueryError(f"unsupported index format version {version!r}")
    return [_event_from_json(e) for e in doc["events"]], doc.get("meta", {})
