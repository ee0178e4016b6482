"""HTTP query service over the built index, plus search and list sorting.

All read endpoints are stateless: the cross-view filter travels as query
parameters on every request. See docs/api.md for the wire contract.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware

from . import index as idx
from .corpus import Article
from .extraction import DateKey
from .gazetteer import Gazetteer
from .notes import NoteStore
from .relevance import (
    ClickstreamGraph,
    DocVector,
    RecMode,
    compute_idf,
    embed_documents,
    embed_query,
    is_important,
    related_articles,
)
from .schemas import SCHEMA_VERSION

log = logging.getLogger(__name__)

SORT_KEYS = ("date", "importance", "topic")


class ServiceError(Exception):
    pass


def format_date(date: DateKey | None) -> str | None:
    """Partial ISO rendering: 1914, 1914-06 or 1914-06-28."""
    if date is None:
        return None
    year, month, day = date
    if month is None:
        return f"{year:04d}"
    if day is None:
        return f"{year:04d}-{month:02d}"
    return f"{year:04d}-{month:02d}-{day:02d}"


@dataclass
class ListEntry:
    article_id: str
    title: str
    thumbnail: str | None
    date: DateKey | None
    year: int | None
    topic: int | None
    topic_weight: float
    pagerank: float
    importance: float  # score under the request's active mode
    highlighted: bool

    def to_json(self) -> dict:
        return {
            "article_id": self.article_id,
            "title": self.title,
            "thumbnail": self.thumbnail,
            "date": format_date(self.date),
            "year": self.year,
            "topic": self.topic,
            "topic_weight": self.topic_weight,
            "pagerank": self.pagerank,
            "importance": self.importance,
            "highlighted": self.highlighted,
        }


def make_entry(e: idx.IndexedEvent, mode: RecMode, threshold: float) -> ListEntry:
    score = e.score(mode)
    return ListEntry(
        article_id=e.article_id,
        title=e.title,
        thumbnail=None,
        date=e.date,
        year=e.year,
        topic=e.topic,
        topic_weight=e.topic_weight,
        pagerank=e.pagerank,
        importance=score,
        highlighted=is_important(score, threshold),
    )


def _date_key(date: DateKey | None) -> tuple:
    # partial dates sort before fuller ones in the same year/month
    if date is None:
        return (True, ())
    year, month, day = date
    return (False, (year, month or 0, day or 0))


def sort_list(entries: Sequence[ListEntry], key: str) -> list[ListEntry]:
    """Stable sort: date ascending, importance descending, topic by index then date.

    Entries without a date (or topic) sort after the rest.
    """
    if key not in SORT_KEYS:
        raise ServiceError(f"unknown sort key {key!r}")
    entries = list(entries)
    if key == "date":
        return sorted(entries, key=lambda e: _date_key(e.date))
    if key == "importance":
        return sorted(entries, key=lambda e: -e.importance)
    return sorted(
        entries,
        key=lambda e: (e.topic is None, e.topic if e.topic is not None else 0, _date_key(e.date)),
    )


def search(
    query: str,
    vectors: Mapping[str, DocVector],
    titles: Mapping[str, str],
    idf: Mapping[str, float],
) -> list[tuple[str, float]]:
    """Rank documents against a free-text query.

    Scores are TF-IDF cosine (query embedded with the corpus idf); any
    article whose title contains the query (case-insensitive) ranks above
    all body-only matches. Ties break by id.
    """
    if not query.strip():
        return []
    probe = embed_query(query, idf)
    needle = query.strip().lower()
    hits = []
    for aid, vec in vectors.items():
        score = probe.dot(vec)
        title_hit = needle in titles.get(aid, "").lower()
        if score > 0.0 or title_hit:
            hits.append((aid, score, title_hit))
    hits.sort(key=lambda h: (not h[2], -h[1], h[0]))
    return [(aid, score) for aid, score, _ in hits]


class Engine:
    """Everything a running service needs, loaded once and immutable
    (except the note store)."""

    def __init__(
        self,
        events: list[idx.IndexedEvent],
        meta: dict,
        articles: Mapping[str, Article],
        graph: ClickstreamGraph,
        notes: NoteStore,
        gazetteer: Gazetteer | None = None,
        cluster_base_deg: float = idx.CLUSTER_BASE_CELL_DEG,
        zoom_min: int = idx.ZOOM_MIN,
        zoom_max: int = idx.ZOOM_MAX,
        merge_window_years: float | None = None,
    ):
        self.events = events
        self.by_id = {e.article_id: e for e in events}
        self.meta = meta
        self.articles = articles
        self.graph = graph
        self.notes = notes
        self.gazetteer = gazetteer
        self.cluster_base_deg = cluster_base_deg
        self.zoom_min = zoom_min
        self.zoom_max = zoom_max
        self.merge_window_years = merge_window_years
        self.titles = {e.article_id: e.title for e in events}
        texts = {
            e.article_id: articles[e.article_id].text
            for e in events
            if e.article_id in articles
        }
        self.idf = compute_idf(texts)
        self.vectors = embed_documents(texts)

    def filtered_events(self, state: idx.FilterState) -> list[idx.IndexedEvent]:
        selected = idx.filter_events(self.events, state)
        out = [e for e in self.events if e.article_id in selected]
        if state.unrestricted_spacetime:
            # unanchored events stay listable while no space/time filter is active
            out.extend(
                e for e in self.events
                if not e.anchored and (state.topics is None or e.topic in state.topics)
            )
        return out


def _opt_topic(request: Request) -> int | None:
    raw = request.query_params.get("topic")
    if raw in (None, ""):
        return None
    try:
        return int(raw)
    except ValueError:
        raise HTTPException(400, "topic must be an integer")


def _parse_filter(request: Request) -> idx.FilterState:
    q = request.query_params

    def intp(name: str) -> int | None:
        raw = q.get(name)
        if raw in (None, ""):
            return None
        try:
            return int(raw)
        except ValueError:
            raise HTTPException(400, f"parameter {name!r} must be an integer")

    bbox = None
    if q.get("bbox"):
        parts = q["bbox"].split(",")
        if len(parts) != 4:
            raise HTTPException(400, "bbox must be 'min_lat,min_lon,max_lat,max_lon'")
        try:
            vals = [float(x) for x in parts]
            bbox = idx.BBox(*vals)
        except (ValueError, idx.QueryError) as exc:
            raise HTTPException(400, f"bad bbox: {exc}")

    countries = None
    if q.get("countries"):
        countries = frozenset(c.strip() for c in q["countries"].split(",") if c.strip())

    topics = None
    if q.get("topics"):
        try:
            topics = frozenset(int(t) for t in q["topics"].split(",") if t.strip())
        except ValueError:
            raise HTTPException(400, "topics must be a comma-separated list of integers")

    mode_raw = q.get("mode", idx.DateMode.FREQ.value)
    try:
        date_mode = idx.DateMode(mode_raw)
    except ValueError:
        raise HTTPException(400, f"unknown date mode {mode_raw!r}")

    rec_raw = q.get("rec", RecMode.TOPIC.value)
    try:
        rec_mode = RecMode(rec_raw)
    except ValueError:
        raise HTTPException(400, f"unknown recommendation mode {rec_raw!r}")

    threshold = 0.5
    if q.get("threshold") not in (None, ""):
        try:
            threshold = float(q["threshold"])
        except ValueError:
            raise HTTPException(400, "threshold must be a number")

    try:
        return idx.FilterState(
            year_from=intp("from"),
            year_to=intp("to"),
            bbox=bbox,
            countries=countries,
            topics=topics,
            date_mode=date_mode,
            normalized=q.get("normalized", "").lower() in ("1", "true", "yes"),
            rec_mode=rec_mode,
            threshold=threshold,
            query=q.get("q", ""),
        )
    except idx.QueryError as exc:
        raise HTTPException(400, str(exc))


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="eventatlas", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.engine = engine

    @app.get("/topics")
    def topics_endpoint():
        meta = engine.meta
        return {
            "schema_version": SCHEMA_VERSION,
            "k": meta.get("k", 0),
            "coherence": meta.get("coherence"),
            "topics": [
                {"topic": i, "order": i, "keywords": words}
                for i, words in enumerate(meta.get("keywords", []))
            ],
        }

    @app.get("/timeline")
    def timeline_endpoint(request: Request):
        state = _parse_filter(request)
        topic = _opt_topic(request)
        series = idx.timeline(engine.events, state, topic=topic)
        return {
            "schema_version": SCHEMA_VERSION,
            "topic": topic,
            "mode": series.date_mode.value,
            "normalized": series.normalized,
            "bins": [
                {"year": y, "value": series.bins[y]} for y in sorted(series.bins)
            ],
        }

    @app.get("/dots")
    def dots_endpoint(request: Request):
        state = _parse_filter(request)
        topic = _opt_topic(request)
        if topic is None:
            raise HTTPException(400, "parameter 'topic' is required")
        window = engine.merge_window_years
        if request.query_params.get("window"):
            try:
                window = float(request.query_params["window"])
            except ValueError:
                raise HTTPException(400, "window must be a number")
        if window is None:
            window = idx.default_merge_window(engine.events, state)
        dots = idx.important_dots(engine.events, state, topic, merge_window_years=window)
        return {
            "schema_version": SCHEMA_VERSION,
            "topic": topic,
            "window": window,
            "dots": [
                {
                    "start_year": d.start_year,
                    "end_year": d.end_year,
                    "wide": d.wide,
                    "members": list(d.member_ids),
                }
                for d in dots
            ],
        }

    @app.get("/clusters")
    def clusters_endpoint(request: Request):
        state = _parse_filter(request)
        raw = request.query_params.get("zoom")
        if raw is None:
            raise HTTPException(400, "parameter 'zoom' is required")
        try:
            zoom = int(raw)
        except ValueError:
            raise HTTPException(400, "zoom must be an integer")
        try:
            markers = idx.cluster_markers(
                engine.events, state, zoom,
                base_cell_deg=engine.cluster_base_deg,
                zoom_min=engine.zoom_min, zoom_max=engine.zoom_max,
            )
        except idx.QueryError as exc:
            raise HTTPException(400, str(exc))
        out = []
        for m in markers:
            doc = {"lat": m.lat, "lon": m.lon, "count": m.count}
            if zoom >= engine.zoom_max:
                doc["members"] = list(m.member_ids)
            out.append(doc)
        return {"schema_version": SCHEMA_VERSION, "zoom": zoom, "markers": out}

    @app.get("/events")
    def events_endpoint(request: Request):
        state = _parse_filter(request)
        sort_key = request.query_params.get("sort", "date")
        if sort_key not in SORT_KEYS:
            raise HTTPException(400, f"sort must be one of {SORT_KEYS}")
        entries = [
            make_entry(e, state.rec_mode, state.threshold)
            for e in engine.filtered_events(state)
        ]
        entries = sort_list(entries, sort_key)
        return {
            "schema_version": SCHEMA_VERSION,
            "total": len(entries),
            "sort": sort_key,
            "events": [e.to_json() for e in entries],
        }

    @app.get("/article/{article_id}")
    def article_endpoint(article_id: str):
        art = engine.articles.get(article_id)
        if art is None:
            raise HTTPException(404, f"unknown article {article_id!r}")
        e = engine.by_id.get(article_id)
        return {
            "schema_version": SCHEMA_VERSION,
            "article_id": art.id,
            "title": art.title,
            "text": art.text,
            "categories": sorted(art.categories),
            "date": format_date(e.date) if e else None,
            "year": e.year if e else None,
            "location": e.location if e else None,
            "country": e.country if e else None,
            "lat": e.lat if e else None,
            "lon": e.lon if e else None,
            "topic": e.topic if e else None,
            "topic_weight": e.topic_weight if e else 0.0,
            "pagerank": e.pagerank if e else 0.0,
            "indexed": e is not None,
        }

    @app.get("/related/{article_id}")
    def related_endpoint(article_id: str, request: Request):
        state = _parse_filter(request)
        k = 10
        if request.query_params.get("k"):
            try:
                k = int(request.query_params["k"])
            except ValueError:
                raise HTTPException(400, "k must be an integer")
        if article_id not in engine.vectors:
            raise HTTPException(404, f"unknown article {article_id!r}")
        ranked = related_articles(article_id, state.rec_mode, engine.vectors, engine.graph, k=k)
        return {
            "schema_version": SCHEMA_VERSION,
            "article_id": article_id,
            "mode": state.rec_mode.value,
            "related": [
                {"article_id": aid, "title": engine.titles.get(aid, aid), "score": score}
                for aid, score in ranked
            ],
        }

    @app.get("/search")
    def search_endpoint(request: Request):
        state = _parse_filter(request)
        query = request.query_params.get("q", "")
        if not query.strip():
            return {
                "schema_version": SCHEMA_VERSION,
                "status": "no_query",
                "query": query,
                "results": [],
            }
        ranked = search(query, engine.vectors, engine.titles, engine.idf)
        results = []
        for aid, _score in ranked:
            e = engine.by_id.get(aid)
            if e is not None:
                results.append(make_entry(e, state.rec_mode, state.threshold).to_json())
        return {
            "schema_version": SCHEMA_VERSION,
            "status": "ok",
            "query": query,
            "results": results,
        }

    @app.get("/region-span")
    def region_span_endpoint(request: Request):
        state = _parse_filter(request)
        if not state.has_region:
            raise HTTPException(400, "region-span requires an active region (bbox or countries)")
        selected = idx.filter_events(engine.events, state)
        span = idx.region_time_span(e for e in engine.events if e.article_id in selected)
        return {
            "schema_version": SCHEMA_VERSION,
            "span": list(span) if span else None,
        }

    @app.get("/notes")
    def notes_list_endpoint():
        return {
            "schema_version": SCHEMA_VERSION,
            "notes": [n.to_json() for n in engine.notes.list()],
        }

    @app.post("/notes", status_code=201)
    async def notes_create_endpoint(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise HTTPException(400, "body must be a JSON object")
        if not isinstance(body, dict):
            raise HTTPException(400, "body must be a JSON object")
        article_id = body.get("article_id")
        if not isinstance(article_id, str) or article_id not in engine.articles:
            raise HTTPException(400, f"unknown article_id {article_id!r}")
        title = body.get("title") or engine.articles[article_id].title
        keywords = body.get("keywords") or []
        if not isinstance(keywords, list) or not all(isinstance(k, str) for k in keywords):
            raise HTTPException(400, "keywords must be a list of strings")
        note = engine.notes.create(
            article_id=article_id,
            title=str(title),
            keywords=keywords,
            body=str(body.get("body", "")),
        )
        return {"schema_version": SCHEMA_VERSION, "note": note.to_json()}

    return app
