"""Pipeline stages: each reads the config plus prior artifacts and writes
one JSON artifact into the output directory."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import index as idx
from .config import Config
from .corpus import ArticleCollection, load_articles, select_event_articles
from .extraction import DateMention, EventRecord, extract_events
from .gazetteer import GeoPoint, load_gazetteer
from .relevance import ImportanceScores, load_clickstream, pagerank
from .service import Engine
from .notes import NoteStore
from .topics import CandidateResult, build_vocabulary, load_model, save_model, select_model

log = logging.getLogger(__name__)

ARTIFACT_VERSION = 1


class PipelineError(Exception):
    pass


def _write_json(path: Path, doc: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1), encoding="utf-8")


def _read_artifact(path: Path, stage: str) -> dict:
    if not path.exists():
        raise PipelineError(f"missing artifact {path}; run the {stage!r} stage first")
    doc = json.loads(path.read_text(encoding="utf-8"))
    if doc.get("format_version") != ARTIFACT_VERSION:
        raise PipelineError(f"artifact {path} has unsupported version {doc.get('format_version')!r}")
    return doc


def _load_collection(cfg: Config) -> ArticleCollection:
    return load_articles(cfg.snapshot, seed_ids=tuple(cfg.seeds))


def run_ingest(cfg: Config) -> dict:
    """Load the snapshot and select the event-article working set."""
    coll = _load_collection(cfg)
    selected = select_event_articles(coll, transitive=cfg.transitive_categories)
    doc = {
        "format_version": ARTIFACT_VERSION,
        "article_count": len(coll),
        "selected_count": len(selected),
        "selected": sorted(selected),
        "warnings": coll.warnings,
    }
    _write_json(cfg.selection_path, doc)
    log.info("ingest: %d articles, %d selected as events", len(coll), len(selected))
    return doc


def _date_to_json(d: DateMention | None):
    return None if d is None else [d.year, d.month, d.day]


def _record_to_json(rec: EventRecord) -> dict:
    return {
        "article_id": rec.article_id,
        "representative_date": _date_to_json(rec.representative_date),
        "date_counts": [[list(k), c] for k, c in sorted(rec.date_counts.items(), key=lambda kv: str(kv[0]))],
        "representative_location": rec.representative_location,
        "location_counts": sorted(rec.location_counts.items()),
        "geo": (
            {"lat": rec.geo.lat, "lon": rec.geo.lon, "country": rec.geo.country_code}
            if rec.geo
            else None
        ),
        "warnings": rec.warnings,
    }


def _record_from_json(doc: dict) -> EventRecord:
    rep = doc.get("representative_date")
    geo = doc.get("geo")
    date_counts = {}
    for key, count in doc.get("date_counts", ()):
        year, month, day = key
        date_counts[(year, month, day)] = count
    rep_date = None
    if rep is not None:
        key = (rep[0], rep[1], rep[2])
        rep_date = DateMention(rep[0], rep[1], rep[2], 0)
        if key not in date_counts:
            raise PipelineError(f"representative date missing from counts for {doc.get('article_id')!r}")
    return EventRecord(
        article_id=doc["article_id"],
        representative_date=rep_date,
        date_counts=date_counts,
        representative_location=doc.get("representative_location"),
        location_counts=dict(doc.get("location_counts", ())),
        geo=GeoPoint(geo["lat"], geo["lon"], geo["country"]) if geo else None,
        warnings=list(doc.get("warnings", ())),
    )


def run_extract(cfg: Config) -> dict:
    """Extract dates/locations and anchors for every selected article."""
    selection = _read_artifact(cfg.selection_path, "ingest")
    coll = _load_collection(cfg)
    gaz = load_gazetteer(cfg.gazetteer)
    records = extract_events(coll.articles, selection["selected"], gaz)
    anchored = sum(1 for r in records if r.anchored)
    doc = {
        "format_version": ARTIFACT_VERSION,
        "event_count": len(records),
        "anchored_count": anchored,
        "events": [_record_to_json(r) for r in records],
    }
    _write_json(cfg.events_path, doc)
    log.info("extract: %d events, %d anchored", len(records), anchored)
    return doc


def load_event_records(cfg: Config) -> list[EventRecord]:
    doc = _read_artifact(cfg.events_path, "extract")
    return [_record_from_json(e) for e in doc["events"]]


def run_model(cfg: Config) -> dict:
    """Fit candidate topic models and keep the most coherent one."""
    selection = _read_artifact(cfg.selection_path, "ingest")
    coll = _load_collection(cfg)
    texts = {aid: coll.articles[aid].text for aid in selection["selected"]}
    vocab = build_vocabulary(texts)
    report: list[CandidateResult] = []
    model = select_model(
        vocab,
        cfg.model.candidates(),
        seeds=cfg.model.seed,
        alpha=cfg.model.alpha,
        beta=cfg.model.beta,
        iterations=cfg.model.iterations,
        window=cfg.model.coherence_window,
        report=report,
    )
    save_model(model, cfg.model_path)
    summary = {
        "k": model.k,
        "coherence": model.coherence,
        "candidates": [asdict(r) for r in report],
    }
    log.info("model: selected k=%d (coherence %.4f)", model.k, model.coherence)
    return summary


def run_rank(cfg: Config) -> dict:
    """PageRank over the clickstream plus per-article topic contribution."""
    selection = _read_artifact(cfg.selection_path, "ingest")
    model = load_model(cfg.model_path)
    selected = set(selection["selected"])
    graph = load_clickstream(cfg.clickstream, restrict_to=selected)
    pr = (
        pagerank(graph, damping=cfg.rank.damping, eps=cfg.rank.eps, max_iter=cfg.rank.max_iter)
        if len(graph)
        else {}
    )
    contribution = {
        aid: float(np.max(model.theta[i])) for i, aid in enumerate(model.doc_ids)
    }
    scores = ImportanceScores.compute(selected, pr, contribution)
    doc = {
        "format_version": ARTIFACT_VERSION,
        "pagerank": scores.pagerank,
        "popularity": scores.popularity,
        "topic_contribution": scores.topic_contribution,
        "clickstream_warnings": graph.warnings,
    }
    _write_json(cfg.scores_path, doc)
    log.info("rank: %d nodes in clickstream graph", len(graph))
    return doc


def load_scores(cfg: Config) -> ImportanceScores:
    doc = _read_artifact(cfg.scores_path, "rank")
    return ImportanceScores(
        pagerank=doc["pagerank"],
        topic_contribution=doc["topic_contribution"],
        popularity=doc["popularity"],
    )


def run_index(cfg: Config) -> dict:
    """Join all artifacts into the denormalized query index."""
    coll = _load_collection(cfg)
    records = load_event_records(cfg)
    model = load_model(cfg.model_path)
    scores = load_scores(cfg)
    topic_of = {
        aid: int(np.argmax(model.theta[i])) for i, aid in enumerate(model.doc_ids)
    }
    titles = {aid: coll.articles[aid].title for aid in coll.articles}
    events = idx.build_index(records, titles, topic_of, scores)
    years = [e.year for e in events if e.year is not None]
    meta = {
        "k": model.k,
        "coherence": model.coherence,
        "keywords": model.top_keywords,
        "year_extent": [min(years), max(years)] if years else None,
        "event_count": len(events),
    }
    idx.save_index(events, meta, cfg.index_path)
    log.info("index: %d events indexed", len(events))
    return meta


def build_engine(cfg: Config) -> Engine:
    """Load every artifact a running service needs; fail fast when absent."""
    if not cfg.index_path.exists():
        raise PipelineError(f"missing index {cfg.index_path}; run the 'index' stage first")
    events, meta = idx.load_index(cfg.index_path)
    coll = _load_collection(cfg)
    graph = load_clickstream(cfg.clickstream, restrict_to={e.article_id for e in events})
    gaz = load_gazetteer(cfg.gazetteer)
    return Engine(
        events=events,
        meta=meta,
        articles=coll.articles,
        graph=graph,
        notes=NoteStore(cfg.notes_file),
        gazetteer=gaz,
        cluster_base_deg=cfg.index.cluster_base_deg,
        zoom_min=cfg.index.zoom_min,
        zoom_max=cfg.index.zoom_max,
        merge_window_years=cfg.index.merge_window_years,
    )


def run_all(cfg: Config) -> dict:
    """Convenience runner for ingest through index."""
    t0 = time.time()
    run_ingest(cfg)
    run_extract(cfg)
    run_model(cfg)
    run_rank(cfg)
    meta = run_index(cfg)
    meta["elapsed_s"] = round(time.time() - t0, 2)
    return meta
