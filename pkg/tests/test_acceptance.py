"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line. Tolerances are pinned here and nowhere else."""

from __future__ import annotations

import functools
import json
import subprocess
import sys
import time

import jsonschema
import numpy as np
import pytest
from fastapi.testclient import TestClient

from eventatlas import schemas
from eventatlas.config import load_config
from eventatlas.corpus import Article
from eventatlas.extraction import extract_event
from eventatlas.gazetteer import load_gazetteer
from eventatlas.index import (
    BBox,
    DateMode,
    FilterState,
    IndexedEvent,
    cluster_markers,
    filter_events,
    important_dots,
    timeline,
)
from eventatlas.relevance import ClickstreamGraph, pagerank
from eventatlas.service import create_app
from eventatlas.topics import build_vocabulary, coherence_cv, fit_lda

from conftest import BALKANS_BBOX, BALKANS_COUNTRIES, BALKANS_IDS, FIXTURE_DIR
from oracles import (
    MICRO_DOCS,
    MICRO_EXPECTED,
    MICRO_WORDS,
    dense_pagerank_oracle,
    fabricate_model,
    letter_word,
    oracle_cv,
)


def acceptance(name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {name}: FAIL")
                raise
            print(f"\nACCEPTANCE {name}: PASS")
            return result

        return wrapper

    return deco


@acceptance("lda-recovery")
def test_lda_recovery_and_determinism():
    rng = np.random.default_rng(42)
    va = [letter_word("alpha", i) for i in range(20)]
    vb = [letter_word("beta", i) for i in range(20)]
    texts = {}
    for d in range(200):
        mix = rng.beta(0.3, 0.3)
        toks = [(va if rng.random() < mix else vb)[rng.integers(0, 20)] for _ in range(50)]
        texts[f"d{d:03d}"] = " ".join(toks)
    vocab = build_vocabulary(texts)

    start = time.monotonic()
    m1 = fit_lda(vocab, 2, iterations=300, seed=7)
    m2 = fit_lda(vocab, 2, iterations=300, seed=7)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"two fits took {elapsed:.1f}s"

    assert np.array_equal(m1.phi, m2.phi) and np.array_equal(m1.theta, m2.theta)

    gen = np.zeros((2, vocab.size))
    for w in va:
        gen[0, vocab.index[w]] = 1 / 20
    for w in vb:
        gen[1, vocab.index[w]] = 1 / 20

    def cos(a, b):
        return float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))

    best = max(
        min(cos(m1.phi[0], gen[a]), cos(m1.phi[1], gen[b])) for a, b in ((0, 1), (1, 0))
    )
    assert best >= 0.8, f"recovery cosine {best:.3f}"


@acceptance("coherence-oracle")
def test_coherence_oracle_and_range():
    vocab = build_vocabulary(MICRO_DOCS)
    model = fabricate_model([MICRO_WORDS], vocab)
    got = coherence_cv(model, vocab, window=110)
    window_sets = [set(t.split()) for t in MICRO_DOCS.values()]
    assert got == pytest.approx(oracle_cv(window_sets, MICRO_WORDS), abs=1e-9)
    assert got == pytest.approx(MICRO_EXPECTED, abs=1e-9)

    rng = np.random.default_rng(77)
    words = [letter_word("tok", i) for i in range(40)]
    for _ in range(100):
        texts = {
            f"d{i}": " ".join(rng.choice(words, size=rng.integers(2, 50)))
            for i in range(rng.integers(2, 10))
        }
        vocab = build_vocabulary(texts)
        tops = [
            list(rng.choice(words, size=rng.integers(2, 10), replace=False))
            for _ in range(rng.integers(1, 4))
        ]
        value = coherence_cv(fabricate_model(tops, vocab), vocab, window=int(rng.integers(1, 130)))
        assert -1.0 <= value <= 1.0


@acceptance("pagerank")
def test_pagerank_cycle_and_oracle():
    cycle = ClickstreamGraph()
    cycle.add_edge("a", "b", 1)
    cycle.add_edge("b", "c", 1)
    cycle.add_edge("c", "a", 1)
    pr = pagerank(cycle)
    for v in "abc":
        assert abs(pr[v] - 1 / 3) < 1e-10

    rng = np.random.default_rng(99)
    for _ in range(5):
        g = ClickstreamGraph()
        for _ in range(150):
            s, t = rng.integers(0, 50, size=2)
            if s != t:
                g.add_edge(f"n{s:02d}", f"n{t:02d}", int(rng.integers(1, 30)))
        got = pagerank(g)
        assert abs(sum(got.values()) - 1.0) < 1e-8
        oracle = dense_pagerank_oracle(g)
        for node in g.nodes:
            assert abs(got[node] - oracle[node]) < 1e-8


# single-token names from the fixture gazetteer with unambiguous resolution
ANCHOR_NAMES = [
    "Germany", "France", "Poland", "Serbia", "Belgrade", "Bulgaria", "Sofia",
    "Bosnia", "Sarajevo", "Romania", "Bucharest", "Montenegro", "Cetinje",
    "Hungary", "Budapest", "Russia", "Moscow", "Japan", "China", "Washington",
    "London", "Italy", "Rome", "Austria", "Vienna", "Turkey", "Istanbul",
    "Greece", "Athens", "Korea", "Cuba", "Vietnam", "Hawaii", "Berlin",
    "Prague", "Egypt", "Spain", "Geneva",
]
MONTH_NAMES = [
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
]


def synth_article(rng: np.random.Generator, gaz):
    """Article with planted mention counts; returns the brute-force tallies."""
    n_locs = int(rng.integers(1, 6))
    names = list(rng.choice(ANCHOR_NAMES, size=n_locs, replace=False))
    loc_counts = {name: int(rng.integers(1, 7)) for name in names}

    date_keys = set()
    while len(date_keys) < int(rng.integers(1, 6)):
        year = int(rng.integers(1900, 2000))
        shape = rng.integers(0, 3)
        if shape == 0:
            date_keys.add((year, None, None))
        elif shape == 1:
            date_keys.add((year, int(rng.integers(1, 13)), None))
        else:
            date_keys.add((year, int(rng.integers(1, 13)), int(rng.integers(1, 29))))
    date_counts = {key: int(rng.integers(1, 7)) for key in date_keys}

    def surface(key):
        year, month, day = key
        if month is None:
            return f"{year}"
        if day is None:
            return f"{MONTH_NAMES[month - 1]} {year}"
        return f"{day} {MONTH_NAMES[month - 1]} {year}"

    occurrences = []
    for name, n in loc_counts.items():
        occurrences += [("loc", name, f"It was felt in {name} above all.")] * n
    for key, n in date_counts.items():
        occurrences += [("date", key, f"By {surface(key)} it was done.")] * n
    order = rng.permutation(len(occurrences))

    text_parts, offset = [], 0
    first_offsets = {}
    for i in order:
        kind, value, sentence = occurrences[i]
        anchor = sentence.index(str(value) if kind == "loc" else surface(value))
        first_offsets.setdefault((kind, value), offset + anchor)
        text_parts.append(sentence)
        offset += len(sentence) + 1  # joined by a single space
    text = " ".join(text_parts)

    id_of = {name: gaz.resolve_name(name).id for name in loc_counts}
    loc_tally = {id_of[n]: c for n, c in loc_counts.items()}
    loc_firsts = {id_of[n]: first_offsets[("loc", n)] for n in loc_counts}
    date_firsts = {k: first_offsets[("date", k)] for k in date_counts}
    return text, date_counts, date_firsts, loc_tally, loc_firsts


def brute_argmax(counts, firsts):
    return min(counts, key=lambda k: (-counts[k], firsts[k], str(k)))


@acceptance("representative-anchors")
def test_representative_anchors_match_brute_force():
    gaz = load_gazetteer(FIXTURE_DIR / "gazetteer.tsv")
    rng = np.random.default_rng(123)
    for i in range(100):
        text, date_counts, date_firsts, loc_tally, loc_firsts = synth_article(rng, gaz)
        rec = extract_event(Article(id=f"s{i}", title=f"S{i}", text=text), gaz)
        assert rec.date_counts == date_counts
        assert rec.location_counts == loc_tally
        assert rec.representative_date.key == brute_argmax(date_counts, date_firsts)
        assert rec.representative_location == brute_argmax(loc_tally, loc_firsts)


@acceptance("date-mode")
def test_date_mode_property_and_wwii_fixture(engine):
    rng = np.random.default_rng(3)
    states = [FilterState()]
    for _ in range(30):
        y0 = int(rng.integers(1900, 1995))
        y1 = int(rng.integers(y0, 2000))
        bbox = None
        if rng.random() < 0.5:
            lat0, lon0 = float(rng.uniform(-60, 50)), float(rng.uniform(-150, 120))
            bbox = BBox(lat0, lon0, lat0 + float(rng.uniform(5, 60)), lon0 + float(rng.uniform(5, 90)))
        states.append(FilterState(year_from=y0, year_to=y1, bbox=bbox))
    for state in states:
        freq = timeline(engine.events, state)
        allmode = timeline(
            engine.events,
            FilterState(
                year_from=state.year_from, year_to=state.year_to, bbox=state.bbox,
                date_mode=DateMode.ALL,
            ),
        )
        assert allmode.total() >= freq.total()

    # the one article anchored at (51.0, 10.0) between 1930 and 1950
    only_ww2 = FilterState(year_from=1930, year_to=1950, bbox=BBox(50.9, 9.9, 51.1, 10.1))
    assert filter_events(engine.events, only_ww2) == {"ww2"}
    freq = timeline(engine.events, only_ww2)
    assert freq.bins == {1945: 1.0}
    allmode = timeline(
        engine.events,
        FilterState(year_from=1930, year_to=1950, bbox=BBox(50.9, 9.9, 51.1, 10.1),
                    date_mode=DateMode.ALL),
    )
    assert allmode.bins[1945] == 1.0
    assert allmode.bins[1935] == 1.0 and allmode.bins[1941] == 1.0


@acceptance("cluster-partition")
def test_cluster_partition_and_zoom_monotonicity():
    rng = np.random.default_rng(8)
    events = [
        IndexedEvent(
            article_id=f"e{i:04d}", title="", date=(1950, 1, 1), year=1950,
            all_years=(1950,), lat=float(rng.uniform(-90, 90)),
            lon=float(rng.uniform(-180, 180)), country="XX", location="x",
            topic=0, topic_weight=0.5, pagerank=0.0, popularity=0.0,
        )
        for i in range(1000)
    ]
    state = FilterState()
    prev = 0
    for zoom in range(0, 19):
        markers = cluster_markers(events, state, zoom)
        assert sum(m.count for m in markers) == 1000
        assert len(markers) >= prev
        prev = len(markers)


@acceptance("dot-merging")
def test_dot_merging_properties():
    rng = np.random.default_rng(14)
    for _ in range(500):
        n = int(rng.integers(1, 30))
        years = [int(y) for y in rng.integers(1900, 2000, size=n)]
        window = float(rng.integers(0, 8))
        threshold = 0.5
        events = [
            IndexedEvent(
                article_id=f"e{i}", title="", date=(y, 1, 1), year=y, all_years=(y,),
                lat=0.0, lon=0.0, country="XX", location="x", topic=0,
                topic_weight=float(rng.random()), pagerank=0.0, popularity=0.0,
            )
            for i, y in enumerate(years)
        ]
        state = FilterState(threshold=threshold)
        dots = important_dots(events, state, 0, merge_window_years=window)
        important = {e.article_id for e in events if e.topic_weight > threshold}
        assert {m for d in dots for m in d.member_ids} == important
        assert sum(len(d.member_ids) for d in dots) == len(important)
        for a, b in zip(dots, dots[1:]):
            assert b.start_year - a.end_year > window

    two = [
        IndexedEvent(
            article_id=x, title="", date=(y, 1, 1), year=y, all_years=(y,),
            lat=0.0, lon=0.0, country="XX", location="x", topic=0,
            topic_weight=0.9, pagerank=0.0, popularity=0.0,
        )
        for x, y in (("a", 1913), ("b", 1914))
    ]
    dots = important_dots(two, FilterState(threshold=0.5), 0, merge_window_years=2)
    assert len(dots) == 1 and dots[0].wide and len(dots[0].member_ids) == 2
    assert (dots[0].start_year, dots[0].end_year) == (1913, 1914)


def tighten(state: FilterState, rng: np.random.Generator) -> FilterState:
    kwargs = dict(
        year_from=state.year_from, year_to=state.year_to, bbox=state.bbox,
        countries=state.countries, topics=state.topics, threshold=state.threshold,
        rec_mode=state.rec_mode,
    )
    op = rng.integers(0, 5)
    if op == 0 and state.year_from is not None and state.year_from < state.year_to:
        kwargs["year_from"] = state.year_from + 1
    elif op == 1:
        box = state.bbox or BBox(-90, -180, 90, 180)
        shrink_lat = (box.max_lat - box.min_lat) * 0.2
        shrink_lon = (box.max_lon - box.min_lon) * 0.2
        kwargs["bbox"] = BBox(
            box.min_lat + shrink_lat, box.min_lon + shrink_lon,
            box.max_lat - shrink_lat, box.max_lon - shrink_lon,
        )
    elif op == 2:
        pool = state.countries or frozenset({"DE", "FR", "RS", "BG", "US", "RU", "JP"})
        keep = max(1, len(pool) - 2)
        kwargs["countries"] = frozenset(sorted(pool)[:keep])
    elif op == 3:
        pool = state.topics if state.topics is not None else frozenset(range(8))
        kwargs["topics"] = frozenset(sorted(pool)[: max(1, len(pool) - 1)])
    else:
        kwargs["threshold"] = min(1.0, state.threshold + float(rng.uniform(0, 0.3)))
    return FilterState(**kwargs)


@acceptance("filter-anti-monotonicity")
def test_filter_anti_monotone_and_balkans_set(engine):
    rng = np.random.default_rng(21)
    for _ in range(200):
        y0 = int(rng.integers(1900, 1990))
        base = FilterState(
            year_from=y0,
            year_to=int(rng.integers(y0, 2000)),
            threshold=float(rng.uniform(0, 0.8)),
        )
        tight = tighten(base, rng)
        for important_only in (False, True):
            loose_ids = filter_events(engine.events, base, important_only=important_only)
            tight_ids = filter_events(engine.events, tight, important_only=important_only)
            assert tight_ids <= loose_ids

    state = FilterState(year_from=1910, year_to=1919, bbox=BBox(*BALKANS_BBOX))
    got = filter_events(engine.events, state)
    assert got == BALKANS_IDS

    by_id = {e.article_id: e for e in engine.events}
    breakdown = {}
    for aid in got:
        breakdown[by_id[aid].country] = breakdown.get(by_id[aid].country, 0) + 1
    assert breakdown == BALKANS_COUNTRIES

    # brute-force predicate oracle over all events
    oracle = {
        e.article_id
        for e in engine.events
        if e.anchored
        and 1910 <= e.year <= 1919
        and BALKANS_BBOX[0] <= e.lat <= BALKANS_BBOX[2]
        and BALKANS_BBOX[1] <= e.lon <= BALKANS_BBOX[3]
    }
    assert got == oracle

    # the designed map shape: three markers totalling twelve events
    markers = cluster_markers(engine.events, state, zoom=5)
    assert sorted(m.count for m in markers) == [1, 4, 7]
    assert sum(m.count for m in markers) == 12


ENDPOINT_CASES = [
    ("/topics", {}),
    ("/timeline", {"mode": "FREQ_DATE"}),
    ("/timeline", {"mode": "ALL_DATE", "normalized": "true", "topic": "0"}),
    ("/dots", {"topic": "0", "rec": "TOPIC_REC", "threshold": "0.3"}),
    ("/clusters", {"zoom": "4"}),
    ("/clusters", {"zoom": "18", "bbox": "41.5,17.0,48.5,27.5"}),
    ("/events", {"sort": "importance", "rec": "POPULAR_REC", "threshold": "0.2"}),
    ("/events", {"from": "1910", "to": "1919", "bbox": "41.5,17.0,48.5,27.5"}),
    ("/article/ww2", {}),
    ("/related/ww1", {"rec": "POPULAR_REC"}),
    ("/related/ww1", {"rec": "TOPIC_REC"}),
    ("/search", {"q": "Balkan"}),
    ("/search", {"q": ""}),
    ("/region-span", {"countries": "RS,BG"}),
    ("/notes", {}),
]


@acceptance("end-to-end")
def test_end_to_end_pipeline_and_service(fixture_config_file, tmp_path):
    out = tmp_path / "e2e_out"
    base = json.loads(fixture_config_file.read_text())
    base["out_dir"] = str(out)
    out.mkdir()
    cfg_path = out / "config.json"
    cfg_path.write_text(json.dumps(base))

    start = time.monotonic()
    for stage in ("ingest", "extract", "model", "rank", "index"):
        proc = subprocess.run(
            [sys.executable, "-m", "eventatlas.cli", stage, str(cfg_path)],
            capture_output=True, text=True, timeout=150,
        )
        assert proc.returncode == 0, f"{stage} failed: {proc.stderr}"
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"pipeline took {elapsed:.1f}s"

    from eventatlas.pipeline import build_engine

    cfg = load_config(cfg_path)
    engine = build_engine(cfg)
    app = create_app(engine)
    client = TestClient(app)

    for path, params in ENDPOINT_CASES:
        resp = client.get(path, params=params)
        assert resp.status_code == 200, f"{path} {params} -> {resp.status_code}"
        schema_key = "/" + path.strip("/").split("/")[0]
        jsonschema.validate(resp.json(), schemas.BY_ENDPOINT[schema_key])

    created = client.post(
        "/notes",
        json={"article_id": "battle_of_cer", "title": "crossing", "keywords": ["army"], "body": "note"},
    )
    assert created.status_code == 201
    jsonschema.validate(created.json(), schemas.NOTE_CREATED)

    # restart: a fresh engine over the same artifacts sees the note
    engine2 = build_engine(cfg)
    client2 = TestClient(create_app(engine2))
    notes = client2.get("/notes")
    jsonschema.validate(notes.json(), schemas.BY_ENDPOINT["/notes"])
    listed = notes.json()["notes"]
    assert len(listed) == 1
    assert listed[0]["article_id"] == "battle_of_cer"
