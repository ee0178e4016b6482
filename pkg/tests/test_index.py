from __future__ import annotations

import math

import numpy as np
import pytest

from eventatlas.index import (
    BBox,
    ClusterMarker,
    DateMode,
    FilterState,
    IndexedEvent,
    QueryError,
    cluster_markers,
    default_merge_window,
    filter_events,
    important_dots,
    region_time_span,
    timeline,
)
from eventatlas.relevance import RecMode


def ev(
    aid,
    year=None,
    all_years=None,
    lat=None,
    lon=None,
    country=None,
    topic=0,
    weight=0.5,
    popularity=0.5,
):
    anchored_geo = lat is not None
    return IndexedEvent(
        article_id=aid,
        title=aid,
        date=(year, 1, 1) if year is not None else None,
        year=year,
        all_years=tuple(sorted(all_years or ({year} if year is not None else set()))),
        lat=lat,
        lon=lon,
        country=country if anchored_geo else None,
        location=country.lower() if (country and anchored_geo) else None,
        topic=topic,
        topic_weight=weight,
        pagerank=popularity / 10,
        popularity=popularity,
    )


SIX = [
    ev("e1", 1914, {1914}, lat=10, lon=10, country="AA"),
    ev("e2", 1914, {1912, 1914}, lat=11, lon=11, country="AA"),
    ev("e3", 1915, {1915}, lat=12, lon=12, country="BB"),
    ev("e4", 1916, {1914, 1916, 1918}, lat=13, lon=13, country="BB"),
    ev("e5", 1916, {1916}, lat=14, lon=14, country="CC"),
    ev("e6", 1918, {1918}, lat=15, lon=15, country="CC"),
]


class TestFilter:
    def test_unrestricted_returns_all_anchored(self):
        events = SIX + [ev("nodate"), ev("nogeo", 1920)]
        assert filter_events(events, FilterState()) == {e.article_id for e in SIX}

    def test_empty_bbox(self):
        state = FilterState(bbox=BBox(-10, -10, -5, -5))
        assert filter_events(SIX, state) == set()

    def test_time_and_region_intersection(self):
        state = FilterState(year_from=1914, year_to=1915, countries=frozenset({"AA", "BB"}))
        assert filter_events(SIX, state) == {"e1", "e2", "e3"}

    def test_bbox_and_country_both_apply(self):
        state = FilterState(bbox=BBox(9, 9, 12.5, 12.5), countries=frozenset({"AA"}))
        assert filter_events(SIX, state) == {"e1", "e2"}

    def test_topic_visibility(self):
        events = [ev("a", 1914, lat=0, lon=0, topic=0), ev("b", 1915, lat=0, lon=0, topic=1)]
        assert filter_events(events, FilterState(topics=frozenset({1}))) == {"b"}

    def test_importance_threshold(self):
        events = [
            ev("hot", 1914, lat=0, lon=0, weight=0.9),
            ev("cold", 1915, lat=0, lon=0, weight=0.2),
        ]
        state = FilterState(rec_mode=RecMode.TOPIC, threshold=0.5)
        assert filter_events(events, state, important_only=True) == {"hot"}
        assert filter_events(events, state) == {"hot", "cold"}

    def test_bad_state_rejected(self):
        with pytest.raises(QueryError):
            FilterState(year_from=1950, year_to=1900)
        with pytest.raises(QueryError):
            FilterState(threshold=2.0)
        with pytest.raises(QueryError):
            BBox(10, 0, 0, 5)

    def test_anti_monotone_random_nested_pairs(self):
        rng = np.random.default_rng(23)
        events = [
            ev(
                f"r{i}",
                int(rng.integers(1900, 2000)),
                lat=float(rng.uniform(-80, 80)),
                lon=float(rng.uniform(-170, 170)),
                country=["AA", "BB", "CC"][int(rng.integers(0, 3))],
                topic=int(rng.integers(0, 4)),
                weight=float(rng.random()),
            )
            for i in range(60)
        ]
        for _ in range(50):
            y0 = int(rng.integers(1900, 1990))
            y1 = int(rng.integers(y0, 2000))
            loose = FilterState(year_from=y0, year_to=y1)
            tight = FilterState(
                year_from=y0 + int(rng.integers(0, max(1, (y1 - y0) // 2))),
                year_to=y1 - int(rng.integers(0, max(1, (y1 - y0) // 2))),
                countries=frozenset({"AA", "BB"}),
                topics=frozenset({0, 1, 2}),
            )
            if tight.year_from > tight.year_to:
                continue
            assert filter_events(events, tight) <= filter_events(events, loose)


class TestTimeline:
    def test_freq_bins_match_brute_tally(self):
        series = timeline(SIX, FilterState())
        tally = {}
        for e in SIX:
            tally[e.year] = tally.get(e.year, 0) + 1
        assert series.bins == tally
        assert series.bins == {1914: 2, 1915: 1, 1916: 2, 1918: 1}

    def test_all_date_bins(self):
        series = timeline(SIX, FilterState(date_mode=DateMode.ALL))
        assert series.bins == {1912: 1, 1914: 3, 1915: 1, 1916: 2, 1918: 2}
        freq = timeline(SIX, FilterState())
        assert series.total() >= freq.total()

    def test_normalized_max_is_one(self):
        series = timeline(SIX, FilterState(normalized=True))
        assert max(series.bins.values()) == 1.0

    def test_empty_selection_all_zero(self):
        series = timeline(SIX, FilterState(year_from=1800, year_to=1801))
        assert series.bins == {}
        assert series.total() == 0

    def test_topic_series_uses_argmax_topic(self):
        events = [
            ev("a", 1914, lat=0, lon=0, topic=0),
            ev("b", 1914, lat=0, lon=0, topic=1),
        ]
        series = timeline(events, FilterState(), topic=1)
        assert series.bins == {1914: 1}

    def test_all_date_clipped_to_range(self):
        events = [ev("a", 1940, {1935, 1940, 1999}, lat=0, lon=0)]
        series = timeline(events, FilterState(year_from=1939, year_to=1950, date_mode=DateMode.ALL))
        assert series.bins == {1940: 1}


class TestDots:
    def important(self, *years, window=2.0, topic=0):
        events = [
            ev(f"y{y}_{i}", y, lat=0, lon=0, topic=topic, weight=0.9) for i, y in enumerate(years)
        ]
        state = FilterState(threshold=0.5)
        return important_dots(events, state, topic, merge_window_years=window)

    def test_single_event_single_dot(self):
        dots = self.important(1914)
        assert len(dots) == 1
        assert not dots[0].wide
        assert dots[0].start_year == dots[0].end_year == 1914

    def test_adjacent_events_merge_into_wide_dot(self):
        dots = self.important(1913, 1914, window=2)
        assert len(dots) == 1
        assert dots[0].wide
        assert (dots[0].start_year, dots[0].end_year) == (1913, 1914)
        assert len(dots[0].member_ids) == 2

    def test_greedy_merge_hand_trace(self):
        dots = self.important(1905, 1913, 1914, 1918, 1919, 1920, 1930, window=2)
        spans = [(d.start_year, d.end_year) for d in dots]
        assert spans == [(1905, 1905), (1913, 1914), (1918, 1920), (1930, 1930)]

    def test_member_union_and_span_gaps(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            years = sorted(int(y) for y in rng.integers(1900, 2000, size=rng.integers(1, 25)))
            window = float(rng.integers(0, 6))
            events = [ev(f"e{i}", y, lat=0, lon=0, weight=0.9) for i, y in enumerate(years)]
            state = FilterState(threshold=0.5)
            dots = important_dots(events, state, 0, merge_window_years=window)
            members = [m for d in dots for m in d.member_ids]
            assert sorted(members) == sorted(e.article_id for e in events)
            for a, b in zip(dots, dots[1:]):
                assert b.start_year - a.end_year > window
            for d in dots:
                assert all(
                    d.start_year <= e.year <= d.end_year
                    for e in events
                    if e.article_id in d.member_ids
                )

    def test_only_important_events_of_topic(self):
        events = [
            ev("imp", 1914, lat=0, lon=0, topic=0, weight=0.9),
            ev("dim", 1914, lat=0, lon=0, topic=0, weight=0.1),
            ev("othertopic", 1914, lat=0, lon=0, topic=1, weight=0.9),
        ]
        dots = important_dots(events, FilterState(threshold=0.5), 0, merge_window_years=2)
        assert [d.member_ids for d in dots] == [("imp",)]

    def test_default_window_scales_with_range(self):
        state = FilterState(year_from=1900, year_to=2000)
        assert default_merge_window([], state) == pytest.approx(2.0)
        state = FilterState(year_from=1950, year_to=2000)
        assert default_merge_window([], state) == pytest.approx(1.0)


class TestClusters:
    def test_all_events_at_one_point(self):
        events = [ev(f"e{i}", 1914, lat=42.0, lon=19.0) for i in range(7)]
        for zoom in (0, 3, 9, 18):
            markers = cluster_markers(events, FilterState(), zoom)
            assert len(markers) == 1
            assert markers[0].count == 7

    def test_max_zoom_every_distinct_location_separate(self):
        events = [ev(f"e{i}", 1914, lat=float(i), lon=float(i)) for i in range(5)]
        markers = cluster_markers(events, FilterState(), 18)
        assert len(markers) == 5
        assert all(m.count == 1 for m in markers)

    def test_partition_property_random(self):
        rng = np.random.default_rng(9)
        events = [
            ev(f"e{i}", 1950, lat=float(rng.uniform(-90, 90)), lon=float(rng.uniform(-180, 180)))
            for i in range(300)
        ]
        prev = 0
        for zoom in range(0, 19):
            markers = cluster_markers(events, FilterState(), zoom)
            assert sum(m.count for m in markers) == 300
            assert len(markers) >= prev
            prev = len(markers)

    def test_centroid_is_mean(self):
        events = [ev("a", 1900, lat=10.0, lon=20.0), ev("b", 1900, lat=12.0, lon=26.0)]
        (m,) = cluster_markers(events, FilterState(), 0)
        assert (m.lat, m.lon) == (11.0, 23.0)

    def test_grid_against_independent_oracle(self):
        rng = np.random.default_rng(31)
        events = [
            ev(f"e{i}", 1950, lat=float(rng.uniform(-90, 90)), lon=float(rng.uniform(-180, 180)))
            for i in range(100)
        ]
        zoom = 4
        size = 180.0 / 2**zoom
        oracle = {}
        for e in events:
            oracle.setdefault(
                (math.floor(e.lat / size), math.floor(e.lon / size)), set()
            ).add(e.article_id)
        markers = cluster_markers(events, FilterState(), zoom)
        assert sorted(tuple(sorted(m.member_ids)) for m in markers) == sorted(
            tuple(sorted(v)) for v in oracle.values()
        )

    def test_zoom_out_of_range(self):
        with pytest.raises(QueryError):
            cluster_markers(SIX, FilterState(), 99)


class TestRegionSpan:
    def test_single_event(self):
        assert region_time_span([ev("a", 1914, lat=0, lon=0)]) == (1914, 1914)

    def test_empty(self):
        assert region_time_span([]) is None

    def test_min_max(self):
        events = [ev("a", 1912, lat=0, lon=0), ev("b", 1913, lat=0, lon=0), ev("c", 1918, lat=0, lon=0)]
        assert region_time_span(events) == (1912, 1918)
