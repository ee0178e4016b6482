"""Date and location mention extraction, representative anchors, geocoding.

Dates come from a finite pattern grammar (day-month-year, month-day-year,
month-year, bare year 1000-2099, ISO yyyy-mm-dd); locations from a
longest-match gazetteer scan. Each article gets a representative date and
location (most frequent mention, ties by earliest offset); articles missing
either are flagged unanchored but kept.
"""

from __future__ import annotations

import calendar
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .corpus import Article
from .gazetteer import Gazetteer, GeoPoint

# (year, month, day) with month/day possibly None
DateKey = tuple[int, "int | None", "int | None"]

_MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7, "aug": 8,
    "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

_MONTH = r"(?:January|February|March|April|May|June|July|August|September|October|November|December|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec)\.?"
_YEAR = r"(?:1\d{3}|20\d{2})"  # 1000-2099, keeps page numbers out
_DAY = r"(?:3[01]|[12]\d|0?[1-9])"

# alternatives ordered longest-first; finditer then suppresses overlaps
_DATE_RE = re.compile(
    rf"\b(?:"
    rf"(?P<d1>{_DAY})(?:st|nd|rd|th)?\s+(?P<m1>{_MONTH})\s+(?P<y1>{_YEAR})"
    rf"|(?P<m2>{_MONTH})\s+(?P<d2>{_DAY})(?:st|nd|rd|th)?,?\s+(?P<y2>{_YEAR})"
    rf"|(?P<y3>{_YEAR})-(?P<m3>0[1-9]|1[0-2])-(?P<d3>0[1-9]|[12]\d|3[01])"
    rf"|(?P<m4>{_MONTH})\s+(?P<y4>{_YEAR})"
    rf"|(?P<y5>{_YEAR})"
    rf")\b",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class DateMention:
    year: int
    month: int | None
    day: int | None
    char_offset: int

    @property
    def key(self) -> DateKey:
        return (self.year, self.month, self.day)


@dataclass(frozen=True)
class LocationMention:
    surface: str
    gazetteer_id: str
    char_offset: int


def _month_number(name: str) -> int:
    return _MONTHS[name.rstrip(".").lower()]


def extract_dates(text: str) -> list[DateMention]:
    """Return all date mentions in document order.

    Partial dates (year-only, year-month) are allowed; a day that does not
    exist in its month degrades to a year-month mention.
    """
    mentions = []
    for m in _DATE_RE.finditer(text):
        if m.group("y1"):
            year, month, day = int(m.group("y1")), _month_number(m.group("m1")), int(m.group("d1"))
        elif m.group("y2"):
            year, month, day = int(m.group("y2")), _month_number(m.group("m2")), int(m.group("d2"))
        elif m.group("y3"):
            year, month, day = int(m.group("y3")), int(m.group("m3")), int(m.group("d3"))
        elif m.group("y4"):
            year, month, day = int(m.group("y4")), _month_number(m.group("m4")), None
        else:
            year, month, day = int(m.group("y5")), None, None
        if day is not None and day > calendar.monthrange(year, month)[1]:
            day = None
        mentions.append(DateMention(year=year, month=month, day=day, char_offset=m.start()))
    return mentions


def extract_locations(text: str, gazetteer: Gazetteer) -> list[LocationMention]:
    """Case-sensitive, word-boundary, longest-match-first gazetteer scan."""
    mentions = []
    for m in gazetteer.finditer(text):
        row = gazetteer.resolve_name(m.group(0))
        if row is None:  # scanner only knows resolvable names
            continue
        mentions.append(LocationMention(surface=m.group(0), gazetteer_id=row.id, char_offset=m.start()))
    return mentions


def representative(counts: Mapping, first_offsets: Mapping | None = None):
    """Value with the maximal count; ties broken by earliest first offset.

    Returns None for empty counts (the no-anchor signal).
    """
    if not counts:
        return None
    offsets = first_offsets or {}

    def rank(value):
        return (-counts[value], offsets.get(value, 0), str(value))

    return min(counts, key=rank)


def geocode(gazetteer_id: str, gazetteer: Gazetteer) -> GeoPoint | None:
    """Coordinates and country for a gazetteer id; None when unknown."""
    row = gazetteer.get(gazetteer_id)
    return row.point if row is not None else None


@dataclass
class EventRecord:
    """An event article with its spatiotemporal anchors and mention counts."""

    article_id: str
    representative_date: DateMention | None
    date_counts: dict[DateKey, int]
    representative_location: str | None
    location_counts: dict[str, int]
    geo: GeoPoint | None
    warnings: list[str] = field(default_factory=list)

    @property
    def anchored(self) -> bool:
        return self.representative_date is not None and self.geo is not None

    @property
    def year(self) -> int | None:
        return self.representative_date.year if self.representative_date else None

    def all_years(self) -> frozenset[int]:
        return frozenset(key[0] for key in self.date_counts)


def _tally(keys_with_offsets: Iterable[tuple[object, int]]):
    counts: dict = {}
    first: dict = {}
    for key, offset in keys_with_offsets:
        counts[key] = counts.get(key, 0) + 1
        if key not in first or offset < first[key]:
            first[key] = offset
    return counts, first


def extract_event(article: Article, gazetteer: Gazetteer) -> EventRecord:
    """Extract anchors for one article; pure function of its text."""
    dates = extract_dates(article.text)
    locations = extract_locations(article.text, gazetteer)

    date_counts, date_first = _tally((d.key, d.char_offset) for d in dates)
    loc_counts, loc_first = _tally((l.gazetteer_id, l.char_offset) for l in locations)

    warnings = []
    rep_key = representative(date_counts, date_first)
    if rep_key is None:
        rep_date = None
        warnings.append("no date mentions")
    else:
        rep_date = DateMention(rep_key[0], rep_key[1], rep_key[2], date_first[rep_key])

    rep_loc = representative(loc_counts, loc_first)
    geo = None
    if rep_loc is None:
        warnings.append("no location mentions")
    else:
        geo = geocode(rep_loc, gazetteer)
        if geo is None:
            warnings.append(f"location {rep_loc!r} not geocodable")

    return EventRecord(
        article_id=article.id,
        representative_date=rep_date,
        date_counts=date_counts,
        representative_location=rep_loc,
        location_counts=loc_counts,
        geo=geo,
        warnings=warnings,
    )


def extract_events(
    articles: Mapping[str, Article], event_ids: Iterable[str], gazetteer: Gazetteer
) -> list[EventRecord]:
    """Extract all selected articles in stable id order."""
    return [extract_event(articles[aid], gazetteer) for aid in sorted(event_ids)]
