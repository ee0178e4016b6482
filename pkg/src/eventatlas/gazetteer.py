"""Offline gazetteer: place-name rows with coordinates and country codes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path


class GazetteerError(Exception):
    """Raised when a gazetteer file fails load-time validation."""


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float
    country_code: str

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise GazetteerError(f"latitude out of range: {self.lat}")
        if not -180.0 <= self.lon <= 180.0:
            raise GazetteerError(f"longitude out of range: {self.lon}")


@dataclass(frozen=True)
class GazetteerRow:
    id: str
    name: str
    point: GeoPoint
    population: int


class Gazetteer:
    """Name -> place lookup with population-priority homonym resolution."""

    def __init__(self, rows: list[GazetteerRow]):
        self.rows = rows
        self._by_id: dict[str, GazetteerRow] = {}
        by_name: dict[str, GazetteerRow] = {}
        for row in rows:
            self._by_id.setdefault(row.id, row)
            best = by_name.get(row.name)
            # homonyms resolve to the most populous place, ties to the smaller id
            if best is None or (row.population, best.id) > (best.population, row.id):
                by_name[row.name] = row
        self._by_name = by_name
        self._scanner = _build_scanner(list(by_name))

    def __len__(self) -> int:
        return len(self._by_id)

    def __contains__(self, gazetteer_id: str) -> bool:
        return gazetteer_id in self._by_id

    def get(self, gazetteer_id: str) -> GazetteerRow | None:
        return self._by_id.get(gazetteer_id)

    def resolve_name(self, name: str) -> GazetteerRow | None:
        return self._by_name.get(name)

    def finditer(self, text: str):
        """Yield regex matches of gazetteer names, longest match first."""
        if self._scanner is None:
            return iter(())
        return self._scanner.finditer(text)


def _build_scanner(names: list[str]) -> re.Pattern[str] | None:
    if not names:
        return None
    # longest alternative first so a containing name beats its substrings
    ordered = sorted(names, key=lambda n: (-len(n), n))
    pattern = "|".join(re.escape(n) for n in ordered)
    return re.compile(rf"(?<!\w)(?:{pattern})(?!\w)")


def load_gazetteer(path: str | Path) -> Gazetteer:
    """Load a tab-separated gazetteer: id, name, lat, lon, country_code, population."""
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise GazetteerError(f"cannot read gazetteer {p}: {exc}") from exc

    rows: list[GazetteerRow] = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 6:
            raise GazetteerError(f"{p}:{lineno}: expected 6 tab-separated fields, got {len(parts)}")
        gid, name, lat_s, lon_s, country, pop_s = parts
        if not gid or not name:
            raise GazetteerError(f"{p}:{lineno}: empty id or name")
        try:
            lat, lon, pop = float(lat_s), float(lon_s), int(pop_s)
        except ValueError as exc:
            raise GazetteerError(f"{p}:{lineno}: {exc}") from exc
        try:
            point = GeoPoint(lat=lat, lon=lon, country_code=country)
        except GazetteerError as exc:
            raise GazetteerError(f"{p}:{lineno}: {exc}") from exc
        rows.append(GazetteerRow(id=gid, name=name, point=point, population=pop))
    return Gazetteer(rows)
