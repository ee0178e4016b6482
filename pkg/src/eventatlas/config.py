"""Declarative pipeline configuration, one JSON file for every stage."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import index as idx
from . import relevance, topics


class ConfigError(Exception):
    pass


@dataclass
class ModelConfig:
    k_min: int = 4
    k_max: int = 8
    k_step: int = 2
    alpha: float | None = None  # None -> 50/k
    beta: float = topics.DEFAULT_BETA
    iterations: int = topics.DEFAULT_ITERATIONS
    seed: int = 0
    coherence_window: int = topics.DEFAULT_COHERENCE_WINDOW

    def candidates(self) -> list[int]:
        if self.k_min > self.k_max or self.k_step < 1:
            raise ConfigError(f"bad candidate range k_min={self.k_min} k_max={self.k_max} k_step={self.k_step}")
        return list(range(self.k_min, self.k_max + 1, self.k_step))


@dataclass
class RankConfig:
    damping: float = relevance.DAMPING
    eps: float = relevance.PAGERANK_EPS
    max_iter: int = relevance.PAGERANK_MAX_ITER


@dataclass
class IndexConfig:
    cluster_base_deg: float = idx.CLUSTER_BASE_CELL_DEG
    zoom_min: int = idx.ZOOM_MIN
    zoom_max: int = idx.ZOOM_MAX
    merge_window_years: float | None = None  # None -> scaled to active range


@dataclass
class ServeConfig:
    host: str = "127.0.0.1"
    port: int = 8000


@dataclass
class Config:
    snapshot: Path
    gazetteer: Path
    clickstream: Path
    out_dir: Path
    seeds: list[str]
    notes_path: Path | None = None
    transitive_categories: bool = False
    model: ModelConfig = field(default_factory=ModelConfig)
    rank: RankConfig = field(default_factory=RankConfig)
    index: IndexConfig = field(default_factory=IndexConfig)
    serve: ServeConfig = field(default_factory=ServeConfig)

    # stage artifact paths
    @property
    def selection_path(self) -> Path:
        return self.out_dir / "selection.json"

    @property
    def events_path(self) -> Path:
        return self.out_dir / "events.json"

    @property
    def model_path(self) -> Path:
        return self.out_dir / "model.json"

    @property
    def scores_path(self) -> Path:
        return self.out_dir / "scores.json"

    @property
    def index_path(self) -> Path:
        return self.out_dir / "index.json"

    @property
    def notes_file(self) -> Path:
        return self.notes_path if self.notes_path else self.out_dir / "notes.jsonl"


def _subsection(cls, doc: dict, name: str):
    section = doc.get(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f"section {name!r} must be an object")
    known = {f for f in cls.__dataclass_fields__}
    unknown = set(section) - known
    if unknown:
        raise ConfigError(f"unknown keys in section {name!r}: {sorted(unknown)}")
    return cls(**section)


def load_config(path: str | Path) -> Config:
    """Read a config file; relative paths resolve against its directory."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {p} is not valid JSON: {exc}") from exc

    base = p.parent

    def resolve(key: str, required: bool = True) -> Path | None:
        value = doc.get(key)
        if value is None:
            if required:
                raise ConfigError(f"config is missing required path {key!r}")
            return None
        return (base / value).resolve() if not Path(value).is_absolute() else Path(value)

    seeds = doc.get("seeds") or []
    if not isinstance(seeds, list) or not all(isinstance(s, str) for s in seeds):
        raise ConfigError("'seeds' must be a list of article ids")

    return Config(
        snapshot=resolve("snapshot"),
        gazetteer=resolve("gazetteer"),
        clickstream=resolve("clickstream"),
        out_dir=resolve("out_dir"),
        seeds=seeds,
        notes_path=resolve("notes_path", required=False),
        transitive_categories=bool(doc.get("transitive_categories", False)),
        model=_subsection(ModelConfig, doc, "model"),
        rank=_subsection(RankConfig, doc, "rank"),
        index=_subsection(IndexConfig, doc, "index"),
        serve=_subsection(ServeConfig, doc, "serve"),
    )
