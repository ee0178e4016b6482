"""Popularity and relevance: clickstream PageRank, importance thresholds,
TF-IDF document vectors, and related-article ranking."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from .text import tokenize

log = logging.getLogger(__name__)

DAMPING = 0.85
PAGERANK_EPS = 1e-10
PAGERANK_MAX_ITER = 200


class RelevanceError(Exception):
    pass


class RecMode(str, Enum):
    TOPIC = "TOPIC_REC"
    POPULAR = "POPULAR_REC"


@dataclass
class ClickstreamGraph:
    """Directed reader-transition graph; parallel edges merged, no self-loops."""

    nodes: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def add_edge(self, source: str, target: str, count: int) -> None:
        if count < 1:
            raise RelevanceError(f"transition count must be >= 1, got {count}")
        if source == target:
            return
        self.nodes.add(source)
        self.nodes.add(target)
        key = (source, target)
        self.edges[key] = self.edges.get(key, 0) + count

    def out_edges(self, source: str) -> list[tuple[str, int]]:
        return [(t, c) for (s, t), c in self.edges.items() if s == source]

    def __len__(self) -> int:
        return len(self.nodes)


def load_clickstream(path: str | Path, restrict_to: set[str] | None = None) -> ClickstreamGraph:
    """Load tab-separated transitions: source_id, target_id, count.

    Edges touching ids outside `restrict_to` are dropped; malformed lines
    and self-loops are skipped with a warning entry.
    """
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise RelevanceError(f"cannot read clickstream {p}: {exc}") from exc

    graph = ClickstreamGraph()
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            graph.warnings.append(f"line {lineno}: expected 3 fields, got {len(parts)}")
            continue
        source, target, count_s = parts
        try:
            count = int(count_s)
        except ValueError:
            graph.warnings.append(f"line {lineno}: non-integer count {count_s!r}")
            continue
        if count < 1:
            graph.warnings.append(f"line {lineno}: non-positive count {count}")
            continue
        if source == target:
            graph.warnings.append(f"line {lineno}: self-loop on {source!r} dropped")
            continue
        if restrict_to is not None and (source not in restrict_to or target not in restrict_to):
            continue
        graph.add_edge(source, target, count)
    return graph


def pagerank(
    graph: ClickstreamGraph,
    damping: float = DAMPING,
    eps: float = PAGERANK_EPS,
    max_iter: int = PAGERANK_MAX_ITER,
) -> dict[str, float]:
    """Power iteration with uniform teleport and uniform dangling redistribution.

    Transition probabilities are proportional to edge counts. Converged when
    the L1 delta drops below eps; logs a warning otherwise.
    """
    if not graph.nodes:
        raise RelevanceError("pagerank needs a non-empty graph")
    nodes = sorted(graph.nodes)
    n = len(nodes)
    pos = {node: i for i, node in enumerate(nodes)}

    out_weight = [0.0] * n
    out_lists: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (s, t), c in graph.edges.items():
        out_weight[pos[s]] += c
        out_lists[pos[s]].append((pos[t], c))

    rank = [1.0 / n] * n
    teleport = (1.0 - damping) / n
    converged = False
    for _ in range(max_iter):
        nxt = [0.0] * n
        dangling = 0.0
        for i in range(n):
            if out_lists[i]:
                share = rank[i] / out_weight[i]
                for j, c in out_lists[i]:
                    nxt[j] += share * c
            else:
                dangling += rank[i]
        spread = dangling / n
        delta = 0.0
        for i in range(n):
            new_val = teleport + damping * (nxt[i] + spread)
            delta += abs(new_val - rank[i])
            rank[i] = new_val
        if delta < eps:
            converged = True
            break
    if not converged:
        log.warning("pagerank did not converge below %.1e in %d iterations", eps, max_iter)
    return {node: rank[pos[node]] for node in nodes}


@dataclass
class ImportanceScores:
    """The two per-article importance maps the recommendation toggle switches."""

    pagerank: dict[str, float]
    topic_contribution: dict[str, float]
    popularity: dict[str, float] = field(default_factory=dict)

    @classmethod
    def compute(
        cls,
        corpus_ids: Iterable[str],
        pagerank_raw: Mapping[str, float],
        topic_contribution: Mapping[str, float],
    ) -> "ImportanceScores":
        ids = sorted(corpus_ids)
        raw = {aid: float(pagerank_raw.get(aid, 0.0)) for aid in ids}
        return cls(
            pagerank=raw,
            topic_contribution={aid: float(topic_contribution.get(aid, 0.0)) for aid in ids},
            popularity=minmax_rescale(raw),
        )

    def score(self, article_id: str, mode: RecMode) -> float:
        if mode is RecMode.TOPIC:
            return self.topic_contribution.get(article_id, 0.0)
        return self.popularity.get(article_id, 0.0)


def minmax_rescale(values: Mapping[str, float]) -> dict[str, float]:
    """Min-max rescale to [0, 1]; a constant map rescales to all ones."""
    if not values:
        return {}
    lo, hi = min(values.values()), max(values.values())
    if hi == lo:
        return {k: 1.0 for k in values}
    span = hi - lo
    return {k: (v - lo) / span for k, v in values.items()}


def is_important(score: float, threshold: float) -> bool:
    """The shared recommendation predicate: strictly above the threshold."""
    return score > threshold


def important_events(
    event_ids: Iterable[str], scores: ImportanceScores, mode: RecMode, threshold: float
) -> set[str]:
    """Ids whose active-mode score exceeds the threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise RelevanceError(f"threshold must be in [0, 1], got {threshold}")
    return {aid for aid in event_ids if is_important(scores.score(aid, mode), threshold)}


@dataclass
class DocVector:
    """L2-normalized sparse TF-IDF weights over the shared vocabulary."""

    article_id: str
    weights: dict[str, float]

    @property
    def empty(self) -> bool:
        return not self.weights

    def dot(self, other: "DocVector") -> float:
        a, b = self.weights, other.weights
        if len(b) < len(a):
            a, b = b, a
        return sum(w * b[t] for t, w in a.items() if t in b)


def compute_idf(texts: Mapping[str, str]) -> dict[str, float]:
    """Smoothed inverse document frequency: idf = ln((1+D)/(1+df)) + 1."""
    n_docs = len(texts)
    df: dict[str, int] = {}
    for text in texts.values():
        for term in set(tokenize(text)):
            df[term] = df.get(term, 0) + 1
    return {term: math.log((1 + n_docs) / (1 + count)) + 1.0 for term, count in df.items()}


def _vectorize(aid: str, text: str, idf: Mapping[str, float]) -> DocVector:
    tf: dict[str, int] = {}
    for term in tokenize(text):
        if term in idf:
            tf[term] = tf.get(term, 0) + 1
    weights = {term: count * idf[term] for term, count in tf.items()}
    norm = math.sqrt(sum(w * w for w in weights.values()))
    if norm > 0:
        weights = {t: w / norm for t, w in weights.items()}
    else:
        weights = {}
    return DocVector(article_id=aid, weights=weights)


def embed_documents(texts: Mapping[str, str]) -> dict[str, DocVector]:
    """Deterministic TF-IDF vectors, L2-normalized; empty docs get zero vectors."""
    idf = compute_idf(texts)
    vectors = {}
    for aid, text in texts.items():
        vec = _vectorize(aid, text, idf)
        if vec.empty:
            log.warning("document %r is empty after tokenization, zero vector", aid)
        vectors[aid] = vec
    return vectors


def embed_query(query: str, idf: Mapping[str, float]) -> DocVector:
    """Embed a search query with the corpus idf; unknown terms are dropped."""
    return _vectorize("__query__", query, idf)


def cosine_similarity(a: DocVector, b: DocVector) -> float:
    return a.dot(b)  # vectors are already unit length


def related_articles(
    article_id: str,
    mode: RecMode,
    vectors: Mapping[str, DocVector],
    graph: ClickstreamGraph,
    k: int = 10,
) -> list[tuple[str, float]]:
    """Top related articles: cosine similarity or clickstream transitions.

    TOPIC mode ranks by document cosine (self excluded); POPULAR mode ranks
    the outgoing clickstream neighbors by transition count. Ties break by id.
    """
    if article_id not in vectors:
        raise RelevanceError(f"unknown article id {article_id!r}")
    if mode is RecMode.POPULAR:
        neighbors = graph.out_edges(article_id)
        ranked = sorted(neighbors, key=lambda e: (-e[1], e[0]))
        return [(t, float(c)) for t, c in ranked[:k]]

    me = vectors[article_id]
    scored = [
        (other, cosine_similarity(me, vec))
        for other, vec in vectors.items()
        if other != article_id
    ]
    scored.sort(key=lambda e: (-e[1], e[0]))
    return scored[:k]
