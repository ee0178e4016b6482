"""Topic modeling: collapsed Gibbs LDA, C_V coherence, coherence-based selection."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from numba import njit

from .text import tokenize

log = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1
DEFAULT_ITERATIONS = 1000
DEFAULT_BETA = 0.01
DEFAULT_COHERENCE_WINDOW = 110
_NPMI_EPS = 1e-12


class TopicModelError(Exception):
    pass


@dataclass
class Vocabulary:
    """Dense term index plus the tokenized documents it was built from."""

    terms: list[str]
    index: dict[str, int]
    doc_ids: list[str]
    docs: list[np.ndarray]  # term-id sequences, document order matches doc_ids
    dropped: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.docs)


def build_vocabulary(texts: Mapping[str, str]) -> Vocabulary:
    """Tokenize a corpus keyed by document id; empty documents are dropped."""
    doc_tokens: dict[str, list[str]] = {}
    dropped = []
    for doc_id in sorted(texts):
        toks = tokenize(texts[doc_id])
        if not toks:
            dropped.append(doc_id)
            continue
        doc_tokens[doc_id] = toks
    if dropped:
        log.warning("dropped %d empty documents after preprocessing: %s", len(dropped), dropped)

    terms = sorted({t for toks in doc_tokens.values() for t in toks})
    index = {t: i for i, t in enumerate(terms)}
    doc_ids = list(doc_tokens)
    docs = [np.array([index[t] for t in doc_tokens[d]], dtype=np.int32) for d in doc_ids]
    return Vocabulary(terms=terms, index=index, doc_ids=doc_ids, docs=docs, dropped=dropped)


@dataclass
class TopicModel:
    k: int
    phi: np.ndarray    # K x V topic-word rows
    theta: np.ndarray  # D x K document-topic rows
    vocabulary: Vocabulary
    top_keywords: list[list[str]]
    alpha: float
    beta: float
    iterations: int
    seed: int
    coherence: float | None = None

    @property
    def doc_ids(self) -> list[str]:
        return self.vocabulary.doc_ids

    def doc_topic(self, doc_id: str) -> np.ndarray:
        return self.theta[self.vocabulary.doc_ids.index(doc_id)]


@njit(cache=True)
def _gibbs(doc_of, word_of, n_docs, n_terms, k, alpha, beta, iterations, seed, check):
    np.random.seed(seed)
    n_tokens = word_of.shape[0]
    z = np.empty(n_tokens, dtype=np.int32)
    ndk = np.zeros((n_docs, k), dtype=np.int64)
    nkw = np.zeros((k, n_terms), dtype=np.int64)
    nk = np.zeros(k, dtype=np.int64)
    nd = np.zeros(n_docs, dtype=np.int64)

    for i in range(n_tokens):
        t = np.random.randint(0, k)
        z[i] = t
        ndk[doc_of[i], t] += 1
        nkw[t, word_of[i]] += 1
        nk[t] += 1
        nd[doc_of[i]] += 1

    cum = np.empty(k, dtype=np.float64)
    vbeta = n_terms * beta
    for _ in range(iterations):
        for i in range(n_tokens):
            d = doc_of[i]
            w = word_of[i]
            t = z[i]
            ndk[d, t] -= 1
            nkw[t, w] -= 1
            nk[t] -= 1
            total = 0.0
            for kk in range(k):
                total += (ndk[d, kk] + alpha) * (nkw[kk, w] + beta) / (nk[kk] + vbeta)
                cum[kk] = total
            u = np.random.random() * total
            t_new = 0
            while cum[t_new] < u:
                t_new += 1
            z[i] = t_new
            ndk[d, t_new] += 1
            nkw[t_new, w] += 1
            nk[t_new] += 1
        if check:
            for d in range(n_docs):
                s = np.int64(0)
                for kk in range(k):
                    s += ndk[d, kk]
                assert s == nd[d]
    return ndk, nkw, nk, nd


def fit_lda(
    corpus: Vocabulary,
    k: int,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
    check_invariants: bool = False,
) -> TopicModel:
    """Fit LDA by collapsed Gibbs sampling; deterministic for a fixed seed.

    phi/theta are estimated from the final sample with alpha/beta smoothing.
    alpha defaults to 50/k.
    """
    n_docs, n_terms = len(corpus), corpus.size
    if k < 1:
        raise TopicModelError(f"topic count must be >= 1, got {k}")
    if k > n_terms or k > n_docs:
        raise TopicModelError(f"topic count {k} exceeds corpus size (D={n_docs}, V={n_terms})")
    if iterations < 1:
        raise TopicModelError(f"iterations must be >= 1, got {iterations}")
    if beta <= 0:
        raise TopicModelError(f"beta must be positive, got {beta}")
    if alpha is None:
        alpha = 50.0 / k
    if alpha <= 0:
        raise TopicModelError(f"alpha must be positive, got {alpha}")

    doc_of = np.concatenate(
        [np.full(len(doc), i, dtype=np.int32) for i, doc in enumerate(corpus.docs)]
    )
    word_of = np.concatenate(corpus.docs)

    ndk, nkw, nk, nd = _gibbs(
        doc_of, word_of, n_docs, n_terms, k, float(alpha), float(beta),
        int(iterations), int(seed), check_invariants,
    )

    phi = (nkw + beta) / (nk[:, None] + n_terms * beta)
    theta = (ndk + alpha) / (nd[:, None] + k * alpha)
    model = TopicModel(
        k=k, phi=phi, theta=theta, vocabulary=corpus,
        top_keywords=[], alpha=alpha, beta=beta, iterations=iterations, seed=seed,
    )
    model.top_keywords = [top_keywords(model, t) for t in range(k)]
    return model


def top_keywords(model: TopicModel, topic: int, n: int = 10) -> list[str]:
    """The n highest-probability terms of one topic, ties lexicographic."""
    if not 0 <= topic < model.k:
        raise TopicModelError(f"topic {topic} out of range [0, {model.k})")
    row = model.phi[topic]
    order = sorted(range(len(row)), key=lambda w: (-row[w], model.vocabulary.terms[w]))
    return [model.vocabulary.terms[w] for w in order[:n]]


def _window_counts(docs: Sequence[np.ndarray], tracked: dict[int, int], window: int):
    """Sliding-window occurrence counts for tracked term ids.

    Returns (total windows, per-word window counts, pair co-occurrence counts)
    with words indexed by their position in `tracked`.
    """
    n = len(tracked)
    occur = np.zeros(n, dtype=np.int64)
    joint = np.zeros((n, n), dtype=np.int64)
    total = 0
    for doc in docs:
        length = len(doc)
        if length == 0:
            continue
        n_windows = max(1, length - window + 1)
        total += n_windows
        for start in range(n_windows):
            seen = {tracked[t] for t in doc[start : start + window].tolist() if t in tracked}
            if not seen:
                continue
            present = sorted(seen)
            for a_pos, a in enumerate(present):
                occur[a] += 1
                for b in present[a_pos + 1 :]:
                    joint[a, b] += 1
                    joint[b, a] += 1
    for i in range(n):
        joint[i, i] = occur[i]  # a window holding w trivially holds (w, w)
    return total, occur, joint


def _npmi(p_joint: float, p_a: float, p_b: float) -> float:
    # zero marginals contribute nothing rather than dividing by zero
    if p_a <= 0.0 or p_b <= 0.0:
        return 0.0
    num = math.log((p_joint + _NPMI_EPS) / (p_a * p_b))
    den = -math.log(p_joint + _NPMI_EPS)
    return num / den


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def coherence_cv(model: TopicModel, corpus: Vocabulary, window: int = DEFAULT_COHERENCE_WINDOW) -> float:
    """Coherence of the model's top keywords under sliding-window NPMI.

    Every top word gets a vector of NPMI associations against the topic's
    word set; the topic score is the mean cosine between each word's vector
    and the set's summed vector, and the model score is the mean over topics.
    Always in [-1, 1].
    """
    if window < 1:
        raise TopicModelError(f"window must be >= 1, got {window}")

    tracked_terms = sorted({t for words in model.top_keywords for t in words if t in corpus.index})
    tracked = {corpus.index[t]: i for i, t in enumerate(tracked_terms)}
    pos = {t: i for i, t in enumerate(tracked_terms)}
    total, occur, joint = _window_counts(corpus.docs, tracked, window)
    if total == 0:
        return 0.0

    topic_scores = []
    for words in model.top_keywords:
        idx = [pos.get(w, -1) for w in words]
        m = len(idx)
        npmi = np.zeros((m, m))
        for a in range(m):
            for b in range(m):
                ia, ib = idx[a], idx[b]
                if ia < 0 or ib < 0:
                    continue  # word absent from the corpus: zero association
                npmi[a, b] = _npmi(joint[ia, ib] / total, occur[ia] / total, occur[ib] / total)
        set_vector = npmi.sum(axis=0)
        sims = [_cosine(npmi[a], set_vector) for a in range(m)]
        topic_scores.append(float(np.mean(sims)) if sims else 0.0)
    return float(np.mean(topic_scores)) if topic_scores else 0.0


@dataclass
class CandidateResult:
    k: int
    seed: int
    coherence: float | None
    error: str | None = None


def select_model(
    corpus: Vocabulary,
    k_candidates: Sequence[int],
    seeds: int | Sequence[int] = 0,
    alpha: float | None = None,
    beta: float = DEFAULT_BETA,
    iterations: int = DEFAULT_ITERATIONS,
    window: int = DEFAULT_COHERENCE_WINDOW,
    report: list[CandidateResult] | None = None,
) -> TopicModel:
    """Fit every candidate topic count and keep the most coherent model.

    Ties go to the smaller k. Per-candidate failures are recorded and only
    raise if every candidate fails.
    """
    candidates = sorted(set(k_candidates))
    if not candidates:
        raise TopicModelError("no candidate topic counts given")
    if isinstance(seeds, int):
        seed_list = [seeds] * len(candidates)
    else:
        seed_list = list(seeds)
        if len(seed_list) != len(candidates):
            raise TopicModelError("seeds must be a single int or one per candidate")

    best: TopicModel | None = None
    errors = []
    for k, seed in zip(candidates, seed_list):
        try:
            model = fit_lda(corpus, k, alpha=alpha, beta=beta, iterations=iterations, seed=seed)
        except TopicModelError as exc:
            errors.append(f"k={k}: {exc}")
            if report is not None:
                report.append(CandidateResult(k=k, seed=seed, coherence=None, error=str(exc)))
            continue
        model.coherence = coherence_cv(model, corpus, window=window)
        if report is not None:
            report.append(CandidateResult(k=k, seed=seed, coherence=model.coherence))
        log.info("candidate k=%d coherence=%.4f", k, model.coherence)
        if best is None or model.coherence > best.coherence:  # ties keep smaller k
            best = model
    if best is None:
        raise TopicModelError("all candidates failed: " + "; ".join(errors))
    return best


def save_model(model: TopicModel, path: str | Path) -> None:
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "k": model.k,
        "alpha": model.alpha,
        "beta": model.beta,
        "iterations": model.iterations,
        "seed": model.seed,
        "coherence": model.coherence,
        "vocabulary": model.vocabulary.terms,
        "doc_ids": model.vocabulary.doc_ids,
        "docs": [doc.tolist() for doc in model.vocabulary.docs],
        "dropped_docs": model.vocabulary.dropped,
        "phi": model.phi.tolist(),
        "theta": model.theta.tolist(),
        "keywords": model.top_keywords,
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_model(path: str | Path) -> TopicModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise TopicModelError(f"unsupported model format version {version!r}")
    terms = doc["vocabulary"]
    vocab = Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        doc_ids=doc["doc_ids"],
        docs=[np.array(d, dtype=np.int32) for d in doc["docs"]],
        dropped=doc.get("dropped_docs", []),
    )
    return TopicModel(
        k=doc["k"],
        phi=np.array(doc["phi"]),
        theta=np.array(doc["theta"]),
        vocabulary=vocab,
        top_keywords=[list(words) for words in doc["keywords"]],
        alpha=doc["alpha"],
        beta=doc["beta"],
        iterations=doc["iterations"],
        seed=doc["seed"],
        coherence=doc["coherence"],
    )
