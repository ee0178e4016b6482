from __future__ import annotations

import numpy as np
import pytest

from oracles import (
    MICRO_DOCS,
    MICRO_EXPECTED,
    MICRO_WORDS,
    fabricate_model,
    letter_word,
    oracle_cv,
    synthetic_two_topic_corpus,
)

from eventatlas.topics import (
    TopicModel,
    TopicModelError,
    Vocabulary,
    build_vocabulary,
    coherence_cv,
    fit_lda,
    load_model,
    save_model,
    select_model,
    top_keywords,
)

def generator_rows(vocab: Vocabulary, va, vb) -> np.ndarray:
    gen = np.zeros((2, vocab.size))
    for w in va:
        gen[0, vocab.index[w]] = 1.0 / len(va)
    for w in vb:
        gen[1, vocab.index[w]] = 1.0 / len(vb)
    return gen


def cos(a, b):
    return float(np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b)))


class TestVocabulary:
    def test_empty_docs_dropped_with_warning(self):
        vocab = build_vocabulary({"a": "one two", "b": "is at", "c": "longer tokens here"})
        assert vocab.dropped == ["b"]
        assert set(vocab.doc_ids) == {"a", "c"}

    def test_indices_dense(self):
        vocab = build_vocabulary({"a": "foo bar baz", "b": "bar qux"})
        assert sorted(vocab.index.values()) == list(range(vocab.size))


class TestFitLda:
    def test_single_topic_degeneracy(self):
        vocab = build_vocabulary({"a": "aaa bbb aaa", "b": "bbb ccc"})
        model = fit_lda(vocab, 1, iterations=3, seed=0)
        assert np.allclose(model.theta, 1.0)
        # phi proportional to smoothed corpus term frequencies
        counts = np.zeros(vocab.size)
        for doc in vocab.docs:
            for w in doc:
                counts[w] += 1
        expected = (counts + model.beta) / (counts.sum() + vocab.size * model.beta)
        assert np.allclose(model.phi[0], expected)

    def test_two_topic_recovery(self):
        texts, va, vb = synthetic_two_topic_corpus()
        vocab = build_vocabulary(texts)
        model = fit_lda(vocab, 2, iterations=300, seed=7)
        gen = generator_rows(vocab, va, vb)
        pairings = [
            min(cos(model.phi[0], gen[a]), cos(model.phi[1], gen[b]))
            for a, b in ((0, 1), (1, 0))
        ]
        assert max(pairings) >= 0.8

    def test_same_seed_bit_identical(self):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=40, doc_len=20)
        vocab = build_vocabulary(texts)
        m1 = fit_lda(vocab, 2, iterations=50, seed=3)
        m2 = fit_lda(vocab, 2, iterations=50, seed=3)
        assert np.array_equal(m1.phi, m2.phi)
        assert np.array_equal(m1.theta, m2.theta)

    def test_row_stochastic(self):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=30, doc_len=15)
        vocab = build_vocabulary(texts)
        model = fit_lda(vocab, 3, iterations=20, seed=1, check_invariants=True)
        assert np.allclose(model.phi.sum(axis=1), 1.0, atol=1e-9)
        assert np.allclose(model.theta.sum(axis=1), 1.0, atol=1e-9)

    def test_bad_parameters(self):
        vocab = build_vocabulary({"a": "aaa bbb", "b": "ccc ddd"})
        with pytest.raises(TopicModelError):
            fit_lda(vocab, 0)
        with pytest.raises(TopicModelError):
            fit_lda(vocab, 5)  # k > D
        with pytest.raises(TopicModelError):
            fit_lda(vocab, 2, iterations=0)


class TestTopKeywords:
    def test_matches_brute_force_sort(self):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=30, doc_len=15)
        vocab = build_vocabulary(texts)
        model = fit_lda(vocab, 2, iterations=30, seed=5)
        for t in range(2):
            row = model.phi[t]
            oracle = [
                term
                for _, term in sorted(
                    ((-row[i], term) for i, term in enumerate(vocab.terms))
                )
            ][:10]
            assert top_keywords(model, t) == oracle

    def test_one_hot_topic_puts_term_first_then_lexicographic(self):
        vocab = build_vocabulary({"a": "war", "b": "act bed cat dog"})
        model = fabricate_model([["war"]], vocab)
        model.phi = np.full((1, vocab.size), 0.01)
        model.phi[0, vocab.index["war"]] = 1.0
        words = top_keywords(model, 0)
        assert words[0] == "war"
        assert words[1:] == sorted(w for w in vocab.terms if w != "war")

    def test_n_larger_than_vocab_clamps(self):
        vocab = build_vocabulary({"a": "foo bar"})
        model = fit_lda(vocab, 1, iterations=2, seed=0)
        assert len(top_keywords(model, 0, n=50)) == vocab.size

    def test_topic_out_of_range(self):
        vocab = build_vocabulary({"a": "foo bar"})
        model = fit_lda(vocab, 1, iterations=2, seed=0)
        with pytest.raises(TopicModelError):
            top_keywords(model, 1)


class TestCoherence:
    def test_micro_corpus_matches_oracle(self):
        vocab = build_vocabulary(MICRO_DOCS)
        model = fabricate_model([MICRO_WORDS], vocab)
        got = coherence_cv(model, vocab, window=110)
        window_sets = [set(text.split()) for text in MICRO_DOCS.values()]
        assert got == pytest.approx(oracle_cv(window_sets, MICRO_WORDS), abs=1e-9)
        assert got == pytest.approx(MICRO_EXPECTED, abs=1e-9)

    def test_perfect_association_approaches_one(self):
        docs = {"w1": "xxx yyy", "w2": "xxx yyy", "w3": "xxx yyy", "w4": "zzz"}
        vocab = build_vocabulary(docs)
        model = fabricate_model([["xxx", "yyy"]], vocab)
        assert coherence_cv(model, vocab, window=110) == pytest.approx(1.0, abs=1e-9)

    def test_absent_top_word_contributes_via_smoothing(self):
        vocab = build_vocabulary({"w1": "aaa bbb", "w2": "aaa"})
        model = fabricate_model([["aaa", "zzz"]], vocab)
        value = coherence_cv(model, vocab, window=110)
        assert -1.0 <= value <= 1.0

    def test_range_on_randomized_corpora(self):
        rng = np.random.default_rng(11)
        words = [letter_word("tok", i) for i in range(30)]
        for _ in range(25):
            texts = {
                f"d{i}": " ".join(rng.choice(words, size=rng.integers(3, 40)))
                for i in range(rng.integers(2, 12))
            }
            vocab = build_vocabulary(texts)
            tops = [
                list(rng.choice(words, size=rng.integers(2, 10), replace=False))
                for _ in range(rng.integers(1, 4))
            ]
            model = fabricate_model(tops, vocab)
            value = coherence_cv(model, vocab, window=int(rng.integers(1, 120)))
            assert -1.0 <= value <= 1.0

    def test_sliding_windows_count(self):
        # doc of length 5 with window 3 -> windows {abc, bcd, cde}
        vocab = build_vocabulary({"d": "aaa bbb ccc ddd eee"})
        model = fabricate_model([["aaa", "ccc"]], vocab)
        got = coherence_cv(model, vocab, window=3)
        window_sets = [{"aaa", "bbb", "ccc"}, {"bbb", "ccc", "ddd"}, {"ccc", "ddd", "eee"}]
        assert got == pytest.approx(oracle_cv(window_sets, ["aaa", "ccc"]), abs=1e-9)


class TestSelectModel:
    def test_single_candidate(self):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=20, doc_len=10)
        vocab = build_vocabulary(texts)
        model = select_model(vocab, [2], seeds=1, iterations=20)
        assert model.k == 2
        assert model.coherence is not None

    def test_true_k_wins_on_disjoint_corpus(self):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=80, doc_len=30, seed=5)
        vocab = build_vocabulary(texts)
        model = select_model(vocab, [2, 6], seeds=9, iterations=150, window=30)
        assert model.k == 2

    def test_failed_candidates_are_skipped(self):
        vocab = build_vocabulary({"a": "aaa bbb ccc", "b": "ddd eee fff", "c": "ggg hhh"})
        model = select_model(vocab, [2, 50], seeds=0, iterations=10)  # k=50 > D fails
        assert model.k == 2

    def test_all_failing_raises(self):
        vocab = build_vocabulary({"a": "aaa bbb"})
        with pytest.raises(TopicModelError):
            select_model(vocab, [40, 50], seeds=0, iterations=5)


class TestPersistence:
    def test_roundtrip(self, tmp_path):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=15, doc_len=10)
        vocab = build_vocabulary(texts)
        model = fit_lda(vocab, 2, iterations=10, seed=2)
        model.coherence = coherence_cv(model, vocab, window=20)
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.k == model.k
        assert np.array_equal(loaded.phi, model.phi)
        assert np.array_equal(loaded.theta, model.theta)
        assert loaded.top_keywords == model.top_keywords
        assert loaded.coherence == model.coherence
        assert loaded.vocabulary.terms == model.vocabulary.terms

    def test_version_check(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text('{"format_version": 99}')
        with pytest.raises(TopicModelError):
            load_model(path)


class TestPermutationInvariance:
    def test_relabeling_topics_is_consistent(self):
        texts, _, _ = synthetic_two_topic_corpus(n_docs=20, doc_len=12)
        vocab = build_vocabulary(texts)
        model = fit_lda(vocab, 2, iterations=25, seed=4)
        perm = [1, 0]
        permuted = fabricate_model(
            [model.top_keywords[p] for p in perm], vocab
        )
        permuted.phi = model.phi[perm]
        permuted.theta = model.theta[:, perm]
        assert np.allclose(permuted.theta.sum(axis=1), 1.0)
        c1 = coherence_cv(model, vocab, window=20)
        c2 = coherence_cv(permuted, vocab, window=20)
        assert c1 == pytest.approx(c2, abs=1e-12)
