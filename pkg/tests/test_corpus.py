import math

import pytest
from hypothesis import given, strategies as st

from refind.corpus import (
    UserProfile,
    compute_corpus_stats,
    dumps_corpus,
    read_corpus,
    topic_distance,
    validate_document,
    write_corpus,
)
from refind.errors import EmptyCorpusError, VocabularyMismatchError

from conftest import make_record, unit_vector


class TestValidateDocument:
    def test_valid_record_has_empty_report(self):
        report = validate_document(make_record())
        assert report.ok
        assert report.violations == ()

    def test_zero_pages_reported(self):
        report = validate_document(make_record(pages=0))
        assert not report.ok
        assert any("pages" in v for v in report.violations)

    def test_unit_topic_vector_accepted(self):
        report = validate_document(make_record(topic_vector=unit_vector(0.3, 0.4, 0.5)))
        assert report.ok

    def test_created_after_modified_reported(self):
        report = validate_document(make_record(created_at=200, modified_at=100))
        assert any("created_at" in v for v in report.violations)

    def test_non_unit_topic_vector_reported(self):
        report = validate_document(make_record(topic_vector=(0.5, 0.5, 0.0)))
        assert any("topic_vector" in v for v in report.violations)

    def test_all_zero_topic_vector_accepted(self):
        assert validate_document(make_record(topic_vector=(0.0, 0.0, 0.0))).ok

    def test_gender_count_mismatch_reported(self):
        report = validate_document(make_record(author_count=3))
        assert any("author_genders" in v for v in report.violations)

    def test_negative_counts_reported(self):
        report = validate_document(make_record(image_count=-1, file_size=-5))
        assert any("image_count" in v for v in report.violations)
        assert any("file_size" in v for v in report.violations)

    def test_validation_is_pure(self):
        record = make_record(pages=0, created_at=5, modified_at=1)
        assert validate_document(record) == validate_document(record)


class TestTopicDistance:
    def test_identical_unit_vectors(self, profile):
        doc = make_record(topic_vector=(1.0, 0.0, 0.0))
        assert topic_distance(doc, profile) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_unit_vectors(self, profile):
        doc = make_record(topic_vector=(0.0, 1.0, 0.0))
        assert topic_distance(doc, profile) == pytest.approx(1.0)

    def test_hand_computed_example(self):
        # (0.6, 0.8) . (1, 0) = 0.6, so distance is 0.4
        doc = make_record(topic_vector=(0.6, 0.8))
        profile = UserProfile(interest_vector=(1.0, 0.0))
        assert topic_distance(doc, profile) == pytest.approx(0.4)

    def test_zero_vector_yields_one(self, profile):
        doc = make_record(topic_vector=(0.0, 0.0, 0.0))
        assert topic_distance(doc, profile) == 1.0

    def test_dimension_mismatch_raises(self, profile):
        doc = make_record(topic_vector=(1.0, 0.0))
        with pytest.raises(VocabularyMismatchError):
            topic_distance(doc, profile)

    @given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=6),
           st.lists(st.floats(0.0, 1.0), min_size=2, max_size=6))
    def test_symmetric_and_bounded(self, a, b):
        n = min(len(a), len(b))
        a, b = a[:n], b[:n]
        doc_a = make_record(topic_vector=tuple(a))
        doc_b = make_record(topic_vector=tuple(b))
        d_ab = topic_distance(doc_a, UserProfile(interest_vector=tuple(b)))
        d_ba = topic_distance(doc_b, UserProfile(interest_vector=tuple(a)))
        assert d_ab == pytest.approx(d_ba)
        assert -1e-12 <= d_ab <= 2 + 1e-12


class TestCorpusStats:
    def test_worked_pages_example(self, pages_corpus):
        stats = compute_corpus_stats(pages_corpus)
        assert stats.numeric["pages"].mean == pytest.approx(53.0)
        assert stats.numeric["pages"].median == 11
        assert stats.numeric["pages"].min == 5
        assert stats.numeric["pages"].max == 201

    def test_singleton(self):
        stats = compute_corpus_stats([make_record(pages=7)])
        assert stats.numeric["pages"].mean == 7
        assert stats.numeric["pages"].median == 7

    def test_even_count_uses_lower_middle(self):
        corpus = [make_record(doc_id="a", pages=2), make_record(doc_id="b", pages=4)]
        stats = compute_corpus_stats(corpus)
        assert stats.numeric["pages"].mean == pytest.approx(3.0)
        assert stats.numeric["pages"].median == 2

    def test_empty_corpus_raises(self):
        with pytest.raises(EmptyCorpusError):
            compute_corpus_stats([])

    def test_categorical_histogram(self, pages_corpus):
        stats = compute_corpus_stats(pages_corpus)
        assert stats.categorical["file_type"] == {"pdf": 5}
        assert stats.categorical["has_bibliography"] == {True: 5}

    @given(st.lists(st.integers(1, 10_000), min_size=1, max_size=40))
    def test_bounds_hold_for_any_corpus(self, pages):
        corpus = [make_record(doc_id=f"d{i}", pages=p) for i, p in enumerate(pages)]
        st_ = compute_corpus_stats(corpus).numeric["pages"]
        assert st_.min <= st_.median <= st_.max
        assert st_.min <= st_.mean <= st_.max


class TestCorpusIO:
    def test_round_trip(self, tmp_path, pages_corpus):
        path = tmp_path / "corpus.jsonl"
        vocab = ["topic00", "topic01", "topic02"]
        write_corpus(path, vocab, pages_corpus)
        vocab2, records = read_corpus(path)
        assert vocab2 == vocab
        assert records == pages_corpus

    def test_bytes_are_stable(self, pages_corpus):
        vocab = ["a", "b", "c"]
        assert dumps_corpus(vocab, pages_corpus) == dumps_corpus(vocab, pages_corpus)

    def test_missing_header_rejected(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"doc_id": "x"}\n')
        with pytest.raises(EmptyCorpusError):
            read_corpus(path)
