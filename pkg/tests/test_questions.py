import numpy as np
import pytest

from refind.corpus import compute_corpus_stats
from refind.errors import EmptySessionError, InvalidAnswerError, UnknownQuestionError
from refind.questions import (
    OPTION_A,
    OPTION_B,
    SKIP,
    apply_answer,
    build_attribute_view,
    build_catalog,
    catalog_index,
    make_answer,
    mark_asked,
    new_session,
    session_metrics,
    session_transcript,
)

from conftest import make_record


@pytest.fixture
def pages_catalog(pages_corpus):
    stats = compute_corpus_stats(pages_corpus)
    return build_catalog(stats, policy="mean")


@pytest.fixture
def pages_attrs(pages_corpus):
    return build_attribute_view(pages_corpus)


def answered(session, question_id, value, attrs, catalog, elapsed=1.0):
    session = mark_asked(session, question_id)
    return apply_answer(session, make_answer(question_id, value, elapsed), catalog, attrs)


class TestBuildCatalog:
    def test_pages_recommendation_wording_mean(self, pages_catalog):
        q = catalog_index(pages_catalog)["q_pages"]
        assert q.split_threshold == pytest.approx(53.0)
        assert q.option_a == "More than 53 pages"
        assert q.option_b == "Less than or equal to 53 pages"

    def test_median_policy_uses_median_threshold(self, pages_corpus):
        stats = compute_corpus_stats(pages_corpus)
        q = catalog_index(build_catalog(stats, policy="median"))["q_pages"]
        assert q.split_threshold == pytest.approx(11.0)
        assert q.option_a == "More than 11 pages"

    def test_constant_attribute_emits_no_split(self, pages_corpus):
        # every record shares file_size, so min == max and no question exists
        stats = compute_corpus_stats(pages_corpus)
        ids = {q.question_id for q in build_catalog(stats)}
        assert "q_file_size" not in ids
        assert "q_pages" in ids

    def test_policies_differ_only_in_thresholds(self):
        rng = np.random.default_rng(3)
        corpus = [
            make_record(doc_id=f"d{i}", pages=int(p), file_size=int(s),
                        image_count=int(c))
            for i, (p, s, c) in enumerate(zip(
                rng.integers(1, 400, 30), rng.integers(10**3, 10**7, 30),
                rng.integers(0, 12, 30)))
        ]
        stats = compute_corpus_stats(corpus)
        by_mean = build_catalog(stats, policy="mean")
        by_median = build_catalog(stats, policy="median")
        assert len(by_mean) == len(by_median)
        for qm, qd in zip(by_mean, by_median):
            assert (qm.question_id, qm.attribute, qm.kind, qm.options) == \
                   (qd.question_id, qd.attribute, qd.kind, qd.options)

    def test_degenerate_median_falls_back_inside_range(self):
        # median equals min for zero-heavy counts; the threshold must stay
        # strictly between min and max
        corpus = [make_record(doc_id=f"d{i}", image_count=c)
                  for i, c in enumerate([0, 0, 0, 0, 6])]
        stats = compute_corpus_stats(corpus)
        q = catalog_index(build_catalog(stats, policy="median"))["q_image_count"]
        assert 0 < q.split_threshold < 6

    def test_invalid_policy_rejected(self, pages_corpus):
        with pytest.raises(ValueError):
            build_catalog(compute_corpus_stats(pages_corpus), policy="mode")

    def test_categorical_options_ordered_by_frequency(self):
        corpus = [make_record(doc_id=f"d{i}", file_type=t)
                  for i, t in enumerate(["pdf", "pdf", "txt", "html", "html", "html"])]
        q = catalog_index(build_catalog(compute_corpus_stats(corpus)))["q_file_type"]
        assert q.options == ("html", "pdf", "txt")


class TestApplyAnswer:
    def test_skip_is_no_op(self, pages_catalog, pages_attrs):
        session = new_session("s", list(pages_attrs))
        after = answered(session, "q_pages", SKIP, pages_attrs, pages_catalog)
        assert after.candidate_ids == session.candidate_ids
        assert len(after.answers) == 1

    def test_option_b_keeps_ties(self, pages_catalog):
        corpus = [make_record(doc_id=f"d{i}", pages=p)
                  for i, p in enumerate([5, 53, 201])]
        attrs = build_attribute_view(corpus)
        session = new_session("s", ["d0", "d1", "d2"])
        after = answered(session, "q_pages", OPTION_B, attrs, pages_catalog)
        assert after.candidate_ids == ("d0", "d1")

    def test_option_a_keeps_strictly_greater(self, pages_catalog):
        corpus = [make_record(doc_id=f"d{i}", pages=p)
                  for i, p in enumerate([5, 53, 201])]
        attrs = build_attribute_view(corpus)
        session = new_session("s", ["d0", "d1", "d2"])
        after = answered(session, "q_pages", OPTION_A, attrs, pages_catalog)
        assert after.candidate_ids == ("d2",)

    def test_precise_tolerance_band(self, pages_catalog):
        # |70-100| = 30 > 25; |80-100| = 20 <= 25; |130-100| = 30 <= 32.5
        corpus = [make_record(doc_id=f"d{i}", pages=p)
                  for i, p in enumerate([70, 80, 130])]
        attrs = build_attribute_view(corpus)
        session = new_session("s", ["d0", "d1", "d2"])
        after = answered(session, "q_pages", 100, attrs, pages_catalog)
        assert after.candidate_ids == ("d1", "d2")
        assert after.answers[0].is_precise

    def test_boolean_filter(self, pages_corpus):
        corpus = pages_corpus[:2] + [make_record(doc_id="d9", has_bibliography=False)]
        stats = compute_corpus_stats(corpus)
        catalog = build_catalog(stats)
        attrs = build_attribute_view(corpus)
        session = new_session("s", [r.doc_id for r in corpus])
        after = answered(session, "q_has_bibliography", False, attrs, catalog)
        assert after.candidate_ids == ("d9",)

    def test_unknown_question_rejected(self, pages_catalog, pages_attrs):
        session = new_session("s", list(pages_attrs))
        with pytest.raises(UnknownQuestionError):
            apply_answer(session, make_answer("q_nope", SKIP, 0.0),
                         pages_catalog, pages_attrs)

    def test_unasked_question_rejected(self, pages_catalog, pages_attrs):
        session = new_session("s", list(pages_attrs))
        with pytest.raises(UnknownQuestionError):
            apply_answer(session, make_answer("q_pages", OPTION_A, 0.0),
                         pages_catalog, pages_attrs)

    def test_wrong_value_type_rejected(self, pages_catalog, pages_attrs):
        session = mark_asked(new_session("s", list(pages_attrs)), "q_pages")
        with pytest.raises(InvalidAnswerError):
            apply_answer(session, make_answer("q_pages", "tiny", 0.0),
                         pages_catalog, pages_attrs)


class TestSessionMetrics:
    def test_hand_computed_example(self):
        session = new_session("s", ["d0"])
        values = [SKIP, SKIP, 10.0, 20.0, 30.0, OPTION_A, OPTION_A, OPTION_A,
                  OPTION_A, OPTION_A]
        answers = tuple(
            make_answer(f"q{i}", v, 12.0) for i, v in enumerate(values)
        )
        session = session.__class__(
            session_id="s", candidate_ids=("d0",), answers=answers,
            asked=tuple(f"q{i}" for i in range(10)),
        )
        m = session_metrics(session)
        assert m.T_a == pytest.approx(12.0)
        assert m.P_s == pytest.approx(0.2)
        assert m.P_e == pytest.approx(0.3)
        assert m.P_s + m.P_e <= 1.0

    def test_single_zero_second_answer(self, pages_catalog, pages_attrs):
        session = new_session("s", list(pages_attrs))
        session = answered(session, "q_pages", OPTION_B, pages_attrs, pages_catalog,
                           elapsed=0.0)
        assert session_metrics(session).T_a == 0.0

    def test_all_skipped(self, pages_catalog, pages_attrs):
        session = new_session("s", list(pages_attrs))
        for q in pages_catalog:
            session = answered(session, q.question_id, SKIP, pages_attrs, pages_catalog)
        m = session_metrics(session)
        assert m.P_s == 1.0
        assert m.P_e == 0.0

    def test_empty_session_raises(self):
        with pytest.raises(EmptySessionError):
            session_metrics(new_session("s", ["d0"]))

    def test_asked_but_unanswered_yields_zeros(self):
        session = mark_asked(new_session("s", ["d0"]), "q_pages")
        m = session_metrics(session)
        assert (m.T_a, m.P_s, m.P_e) == (0.0, 0.0, 0.0)


class TestSessionProperties:
    def _random_answer(self, rng, q, attrs):
        kind = q.kind
        if rng.random() < 0.25:
            return SKIP
        if kind == "binary_split":
            if rng.random() < 0.3:
                values = [attrs[d][q.attribute] for d in attrs]
                return float(rng.choice(values))
            return OPTION_A if rng.random() < 0.5 else OPTION_B
        if kind == "boolean":
            return bool(rng.random() < 0.5)
        return q.options[int(rng.integers(0, len(q.options)))]

    @pytest.fixture
    def world(self):
        from refind.simulate import build_view
        from refind.synth import generate_corpus

        world = generate_corpus(9, 80)
        view = build_view(world)
        stats = compute_corpus_stats(world.records, view.summaries.values())
        return build_catalog(stats), view.attrs

    def test_monotone_and_order_independent(self, world):
        catalog, attrs = world
        rng = np.random.default_rng(17)
        for trial in range(30):
            session = new_session(f"s{trial}", list(attrs))
            sizes = [len(session.candidate_ids)]
            answers = []
            for q in catalog:
                value = self._random_answer(rng, q, attrs)
                answers.append((q.question_id, value))
                session = answered(session, q.question_id, value, attrs, catalog)
                sizes.append(len(session.candidate_ids))
            assert all(a >= b for a, b in zip(sizes, sizes[1:]))

            # same non-skip answers in reverse order give the same survivors
            replay = new_session("r", list(attrs))
            for qid, value in reversed(answers):
                replay = answered(replay, qid, value, attrs, catalog)
            assert set(replay.candidate_ids) == set(session.candidate_ids)

    def test_truthful_answers_keep_target(self, world):
        catalog, attrs = world
        rng = np.random.default_rng(23)
        ids = list(attrs)
        for trial in range(30):
            target = ids[int(rng.integers(0, len(ids)))]
            tv = attrs[target]
            session = new_session(f"s{trial}", ids)
            for q in catalog:
                u = rng.random()
                if u < 0.2:
                    value = SKIP
                elif q.kind == "binary_split":
                    if u < 0.4:
                        value = float(tv[q.attribute])  # truthful precise
                    else:
                        value = OPTION_A if tv[q.attribute] > q.split_threshold else OPTION_B
                elif q.kind == "boolean":
                    value = bool(tv[q.attribute])
                else:
                    value = tv[q.attribute]
                session = answered(session, q.question_id, value, attrs, catalog)
            assert target in session.candidate_ids


class TestTranscript:
    def test_transcript_is_json_ready(self, pages_catalog, pages_attrs):
        session = new_session("s", list(pages_attrs))
        session = answered(session, "q_pages", OPTION_B, pages_attrs, pages_catalog,
                           elapsed=3.5)
        transcript = session_transcript(session)
        import json

        parsed = json.loads(json.dumps(transcript))
        assert parsed["session_id"] == "s"
        assert parsed["answers"][0]["value"] == OPTION_B
        assert parsed["metrics"]["T_a"] == pytest.approx(3.5)
        assert set(parsed["candidate_ids"]) <= set(pages_attrs)
