import pytest
from fastapi.testclient import TestClient

from refind.corpus import compute_corpus_stats
from refind.questions import OPTION_A, OPTION_B, build_catalog
from refind.service import AppState, create_app
from refind.simulate import build_view
from refind.synth import generate_corpus


class FakeClock:
    def __init__(self):
        self.t = 0.0

    def __call__(self):
        return self.t

    def advance(self, dt):
        self.t += dt


@pytest.fixture(scope="module")
def demo_parts():
    state = AppState.demo(seed=5, n_docs=60)
    return state.view, state.catalog, state.candidate_model, state.target_model


@pytest.fixture
def clock():
    return FakeClock()


@pytest.fixture
def client(demo_parts, clock):
    view, catalog, cm, tm = demo_parts
    state = AppState(view, catalog, cm, tm, clock=clock)
    return TestClient(create_app(state))


def first_question(client):
    created = client.post("/sessions").json()
    return created["session_id"], created["question"], created["candidate_count"]


class TestSessionLifecycle:
    def test_healthz(self, client):
        assert client.get("/healthz").json() == {"status": "ok"}

    def test_create_session_full_corpus(self, client):
        sid, question, count = first_question(client)
        assert count == 60
        assert question["index"] == 1
        assert question["question_id"]

    def test_distinct_session_ids(self, client):
        a = client.post("/sessions").json()["session_id"]
        b = client.post("/sessions").json()["session_id"]
        assert a != b

    def test_unfitted_models_conflict(self, demo_parts, clock):
        view, catalog, _, _ = demo_parts
        state = AppState(view, catalog, None, None, clock=clock)
        bare = TestClient(create_app(state))
        response = bare.post("/sessions")
        assert response.status_code == 409

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope/results").status_code == 404
        assert client.get("/sessions/nope/question").status_code == 404

    def test_skip_preserves_count(self, client):
        sid, question, count = first_question(client)
        body = client.post(f"/sessions/{sid}/skip",
                           json={"question_id": question["question_id"]}).json()
        assert body["remaining_count"] == count
        assert body["question"]["index"] == 2

    def test_answer_shrinks_monotonically(self, client):
        sid, question, count = first_question(client)
        previous = count
        while question is not None:
            body = client.post(
                f"/sessions/{sid}/answer",
                json={"question_id": question["question_id"], "value": OPTION_B
                      if question["kind"] == "binary_split" else question["options"][0]},
            ).json()
            assert body["remaining_count"] <= previous
            previous = body["remaining_count"]
            question = body.get("question")
            if body["done"]:
                break

    def test_eliminating_answer_reports_done(self, client):
        sid, question, _ = first_question(client)
        while question["kind"] != "binary_split":  # pragma: no cover
            body = client.post(f"/sessions/{sid}/skip",
                               json={"question_id": question["question_id"]}).json()
            question = body["question"]
        # a precise answer absurdly far away keeps nothing
        body = client.post(
            f"/sessions/{sid}/answer",
            json={"question_id": question["question_id"], "value": 10 ** 12},
        ).json()
        assert body["remaining_count"] == 0
        assert body["done"] is True
        results = client.get(f"/sessions/{sid}/results").json()
        assert results["results"] == []
        assert results["candidate_count"] == 0

    def test_stale_question_conflict(self, client):
        sid, question, _ = first_question(client)
        response = client.post(f"/sessions/{sid}/answer",
                               json={"question_id": "q_wrong", "value": OPTION_A})
        assert response.status_code == 409

    def test_invalid_value_unprocessable(self, client):
        sid, question, _ = first_question(client)
        response = client.post(
            f"/sessions/{sid}/answer",
            json={"question_id": question["question_id"], "value": ["a", "list"]})
        assert response.status_code == 422


class TestResults:
    def test_skip_everything_ranks_full_corpus(self, client):
        sid, question, count = first_question(client)
        while question is not None:
            body = client.post(f"/sessions/{sid}/skip",
                               json={"question_id": question["question_id"]}).json()
            question = body.get("question")
            if body["done"]:
                break
        results = client.get(f"/sessions/{sid}/results").json()
        assert results["candidate_count"] == count
        assert len(results["results"]) == count
        assert results["metrics"]["P_s"] == 1.0
        ranks = [r["rank"] for r in results["results"]]
        assert ranks == list(range(1, count + 1))

    def test_results_idempotent_without_new_answers(self, client):
        sid, question, _ = first_question(client)
        client.post(f"/sessions/{sid}/skip",
                    json={"question_id": question["question_id"]})
        first = client.get(f"/sessions/{sid}/results").json()
        second = client.get(f"/sessions/{sid}/results").json()
        assert first == second

    def test_results_available_before_any_answer(self, client):
        sid, _, count = first_question(client)
        results = client.get(f"/sessions/{sid}/results").json()
        assert results["candidate_count"] == count
        assert results["metrics"] == {"T_a": 0.0, "P_s": 0.0, "P_e": 0.0}

    def test_ranked_items_carry_contract_fields(self, client):
        sid, question, _ = first_question(client)
        client.post(f"/sessions/{sid}/skip",
                    json={"question_id": question["question_id"]})
        results = client.get(f"/sessions/{sid}/results").json()
        item = results["results"][0]
        assert set(item.keys()) == {"doc_id", "F_i", "d", "rank"}
        assert item["doc_id"] in results["documents"]
        assert "path" in results["documents"][item["doc_id"]]


class TestTiming:
    def test_elapsed_measured_server_side(self, demo_parts):
        view, catalog, cm, tm = demo_parts
        clock = FakeClock()
        state = AppState(view, catalog, cm, tm, clock=clock)
        client = TestClient(create_app(state))
        sid, question, _ = first_question(client)
        clock.advance(7.0)
        client.post(f"/sessions/{sid}/skip",
                    json={"question_id": question["question_id"]})
        results = client.get(f"/sessions/{sid}/results").json()
        assert results["metrics"]["T_a"] == pytest.approx(7.0)

    def test_idle_session_expires(self, demo_parts):
        view, catalog, cm, tm = demo_parts
        clock = FakeClock()
        state = AppState(view, catalog, cm, tm, clock=clock, session_ttl_s=100.0)
        client = TestClient(create_app(state))
        sid, _, _ = first_question(client)
        clock.advance(50.0)
        assert client.get(f"/sessions/{sid}/question").status_code == 200
        clock.advance(150.0)
        assert client.get(f"/sessions/{sid}/question").status_code == 404


class TestIsolation:
    def test_interleaved_sessions_do_not_interact(self, client):
        sid_a, qa, count = first_question(client)
        sid_b, qb, _ = first_question(client)
        body_a = client.post(
            f"/sessions/{sid_a}/answer",
            json={"question_id": qa["question_id"], "value": OPTION_B}).json()
        # session B is untouched by A's filtering
        assert client.get(f"/sessions/{sid_b}/question").json()[
            "candidate_count"] == count
        body_b = client.post(
            f"/sessions/{sid_b}/skip", json={"question_id": qb["question_id"]}).json()
        assert body_b["remaining_count"] == count
        assert body_a["remaining_count"] <= count


class TestModelSnapshot:
    def test_in_flight_session_keeps_models_across_retrain(self, demo_parts, clock):
        from refind.model import FamiliarityModel

        view, catalog, cm, tm = demo_parts
        state = AppState(view, catalog, cm, tm, clock=clock)
        client = TestClient(create_app(state))
        sid, question, _ = first_question(client)
        client.post(f"/sessions/{sid}/skip",
                    json={"question_id": question["question_id"]})
        before = client.get(f"/sessions/{sid}/results").json()

        flat = FamiliarityModel(kind="target", coef=(0.0, 0.0, 0.0, 0.0),
                                feature_means=(0.0,) * 3, feature_stds=(1.0,) * 3)
        flat_cand = FamiliarityModel(kind="candidate", coef=(0.0,) * 5,
                                     feature_means=(0.0,) * 4,
                                     feature_stds=(1.0,) * 4)
        state.swap_models(flat_cand, flat)
        after = client.get(f"/sessions/{sid}/results").json()
        assert after == before  # old session still scored by its snapshot

        fresh_sid, fq, _ = first_question(client)
        client.post(f"/sessions/{fresh_sid}/skip",
                    json={"question_id": fq["question_id"]})
        fresh = client.get(f"/sessions/{fresh_sid}/results").json()
        assert fresh["F_t"] == 0.0  # new sessions see the new models
