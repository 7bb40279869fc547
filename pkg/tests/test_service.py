"""HTTP API behaviour: roles, views, grading, flags, review, reports."""

import json

import pytest

from .conftest import LECTURER_AUTH, STUDENT_AUTH


@pytest.fixture
def client(make_client):
    return make_client()


@pytest.fixture
def quiz(client, fixture_payload):
    response = client.post("/api/quizzes", json=fixture_payload, headers=STUDENT_AUTH)
    assert response.status_code == 201, response.text
    return response.json()


def submit(client, quiz_id, answers, student="stu-001", auth=STUDENT_AUTH):
    return client.post(
        f"/api/quizzes/{quiz_id}/answers",
        json={"student_ref": student, "answers": answers},
        headers=auth,
    )


def correct_indices(client, quiz_id):
    full = client.get(f"/api/quizzes/{quiz_id}", headers=LECTURER_AUTH).json()
    return [q["correct_index"] for q in full["quiz"]["questions"]]


class TestAuth:
    def test_missing_token(self, client):
        assert client.post("/api/quizzes", json={}).status_code == 401

    def test_unknown_token(self, client):
        response = client.get(
            "/api/quizzes/x", headers={"Authorization": "Bearer nope"}
        )
        assert response.status_code == 401
        body = response.json()
        assert body["code"] == "UNAUTHORIZED"
        assert set(body) == {"code", "message", "details"}

    def test_student_cannot_review(self, client):
        assert (
            client.get("/api/review/flags", headers=STUDENT_AUTH).status_code == 403
        )

    def test_lecturer_cannot_submit_answers(self, client, quiz):
        response = submit(client, quiz["quiz_id"], [0, 0], auth=LECTURER_AUTH)
        assert response.status_code == 403


class TestCreateQuiz:
    def test_fixture_creates_published_quiz_with_flag_choices(self, quiz):
        assert len(quiz["questions"]) == 2
        for question in quiz["questions"]:
            assert len(question["choices"]) == 5
            assert question["choices"][-1] == "This question doesn't seem right"
        assert quiz["disclaimer"].startswith("These questions were generated by AI.")

    def test_invalid_request_is_400_with_details(self, client, fixture_payload):
        fixture_payload["num_questions"] = 0
        response = client.post(
            "/api/quizzes", json=fixture_payload, headers=STUDENT_AUTH
        )
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "INVALID_REQUEST"
        assert any("num_questions" in d["message"] for d in body["details"])

    def test_generation_failure_is_502_and_exchange_persisted(
        self, make_client, fixture_payload
    ):
        client = make_client(mock_fault="always_truncate")
        response = client.post(
            "/api/quizzes", json=fixture_payload, headers=STUDENT_AUTH
        )
        assert response.status_code == 502
        assert response.json()["code"] == "GENERATION_FAILED"
        service = client.app.state.service
        assert service.exchange_count() == 1

    def test_repair_path_still_creates_quiz(self, make_client, fixture_payload):
        client = make_client(mock_fault="truncate")
        response = client.post(
            "/api/quizzes", json=fixture_payload, headers=STUDENT_AUTH
        )
        assert response.status_code == 201
        exchanges = client.app.state.store.items("exchanges")
        assert len(exchanges) == 1
        assert exchanges[0][1]["parse_outcome"] == "repaired"
        assert exchanges[0][1]["attempts"] == 2

    def test_malformed_json_body(self, client):
        response = client.post(
            "/api/quizzes",
            content=b"{not json",
            headers={**STUDENT_AUTH, "Content-Type": "application/json"},
        )
        assert response.status_code == 400
        assert response.json()["code"] == "INVALID_JSON"


class TestGetQuiz:
    def test_student_view_hides_answers(self, client, quiz):
        response = client.get(
            f"/api/quizzes/{quiz['quiz_id']}", headers=STUDENT_AUTH
        )
        assert response.status_code == 200
        assert "correct_index" not in response.text
        assert "explanation" not in response.text

    def test_lecturer_view_includes_answers_and_warnings(self, client, quiz):
        response = client.get(
            f"/api/quizzes/{quiz['quiz_id']}", headers=LECTURER_AUTH
        )
        body = response.json()
        assert all("correct_index" in q for q in body["quiz"]["questions"])
        assert "skeleton_warnings" in body
        assert body["voided_question_ids"] == []

    def test_unknown_quiz_404(self, client):
        response = client.get("/api/quizzes/nope", headers=STUDENT_AUTH)
        assert response.status_code == 404
        assert response.json()["code"] == "NOT_FOUND"


class TestSubmitAnswers:
    def test_all_correct_scores_one_and_reveals_explanations(self, client, quiz):
        answers = correct_indices(client, quiz["quiz_id"])
        response = submit(client, quiz["quiz_id"], answers)
        assert response.status_code == 200
        body = response.json()
        assert body["report"]["score"] == 1.0
        assert body["report"]["per_question"] == ["correct", "correct"]
        assert all("explanation" in entry for entry in body["feedback"])
        assert all("correct_index" in entry for entry in body["feedback"])

    def test_flagged_question_withholds_answer_and_opens_flag(self, client, quiz):
        answers = correct_indices(client, quiz["quiz_id"])
        response = submit(client, quiz["quiz_id"], [-1, answers[1]])
        body = response.json()
        assert body["report"]["per_question"] == ["flagged_pending", "correct"]
        assert body["report"]["score"] == 1.0
        flagged_entry = body["feedback"][0]
        assert flagged_entry["outcome"] == "flagged_pending"
        assert "correct_index" not in flagged_entry
        assert "explanation" not in flagged_entry

        flags = client.get("/api/review/flags", headers=LECTURER_AUTH).json()
        assert len(flags) == 1
        assert flags[0]["flag"]["status"] == "pending"
        assert flags[0]["flag"]["student_ref"] == "stu-001"

    def test_duplicate_submission_409_with_prior_report(self, client, quiz):
        answers = correct_indices(client, quiz["quiz_id"])
        assert submit(client, quiz["quiz_id"], answers).status_code == 200
        response = submit(client, quiz["quiz_id"], [0, 0])
        assert response.status_code == 409
        body = response.json()
        assert body["code"] == "DUPLICATE_SUBMISSION"
        assert body["details"]["report"]["report"]["score"] == 1.0

    def test_practice_mode_allows_resubmission_latest_wins(
        self, make_client, fixture_payload
    ):
        client = make_client(allow_resubmission=True)
        quiz = client.post(
            "/api/quizzes", json=fixture_payload, headers=STUDENT_AUTH
        ).json()
        answers = correct_indices(client, quiz["quiz_id"])
        wrong = [(a + 1) % 4 for a in answers]
        assert submit(client, quiz["quiz_id"], wrong).status_code == 200
        assert submit(client, quiz["quiz_id"], answers).status_code == 200
        report = client.get(
            f"/api/quizzes/{quiz['quiz_id']}/answers/stu-001", headers=STUDENT_AUTH
        ).json()
        assert report["report"]["score"] == 1.0

    def test_count_mismatch_400(self, client, quiz):
        response = submit(client, quiz["quiz_id"], [0])
        assert response.status_code == 400
        assert response.json()["code"] == "ANSWER_COUNT_MISMATCH"

    def test_index_out_of_range_400(self, client, quiz):
        response = submit(client, quiz["quiz_id"], [0, 17])
        assert response.status_code == 400
        assert response.json()["code"] == "ANSWER_INDEX_OUT_OF_RANGE"

    def test_bad_sheet_shape_400(self, client, quiz):
        response = submit(client, quiz["quiz_id"], [0, "one"])
        assert response.status_code == 400
        assert response.json()["code"] == "INVALID_SHEET"

    def test_unknown_quiz_404(self, client):
        assert submit(client, "nope", [0, 0]).status_code == 404


class TestFlagsAndResolution:
    @pytest.fixture
    def flagged(self, client, quiz):
        answers = correct_indices(client, quiz["quiz_id"])
        submit(client, quiz["quiz_id"], [-1, answers[1]], student="alice")
        submit(client, quiz["quiz_id"], answers, student="bob")
        flags = client.get(
            "/api/review/flags?status=pending", headers=LECTURER_AUTH
        ).json()
        assert len(flags) == 1
        return quiz, flags[0]

    def test_flag_context_includes_question_and_code(self, flagged):
        _, flag = flagged
        assert flag["question"]["correct_index"] is not None
        assert "Flat" in flag["student_code"]

    def test_status_filter(self, client, flagged):
        empty = client.get(
            "/api/review/flags?status=resolved_invalid", headers=LECTURER_AUTH
        ).json()
        assert empty == []
        bad = client.get(
            "/api/review/flags?status=bogus", headers=LECTURER_AUTH
        )
        assert bad.status_code == 400

    def test_resolve_invalid_voids_for_everyone(self, client, flagged):
        quiz, flag = flagged
        flag_id = flag["flag"]["flag_id"]
        question_id = flag["flag"]["question_id"]
        response = client.post(
            f"/api/review/flags/{flag_id}/resolution",
            json={"status": "resolved_invalid", "note": "bad distractors"},
            headers=LECTURER_AUTH,
        )
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "resolved_invalid"
        assert body["resolved_at"] is not None

        # both students now see that question voided, with no recompute call
        for student in ("alice", "bob"):
            report = client.get(
                f"/api/quizzes/{quiz['quiz_id']}/answers/{student}",
                headers=STUDENT_AUTH,
            ).json()
            outcome = report["feedback"][0]["outcome"]
            assert outcome == "voided"
        lecturer_view = client.get(
            f"/api/quizzes/{quiz['quiz_id']}", headers=LECTURER_AUTH
        ).json()
        assert lecturer_view["voided_question_ids"] == [question_id]

    def test_resolve_valid_changes_nothing_for_others(self, client, flagged):
        quiz, flag = flagged
        response = client.post(
            f"/api/review/flags/{flag['flag']['flag_id']}/resolution",
            json={"status": "resolved_valid"},
            headers=LECTURER_AUTH,
        )
        assert response.status_code == 200
        bob = client.get(
            f"/api/quizzes/{quiz['quiz_id']}/answers/bob", headers=STUDENT_AUTH
        ).json()
        assert bob["report"]["per_question"] == ["correct", "correct"]
        alice = client.get(
            f"/api/quizzes/{quiz['quiz_id']}/answers/alice", headers=STUDENT_AUTH
        ).json()
        assert alice["report"]["per_question"][0] == "flagged_pending"

    def test_resolving_twice_is_409(self, client, flagged):
        _, flag = flagged
        flag_id = flag["flag"]["flag_id"]
        url = f"/api/review/flags/{flag_id}/resolution"
        first = client.post(
            url, json={"status": "resolved_valid"}, headers=LECTURER_AUTH
        )
        assert first.status_code == 200
        second = client.post(
            url, json={"status": "resolved_invalid"}, headers=LECTURER_AUTH
        )
        assert second.status_code == 409
        assert second.json()["code"] == "FLAG_ALREADY_RESOLVED"

    def test_invalid_status_400_and_unknown_404(self, client, flagged):
        _, flag = flagged
        flag_id = flag["flag"]["flag_id"]
        bad = client.post(
            f"/api/review/flags/{flag_id}/resolution",
            json={"status": "pending"},
            headers=LECTURER_AUTH,
        )
        assert bad.status_code == 400
        missing = client.post(
            "/api/review/flags/nope/resolution",
            json={"status": "resolved_valid"},
            headers=LECTURER_AUTH,
        )
        assert missing.status_code == 404


class TestQuizReport:
    def test_empty_report(self, client, quiz):
        report = client.get(
            f"/api/quizzes/{quiz['quiz_id']}/report", headers=LECTURER_AUTH
        ).json()
        assert report["submissions"] == 0
        for row in report["per_question"]:
            assert (
                row["correct"] + row["incorrect"] + row["flagged_pending"] + row["voided"]
                == 0
            )

    def test_counts_partition_submissions(self, client, quiz):
        answers = correct_indices(client, quiz["quiz_id"])
        submit(client, quiz["quiz_id"], answers, student="alice")
        submit(client, quiz["quiz_id"], [-1, (answers[1] + 1) % 4], student="bob")
        submit(client, quiz["quiz_id"], [answers[0], -1], student="carol")
        report = client.get(
            f"/api/quizzes/{quiz['quiz_id']}/report", headers=LECTURER_AUTH
        ).json()
        assert report["submissions"] == 3
        for row in report["per_question"]:
            total = (
                row["correct"] + row["incorrect"] + row["flagged_pending"] + row["voided"]
            )
            assert total == 3
        assert report["per_question"][0]["correct"] == 2
        assert report["per_question"][0]["flagged_pending"] == 1
        assert report["per_student"]["alice"]["score"] == 1.0

    def test_report_requires_lecturer(self, client, quiz):
        response = client.get(
            f"/api/quizzes/{quiz['quiz_id']}/report", headers=STUDENT_AUTH
        )
        assert response.status_code == 403


class TestDurability:
    def test_state_survives_restart(self, tmp_path, fixture_payload):
        from fastapi.testclient import TestClient

        from automcq.llm.config import BackendConfig
        from automcq.service.app import create_app
        from automcq.service.config import ServiceConfig

        from .conftest import TOKENS

        data_dir = tmp_path / "durable"

        def make(data_dir):
            return ServiceConfig(
                data_dir=data_dir,
                backend=BackendConfig(kind="mock"),
                tokens=dict(TOKENS),
            )

        with TestClient(create_app(make(data_dir))) as client:
            quiz = client.post(
                "/api/quizzes", json=fixture_payload, headers=STUDENT_AUTH
            ).json()
            submit(client, quiz["quiz_id"], [0, -1])
        # restart: a second app over the same directory sees everything
        with TestClient(create_app(make(data_dir))) as client:
            view = client.get(
                f"/api/quizzes/{quiz['quiz_id']}", headers=STUDENT_AUTH
            )
            assert view.status_code == 200
            report = client.get(
                f"/api/quizzes/{quiz['quiz_id']}/answers/stu-001",
                headers=STUDENT_AUTH,
            )
            assert report.status_code == 200
            flags = client.get("/api/review/flags", headers=LECTURER_AUTH).json()
            assert len(flags) == 1
