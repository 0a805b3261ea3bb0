"""Response file parsing, per-row rejection, round-trips, and the store."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rationalizer import (
    CSV_HEADER,
    DuplicateResponse,
    MalformedHeader,
    RejectReason,
    ResponseFormat,
    ResponseRecord,
    ResponseStore,
    StorageUnavailable,
    SurveyDefinition,
    SystemEntry,
    UnknownSurvey,
    parse_responses,
    question_set,
    serialize_responses,
)
from rationalizer.ingest import InvalidSurveyId, SurveyExists, UnknownRun
from rationalizer.kano import Role
from tests.conftest import MIXED_QUALITY_CSV
from tests.test_properties import estates


class TestCsvParsing:
    def test_fixture_parses_cleanly(self, phone_apps_text):
        records, rejects = parse_responses(phone_apps_text, ResponseFormat.CSV, "phone-apps")
        assert len(records) == 25
        assert rejects == []
        assert all(r.survey_id == "phone-apps" for r in records)

    def test_header_must_match_exactly(self):
        shuffled = "system_id,respondent_id,functional,dysfunctional,usage,weight,role\n"
        with pytest.raises(MalformedHeader):
            parse_responses(shuffled, ResponseFormat.CSV, "s")

    def test_missing_header_column_is_fatal(self):
        truncated = ",".join(CSV_HEADER[:-1]) + "\nr1,s,LIKE,CANNOT_WORK,L,1\n"
        with pytest.raises(MalformedHeader):
            parse_responses(truncated, ResponseFormat.CSV, "s")

    def test_blank_lines_are_skipped(self):
        text = ",".join(CSV_HEADER) + "\n\nr1,s,LIKE,CANNOT_WORK,L,1,self\n\n"
        records, rejects = parse_responses(text, ResponseFormat.CSV, "s")
        assert len(records) == 1 and not rejects

    def test_empty_usage_weight_role_get_defaults(self):
        text = ",".join(CSV_HEADER) + "\nr1,s,LIKE,CANNOT_WORK,,,\n"
        records, rejects = parse_responses(text, ResponseFormat.CSV, "s")
        assert not rejects
        response = records[0].response
        assert response.usage is None
        assert response.proxy_weight == 1
        assert response.role is Role.SELF_REPORT


@pytest.fixture(scope="module")
def parsed():
    text = MIXED_QUALITY_CSV.read_text(encoding="utf-8")
    return parse_responses(text, ResponseFormat.CSV, "alpha-survey")


class TestRowRejection:
    def test_bad_rows_never_abort_the_batch(self, parsed):
        records, rejects = parsed
        assert [r.response.respondent_id for r in records] == ["r1", "r6"]
        assert len(rejects) == 5

    def test_rejects_carry_physical_row_numbers(self, parsed):
        _, rejects = parsed
        # header is physical line 1; data rows are 2..8
        assert [r.row_number for r in rejects] == [3, 4, 5, 6, 7]

    def test_reject_reasons(self, parsed):
        _, rejects = parsed
        by_row = {r.row_number: r for r in rejects}
        assert by_row[3].reason is RejectReason.UNKNOWN_ANSWER_CODE
        assert "MAYBE" in by_row[3].detail
        assert by_row[4].reason is RejectReason.NON_POSITIVE_WEIGHT
        assert by_row[5].reason is RejectReason.DUPLICATE_RESPONSE
        assert by_row[6].reason is RejectReason.MALFORMED_ROW
        assert by_row[7].reason is RejectReason.UNKNOWN_ANSWER_CODE
        assert "'X'" in by_row[7].detail

    def test_accepted_plus_rejected_covers_every_data_row(self, parsed):
        records, rejects = parsed
        data_rows = MIXED_QUALITY_CSV.read_text(encoding="utf-8").strip().splitlines()[1:]
        assert len(records) + len(rejects) == len(data_rows)

    def test_self_report_with_proxy_weight_is_rejected(self):
        text = ",".join(CSV_HEADER) + "\nr1,s,LIKE,CANNOT_WORK,L,3,self\n"
        records, rejects = parse_responses(text, ResponseFormat.CSV, "s")
        assert not records
        assert rejects[0].reason is RejectReason.MALFORMED_ROW

    def test_unknown_role_code_is_rejected(self):
        text = ",".join(CSV_HEADER) + "\nr1,s,LIKE,CANNOT_WORK,L,1,ghost\n"
        _, rejects = parse_responses(text, ResponseFormat.CSV, "s")
        assert rejects[0].reason is RejectReason.MALFORMED_ROW


class TestJsonParsing:
    def test_array_of_objects_parses(self):
        doc = json.dumps(
            [
                {"respondent_id": "r1", "system_id": "s", "functional": "LIKE", "dysfunctional": "CANNOT_WORK"},
                {"respondent_id": "mgr", "system_id": "s", "functional": "EXPECT", "dysfunctional": "PREFER_NOT", "usage": "L", "weight": 4, "role": "proxy"},
            ]
        )
        records, rejects = parse_responses(doc, ResponseFormat.JSON, "s")
        assert not rejects
        assert records[0].response.usage is None
        assert records[1].response.proxy_weight == 4

    def test_rejects_carry_element_indices(self):
        doc = json.dumps(
            [
                {"respondent_id": "r1", "system_id": "s", "functional": "LIKE", "dysfunctional": "CANNOT_WORK"},
                {"respondent_id": "r2", "system_id": "s", "functional": "MAYBE", "dysfunctional": "CANNOT_WORK"},
                "not an object",
                {"respondent_id": "r3", "system_id": "s", "functional": "LIKE", "dysfunctional": "CANNOT_WORK", "surprise": 1},
            ]
        )
        records, rejects = parse_responses(doc, ResponseFormat.JSON, "s")
        assert len(records) == 1
        assert [r.row_number for r in rejects] == [2, 3, 4]
        assert rejects[2].reason is RejectReason.MALFORMED_ROW
        assert "surprise" in rejects[2].detail

    def test_undecodable_document_is_fatal(self):
        with pytest.raises(MalformedHeader):
            parse_responses("{not json", ResponseFormat.JSON, "s")

    def test_non_array_document_is_fatal(self):
        with pytest.raises(MalformedHeader):
            parse_responses('{"respondent_id": "r1"}', ResponseFormat.JSON, "s")


class TestRoundTrip:
    def test_fixture_csv_round_trips_byte_identically(self, phone_apps_text):
        records, _ = parse_responses(phone_apps_text, ResponseFormat.CSV, "phone-apps")
        assert serialize_responses(records, ResponseFormat.CSV) == phone_apps_text

    def test_fixture_survives_parse_serialize_parse(self, phone_apps_text):
        once, _ = parse_responses(phone_apps_text, ResponseFormat.CSV, "phone-apps")
        for fmt in ResponseFormat:
            text = serialize_responses(once, fmt)
            twice, rejects = parse_responses(text, fmt, "phone-apps")
            assert not rejects
            assert [r.response for r in twice] == [r.response for r in once]

    @settings(max_examples=200, deadline=None)
    @given(estates(), st.sampled_from(list(ResponseFormat)))
    def test_random_valid_batches_round_trip(self, responses, fmt):
        records = [ResponseRecord(survey_id="s", response=r) for r in responses]
        text = serialize_responses(records, fmt)
        parsed, rejects = parse_responses(text, fmt, "s")
        assert not rejects
        assert [p.response for p in parsed] == responses


class TestQuestionSets:
    def test_self_wording_matches_survey_script(self):
        questions = question_set(Role.SELF_REPORT)
        assert questions["functional"]["options"]["LIKE"] == "I like it."
        assert questions["dysfunctional"]["options"]["CANNOT_WORK"] == (
            "I could not work effectively without it."
        )
        assert questions["usage"]["options"]["L"].startswith("A lot")

    def test_proxy_wording_speaks_about_the_team(self):
        questions = question_set(Role.MANAGER_PROXY)
        assert questions["functional"]["options"]["LIKE"] == "They like it."
        assert "staff" in questions["functional"]["text"]

    def test_every_variant_offers_exactly_four_options_per_question(self):
        for role in Role:
            questions = question_set(role)
            for key in ("functional", "dysfunctional", "usage"):
                assert len(questions[key]["options"]) == 4


def _definition(survey_id="phones", systems=("camera", "map")):
    return SurveyDefinition(
        survey_id=survey_id,
        title="Estate survey",
        systems=tuple(SystemEntry(system_id=s, display_name=s.title()) for s in systems),
    )


def _records(survey_id, *respondents, system="camera"):
    text = ",".join(CSV_HEADER) + "\n" + "\n".join(
        f"{r},{system},LIKE,CANNOT_WORK,L,1,self" for r in respondents
    ) + "\n"
    records, rejects = parse_responses(text, ResponseFormat.CSV, survey_id)
    assert not rejects
    return records


class TestSurveyStore:
    def test_create_get_list(self, store):
        store.create_survey(_definition())
        definition = store.get_survey("phones")
        assert definition.title == "Estate survey"
        assert [s.system_id for s in definition.systems] == ["camera", "map"]
        assert store.list_surveys() == ["phones"]

    def test_create_twice_fails(self, store):
        store.create_survey(_definition())
        with pytest.raises(SurveyExists):
            store.create_survey(_definition())

    def test_unknown_survey_raises(self, store):
        with pytest.raises(UnknownSurvey):
            store.get_survey("ghost")
        with pytest.raises(UnknownSurvey):
            store.load_responses("ghost")
        with pytest.raises(UnknownSurvey):
            store.append_responses("ghost", _records("ghost", "r1"))

    @pytest.mark.parametrize("bad_id", ["", "../evil", "a/b", ".hidden", "sp ace"])
    def test_path_unsafe_ids_are_refused(self, store, bad_id):
        with pytest.raises(InvalidSurveyId):
            store.get_survey(bad_id)

    def test_ensure_survey_creates_then_extends(self, store):
        created = store.ensure_survey("adhoc", ["b", "a"])
        assert [s.system_id for s in created.systems] == ["a", "b"]
        extended = store.ensure_survey("adhoc", ["c", "a"])
        assert [s.system_id for s in extended.systems] == ["a", "b", "c"]

    def test_ensure_survey_keeps_existing_definition_fields(self, store):
        store.create_survey(_definition())
        kept = store.ensure_survey("phones", ["camera"])
        assert kept.title == "Estate survey"
        assert kept.systems[0].display_name == "Camera"


class TestResponseLog:
    def test_append_then_load_round_trips(self, store):
        store.create_survey(_definition())
        stored = store.append_responses("phones", _records("phones", "r1", "r2"))
        assert all(r.submitted_at is not None for r in stored)
        loaded = store.load_responses("phones")
        assert [r.response for r in loaded] == [r.response for r in stored]
        assert [r.submitted_at for r in loaded] == [r.submitted_at for r in stored]

    def test_appends_accumulate(self, store):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1"))
        store.append_responses("phones", _records("phones", "r2"))
        assert len(store.load_responses("phones")) == 2

    def test_explicit_submission_time_is_preserved(self, store):
        store.create_survey(_definition())
        when = datetime(2026, 3, 1, 9, 30, tzinfo=timezone.utc)
        text = ",".join(CSV_HEADER) + "\nr1,camera,LIKE,CANNOT_WORK,L,1,self\n"
        records, _ = parse_responses(text, ResponseFormat.CSV, "phones", submitted_at=when)
        store.append_responses("phones", records)
        assert store.load_responses("phones")[0].submitted_at == when

    def test_duplicate_across_batches_rejects_whole_batch(self, store):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1"))
        with pytest.raises(DuplicateResponse):
            store.append_responses("phones", _records("phones", "r2", "r1"))
        # the failed batch must leave no partial writes behind
        assert [r.response.respondent_id for r in store.load_responses("phones")] == ["r1"]

    def test_same_respondent_different_system_is_not_a_duplicate(self, store):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1", system="camera"))
        store.append_responses("phones", _records("phones", "r1", system="map"))
        assert len(store.load_responses("phones")) == 2

    def test_log_is_one_json_object_per_line(self, store, tmp_path):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1", "r2"))
        log = store.data_dir / "surveys" / "phones" / "responses.jsonl"
        lines = log.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        assert all(json.loads(line)["system_id"] == "camera" for line in lines)

    def test_torn_final_line_is_tolerated_on_read(self, store):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1", "r2"))
        log = store.data_dir / "surveys" / "phones" / "responses.jsonl"
        with open(log, "a", encoding="utf-8") as handle:
            handle.write('{"survey_id": "phones", "respondent')  # crash mid-write
        assert len(store.load_responses("phones")) == 2

    def test_append_after_torn_line_repairs_the_tail(self, store):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1"))
        log = store.data_dir / "surveys" / "phones" / "responses.jsonl"
        with open(log, "a", encoding="utf-8") as handle:
            handle.write('{"torn')
        store.append_responses("phones", _records("phones", "r2"))
        loaded = store.load_responses("phones")
        assert [r.response.respondent_id for r in loaded] == ["r1", "r2"]
        assert '{"torn' not in log.read_text(encoding="utf-8")

    def test_mid_file_corruption_is_surfaced_not_skipped(self, store):
        store.create_survey(_definition())
        store.append_responses("phones", _records("phones", "r1", "r2"))
        log = store.data_dir / "surveys" / "phones" / "responses.jsonl"
        lines = log.read_text(encoding="utf-8").splitlines()
        lines.insert(1, "##corrupt##")
        log.write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(StorageUnavailable):
            store.load_responses("phones")

    def test_concurrent_appends_lose_nothing(self, store):
        store.create_survey(_definition())

        def submit(worker: int) -> None:
            names = [f"w{worker}-r{i}" for i in range(25)]
            store.append_responses("phones", _records("phones", *names))

        with ThreadPoolExecutor(max_workers=8) as pool:
            list(pool.map(submit, range(8)))

        loaded = store.load_responses("phones")
        assert len(loaded) == 200
        ids = {r.response.respondent_id for r in loaded}
        assert len(ids) == 200


class TestRunStorage:
    def test_save_load_list(self, store):
        store.save_run("run-1", {"stage": "collecting"})
        store.save_run("run-2", {"stage": "scored"})
        assert store.load_run("run-1") == {"stage": "collecting"}
        assert store.list_runs() == ["run-1", "run-2"]

    def test_unknown_run_raises(self, store):
        with pytest.raises(UnknownRun):
            store.load_run("ghost")

    def test_saving_again_overwrites_atomically(self, store):
        store.save_run("run-1", {"stage": "collecting"})
        store.save_run("run-1", {"stage": "scored"})
        assert store.load_run("run-1")["stage"] == "scored"

    def test_fresh_store_sees_previous_writes(self, tmp_path):
        first = ResponseStore(tmp_path / "data")
        first.create_survey(_definition())
        first.append_responses("phones", _records("phones", "r1"))
        second = ResponseStore(tmp_path / "data")
        assert len(second.load_responses("phones")) == 1
