"""Shared fixtures: the six-system phone-apps survey and stores built on it.

The phone-apps fixture is the worked example the whole scoring pipeline is
checked against; EXPECTED holds its hand-computed aggregates (satisfaction
points summed per system, usage points, factors, combined scores, verdicts).
"""

from __future__ import annotations

from pathlib import Path

import pytest

from rationalizer import (
    ResponseFormat,
    ResponseStore,
    SurveyDefinition,
    SystemEntry,
    parse_responses,
    summarize_responses,
)

FIXTURES = Path(__file__).parent / "fixtures"

PHONE_APPS_CSV = FIXTURES / "phone_apps.csv"
MIXED_QUALITY_CSV = FIXTURES / "mixed_quality.csv"

# Hand-computed expectations for the phone-apps fixture, one row per system:
# totals are sums of 9/6/3/1 satisfaction points and 4/3/2/1 usage points;
# averages and factors are rounded half-up to one decimal before the combined
# score is formed; priority is the rank by combined score (1 = keep first).
EXPECTED = {
    "camera": {
        "respondents": 5,
        "total_satisfaction": 42,
        "average": 8.4,
        "median": 9.0,
        "total_usage": 18,
        "usage_factor": 3.6,
        "cku": 30.2,
        "category": "retain",
        "priority": 2,
        "initial_conclusion": "retain",
        "initial_priority": 2,
    },
    "social-media": {
        "respondents": 3,
        "total_satisfaction": 3,
        "average": 1.0,
        "median": 1.0,
        "total_usage": 4,
        "usage_factor": 1.3,
        "cku": 1.3,
        "category": "remove",
        "priority": 6,
        "initial_conclusion": "remove",
        "initial_priority": 6,
    },
    "map": {
        "respondents": 5,
        "total_satisfaction": 30,
        "average": 6.0,
        "median": 6.0,
        "total_usage": 16,
        "usage_factor": 3.2,
        "cku": 19.2,
        "category": "review",
        "priority": 3,
        "initial_conclusion": "review",
        "initial_priority": 3,
    },
    "taxi": {
        "respondents": 3,
        "total_satisfaction": 9,
        "average": 3.0,
        "median": 3.0,
        "total_usage": 6,
        "usage_factor": 2.0,
        "cku": 6.0,
        "category": "remove",
        "priority": 5,
        "initial_conclusion": "remove",
        "initial_priority": 5,
    },
    "tc": {
        "respondents": 4,
        "total_satisfaction": 16,
        "average": 4.0,
        "median": 3.0,
        "total_usage": 7,
        "usage_factor": 1.8,
        "cku": 7.2,
        "category": "remove",
        "priority": 4,
        "initial_conclusion": "review",
        "initial_priority": 4,
    },
    "browser": {
        "respondents": 5,
        "total_satisfaction": 45,
        "average": 9.0,
        "median": 9.0,
        "total_usage": 20,
        "usage_factor": 4.0,
        "cku": 36.0,
        "category": "retain",
        "priority": 1,
        "initial_priority": 1,
        "initial_conclusion": "retain",
    },
}

SYSTEM_IDS = sorted(EXPECTED)


@pytest.fixture(scope="session")
def phone_apps_text() -> str:
    return PHONE_APPS_CSV.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def phone_apps_responses(phone_apps_text):
    records, rejects = parse_responses(phone_apps_text, ResponseFormat.CSV, "phone-apps")
    assert not rejects, f"fixture must parse cleanly, got {rejects}"
    return [record.response for record in records]


@pytest.fixture(scope="session")
def phone_apps_summaries(phone_apps_responses):
    return summarize_responses(phone_apps_responses)


@pytest.fixture()
def store(tmp_path) -> ResponseStore:
    return ResponseStore(tmp_path / "data")


@pytest.fixture()
def seeded_store(store, phone_apps_text) -> ResponseStore:
    """A store holding the phone-apps survey with all fixture responses."""
    store.create_survey(
        SurveyDefinition(
            survey_id="phone-apps",
            title="Phone apps estate review",
            systems=tuple(SystemEntry(system_id=s, display_name=s.title()) for s in SYSTEM_IDS),
        )
    )
    records, rejects = parse_responses(phone_apps_text, ResponseFormat.CSV, "phone-apps")
    assert not rejects
    store.append_responses("phone-apps", records)
    return store
