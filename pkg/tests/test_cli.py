"""Command-line interface: import, analyze, quadrant, sweep, exit codes."""

from __future__ import annotations

import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from rationalizer.cli import main
from tests.conftest import EXPECTED, PHONE_APPS_CSV


@pytest.fixture()
def data_dir(tmp_path) -> Path:
    return tmp_path / "estate-data"


def run_import(data_dir: Path, source: Path = PHONE_APPS_CSV) -> int:
    return main(["--data-dir", str(data_dir), "import", str(source), "--survey", "phone-apps"])


class TestImport:
    def test_clean_file_imports_with_exit_zero(self, data_dir, capsys):
        assert run_import(data_dir) == 0
        out = capsys.readouterr().out
        assert "imported 25 response(s)" in out

    def test_rejects_exit_one_but_keep_good_rows(self, data_dir, tmp_path, capsys):
        mixed = Path(__file__).parent / "fixtures" / "mixed_quality.csv"
        code = main(["--data-dir", str(data_dir), "import", str(mixed), "--survey", "alpha"])
        captured = capsys.readouterr()
        assert code == 1
        assert "imported 2 response(s)" in captured.out
        assert "rejected 5 row(s)" in captured.err
        assert "row 3" in captured.err and "MAYBE" in captured.err
        # accepted rows are stored despite the failure exit code
        assert main(["--data-dir", str(data_dir), "analyze", "--survey", "alpha"]) == 0
        assert "alpha" in capsys.readouterr().out

    def test_json_files_are_detected_by_extension(self, data_dir, tmp_path, capsys):
        doc = tmp_path / "batch.json"
        doc.write_text(
            json.dumps(
                [
                    {"respondent_id": "r1", "system_id": "s", "functional": "LIKE", "dysfunctional": "CANNOT_WORK", "usage": "L"}
                ]
            ),
            encoding="utf-8",
        )
        assert main(["--data-dir", str(data_dir), "import", str(doc), "--survey", "adhoc"]) == 0
        assert "imported 1 response(s)" in capsys.readouterr().out

    def test_missing_file_is_an_io_failure(self, data_dir, capsys):
        code = main(["--data-dir", str(data_dir), "import", "nowhere.csv", "--survey", "x"])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_wrong_header_is_a_validation_failure(self, data_dir, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("who,what\nr1,s\n", encoding="utf-8")
        code = main(["--data-dir", str(data_dir), "import", str(bad), "--survey", "x"])
        assert code == 1
        assert "header" in capsys.readouterr().err

    def test_duplicate_reimport_is_a_validation_failure(self, data_dir, capsys):
        assert run_import(data_dir) == 0
        code = run_import(data_dir)
        assert code == 1
        assert "already answered" in capsys.readouterr().err


class TestAnalyze:
    def test_tables_show_both_reports(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        assert main(["--data-dir", str(data_dir), "analyze", "--survey", "phone-apps"]) == 0
        out = capsys.readouterr().out
        assert "Initial satisfaction-only report" in out
        assert "Combined satisfaction x usage report" in out
        browser_lines = [line for line in out.splitlines() if line.startswith("browser")]
        assert any("36.0" in line and "RETAIN" in line for line in browser_lines)

    def test_json_output_is_the_canonical_document(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        assert main(
            ["--data-dir", str(data_dir), "analyze", "--survey", "phone-apps", "--out", "json"]
        ) == 0
        out = capsys.readouterr().out
        payload = json.loads(out)
        assert out == json.dumps(payload, indent=2) + "\n"
        by_id = {row["system_id"]: row for row in payload["ranked"]}
        for system_id, want in EXPECTED.items():
            assert by_id[system_id]["cku"] == want["cku"]

    def test_csv_output_lists_ranked_systems(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        assert main(
            ["--data-dir", str(data_dir), "analyze", "--survey", "phone-apps", "--out", "csv"]
        ) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("system_id,display_name,")
        assert len(lines) == 7

    def test_thresholds_file_changes_verdicts(self, data_dir, tmp_path, capsys):
        run_import(data_dir)
        overrides = tmp_path / "thresholds.conf"
        overrides.write_text("# what-if bands\ncku_retain_min = 19.0\n", encoding="utf-8")
        capsys.readouterr()
        main(
            [
                "--data-dir", str(data_dir),
                "analyze", "--survey", "phone-apps",
                "--thresholds", str(overrides),
                "--out", "json",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        categories = {row["system_id"]: row["category"] for row in payload["ranked"]}
        assert categories["map"] == "retain"

    def test_bad_thresholds_file_is_a_validation_failure(self, data_dir, tmp_path, capsys):
        run_import(data_dir)
        overrides = tmp_path / "thresholds.conf"
        overrides.write_text("cku_retian_min = 19.0\n", encoding="utf-8")
        capsys.readouterr()
        code = main(
            [
                "--data-dir", str(data_dir),
                "analyze", "--survey", "phone-apps",
                "--thresholds", str(overrides),
            ]
        )
        assert code == 1
        assert "cku_retian_min" in capsys.readouterr().err

    def test_median_statistic(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        main(
            [
                "--data-dir", str(data_dir),
                "analyze", "--survey", "phone-apps",
                "--statistic", "median", "--out", "json",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        by_id = {row["system_id"]: row for row in payload["ranked"]}
        assert by_id["tc"]["cku"] == 5.4

    def test_auto_calibrate_bands_from_the_cohort(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        main(
            [
                "--data-dir", str(data_dir),
                "analyze", "--survey", "phone-apps",
                "--auto-calibrate", "--out", "json",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        assert payload["thresholds"]["cku_remove_max"] == pytest.approx(6.78)
        categories = {row["system_id"]: row["category"] for row in payload["ranked"]}
        assert categories["tc"] == "review"

    def test_empty_survey_notice_with_exit_zero(self, data_dir, capsys):
        empty_csv = "respondent_id,system_id,functional,dysfunctional,usage,weight,role\n"
        target = data_dir / "empty-input.csv"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(empty_csv, encoding="utf-8")
        assert main(["--data-dir", str(data_dir), "import", str(target), "--survey", "quiet"]) == 0
        capsys.readouterr()
        assert main(["--data-dir", str(data_dir), "analyze", "--survey", "quiet"]) == 0
        assert "no responses" in capsys.readouterr().out

    def test_unknown_survey_is_a_validation_failure(self, data_dir, capsys):
        code = main(["--data-dir", str(data_dir), "analyze", "--survey", "ghost"])
        assert code == 1
        assert "ghost" in capsys.readouterr().err


class TestQuadrant:
    def test_writes_svg_with_six_points_and_four_regions(self, data_dir, tmp_path, capsys):
        run_import(data_dir)
        out_file = tmp_path / "quadrant.svg"
        code = main(
            [
                "--data-dir", str(data_dir),
                "quadrant", "--survey", "phone-apps", "--out", str(out_file),
            ]
        )
        assert code == 0
        root = ET.fromstring(out_file.read_text(encoding="utf-8"))
        circles = [
            el
            for el in root.iter()
            if el.tag.split("}")[-1] == "circle" and el.get("class") == "datapoint"
        ]
        labels = [
            el
            for el in root.iter()
            if el.tag.split("}")[-1] == "text" and el.get("class") == "region-label"
        ]
        assert len(circles) == 6
        assert sorted(t.text for t in labels) == ["Remove", "Research", "Retain", "Review"]


class TestSweep:
    def test_table_flags_the_sensitive_system(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        code = main(
            ["--data-dir", str(data_dir), "sweep", "--survey", "phone-apps", "--step", "0.1"]
        )
        assert code == 0
        out = capsys.readouterr().out
        map_line = next(line for line in out.splitlines() if line.startswith("map"))
        assert "yes" in map_line
        assert "cku_retain_min" in map_line

    def test_json_output(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        main(
            [
                "--data-dir", str(data_dir),
                "sweep", "--survey", "phone-apps", "--step", "0.1", "--out", "json",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        flagged = [row["system_id"] for row in payload["systems"] if row["sensitive"]]
        assert flagged == ["map"]

    def test_zero_step_is_a_validation_failure(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        code = main(
            ["--data-dir", str(data_dir), "sweep", "--survey", "phone-apps", "--step", "0"]
        )
        assert code == 1


class TestConfiguration:
    def test_config_file_provides_the_data_dir(self, data_dir, tmp_path, capsys):
        run_import(data_dir)
        conf = tmp_path / "rationalizer.conf"
        conf.write_text(f"data_dir = {data_dir}\n", encoding="utf-8")
        capsys.readouterr()
        assert main(["--config", str(conf), "analyze", "--survey", "phone-apps"]) == 0
        assert "browser" in capsys.readouterr().out

    def test_environment_variable_provides_the_data_dir(self, data_dir, monkeypatch, capsys):
        run_import(data_dir)
        monkeypatch.setenv("RATIONALIZER_DATA_DIR", str(data_dir))
        capsys.readouterr()
        assert main(["analyze", "--survey", "phone-apps"]) == 0
        assert "browser" in capsys.readouterr().out

    def test_explicit_flag_beats_environment(self, data_dir, monkeypatch, capsys):
        run_import(data_dir)
        monkeypatch.setenv("RATIONALIZER_DATA_DIR", "/nonexistent/elsewhere")
        capsys.readouterr()
        assert main(["--data-dir", str(data_dir), "analyze", "--survey", "phone-apps"]) == 0


class TestModuleEntryPoint:
    def test_python_dash_m_matches_in_process_output(self, data_dir, capsys):
        run_import(data_dir)
        capsys.readouterr()
        main(["--data-dir", str(data_dir), "analyze", "--survey", "phone-apps", "--out", "json"])
        in_process = capsys.readouterr().out
        completed = subprocess.run(
            [
                sys.executable, "-m", "rationalizer",
                "--data-dir", str(data_dir),
                "analyze", "--survey", "phone-apps", "--out", "json",
            ],
            capture_output=True,
            text=True,
            check=True,
        )
        assert completed.stdout == in_process
