"""Batch interface: import response files, run analysis, emit reports, serve.

Exit codes: 0 success, 1 validation failure (bad rows, bad arguments,
unknown survey), 2 I/O failure (missing files, unreadable storage).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional

from . import report
from .analysis import InvalidThresholds, Thresholds, auto_calibrate, sensitivity_sweep
from .config import PORT_ENV, load_key_values, resolve_data_dir
from .ingest import (
    MalformedHeader,
    ResponseFormat,
    ResponseStore,
    StorageUnavailable,
    UnknownSurvey,
    parse_responses,
)
from .kano import SatisfactionStatistic, summarize_responses

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rationalizer",
        description=(
            "Score two-question satisfaction surveys, factor in usage, and rank "
            "a software estate into retain/review/remove/research verdicts."
        ),
    )
    parser.add_argument("--data-dir", help="directory holding survey definitions and response logs")
    parser.add_argument("--config", help="key=value config file (may set data_dir)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_import = sub.add_parser("import", help="import a CSV or JSON response file into a survey")
    p_import.add_argument("file", help="response file to import")
    p_import.add_argument("--survey", required=True, help="survey id to import into")
    p_import.add_argument("--format", choices=["csv", "json"], help="file format (default: by extension)")

    p_analyze = sub.add_parser("analyze", help="rank a survey's systems and print reports")
    p_analyze.add_argument("--survey", required=True)
    p_analyze.add_argument("--thresholds", help="key=value file overriding classification thresholds")
    p_analyze.add_argument("--statistic", choices=["average", "median"], default="average")
    p_analyze.add_argument("--out", choices=["csv", "json"], help="emit machine-readable output instead of tables")
    p_analyze.add_argument(
        "--auto-calibrate",
        action="store_true",
        help="derive combined-score bands from the cohort's 33rd/67th percentiles",
    )

    p_quadrant = sub.add_parser("quadrant", help="write the satisfaction/usage quadrant plot as SVG")
    p_quadrant.add_argument("--survey", required=True)
    p_quadrant.add_argument("--out", required=True, help="output SVG path")
    p_quadrant.add_argument("--thresholds", help="key=value file overriding classification thresholds")
    p_quadrant.add_argument("--statistic", choices=["average", "median"], default="average")

    p_sweep = sub.add_parser("sweep", help="check how stable verdicts are under threshold changes")
    p_sweep.add_argument("--survey", required=True)
    p_sweep.add_argument("--step", type=float, default=0.5, help="sweep grid increment (default 0.5)")
    p_sweep.add_argument("--thresholds", help="key=value file overriding classification thresholds")
    p_sweep.add_argument("--statistic", choices=["average", "median"], default="average")
    p_sweep.add_argument("--out", choices=["json"], help="emit the sweep as JSON instead of a table")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=None, help=f"port (default: ${PORT_ENV} or 8000)")
    p_serve.add_argument("--host", default="127.0.0.1")

    return parser


def _load_thresholds(path: Optional[str]) -> Thresholds:
    if not path:
        return Thresholds()
    pairs = load_key_values(path)
    return Thresholds.from_mapping(pairs)


def _store(args: argparse.Namespace) -> ResponseStore:
    return ResponseStore(resolve_data_dir(args.data_dir, args.config))


def _summaries(store: ResponseStore, survey_id: str, statistic: SatisfactionStatistic):
    definition = store.get_survey(survey_id)
    responses = [record.response for record in store.load_responses(survey_id)]
    return definition, summarize_responses(responses, statistic)


def _cmd_import(args: argparse.Namespace) -> int:
    path = Path(args.file)
    fmt = ResponseFormat(args.format) if args.format else (
        ResponseFormat.JSON if path.suffix.lower() == ".json" else ResponseFormat.CSV
    )
    text = path.read_text(encoding="utf-8")
    records, rejects = parse_responses(text, fmt, args.survey)
    store = _store(args)
    store.ensure_survey(args.survey, {r.response.system_id for r in records})
    stored = store.append_responses(args.survey, records)
    print(f"imported {len(stored)} response(s) into survey '{args.survey}'")
    if rejects:
        print(f"rejected {len(rejects)} row(s):", file=sys.stderr)
        for reject in rejects:
            print(f"  row {reject.row_number}: {reject.reason.value}: {reject.detail}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    store = _store(args)
    thresholds = _load_thresholds(args.thresholds)
    statistic = SatisfactionStatistic(args.statistic)
    definition, summaries = _summaries(store, args.survey, statistic)
    if args.auto_calibrate and summaries:
        thresholds = auto_calibrate(summaries, thresholds)
    payload = report.analysis_payload(
        args.survey,
        summaries,
        thresholds,
        statistic,
        display_names=definition.display_names(),
        title=definition.title,
    )
    if args.out == "json":
        sys.stdout.write(report.canonical_json(payload))
        return EXIT_OK
    if args.out == "csv":
        sys.stdout.write(report.render_report_csv(payload))
        return EXIT_OK
    if not summaries:
        print(f"no responses recorded for survey '{args.survey}'")
        return EXIT_OK
    print(report.render_initial_table(payload))
    print()
    print(report.render_cku_table(payload))
    return EXIT_OK


def _cmd_quadrant(args: argparse.Namespace) -> int:
    store = _store(args)
    thresholds = _load_thresholds(args.thresholds)
    statistic = SatisfactionStatistic(args.statistic)
    definition, summaries = _summaries(store, args.survey, statistic)
    payload = report.analysis_payload(
        args.survey,
        summaries,
        thresholds,
        statistic,
        display_names=definition.display_names(),
        title=definition.title,
    )
    svg = report.quadrant_svg(payload)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    store = _store(args)
    thresholds = _load_thresholds(args.thresholds)
    statistic = SatisfactionStatistic(args.statistic)
    definition, summaries = _summaries(store, args.survey, statistic)
    if not summaries:
        print(f"no responses recorded for survey '{args.survey}'")
        return EXIT_OK
    sweep = sensitivity_sweep(summaries, thresholds, args.step)
    payload = report.sweep_payload(args.survey, sweep, definition.display_names())
    if args.out == "json":
        sys.stdout.write(report.canonical_json(payload))
        return EXIT_OK
    print(report.render_sweep_table(payload))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port if args.port is not None else int(os.environ.get(PORT_ENV, "8000"))
    app = create_app(data_dir=resolve_data_dir(args.data_dir, args.config))
    uvicorn.run(app, host=args.host, port=port)
    return EXIT_OK


_COMMANDS = {
    "import": _cmd_import,
    "analyze": _cmd_analyze,
    "quadrant": _cmd_quadrant,
    "sweep": _cmd_sweep,
    "serve": _cmd_serve,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (MalformedHeader, InvalidThresholds, UnknownSurvey, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, StorageUnavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
