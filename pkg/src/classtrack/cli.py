"""Command-line entry points: analyze, simulate, evaluate, report, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, load_config, save_config
from .evaluate import (
    eval_counts,
    eval_matching,
    eval_seats,
    count_report_to_dict,
    format_count_report,
    format_matching_report,
    format_seat_report,
    matching_report_to_dict,
    seat_report_to_dict,
)
from .model import TRACKED_CATEGORIES
from .pipeline import StreamAnalyzer
from .report import write_report
from .session import load_session, save_session
from .simulate import generate, load_spec, save_truth, scenario_config, load_truth
from .stream import parse_stream, serialize_frame


def _cmd_analyze(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    analyzer = StreamAnalyzer(cfg, course_id=args.course_id)
    with open(args.input, "r", encoding="utf-8") as fh:
        for rec in parse_stream(fh):
            analyzer.feed(rec)
    session = analyzer.finalize()
    save_session(session, args.out)
    if analyzer.warnings:
        print(f"{len(analyzer.warnings)} validation warnings "
              f"({analyzer.dropped} items dropped)", file=sys.stderr)
    print(f"wrote {args.out}")
    print(f"frames analyzed : {len(session.frame_predictions)}")
    occupied = sum(1 for occ in session.occupancy.values() if occ)
    print(f"occupied seats  : {occupied}/{len(session.tracklets)}")
    for cat in TRACKED_CATEGORIES:
        print(f"  {cat.value:<13}: {session.totals[cat]}")
    print(f"unassigned      : {len(session.unassigned_events)}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    records, truth = generate(spec, seed=args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(serialize_frame(rec) + "\n")
    save_truth(truth, args.truth)
    print(f"wrote {args.out} ({len(records)} frames) and {args.truth} "
          f"({len(truth.events)} scripted events)")
    if args.config_out:
        save_config(scenario_config(spec), args.config_out)
        print(f"wrote {args.config_out}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    session = load_session(args.session)
    truth = load_truth(args.truth)
    matching = eval_matching(session.frame_predictions, truth)
    seats = eval_seats(session.frame_predictions, truth)
    counts = eval_counts(session, truth)
    print(format_matching_report(matching))
    print()
    print(format_seat_report(seats))
    print()
    print(format_count_report(counts))
    if args.out:
        doc = {
            "matching": matching_report_to_dict(matching),
            "seats": seat_report_to_dict(seats),
            "counts": count_report_to_dict(counts),
        }
        Path(args.out).write_text(
            json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        print(f"\nwrote {args.out}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    session = load_session(args.session)
    written = write_report(session, args.out_dir, t=args.t)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    live_cfg = load_config(args.live_config) if args.live_config else None
    if args.live_input and live_cfg is None:
        print("error: --live-input requires --live-config", file=sys.stderr)
        return 2
    serve(
        args.store,
        args.port,
        live_input=args.live_input,
        live_config=live_cfg,
        live_id=args.live_id,
        host=args.host,
        ui_dir=args.ui,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="classtrack",
        description="Seat-indexed classroom behavior analytics from detection streams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the pipeline over a detection stream")
    p.add_argument("--input", required=True, help="line-delimited detection stream")
    p.add_argument("--config", required=True, help="classroom config file")
    p.add_argument("--out", required=True, help="session document to write")
    p.add_argument("--course-id", default="session")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("simulate", help="generate a synthetic stream with ground truth")
    p.add_argument("--spec", required=True, help="scenario spec (JSON)")
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")
    p.add_argument("--out", required=True, help="stream file to write")
    p.add_argument("--truth", required=True, help="ground-truth document to write")
    p.add_argument("--config-out", help="also write the matching classroom config")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("evaluate", help="score a session against ground truth")
    p.add_argument("--session", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--out", help="machine-readable report (JSON)")
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("report", help="write CSV tables and figures for a session")
    p.add_argument("--session", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--t", type=float, default=None, help="heatmap time (default: course end)")
    p.set_defaults(fn=_cmd_report)

    p = sub.add_parser("serve", help="HTTP API over stored sessions")
    p.add_argument("--store", required=True, help="directory of session documents")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--live-input", help="growing stream file to follow")
    p.add_argument("--live-config", help="classroom config for the live stream")
    p.add_argument("--live-id", default="live")
    p.add_argument("--ui", help="built frontend directory to serve at /ui")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"file not found: {exc.filename or exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
