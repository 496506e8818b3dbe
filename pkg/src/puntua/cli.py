"""Command-line entry point.

Exit codes: 0 success, 1 validation/parse error, 2 configuration error,
3 external endpoint failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from puntua import report
from puntua.errors import ConfigurationError, PuntuaError, ValidationError
from puntua.labels import Thresholds, TokenPrediction, attach_marks, strip_marks
from puntua.metrics import EvalReport, score_marks, summarize_latency
from puntua.pipeline import Mode, evaluate, mode_marks, on_reference, run_stages
from puntua.predictors.io import dump_predictions, load_predictions
from puntua.predictors.llm import LlmEndpointConfig, benchmark_llm
from puntua.predictors.prompts import DEFAULT_SHOTS, PromptTemplate, load_shots
from puntua.predictors.rules import RuleTable, rule_lexical_predict
from puntua.repair import pair_scan
from puntua.tuning import GridSpec, Objective, best_point, grid_surface

log = logging.getLogger("puntua")


def _thresholds(args) -> Thresholds:
    return Thresholds(args.t_question, args.t_declarative)


def _add_thresholds(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-question", type=float, default=0.75)
    p.add_argument("--t-declarative", type=float, default=0.75)


def _track(labels) -> dict:
    return {"lead": [t.lead.value for t in labels], "trail": [t.trail.value for t in labels]}


def cmd_restore(args) -> int:
    th = _thresholds(args)
    utterances = load_predictions(args.pred)
    fallbacks = 0
    lines = []
    for u in utterances:
        trace = run_stages(u, th, args.lexical_only)
        fallbacks += trace.fallback
        if args.debug:
            for stage in ("lexical", "consolidated", "repaired"):
                labels = getattr(trace, stage)
                rec = {"id": u.id, "stage": stage, **_track(labels)}
                if stage == "repaired":
                    rec["well_formed"] = pair_scan(labels).well_formed
                print(json.dumps(rec, ensure_ascii=False), file=sys.stderr)
        lines.append(f"{u.id}\t{attach_marks(u.words, trace.repaired)}\n")
    Path(args.out).write_text("".join(lines), encoding="utf-8", newline="\n")
    print(
        f"restored {len(utterances)} utterances ({fallbacks} lexical-only fallbacks)",
        file=sys.stderr,
    )
    return 0


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    utterances = load_predictions(args.pred)
    result = evaluate(utterances, Mode(args.mode), _thresholds(args))
    if args.format == "table":
        _emit(report.format_table(result), args.out)
    else:
        _emit(report.dumps_records(report.report_records(result)), args.out)
    if args.figures:
        report.plot_mark_scores(result, Path(args.figures) / f"eval_{args.mode}.png")
    return 0


def cmd_tune(args) -> int:
    dev = load_predictions(args.dev)
    grid = GridSpec(args.grid_start, args.grid_stop, args.grid_step)
    objective = Objective(args.objective)
    surface = grid_surface(dev, grid)
    best = best_point(surface, objective)
    records = [
        {
            "kind": "grid",
            "t_question": p.thresholds.t_question,
            "t_declarative": p.thresholds.t_declarative,
            "micro_f1": 100 * p.micro_f1,
            "cq_f1": 100 * p.cq_f1,
        }
        for p in surface
    ]
    records.append(
        {
            "kind": "best",
            "objective": objective.value,
            "t_question": best.thresholds.t_question,
            "t_declarative": best.thresholds.t_declarative,
            "value": 100 * best.objective(objective),
            "micro_f1": 100 * best.micro_f1,
            "cq_f1": 100 * best.cq_f1,
            "grid_points": len(surface),
        }
    )
    _emit(report.dumps_records(records), args.out)
    if args.figures:
        report.plot_grid_surface(surface, objective, Path(args.figures) / "tune_surface.png", best)
    return 0


def cmd_predict_rules(args) -> int:
    rules = RuleTable(
        cue_question_prob=args.cue_question_prob,
        default_period_prob=args.default_period_prob,
        marker_comma_prob=args.marker_comma_prob,
    )
    utterances = load_predictions(args.input, require_lexical=False)
    out = [
        dataclasses.replace(u, lexical=tuple(rule_lexical_predict(u.words, rules)))
        for u in utterances
    ]
    n = dump_predictions(out, args.out)
    print(f"wrote lexical track for {n} utterances", file=sys.stderr)
    return 0


def _bench_report(utterances, records, include_unreliable: bool) -> Optional[EvalReport]:
    if not utterances or any(u.reference is None for u in utterances):
        return None
    preds, refs = [], []
    for u, rec in zip(utterances, records):
        labels = None
        if rec.reliable:
            try:
                labels = strip_marks(rec.output)[1]
            except ValidationError as exc:
                log.warning("utterance %s: reliable output not parseable (%s)", u.id, exc)
        if labels is None:
            if not include_unreliable:
                continue
            labels = [TokenPrediction() for _ in u.words]
        preds.append(on_reference(u, labels))
        refs.append(u.reference)
    if not preds:
        return None
    conf = score_marks(preds, refs)
    return EvalReport.from_confusion(conf, mode_marks(Mode.HYBRID), mode="llm", utterances=len(preds))


def cmd_bench(args) -> int:
    utterances = load_predictions(args.input, require_lexical=False)
    if args.prompt == "few":
        shots = load_shots(args.shots) if args.shots else DEFAULT_SHOTS
        template = PromptTemplate.few_shot(shots)
    else:
        if args.shots:
            raise ConfigurationError("--shots only applies to --prompt few")
        template = PromptTemplate.zero_shot()
    endpoint = LlmEndpointConfig.from_env(args.endpoint, args.model)
    records = benchmark_llm(
        utterances, endpoint, template, retries=args.retries, max_inflight=args.max_inflight
    )

    out = [
        {
            "kind": "call",
            "id": r.id,
            "output": r.output,
            "reliable": r.reliable,
            "latency_s": r.latency_s,
            "attempts": r.attempts,
            "error": r.error,
        }
        for r in records
    ]
    reliability = 100.0 * sum(r.reliable for r in records) / len(records) if records else 0.0
    latencies = [r.latency_s for r in records if r.latency_s is not None]
    stats = summarize_latency(latencies) if latencies else None
    out.append({"kind": "reliability", "percent": reliability, "calls": len(records)})
    if stats is not None:
        out.append(report.latency_record(stats))
    scored = _bench_report(utterances, records, args.include_unreliable)
    if scored is not None:
        scored = dataclasses.replace(
            scored,
            reliability=reliability,
            latency_mean_s=stats.mean if stats else None,
        )
        out.extend(report.report_records(scored))
    out.append({"kind": "note", "text": report.PUBLISHED_CONTEXT})

    if args.format == "table":
        lines = [f"reliability: {reliability:.1f}% of {len(records)} calls"]
        if stats is not None:
            lines.append(
                f"latency: mean {stats.mean:.3f} s  p50 {stats.p50:.3f}  p95 {stats.p95:.3f}"
                f"  min {stats.min:.3f}  max {stats.max:.3f}"
            )
        text = "\n".join(lines) + "\n"
        if scored is not None:
            text += report.format_table(scored)
        text += f"note: {report.PUBLISHED_CONTEXT}\n"
        _emit(text, args.out)
    else:
        _emit(report.dumps_records(out), args.out)
    if args.figures and latencies:
        report.plot_latency(latencies, Path(args.figures) / "bench_latency.png")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puntua", description="Hybrid punctuation restoration for Spanish transcripts."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("restore", help="fuse, repair and render punctuated transcripts")
    p.add_argument("--pred", required=True)
    _add_thresholds(p)
    p.add_argument("--lexical-only", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--debug", action="store_true", help="print per-stage label tracks to stderr")
    p.set_defaults(func=cmd_restore)

    p = sub.add_parser("eval", help="score predictions against reference tracks")
    p.add_argument("--pred", required=True)
    p.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    _add_thresholds(p)
    p.add_argument("--format", choices=["table", "records"], default="table")
    p.add_argument("--out")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("tune", help="grid-search thresholds on a dev set")
    p.add_argument("--dev", required=True)
    p.add_argument("--grid-start", type=float, default=0.5)
    p.add_argument("--grid-stop", type=float, default=1.0)
    p.add_argument("--grid-step", type=float, default=0.05)
    p.add_argument("--objective", choices=[o.value for o in Objective], default="micro-f1")
    p.add_argument("--out")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("bench-llm", help="reliability/latency benchmark against an LLM endpoint")
    p.add_argument("--input", required=True)
    p.add_argument("--endpoint", required=True, help="base URL of a chat-completions API")
    p.add_argument("--model", required=True)
    p.add_argument("--prompt", choices=["zero", "few"], required=True)
    p.add_argument("--shots", help="JSON lines of {input, output} examples")
    p.add_argument("--max-inflight", type=int, default=1)
    p.add_argument("--retries", type=int, default=2)
    p.add_argument("--include-unreliable", action="store_true")
    p.add_argument("--format", choices=["table", "records"], default="records")
    p.add_argument("--out")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("predict-rules", help="write a rule-based lexical track")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    defaults = RuleTable()
    p.add_argument("--cue-question-prob", type=float, default=defaults.cue_question_prob)
    p.add_argument("--default-period-prob", type=float, default=defaults.default_period_prob)
    p.add_argument("--marker-comma-prob", type=float, default=defaults.marker_comma_prob)
    p.set_defaults(func=cmd_predict_rules)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except PuntuaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
