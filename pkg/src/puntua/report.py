"""Text tables, line-delimited records and figures for evaluation output."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Sequence

from puntua.metrics import EvalReport, LatencyStats

# Reference points for LLM benchmark output; not targets.
PUBLISHED_CONTEXT = (
    "published reference points: reliability 92.4% (ChatGPT few-shot), "
    "28.7% (PaLM2 few-shot); latency 1.13 s/utt (ChatGPT few-shot), "
    "0.04 s/utt (hybrid system excl. ASR)"
)


def format_table(report: EvalReport) -> str:
    lines = [f"mode: {report.mode}  utterances: {report.utterances}"]
    header = f"{'mark':<8}{'P':>9}{'R':>9}{'F1':>9}{'tp':>7}{'fp':>7}{'fn':>7}"
    lines += [header, "-" * len(header)]
    for mark, s in report.per_mark.items():
        lines.append(
            f"{mark.value:<8}{s.precision:>9.2f}{s.recall:>9.2f}{s.f1:>9.2f}{s.tp:>7}{s.fp:>7}{s.fn:>7}"
        )
    lines.append("-" * len(header))
    lines.append(f"{'micro':<8}{'':>9}{'':>9}{report.micro_f1:>9.2f}")
    if report.wer is not None:
        lines.append(f"WER: {100 * report.wer:.2f}%")
    if report.reliability is not None:
        lines.append(f"reliability: {report.reliability:.1f}%")
    if report.latency_mean_s is not None:
        lines.append(f"latency: {report.latency_mean_s:.3f} s/utt")
    if report.lexical_fallbacks:
        lines.append(f"lexical-only fallbacks: {report.lexical_fallbacks}")
    return "\n".join(lines) + "\n"


def report_records(report: EvalReport) -> list[dict]:
    out = []
    for mark, s in report.per_mark.items():
        out.append(
            {
                "kind": "mark",
                "mode": report.mode,
                "mark": mark.value,
                "precision": s.precision,
                "recall": s.recall,
                "f1": s.f1,
                "tp": s.tp,
                "fp": s.fp,
                "fn": s.fn,
            }
        )
    out.append(
        {
            "kind": "summary",
            "mode": report.mode,
            "utterances": report.utterances,
            "micro_f1": report.micro_f1,
            "wer": report.wer,
            "reliability": report.reliability,
            "latency_mean_s": report.latency_mean_s,
            "lexical_fallbacks": report.lexical_fallbacks,
        }
    )
    return out


def dumps_records(records: Iterable[dict]) -> str:
    return "".join(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n" for r in records)


def latency_record(stats: LatencyStats) -> dict:
    return {
        "kind": "latency",
        "mean_s": stats.mean,
        "min_s": stats.min,
        "max_s": stats.max,
        "p50_s": stats.p50,
        "p95_s": stats.p95,
        "count": stats.count,
    }


# -- figures -----------------------------------------------------------------

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    # Dropping the Software key keeps PNG bytes stable across matplotlib versions.
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata={"Software": None})
    return path


def plot_mark_scores(report: EvalReport, path: Path) -> Path:
    plt = _pyplot()
    marks = list(report.per_mark)
    metrics = [("precision", "P"), ("recall", "R"), ("f1", "F1")]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    width = 0.25
    for k, (attr, label) in enumerate(metrics):
        xs = [i + (k - 1) * width for i in range(len(marks))]
        ax.bar(xs, [getattr(report.per_mark[m], attr) for m in marks], width, label=label)
    ax.set_xticks(range(len(marks)))
    ax.set_xticklabels([m.value for m in marks])
    ax.set_ylim(0, 100)
    ax.set_ylabel("%")
    ax.set_title(f"{report.mode} (micro F1 {report.micro_f1:.2f})")
    ax.legend(frameon=False, ncol=3, loc="upper right")
    try:
        return _save(fig, path)
    finally:
        plt.close(fig)


def plot_grid_surface(points: Sequence, objective, path: Path, best=None) -> Path:
    """Heatmap of the tuning objective over the threshold grid."""
    import numpy as np

    plt = _pyplot()
    tqs = sorted({p.thresholds.t_question for p in points})
    tds = sorted({p.thresholds.t_declarative for p in points})
    z = np.full((len(tqs), len(tds)), np.nan)
    for p in points:
        z[tqs.index(p.thresholds.t_question), tds.index(p.thresholds.t_declarative)] = (
            100 * p.objective(objective)
        )
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(
        z,
        origin="lower",
        aspect="auto",
        extent=(tds[0], tds[-1], tqs[0], tqs[-1]) if len(tds) > 1 and len(tqs) > 1 else None,
        cmap="viridis",
    )
    fig.colorbar(im, ax=ax, label=f"{objective.value} (%)")
    if best is not None and len(tds) > 1 and len(tqs) > 1:
        ax.plot(best.thresholds.t_declarative, best.thresholds.t_question, "r+", ms=12)
    ax.set_xlabel("t_declarative")
    ax.set_ylabel("t_question")
    try:
        return _save(fig, path)
    finally:
        plt.close(fig)


def plot_latency(samples: Sequence[float], path: Path) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.hist(samples, bins=min(20, max(1, len(samples))), color="0.4")
    ax.set_xlabel("seconds per utterance")
    ax.set_ylabel("calls")
    try:
        return _save(fig, path)
    finally:
        plt.close(fig)
