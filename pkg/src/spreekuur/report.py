"""Report serialization: JSON documents, an aligned text table, and
flat CSVs shaped for plotting (box plots, stacked proportions, heatmap
cells, correlation matrix).

Serialization is deterministic: keys sorted, floats emitted as repr'd
Python floats, NaN and infinities mapped to null, no timestamps.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Optional

from .harness import ROW_METRICS, TABLE_METRICS, MetricReport, QualReport
from .stats import RUBRIC_CATEGORIES, AlphaResult, CorrelationResult, MeanSd

METRIC_LABELS = {
    "alternation": "Turn alternation",
    "role_consistency": "Role consistency",
    "asl": "Average sentence length",
    "spt": "Sentences per turn",
    "topic_coverage": "Topic coverage",
    "ttr": "TTR",
    "msttr": "MSTTR",
    "mattr": "MATTR",
    "greeting_count": "Greeting phrases",
    "closing_count": "Closing phrases",
    "word_count": "Word count",
    "turn_count": "Turn count",
}


def _safe(value):
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return None
    return value


def _mean_sd_dict(ms: MeanSd) -> dict:
    return {"mean": _safe(ms.mean), "sd": _safe(ms.sd), "n": ms.n}


def _alpha_dict(a: AlphaResult) -> dict:
    return {"alpha": _safe(a.alpha), "n_pairable": a.n_pairable, "degenerate": a.degenerate}


def _rho_dict(r: CorrelationResult) -> dict:
    return {
        "rho": _safe(r.rho),
        "n": r.n,
        "degenerate": r.degenerate,
        "small_sample": r.small_sample,
    }


def metric_report_dict(report: MetricReport) -> dict:
    return {
        "window": report.window,
        "per_dialogue": {
            did: {k: _safe(v) for k, v in row.items()}
            for did, row in report.per_dialogue.items()
        },
        "missing": report.missing,
        "detail": report.detail,
        "corpus": {m: _mean_sd_dict(ms) for m, ms in report.corpus.items()},
        "totals": dict(report.totals),
    }


def qual_report_dict(report: QualReport) -> dict:
    return {
        "alpha_level": report.alpha_level,
        "pooling": report.pooling,
        "overall": _mean_sd_dict(report.overall),
        "per_category": {c: _mean_sd_dict(ms) for c, ms in report.per_category.items()},
        "per_rater_category": {
            rater: {c: _safe(v) for c, v in cats.items()}
            for rater, cats in report.per_rater_category.items()
        },
        "alpha_per_category": {
            c: _alpha_dict(a) for c, a in report.alpha_per_category.items()
        },
        "alpha_missing": dict(report.alpha_missing),
        "leave_one_out": {
            c: {rater: _alpha_dict(a) for rater, a in raters.items()}
            for c, raters in report.leave_one_out.items()
        },
        "leave_one_out_missing": dict(report.leave_one_out_missing),
        "quant_qual_rho": {
            c: {m: _rho_dict(r) for m, r in metrics.items()}
            for c, metrics in report.quant_qual_rho.items()
        },
        "rho_missing": {c: dict(m) for c, m in report.rho_missing.items()},
    }


def combined_dict(metrics: MetricReport, qual: Optional[QualReport] = None) -> dict:
    out = {"metrics": metric_report_dict(metrics)}
    if qual is not None:
        out["ratings"] = qual_report_dict(qual)
    return out


def dumps(data: dict) -> str:
    """Canonical JSON text: sorted keys, UTF-8 verbatim, trailing newline."""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _fmt(value, width: int = 7) -> str:
    if value is None:
        return "--".rjust(width)
    return f"{value:.3f}".rjust(width)


def render_table(report: MetricReport) -> str:
    """Aligned-text summary: per-metric mean/sd plus phrase totals."""
    label_width = max(len(METRIC_LABELS[m]) for m in TABLE_METRICS) + 2
    lines = [
        f"{'Metric'.ljust(label_width)}{'Mean'.rjust(7)}{'SD'.rjust(7)}",
        "-" * (label_width + 14),
    ]
    for metric in TABLE_METRICS:
        ms = report.corpus.get(metric)
        label = METRIC_LABELS[metric].ljust(label_width)
        if ms is None:
            lines.append(f"{label}{_fmt(None)}{_fmt(None)}")
        else:
            lines.append(f"{label}{_fmt(ms.mean)}{_fmt(ms.sd)}")
    lines.append("")
    lines.append(f"{'Greeting phrases (total)'.ljust(label_width)}{report.totals['greetings']:>7}")
    lines.append(f"{'Closing phrases (total)'.ljust(label_width)}{report.totals['closings']:>7}")
    lines.append(f"{'Dialogues'.ljust(label_width)}{len(report.per_dialogue):>7}")
    return "\n".join(lines) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _cell(value) -> str:
    value = _safe(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def per_dialogue_csv(report: MetricReport) -> str:
    header = ["dialogue_id", *ROW_METRICS]
    rows = [
        [did, *(_cell(row.get(m)) for m in ROW_METRICS)]
        for did, row in report.per_dialogue.items()
    ]
    return _csv_text(header, rows)


def role_consistency_csv(report: MetricReport) -> str:
    header = ["dialogue_id", "doctor", "patient", "mean", "doctor_band", "patient_band"]
    rows = []
    for did, row in report.per_dialogue.items():
        info = report.detail.get(did, {}).get("role_consistency")
        if info is None:
            continue
        rows.append(
            [
                did,
                _cell(info["doctor"]),
                _cell(info["patient"]),
                _cell(row.get("role_consistency")),
                info["doctor_band"],
                info["patient_band"],
            ]
        )
    return _csv_text(header, rows)


def topic_proportions_csv(report: MetricReport) -> str:
    header = ["dialogue_id", "topic", "hits", "proportion"]
    rows = []
    for did in report.per_dialogue:
        info = report.detail.get(did, {})
        hits = info.get("topic_hits") or {}
        proportions = info.get("topic_proportions") or {}
        for topic in sorted(hits):
            rows.append([did, topic, _cell(hits[topic]), _cell(proportions.get(topic))])
    return _csv_text(header, rows)


def rater_category_means_csv(report: QualReport) -> str:
    header = ["rater_id", "category", "mean"]
    rows = []
    for rater in sorted(report.per_rater_category):
        cats = report.per_rater_category[rater]
        for cat in RUBRIC_CATEGORIES:
            if cat in cats:
                rows.append([rater, cat, _cell(cats[cat])])
    return _csv_text(header, rows)


def alpha_csv(report: QualReport) -> str:
    header = ["category", "alpha", "n_pairable", "degenerate", "reason"]
    rows = []
    for cat in RUBRIC_CATEGORIES:
        if cat in report.alpha_per_category:
            a = report.alpha_per_category[cat]
            rows.append([cat, _cell(a.alpha), _cell(a.n_pairable), _cell(a.degenerate), ""])
        elif cat in report.alpha_missing:
            rows.append([cat, "", "", "", report.alpha_missing[cat]])
    return _csv_text(header, rows)


def leave_one_out_csv(report: QualReport) -> str:
    header = ["category", "excluded_rater", "alpha", "n_pairable", "degenerate"]
    rows = []
    for cat in RUBRIC_CATEGORIES:
        for rater, a in sorted(report.leave_one_out.get(cat, {}).items()):
            rows.append([cat, rater, _cell(a.alpha), _cell(a.n_pairable), _cell(a.degenerate)])
    return _csv_text(header, rows)


def correlation_matrix_csv(report: QualReport) -> str:
    header = ["category", "metric", "rho", "n", "degenerate"]
    rows = []
    for cat in RUBRIC_CATEGORIES:
        metrics = report.quant_qual_rho.get(cat, {})
        for metric in ROW_METRICS:
            if metric in metrics:
                r = metrics[metric]
                rows.append([cat, metric, _cell(r.rho), _cell(r.n), _cell(r.degenerate)])
    return _csv_text(header, rows)


def write_metric_outputs(report: MetricReport, outdir: str | Path) -> list[Path]:
    """Write the metric report family into ``outdir``; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    outputs = {
        "metrics.json": dumps(metric_report_dict(report)),
        "metrics_table.txt": render_table(report),
        "per_dialogue.csv": per_dialogue_csv(report),
        "role_consistency.csv": role_consistency_csv(report),
        "topic_proportions.csv": topic_proportions_csv(report),
    }
    paths = []
    for name, text in outputs.items():
        path = outdir / name
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths


def write_qual_outputs(report: QualReport, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    outputs = {
        "ratings.json": dumps(qual_report_dict(report)),
        "rater_category_means.csv": rater_category_means_csv(report),
        "alpha_per_category.csv": alpha_csv(report),
        "leave_one_out_alpha.csv": leave_one_out_csv(report),
        "correlation_matrix.csv": correlation_matrix_csv(report),
    }
    paths = []
    for name, text in outputs.items():
        path = outdir / name
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths


def write_combined(
    metrics: MetricReport, qual: Optional[QualReport], outdir: str | Path
) -> Path:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "report.json"
    path.write_text(dumps(combined_dict(metrics, qual)), encoding="utf-8")
    return path
