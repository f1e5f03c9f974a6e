"""Corpus evaluation, ratings ingestion and quant-qual reporting.

The harness never aborts a corpus run on a per-dialogue metric failure:
a metric that cannot be computed (say MSTTR on a 40-token dialogue)
becomes an absent cell with the error recorded as its reason.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .dialogue import Dialogue, parse_transcript
from .errors import (
    EmptyInput,
    MalformedRow,
    NoOverlap,
    OutOfRangeScore,
    SpreekuurError,
    TooFewRaters,
    UndefinedAlpha,
    UnknownCategory,
)
from .lexical import DEFAULT_WINDOW, mattr, msttr, role_consistency, topic_coverage, ttr
from .lexicon import LexiconSet
from .stats import (
    RUBRIC_CATEGORIES,
    SCORE_RANGE,
    AlphaResult,
    CorrelationResult,
    MeanSd,
    RatingTable,
    krippendorff_alpha,
    leave_one_out_alpha,
    mean_sd,
    spearman_rho,
)
from .structural import alternation_rate, average_sentence_length, detect_phrases, sentences_per_turn

# The seven metrics aggregated as corpus mean/sd in the summary table.
TABLE_METRICS = (
    "alternation",
    "role_consistency",
    "asl",
    "spt",
    "topic_coverage",
    "ttr",
    "msttr",
)

# Every numeric per-dialogue value; the correlation matrix spans all of them.
ROW_METRICS = (
    "alternation",
    "greeting_count",
    "closing_count",
    "asl",
    "spt",
    "ttr",
    "msttr",
    "mattr",
    "role_consistency",
    "topic_coverage",
    "word_count",
    "turn_count",
)

RATINGS_HEADER = ("rater_id", "dialogue_id", "category", "score")


@dataclass
class MetricReport:
    """Per-dialogue metric rows plus corpus-level aggregates.

    ``per_dialogue`` maps dialogue id to a row with every ROW_METRICS
    key; uncomputable cells hold None and their reason lives in
    ``missing``. ``detail`` keeps the sub-metric breakdowns (role split,
    topic hit proportions) that the flat row cannot carry.
    """

    per_dialogue: dict[str, dict]
    corpus: dict[str, MeanSd]
    totals: dict[str, int]
    missing: dict[str, dict[str, str]] = field(default_factory=dict)
    detail: dict[str, dict] = field(default_factory=dict)
    window: int = DEFAULT_WINDOW

    @property
    def dialogue_ids(self) -> tuple[str, ...]:
        return tuple(self.per_dialogue)

    def metric_values(self, metric: str) -> dict[str, float]:
        """Present (non-missing) values of one metric keyed by dialogue id."""
        out = {}
        for did, row in self.per_dialogue.items():
            value = row.get(metric)
            if value is not None:
                out[did] = value
        return out

    def recompute_corpus(self) -> dict[str, MeanSd]:
        """Aggregates recomputed from the rows; must equal ``corpus``."""
        return _aggregate(self.per_dialogue)


def _aggregate(per_dialogue: dict[str, dict]) -> dict[str, MeanSd]:
    corpus = {}
    for metric in TABLE_METRICS:
        values = [row[metric] for row in per_dialogue.values() if row.get(metric) is not None]
        if values:
            corpus[metric] = mean_sd(values)
    return corpus


def _evaluate_dialogue(
    dialogue: Dialogue, lexicons: LexiconSet, window: int
) -> tuple[dict, dict, dict]:
    row: dict = {metric: None for metric in ROW_METRICS}
    missing: dict[str, str] = {}
    detail: dict = {}

    def attempt(metric: str, compute):
        try:
            row[metric] = compute()
        except SpreekuurError as exc:
            missing[metric] = f"{type(exc).__name__}: {exc}"

    row["word_count"] = dialogue.word_count
    row["turn_count"] = dialogue.turn_count
    attempt("alternation", lambda: alternation_rate(dialogue))

    greetings = detect_phrases(dialogue, lexicons.greetings, "greeting")
    closings = detect_phrases(dialogue, lexicons.closings, "closing")
    row["greeting_count"] = greetings.count
    row["closing_count"] = closings.count
    detail["greeting_turns"] = list(greetings.turn_indices)
    detail["closing_turns"] = list(closings.turn_indices)

    attempt("asl", lambda: average_sentence_length(dialogue))
    attempt("spt", lambda: sentences_per_turn(dialogue))

    tokens = dialogue.tokens
    attempt("ttr", lambda: ttr(tokens))
    attempt("msttr", lambda: msttr(tokens, window))
    attempt("mattr", lambda: mattr(tokens, window))

    def role():
        scores = role_consistency(dialogue, lexicons.role_doctor, lexicons.role_patient)
        detail["role_consistency"] = {
            "doctor": scores.doctor,
            "patient": scores.patient,
            "doctor_band": scores.doctor_band,
            "patient_band": scores.patient_band,
            "mean_band": scores.mean_band,
        }
        return scores.mean

    attempt("role_consistency", role)

    def topics():
        coverage = topic_coverage(dialogue, lexicons.topics)
        detail["topic_hits"] = dict(coverage.hits)
        detail["topic_proportions"] = dict(coverage.proportions)
        return coverage.score

    attempt("topic_coverage", topics)
    return row, missing, detail


def evaluate_corpus(
    dialogues: Sequence[Dialogue],
    lexicons: LexiconSet,
    window: int = DEFAULT_WINDOW,
    jobs: int = 1,
) -> MetricReport:
    """Compute every metric for every dialogue, then corpus aggregates."""
    if not dialogues:
        raise EmptyInput("corpus is empty")
    ids = [d.id for d in dialogues]
    duplicates = {i for i in ids if ids.count(i) > 1}
    if duplicates:
        raise ValueError(f"duplicate dialogue ids: {sorted(duplicates)}")

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda d: _evaluate_dialogue(d, lexicons, window), dialogues)
            )
    else:
        results = [_evaluate_dialogue(d, lexicons, window) for d in dialogues]

    per_dialogue: dict[str, dict] = {}
    missing: dict[str, dict[str, str]] = {}
    detail: dict[str, dict] = {}
    for dialogue, (row, row_missing, row_detail) in zip(dialogues, results):
        per_dialogue[dialogue.id] = row
        if row_missing:
            missing[dialogue.id] = row_missing
        detail[dialogue.id] = row_detail

    totals = {
        "greetings": sum(row["greeting_count"] or 0 for row in per_dialogue.values()),
        "closings": sum(row["closing_count"] or 0 for row in per_dialogue.values()),
    }
    return MetricReport(
        per_dialogue=per_dialogue,
        corpus=_aggregate(per_dialogue),
        totals=totals,
        missing=missing,
        detail=detail,
        window=window,
    )


def bundled_sample_corpus_dir() -> Path:
    """Directory of the small demonstration corpus shipped with the package."""
    return Path(resources.files("spreekuur").joinpath("data", "sample_corpus"))


def load_corpus(path: str | Path) -> list[Dialogue]:
    """Read a corpus directory: ``*.txt`` transcripts and/or ``*.json`` dialogues.

    Files load in name order; the file stem becomes the dialogue id for
    transcripts.
    """
    path = Path(path)
    if not path.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {path}")
    dialogues = []
    for file in sorted(path.iterdir()):
        if file.suffix == ".txt":
            dialogues.append(
                parse_transcript(
                    file.read_text(encoding="utf-8"), dialogue_id=file.stem, source="file"
                )
            )
        elif file.suffix == ".json" and file.name != "manifest.json":
            dialogues.append(Dialogue.from_dict(json.loads(file.read_text(encoding="utf-8"))))
    if not dialogues:
        raise EmptyInput(f"no .txt or .json dialogues in {path}")
    return dialogues


def ingest_ratings(path: str | Path) -> RatingTable:
    """Parse a ratings CSV (``rater_id,dialogue_id,category,score``).

    An empty score field is a sanctioned missing cell (a rater skipping
    a category), not an error. Everything else malformed raises with the
    offending line number.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"ratings file not found: {path}")
    lo, hi = SCORE_RANGE
    cells: dict[tuple[str, tuple[str, str]], int] = {}
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRow("ratings file is empty", line=1) from None
        if tuple(h.strip().lower() for h in header) != RATINGS_HEADER:
            raise MalformedRow(
                f"expected header {','.join(RATINGS_HEADER)}, got {','.join(header)}", line=1
            )
        for line_no, fields in enumerate(reader, start=2):
            if not fields or all(not f.strip() for f in fields):
                continue
            if len(fields) != 4:
                raise MalformedRow(f"expected 4 fields, got {len(fields)}", line=line_no)
            rater, dialogue_id, category, score_text = (f.strip() for f in fields)
            if not rater or not dialogue_id:
                raise MalformedRow("rater_id and dialogue_id must be non-empty", line=line_no)
            if category not in RUBRIC_CATEGORIES:
                raise UnknownCategory(
                    f"unknown category {category!r} (accepted: {', '.join(RUBRIC_CATEGORIES)})",
                    line=line_no,
                )
            if score_text == "":
                continue  # sanctioned missing cell
            try:
                score = int(score_text)
            except ValueError:
                raise OutOfRangeScore(
                    f"score {score_text!r} is not an integer", line=line_no
                ) from None
            if not lo <= score <= hi:
                raise OutOfRangeScore(
                    f"score {score} outside {lo}..{hi}", line=line_no
                )
            key = (rater, (dialogue_id, category))
            if key in cells:
                raise MalformedRow(
                    f"duplicate rating for {rater}/{dialogue_id}/{category}", line=line_no
                )
            cells[key] = score
    return RatingTable.from_cells(cells)


@dataclass
class QualReport:
    """Human-rating statistics and their correlation with the metrics."""

    overall: MeanSd
    per_category: dict[str, MeanSd]
    per_rater_category: dict[str, dict[str, Optional[float]]]
    alpha_per_category: dict[str, AlphaResult]
    alpha_missing: dict[str, str]
    leave_one_out: dict[str, dict[str, AlphaResult]]
    leave_one_out_missing: dict[str, str]
    quant_qual_rho: dict[str, dict[str, CorrelationResult]]
    rho_missing: dict[str, dict[str, str]]
    pooling: str
    alpha_level: str


def _pooled_scores(table: RatingTable, category: str, pooling: str) -> dict[str, float]:
    """Per-dialogue pooled score for one category; missing cells skipped."""
    pool = np.median if pooling == "median" else np.mean
    out = {}
    for dialogue_id in table.dialogue_ids:
        scores = table.scores_for_item((dialogue_id, category))
        if scores:
            out[dialogue_id] = float(pool(scores))
    return out


def qual_report(
    table: RatingTable,
    metrics: MetricReport,
    level: str = "ordinal",
    pooling: str = "mean",
) -> QualReport:
    """Build the qualitative report against an existing metric report."""
    if pooling not in ("mean", "median"):
        raise ValueError(f"pooling must be 'mean' or 'median', got {pooling!r}")
    rated_ids = set(table.dialogue_ids)
    known_ids = set(metrics.dialogue_ids)
    if not rated_ids & known_ids:
        raise NoOverlap("no dialogue appears in both the ratings and the metric report")
    unknown = rated_ids - known_ids
    if unknown:
        raise ValueError(f"ratings reference dialogues not in the metric report: {sorted(unknown)}")

    all_scores = list(table.cells.values())
    overall = mean_sd(all_scores)

    categories = [c for c in RUBRIC_CATEGORIES if c in table.categories]
    per_category = {}
    for cat in categories:
        scores = [s for (_, (_, c)), s in table.cells.items() if c == cat]
        per_category[cat] = mean_sd(scores)

    per_rater_category: dict[str, dict[str, Optional[float]]] = {}
    for rater in table.raters:
        per_rater_category[rater] = {}
        for cat in categories:
            scores = [
                s
                for (r, (_, c)), s in table.cells.items()
                if r == rater and c == cat
            ]
            per_rater_category[rater][cat] = float(np.mean(scores)) if scores else None

    alpha_per_category: dict[str, AlphaResult] = {}
    alpha_missing: dict[str, str] = {}
    for cat in categories:
        subtable = table.filter_category(cat)
        if len(subtable.raters) < 2:
            alpha_missing[cat] = (
                f"TooFewRaters: category has {len(subtable.raters)} rater(s), need >= 2"
            )
            continue
        try:
            alpha_per_category[cat] = krippendorff_alpha(subtable, level=level)
        except UndefinedAlpha as exc:
            alpha_missing[cat] = f"UndefinedAlpha: {exc}"

    leave_one_out: dict[str, dict[str, AlphaResult]] = {}
    leave_one_out_missing: dict[str, str] = {}
    for cat in categories:
        try:
            leave_one_out[cat] = leave_one_out_alpha(table, cat, level=level)
        except (TooFewRaters, UndefinedAlpha) as exc:
            leave_one_out_missing[cat] = f"{type(exc).__name__}: {exc}"

    quant_qual_rho: dict[str, dict[str, CorrelationResult]] = {}
    rho_missing: dict[str, dict[str, str]] = {}
    for cat in categories:
        pooled = _pooled_scores(table, cat, pooling)
        quant_qual_rho[cat] = {}
        rho_missing[cat] = {}
        for metric in ROW_METRICS:
            values = metrics.metric_values(metric)
            shared = sorted(set(pooled) & set(values))
            if len(shared) < 3:
                rho_missing[cat][metric] = (
                    f"TooFewPairs: {len(shared)} shared dialogue(s), need >= 3"
                )
                continue
            quant_qual_rho[cat][metric] = spearman_rho(
                [pooled[d] for d in shared], [values[d] for d in shared]
            )
        if not rho_missing[cat]:
            del rho_missing[cat]
    return QualReport(
        overall=overall,
        per_category=per_category,
        per_rater_category=per_rater_category,
        alpha_per_category=alpha_per_category,
        alpha_missing=alpha_missing,
        leave_one_out=leave_one_out,
        leave_one_out_missing=leave_one_out_missing,
        quant_qual_rho=quant_qual_rho,
        rho_missing=rho_missing,
        pooling=pooling,
        alpha_level=level,
    )
