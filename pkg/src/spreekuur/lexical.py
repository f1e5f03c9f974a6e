"""Lexical diversity and lexicon-overlap metrics.

Diversity comes in three flavors: plain type-token ratio (TTR), mean
segmental TTR over consecutive non-overlapping windows (MSTTR), and the
moving-average TTR over all overlapping windows (MATTR). Overlap metrics
score role-specific vocabulary use and topic keyword coverage against
the shipped lexicons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dialogue import Dialogue, Speaker
from .errors import EmptyTokenStream, MissingRole, TextTooShort
from .lexicon import Lexicon, covered_positions, match_starts

__all__ = [
    "ttr",
    "msttr",
    "mattr",
    "role_consistency",
    "topic_coverage",
    "RoleConsistencyScores",
    "TopicCoverage",
    "LexicalScores",
    "ROLE_BAND",
]

# Heuristic plausibility band for role-consistency scores.
ROLE_BAND = (0.05, 0.35)

DEFAULT_WINDOW = 50


def ttr(tokens: Sequence[str]) -> float:
    """Unique tokens divided by total tokens."""
    if not tokens:
        raise EmptyTokenStream("TTR needs at least one token")
    return len(set(tokens)) / len(tokens)


def msttr(tokens: Sequence[str], window: int = DEFAULT_WINDOW) -> float:
    """Mean TTR over consecutive non-overlapping windows of fixed size.

    The trailing partial segment is discarded, keeping per-segment TTRs
    comparable across texts.
    """
    if window < 1:
        raise ValueError("window must be positive")
    if len(tokens) < window:
        raise TextTooShort(f"need >= {window} tokens for MSTTR, got {len(tokens)}")
    segment_ttrs = [
        ttr(tokens[start : start + window])
        for start in range(0, len(tokens) - window + 1, window)
    ]
    return sum(segment_ttrs) / len(segment_ttrs)


def mattr(tokens: Sequence[str], window: int = DEFAULT_WINDOW) -> float:
    """Mean TTR over all overlapping sliding windows of fixed size.

    Runs in O(n) with a sliding type-count map; the naive per-window scan
    is O(n*w) and matters on multi-thousand-word dialogues.
    """
    if window < 1:
        raise ValueError("window must be positive")
    n = len(tokens)
    if n < window:
        raise TextTooShort(f"need >= {window} tokens for MATTR, got {n}")

    counts: dict[str, int] = {}
    for tok in tokens[:window]:
        counts[tok] = counts.get(tok, 0) + 1
    types = len(counts)
    total = types / window
    for i in range(n - window):
        out_tok = tokens[i]
        counts[out_tok] -= 1
        if counts[out_tok] == 0:
            del counts[out_tok]
            types -= 1
        in_tok = tokens[i + window]
        counts[in_tok] = counts.get(in_tok, 0) + 1
        if counts[in_tok] == 1:
            types += 1
        total += types / window
    return total / (n - window + 1)


def _band(score: float) -> str:
    low, high = ROLE_BAND
    if score < low:
        return "below"
    if score > high:
        return "above"
    return "within"


@dataclass(frozen=True)
class RoleConsistencyScores:
    doctor: float
    patient: float
    mean: float
    doctor_band: str
    patient_band: str
    mean_band: str


def role_consistency(
    dialogue: Dialogue,
    doctor_lexicon: Lexicon,
    patient_lexicon: Lexicon,
    denominator: str = "tokens",
) -> RoleConsistencyScores:
    """Proportion of each role's vocabulary matched by that role's lexicon.

    Default score per role: token positions covered by lexicon matches,
    divided by the role's total token count. ``denominator="turns"``
    switches to the fraction of the role's turns containing at least one
    match. Scores carry a below/within/above flag against the heuristic
    band ``ROLE_BAND``.
    """
    if len(doctor_lexicon) == 0 or len(patient_lexicon) == 0:
        raise ValueError("role lexicons must be non-empty")
    if denominator not in ("tokens", "turns"):
        raise ValueError(f"unknown denominator {denominator!r}")

    def role_score(speaker: Speaker, lexicon: Lexicon) -> float:
        turns = dialogue.turns_by_speaker(speaker)
        if not turns:
            raise MissingRole(f"dialogue {dialogue.id!r} has no {speaker.value} turns")
        if denominator == "turns":
            matched = sum(1 for t in turns if match_starts(t.tokens, lexicon))
            return matched / len(turns)
        tokens = [tok for t in turns for tok in t.tokens]
        if not tokens:
            return 0.0
        return len(covered_positions(tokens, lexicon)) / len(tokens)

    doctor = role_score(Speaker.DOCTOR, doctor_lexicon)
    patient = role_score(Speaker.PATIENT, patient_lexicon)
    mean = (doctor + patient) / 2
    return RoleConsistencyScores(
        doctor=doctor,
        patient=patient,
        mean=mean,
        doctor_band=_band(doctor),
        patient_band=_band(patient),
        mean_band=_band(mean),
    )


@dataclass(frozen=True)
class TopicCoverage:
    hits: dict[str, int]  # topic name -> keyword occurrences
    proportions: dict[str, float]  # topic share of all hits (0.0 when no hits)
    score: float  # fraction of topics with at least one hit


def topic_coverage(dialogue: Dialogue, topics: Sequence[Lexicon]) -> TopicCoverage:
    """Keyword occurrences per topic plus the fraction of topics covered.

    Each match starting position counts once per topic. Proportions are
    the per-topic share of all hits, the stacked-bar view of where the
    conversation spent its keywords.
    """
    if not topics:
        raise ValueError("topics must be non-empty")
    tokens = dialogue.tokens
    hits = {t.name: len(match_starts(tokens, t)) for t in topics}
    total = sum(hits.values())
    proportions = {name: (count / total if total else 0.0) for name, count in hits.items()}
    covered = sum(1 for count in hits.values() if count > 0)
    return TopicCoverage(hits=hits, proportions=proportions, score=covered / len(topics))


@dataclass(frozen=True)
class LexicalScores:
    ttr: float
    msttr: float
    mattr: float
    role_consistency: RoleConsistencyScores
    topic_coverage: TopicCoverage


def lexical_scores(
    dialogue: Dialogue,
    doctor_lexicon: Lexicon,
    patient_lexicon: Lexicon,
    topics: Sequence[Lexicon],
    window: int = DEFAULT_WINDOW,
) -> LexicalScores:
    tokens = dialogue.tokens
    return LexicalScores(
        ttr=ttr(tokens),
        msttr=msttr(tokens, window),
        mattr=mattr(tokens, window),
        role_consistency=role_consistency(dialogue, doctor_lexicon, patient_lexicon),
        topic_coverage=topic_coverage(dialogue, topics),
    )
