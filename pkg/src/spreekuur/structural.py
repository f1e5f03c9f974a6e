"""Turn-structure metrics: alternation, greeting/closing detection, ASL, SPT."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dialogue import Dialogue
from .errors import NoSentences, TooFewTurns
from .lexicon import Lexicon, match_starts

__all__ = [
    "StructuralScores",
    "PhraseDetection",
    "alternation_rate",
    "detect_phrases",
    "average_sentence_length",
    "sentences_per_turn",
    "structural_scores",
]


def alternation_rate(dialogue: Dialogue) -> float:
    """Fraction of adjacent turn pairs where the speaker changes.

    1.0 means strict alternation; real consultations score lower because
    of interjections and follow-up turns by the same speaker.
    """
    if dialogue.turn_count < 2:
        raise TooFewTurns(f"alternation rate needs >= 2 turns, got {dialogue.turn_count}")
    keys = [t.speaker_key for t in dialogue.turns]
    switches = sum(1 for a, b in zip(keys, keys[1:]) if a != b)
    return switches / (dialogue.turn_count - 1)


@dataclass(frozen=True)
class PhraseDetection:
    scope: str  # greeting | closing
    count: int
    turn_indices: tuple[int, ...]
    warning: Optional[str] = None  # "empty-lexicon" when no entries to match


def detect_phrases(dialogue: Dialogue, lexicon: Lexicon, scope: str) -> PhraseDetection:
    """Count turns containing any lexicon phrase (one count per matching turn).

    Phrases match as contiguous normalized-token sequences. An empty
    lexicon yields zero matches with an ``empty-lexicon`` warning rather
    than an error.
    """
    if len(lexicon) == 0:
        return PhraseDetection(scope=scope, count=0, turn_indices=(), warning="empty-lexicon")
    indices = tuple(
        i for i, turn in enumerate(dialogue.turns) if match_starts(turn.tokens, lexicon)
    )
    return PhraseDetection(scope=scope, count=len(indices), turn_indices=indices)


def average_sentence_length(dialogue: Dialogue) -> float:
    """Mean number of word tokens per sentence."""
    lengths = [len(s.tokens) for t in dialogue.turns for s in t.sentences]
    if not lengths:
        raise NoSentences(f"dialogue {dialogue.id!r} has no sentences")
    return sum(lengths) / len(lengths)


def sentences_per_turn(dialogue: Dialogue) -> float:
    """Mean number of sentences per turn."""
    if dialogue.turn_count == 0:
        raise NoSentences(f"dialogue {dialogue.id!r} has no turns")
    return sum(len(t.sentences) for t in dialogue.turns) / dialogue.turn_count


@dataclass(frozen=True)
class StructuralScores:
    alternation_rate: float
    greeting_count: int
    closing_count: int
    asl: float
    spt: float


def structural_scores(
    dialogue: Dialogue, greetings: Lexicon, closings: Lexicon
) -> StructuralScores:
    return StructuralScores(
        alternation_rate=alternation_rate(dialogue),
        greeting_count=detect_phrases(dialogue, greetings, "greeting").count,
        closing_count=detect_phrases(dialogue, closings, "closing").count,
        asl=average_sentence_length(dialogue),
        spt=sentences_per_turn(dialogue),
    )
