"""Dialogue model: speaker-labeled transcripts parsed into turns, sentences, tokens.

A transcript is plain UTF-8 text with one or more ``Label: text`` lines.
Lines that open with a known speaker label start a new turn; unlabeled lines
continue the current turn. Every metric in this package consumes the
resulting :class:`Dialogue` structure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional

from .errors import EmptyTranscript

__all__ = [
    "Speaker",
    "Sentence",
    "Turn",
    "Dialogue",
    "tokenize",
    "segment_sentences",
    "parse_transcript",
    "to_transcript",
    "DEFAULT_LABEL_MAP",
    "DEFAULT_ABBREVIATIONS",
]


class Speaker(Enum):
    DOCTOR = "doctor"
    PATIENT = "patient"
    OTHER = "other"


# Label matching is case-insensitive and applies at line start only.
DEFAULT_LABEL_MAP: dict[str, Speaker] = {
    "arts": Speaker.DOCTOR,
    "dokter": Speaker.DOCTOR,
    "patiënt": Speaker.PATIENT,
    "patient": Speaker.PATIENT,
}

# Trailing-period words that must not end a sentence.
DEFAULT_ABBREVIATIONS = frozenset(
    ["dr.", "drs.", "bijv.", "o.a.", "etc.", "ca.", "evt.", "mevr.", "dhr.", "mg.", "ml."]
)

_EDGE_PUNCT_RE = re.compile(r"^\W+|\W+$", re.UNICODE)
_TERMINAL_RE = re.compile(r"[.!?]+(?=\s|$)")
_LABEL_LINE_RE = re.compile(r"^\s*([^:\n]{1,40}?)\s*:\s?(.*)$")


def tokenize(text: str) -> list[str]:
    """Split on whitespace, strip surrounding punctuation, lowercase.

    Interior characters are preserved, so hyphenated and apostrophized
    words survive intact ("HbA1c-waarde," -> "hba1c-waarde"). Tokens that
    are pure punctuation are dropped.
    """
    tokens = []
    for piece in text.split():
        word = _EDGE_PUNCT_RE.sub("", piece)
        if word:
            tokens.append(word.lower())
    return tokens


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: tuple[str, ...]

    @classmethod
    def from_text(cls, text: str) -> "Sentence":
        return cls(text=text, tokens=tuple(tokenize(text)))


def segment_sentences(
    raw_text: str, abbreviations: Iterable[str] = DEFAULT_ABBREVIATIONS
) -> list[Sentence]:
    """Split a turn's text into sentences at terminal punctuation.

    Splits occur after runs of ``. ! ?`` followed by whitespace or end of
    text, except when the final word is a known abbreviation ("dr.",
    "bijv.", ...). Text without terminal punctuation yields one sentence.
    Fragments that carry no word tokens (stray punctuation) are merged
    into a neighboring sentence so token-bearing turns never produce
    token-less sentences.
    """
    if not raw_text.strip():
        raise ValueError("segment_sentences requires non-empty text")
    abbrevs = {a.lower() for a in abbreviations}

    pieces: list[str] = []
    start = 0
    for match in _TERMINAL_RE.finditer(raw_text):
        candidate = raw_text[start : match.end()]
        last_word = candidate.split()[-1].lower() if candidate.split() else ""
        if last_word in abbrevs:
            continue
        stripped = candidate.strip()
        if stripped:
            pieces.append(stripped)
        start = match.end()
    tail = raw_text[start:].strip()
    if tail:
        pieces.append(tail)
    if not pieces:
        pieces = [raw_text.strip()]

    # Merge token-less fragments (e.g. a lone "...") into a neighbor.
    sentences: list[Sentence] = []
    pending = ""
    for piece in pieces:
        if pending:
            piece = pending + " " + piece
            pending = ""
        sent = Sentence.from_text(piece)
        if not sent.tokens:
            if sentences:
                prev = sentences.pop()
                sentences.append(Sentence.from_text(prev.text + " " + piece))
            else:
                pending = piece
            continue
        sentences.append(sent)
    if pending:
        sentences.append(Sentence.from_text(pending))
    return sentences


@dataclass(frozen=True)
class Turn:
    """One contiguous utterance by one speaker."""

    speaker: Speaker
    raw_text: str
    sentences: tuple[Sentence, ...]
    label: str = ""

    @classmethod
    def from_text(
        cls,
        speaker: Speaker,
        raw_text: str,
        label: str = "",
        abbreviations: Iterable[str] = DEFAULT_ABBREVIATIONS,
    ) -> "Turn":
        raw_text = raw_text.strip()
        if not raw_text:
            raise ValueError("Turn text must be non-empty")
        return cls(
            speaker=speaker,
            raw_text=raw_text,
            sentences=tuple(segment_sentences(raw_text, abbreviations)),
            label=label,
        )

    @property
    def speaker_key(self) -> str:
        """Identity used for alternation: distinct Other labels are distinct speakers."""
        if self.speaker is Speaker.OTHER:
            return "other:" + self.label.lower()
        return self.speaker.value

    @property
    def tokens(self) -> list[str]:
        return [t for s in self.sentences for t in s.tokens]


@dataclass(frozen=True)
class Dialogue:
    id: str
    turns: tuple[Turn, ...]
    source: str = "unknown"  # real-sample | synthetic | unknown

    @property
    def turn_count(self) -> int:
        return len(self.turns)

    @property
    def word_count(self) -> int:
        return sum(len(t.tokens) for t in self.turns)

    @property
    def tokens(self) -> list[str]:
        """All word tokens in document order."""
        return [tok for t in self.turns for tok in t.tokens]

    def turns_by_speaker(self, speaker: Speaker) -> list[Turn]:
        return [t for t in self.turns if t.speaker is speaker]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "source": self.source,
            "word_count": self.word_count,
            "turn_count": self.turn_count,
            "turns": [
                {
                    "speaker": t.speaker.value,
                    "label": t.label,
                    "text": t.raw_text,
                    "sentences": [s.text for s in t.sentences],
                }
                for t in self.turns
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Dialogue":
        turns = tuple(
            Turn.from_text(Speaker(t["speaker"]), t["text"], label=t.get("label", ""))
            for t in data["turns"]
        )
        return cls(id=data["id"], turns=turns, source=data.get("source", "unknown"))


_WORDLIKE_LABEL_RE = re.compile(r"^\S+$")


def parse_transcript(
    text: str,
    label_map: Optional[Mapping[str, Speaker]] = None,
    dialogue_id: str = "",
    source: str = "unknown",
    abbreviations: Iterable[str] = DEFAULT_ABBREVIATIONS,
) -> Dialogue:
    """Parse ``Label: text`` lines into a :class:`Dialogue`.

    Known labels (case-insensitive, at line start) open a new turn. An
    unknown single-word label such as ``Zuster:`` also opens a turn, with
    speaker ``Other``; multi-word colon prefixes ("Let op: ...") are
    treated as continuation text, as is any line without a label. Blank
    lines and text before the first labeled line are ignored.

    Raises :class:`EmptyTranscript` if no labeled line is found.
    """
    if label_map is None:
        label_map = DEFAULT_LABEL_MAP
    normalized_map = {k.rstrip(":").strip().lower(): v for k, v in label_map.items()}
    if len(set(normalized_map)) < 2:
        raise ValueError("label_map needs at least two distinct labels")

    current: Optional[dict] = None
    raw_turns: list[dict] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        match = _LABEL_LINE_RE.match(line)
        speaker = None
        if match:
            candidate = match.group(1).strip()
            if candidate.lower() in normalized_map:
                speaker = normalized_map[candidate.lower()]
            elif _WORDLIKE_LABEL_RE.match(candidate):
                speaker = Speaker.OTHER
        if speaker is not None and match is not None:
            if current is not None:
                raw_turns.append(current)
            current = {
                "speaker": speaker,
                "label": match.group(1).strip(),
                "lines": [match.group(2).strip()],
            }
        elif current is not None:
            current["lines"].append(line.strip())
        # else: preamble before any labeled line, skipped
    if current is not None:
        raw_turns.append(current)

    turns = tuple(
        Turn.from_text(
            rt["speaker"],
            text,
            label=rt["label"],
            abbreviations=abbreviations,
        )
        for rt in raw_turns
        if (text := "\n".join(l for l in rt["lines"] if l))
    )
    if not turns:
        raise EmptyTranscript("no speaker-labeled line found")
    return Dialogue(id=dialogue_id, turns=turns, source=source)


def to_transcript(dialogue: Dialogue) -> str:
    """Serialize back to labeled-line format; re-parsing round-trips."""
    default_labels = {Speaker.DOCTOR: "Arts", Speaker.PATIENT: "Patiënt"}
    lines = []
    for turn in dialogue.turns:
        label = turn.label or default_labels.get(turn.speaker, "Onbekend")
        lines.append(f"{label}: {turn.raw_text}")
    return "\n".join(lines) + "\n"
