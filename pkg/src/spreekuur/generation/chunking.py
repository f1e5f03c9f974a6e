"""Lossless greedy chunking of source text at sentence boundaries."""

from __future__ import annotations

import re

from ..errors import EmptySource
from .config import TokenEstimator

# A sentence piece: everything up to terminal punctuation plus the
# whitespace that follows it, so the pieces concatenate back exactly.
_SENTENCE_PIECE_RE = re.compile(r".*?[.!?]+(?:\s+|$)|.+?(?:\n+|$)", re.DOTALL)
_WORD_PIECE_RE = re.compile(r"\s*\S+\s*")


def _sentence_pieces(text: str) -> list[str]:
    pieces = _SENTENCE_PIECE_RE.findall(text)
    # findall can drop a trailing zero-width match; verify coverage.
    if "".join(pieces) != text:
        return [text]
    return [p for p in pieces if p]


def _word_pieces(piece: str) -> list[str]:
    words = _WORD_PIECE_RE.findall(piece)
    if "".join(words) != piece:
        return [piece]
    return words


def chunk_source(text: str, budget: int, estimator: TokenEstimator | None = None) -> list[str]:
    """Split ``text`` into segments of at most ``budget`` estimated tokens.

    Splits fall on sentence boundaries; a single sentence longer than the
    budget is split at word boundaries instead. Concatenating the returned
    segments reproduces the input byte for byte.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if not text.strip():
        raise EmptySource("source text is empty")
    est = estimator or TokenEstimator()

    pieces: list[str] = []
    for piece in _sentence_pieces(text):
        if est.estimate(piece) > budget:
            pieces.extend(_word_pieces(piece))
        else:
            pieces.append(piece)

    segments: list[str] = []
    current: list[str] = []
    current_words = 0
    for piece in pieces:
        words = len(piece.split())
        if current and est.estimate_words(current_words + words) > budget:
            segments.append("".join(current))
            current = []
            current_words = 0
        current.append(piece)
        current_words += words
    if current:
        segments.append("".join(current))
    return segments
