"""Few-shot example construction from real consultation transcripts.

A few-shot pair is a bullet summary of an early span of a source file
(the example "user" message) together with a later raw span (the example
"assistant" message). The spans never overlap: the output span starts at
least ``fewshot_gap`` estimated tokens after the input span ends.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from ..errors import BudgetExceeded, SourceTooShort
from .client import LLMClient
from .config import GenerationConfig
from .prompts import PromptTemplates

_PIECE_RE = re.compile(r"\S+\s*")


@dataclass(frozen=True)
class Summary:
    """LLM-produced bullet summary; review happens manually, later."""

    text: str
    reviewed: bool = False

    def to_dict(self) -> dict:
        return {"text": self.text, "reviewed": self.reviewed}

    @classmethod
    def from_dict(cls, data: dict) -> "Summary":
        return cls(text=data["text"], reviewed=bool(data.get("reviewed", False)))


@dataclass(frozen=True)
class FewshotPair:
    """Summary input plus raw output excerpt, with their source spans.

    Spans are half-open intervals in estimated-token units relative to
    the start of the source file.
    """

    summary: Summary
    output_text: str
    input_span: tuple[int, int]
    output_span: tuple[int, int]

    def __post_init__(self):
        if self.output_span[0] < self.input_span[1]:
            raise ValueError("output span overlaps input span")

    def as_messages_pair(self) -> tuple[str, str]:
        return (self.summary.text, self.output_text)

    def to_dict(self) -> dict:
        return {
            "summary": self.summary.to_dict(),
            "output_text": self.output_text,
            "input_span": list(self.input_span),
            "output_span": list(self.output_span),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FewshotPair":
        return cls(
            summary=Summary.from_dict(data["summary"]),
            output_text=data["output_text"],
            input_span=tuple(data["input_span"]),
            output_span=tuple(data["output_span"]),
        )


def summarize(
    text: str,
    client: LLMClient,
    templates: Optional[PromptTemplates] = None,
    max_words: Optional[int] = None,
) -> Summary:
    """Ask the client for a bullet-point summary of ``text``.

    The result starts unreviewed; flipping the flag is a human act.
    """
    if not text.strip():
        raise ValueError("text to summarize must be non-empty")
    templates = templates or PromptTemplates.load()
    messages = [
        {"role": "system", "content": templates.summarize_system},
        {"role": "user", "content": templates.summarize.format(text=text)},
    ]
    reply = client.complete(messages)
    if max_words is not None and len(reply.split()) > max_words:
        raise BudgetExceeded(
            f"summary has {len(reply.split())} words, cap is {max_words}"
        )
    return Summary(text=reply)


def _extract_span(pieces: list[str], start_word: int, end_word: int) -> str:
    return "".join(pieces[start_word:end_word]).rstrip()


def build_fewshot_pair(
    file_text: str,
    cfg: GenerationConfig,
    client: LLMClient,
    templates: Optional[PromptTemplates] = None,
) -> FewshotPair:
    """Build one few-shot pair from a source transcript.

    The first ``fewshot_input_budget`` tokens worth of words are
    summarized; the raw span of ``fewshot_output_budget`` tokens that
    starts ``fewshot_gap`` tokens later becomes the example output.
    """
    estimator = cfg.estimator
    input_words = estimator.words_for(cfg.fewshot_input_budget)
    gap_words = math.ceil(cfg.fewshot_gap / cfg.token_ratio)
    output_words = estimator.words_for(cfg.fewshot_output_budget)
    if input_words < 1 or output_words < 1:
        raise ValueError("few-shot budgets are too small for even one word")

    pieces = _PIECE_RE.findall(file_text)
    required = input_words + gap_words + output_words
    if len(pieces) < required:
        raise SourceTooShort(
            f"source has {len(pieces)} words, few-shot construction needs {required}",
            required_words=required,
        )

    output_start_word = input_words + gap_words
    input_text = _extract_span(pieces, 0, input_words)
    output_text = _extract_span(pieces, output_start_word, output_start_word + output_words)

    summary = summarize(input_text, client, templates=templates)
    return FewshotPair(
        summary=summary,
        output_text=output_text,
        input_span=(0, estimator.estimate_words(input_words)),
        output_span=(
            estimator.estimate_words(output_start_word),
            estimator.estimate_words(output_start_word + output_words),
        ),
    )
