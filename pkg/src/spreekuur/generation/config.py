"""Generation settings and word-based token estimation.

Token budgets are model-tokenizer quantities, but the pipeline stays
model-agnostic by estimating tokens as words times a configurable ratio
(default 1.4, a reasonable figure for Dutch subword tokenizers). All
budgets are treated as soft caps with a safety margin on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Optional

DEFAULT_TOPICS = ("symptomen", "medicatiegebruik", "leefstijl", "laboratoriumuitslagen")


@dataclass(frozen=True)
class TokenEstimator:
    """Estimates token counts from word counts via a fixed ratio."""

    ratio: float = 1.4

    def __post_init__(self):
        if self.ratio <= 0:
            raise ValueError("token ratio must be positive")

    def estimate(self, text: str) -> int:
        return self.estimate_words(len(text.split()))

    def estimate_words(self, word_count: int) -> int:
        return math.ceil(word_count * self.ratio)

    def words_for(self, tokens: int) -> int:
        """Largest word count whose estimate stays within ``tokens``."""
        return int(tokens / self.ratio)


@dataclass(frozen=True)
class GenerationConfig:
    domain: str = "nefrologie"
    topics: tuple[str, ...] = DEFAULT_TOPICS
    target_turns: int = 140
    target_words: int = 1000
    chunk_budget: int = 1000  # tokens per source chunk
    context_tail_words: int = 150  # words carried from the previous segment
    fewshot_input_budget: int = 400  # tokens
    fewshot_output_budget: int = 1200  # tokens
    fewshot_gap: int = 100  # tokens between example input and output spans
    context_budget: int = 8000  # model context window, tokens
    token_ratio: float = 1.4
    safety_margin: float = 0.10
    segment_separator: str = "\n"
    asl_reference: Optional[float] = None  # words per sentence, style hint
    one_sentence_per_turn: bool = True
    temperature: float = 0.7
    max_output_tokens: int = 2048
    seed: Optional[int] = None

    def __post_init__(self):
        if not self.topics:
            raise ValueError("topics must be non-empty")
        for name in (
            "target_turns",
            "target_words",
            "chunk_budget",
            "context_tail_words",
            "fewshot_input_budget",
            "fewshot_output_budget",
            "context_budget",
            "max_output_tokens",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.fewshot_gap < 0:
            raise ValueError("fewshot_gap must be >= 0")
        if not 0 <= self.safety_margin < 1:
            raise ValueError("safety_margin must be in [0, 1)")
        if self.token_ratio <= 0:
            raise ValueError("token_ratio must be positive")

    @property
    def estimator(self) -> TokenEstimator:
        return TokenEstimator(ratio=self.token_ratio)

    def sampling_params(self) -> dict:
        params = {"temperature": self.temperature, "max_tokens": self.max_output_tokens}
        if self.seed is not None:
            params["seed"] = self.seed
        return params

    def to_dict(self) -> dict:
        data = asdict(self)
        data["topics"] = list(self.topics)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "GenerationConfig":
        data = dict(data)
        data["topics"] = tuple(data.get("topics", DEFAULT_TOPICS))
        return cls(**data)
