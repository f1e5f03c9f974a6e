"""Prompt templates and bundle assembly.

Templates are plain UTF-8 files with ``str.format`` placeholders so the
wording can be iterated on without touching code. The bundled set lives
under ``spreekuur/data/prompts/``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from ..errors import ContextOverflow
from .config import GenerationConfig, TokenEstimator

_TEMPLATE_FILES = {
    "system": "system.txt",
    "user": "user.txt",
    "style_block": "style_block.txt",
    "summary_block": "summary_block.txt",
    "context_block": "context_block.txt",
    "summarize": "summarize.txt",
    "summarize_system": "summarize_system.txt",
}


def bundled_prompt_dir() -> Path:
    return Path(resources.files("spreekuur").joinpath("data", "prompts"))


@dataclass(frozen=True)
class PromptTemplates:
    system: str
    user: str
    style_block: str
    summary_block: str
    context_block: str
    summarize: str
    summarize_system: str

    @classmethod
    def load(cls, directory: Optional[Path] = None) -> "PromptTemplates":
        directory = Path(directory) if directory else bundled_prompt_dir()
        parts = {}
        for name, filename in _TEMPLATE_FILES.items():
            path = directory / filename
            if not path.is_file():
                raise FileNotFoundError(f"missing prompt template: {path}")
            parts[name] = path.read_text(encoding="utf-8")
        return cls(**parts)


@dataclass(frozen=True)
class StyleSpec:
    """Optional style hints rendered into the user prompt."""

    asl_reference: Optional[float] = None  # target words per sentence
    one_sentence_per_turn: bool = True

    @classmethod
    def from_config(cls, cfg: GenerationConfig) -> "StyleSpec":
        return cls(
            asl_reference=cfg.asl_reference,
            one_sentence_per_turn=cfg.one_sentence_per_turn,
        )


@dataclass(frozen=True)
class PromptBundle:
    """Everything one generation call sends, in message order."""

    system_message: str
    user_message: str
    fewshot_pairs: tuple[tuple[str, str], ...] = ()
    context_tail: str = ""
    style_spec: StyleSpec = field(default_factory=StyleSpec)

    def __post_init__(self):
        if not self.system_message.strip():
            raise ValueError("system message must be non-empty")
        if not self.user_message.strip():
            raise ValueError("user message must be non-empty")

    def messages(self) -> list[dict]:
        out = [{"role": "system", "content": self.system_message}]
        for shown, reply in self.fewshot_pairs:
            out.append({"role": "user", "content": shown})
            out.append({"role": "assistant", "content": reply})
        out.append({"role": "user", "content": self.user_message})
        return out

    def estimated_tokens(self, estimator: TokenEstimator) -> int:
        return sum(estimator.estimate(m["content"]) for m in self.messages())


def _render_user(
    templates: PromptTemplates,
    cfg: GenerationConfig,
    topic: str,
    summary: str,
    context_tail: str,
    style: StyleSpec,
) -> str:
    style_block = ""
    if style.asl_reference is not None:
        clause = ", één zin per beurt" if style.one_sentence_per_turn else ""
        style_block = templates.style_block.format(
            asl_reference=f"{style.asl_reference:g}", one_sentence_clause=clause
        )
    summary_block = templates.summary_block.format(summary=summary) if summary else ""
    context_block = (
        templates.context_block.format(context_tail=context_tail) if context_tail else ""
    )
    return templates.user.format(
        domain=cfg.domain,
        target_turns=cfg.target_turns,
        target_words=cfg.target_words,
        topics=", ".join(cfg.topics),
        topic=topic,
        style_block=style_block,
        summary_block=summary_block,
        context_block=context_block,
    )


def _truncate_words(text: str, word_limit: int) -> str:
    words = text.split()
    if len(words) <= word_limit:
        return text
    return " ".join(words[:word_limit])


def build_bundle(
    templates: PromptTemplates,
    cfg: GenerationConfig,
    topic: str,
    summary: str = "",
    fewshot_pairs: Sequence[tuple[str, str]] = (),
    context_tail: str = "",
) -> PromptBundle:
    """Assemble a PromptBundle that fits the configured context budget.

    The budget check reserves room for the reply (max_output_tokens) and
    applies the safety margin. When the bundle is too large, few-shot
    pairs are dropped from the end first, then the summary is halved
    repeatedly; if a bare bundle still does not fit, ContextOverflow.
    """
    estimator = cfg.estimator
    style = StyleSpec.from_config(cfg)
    limit = int((cfg.context_budget - cfg.max_output_tokens) * (1 - cfg.safety_margin))
    if limit <= 0:
        raise ContextOverflow(
            "context budget leaves no room for the prompt after reserving output tokens"
        )

    pairs = tuple(fewshot_pairs)
    current_summary = summary
    while True:
        bundle = PromptBundle(
            system_message=templates.system,
            user_message=_render_user(templates, cfg, topic, current_summary, context_tail, style),
            fewshot_pairs=pairs,
            context_tail=context_tail,
            style_spec=style,
        )
        if bundle.estimated_tokens(estimator) <= limit:
            return bundle
        if pairs:
            pairs = pairs[:-1]
            continue
        summary_words = len(current_summary.split())
        if summary_words > 1:
            current_summary = _truncate_words(current_summary, summary_words // 2)
            continue
        raise ContextOverflow(
            f"prompt exceeds context budget even without few-shot examples "
            f"(estimated {bundle.estimated_tokens(estimator)} > limit {limit})"
        )
