"""Synthetic dialogue generation pipeline.

Chunks source material, builds few-shot examples, renders topic-wise
prompts and drives a chat-completion client, persisting every step so
interrupted jobs can resume.
"""

from .chunking import chunk_source
from .client import HttpLLMClient, LLMClient, StubLLMClient
from .config import GenerationConfig, TokenEstimator
from .fewshot import FewshotPair, Summary, build_fewshot_pair, summarize
from .pipeline import GenerationJob, generate_dialogue, load_job
from .prompts import PromptBundle, PromptTemplates, StyleSpec, build_bundle

__all__ = [
    "FewshotPair",
    "GenerationConfig",
    "GenerationJob",
    "HttpLLMClient",
    "LLMClient",
    "PromptBundle",
    "PromptTemplates",
    "StubLLMClient",
    "StyleSpec",
    "Summary",
    "TokenEstimator",
    "build_bundle",
    "build_fewshot_pair",
    "chunk_source",
    "generate_dialogue",
    "load_job",
    "summarize",
]
