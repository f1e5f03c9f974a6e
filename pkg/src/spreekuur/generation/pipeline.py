"""Per-topic dialogue generation with sliding-window context.

Topics are generated strictly in order because each segment's prompt
carries the tail of the previous segment. When a job directory is given,
every prompt, response and segment is persisted as it happens, so a
failed call loses nothing and the job can resume.

Job directory layout:

    config.json            generation settings
    source_summary.txt     reviewed summary guiding all segments
    fewshot.json           few-shot pairs with their source spans
    prompts/NN.json        exact messages sent for segment NN
    responses/NN.json      raw reply for segment NN
    segments/NN_topic.txt  segment text
    final_dialogue.txt     concatenated dialogue (on success)
    manifest.json          topics, completion state, file index
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from ..errors import ClientError
from .client import LLMClient
from .config import GenerationConfig
from .fewshot import FewshotPair
from .prompts import PromptTemplates, build_bundle

_SLUG_RE = re.compile(r"[^a-z0-9]+")


def _slug(name: str) -> str:
    return _SLUG_RE.sub("_", name.lower()).strip("_") or "topic"


def _write_json(path: Path, data) -> None:
    path.write_text(
        json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


@dataclass
class GenerationJob:
    config: GenerationConfig
    source_summary: str
    fewshot: tuple[FewshotPair, ...] = ()
    segments: list[tuple[str, str]] = field(default_factory=list)  # (topic, text)
    final_dialogue: str = ""
    job_dir: Optional[Path] = None

    @property
    def complete(self) -> bool:
        return len(self.segments) == len(self.config.topics) and bool(self.final_dialogue)

    def join_segments(self) -> str:
        return self.config.segment_separator.join(text for _, text in self.segments)


class _JobStore:
    """Writes job state to disk; a no-op when no directory is set."""

    def __init__(self, job_dir: Optional[Path]):
        self.dir = Path(job_dir) if job_dir else None

    def init(self, job: GenerationJob) -> None:
        if not self.dir:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        (self.dir / "prompts").mkdir(exist_ok=True)
        (self.dir / "responses").mkdir(exist_ok=True)
        (self.dir / "segments").mkdir(exist_ok=True)
        _write_json(self.dir / "config.json", job.config.to_dict())
        (self.dir / "source_summary.txt").write_text(job.source_summary, encoding="utf-8")
        _write_json(self.dir / "fewshot.json", [p.to_dict() for p in job.fewshot])
        self.write_manifest(job)

    def segment_filename(self, index: int, topic: str) -> str:
        return f"{index:02d}_{_slug(topic)}.txt"

    def load_segment(self, index: int, topic: str) -> Optional[str]:
        if not self.dir:
            return None
        path = self.dir / "segments" / self.segment_filename(index, topic)
        if path.is_file():
            return path.read_text(encoding="utf-8")
        return None

    def save_exchange(self, index: int, messages: list[dict], reply: str, params: dict) -> None:
        if not self.dir:
            return
        _write_json(self.dir / "prompts" / f"{index:02d}.json",
                    {"messages": messages, "params": params})
        _write_json(self.dir / "responses" / f"{index:02d}.json", {"content": reply})

    def save_segment(self, index: int, topic: str, text: str) -> None:
        if not self.dir:
            return
        path = self.dir / "segments" / self.segment_filename(index, topic)
        path.write_text(text, encoding="utf-8")

    def save_final(self, text: str) -> None:
        if not self.dir:
            return
        (self.dir / "final_dialogue.txt").write_text(text, encoding="utf-8")

    def write_manifest(self, job: GenerationJob) -> None:
        if not self.dir:
            return
        manifest = {
            "topics": list(job.config.topics),
            "completed_segments": len(job.segments),
            "segments": [
                {"index": i, "topic": topic, "file": f"segments/{self.segment_filename(i, topic)}"}
                for i, (topic, _) in enumerate(job.segments)
            ],
            "final_dialogue": "final_dialogue.txt" if job.complete else None,
        }
        _write_json(self.dir / "manifest.json", manifest)


def _context_tail(previous_text: str, word_count: int) -> str:
    words = previous_text.split()
    return " ".join(words[-word_count:])


def generate_dialogue(
    cfg: GenerationConfig,
    source_summary: str,
    fewshot: Sequence[FewshotPair],
    client: LLMClient,
    templates: Optional[PromptTemplates] = None,
    job_dir: Optional[Path] = None,
    resume: bool = False,
) -> GenerationJob:
    """Generate one dialogue, one segment per configured topic.

    With ``resume`` and a job directory, segments already on disk are
    reused instead of regenerated. A transport failure persists all
    completed work before the error propagates.
    """
    templates = templates or PromptTemplates.load()
    job = GenerationJob(
        config=cfg,
        source_summary=source_summary,
        fewshot=tuple(fewshot),
        job_dir=Path(job_dir) if job_dir else None,
    )
    store = _JobStore(job_dir)
    if not (resume and store.dir and (store.dir / "manifest.json").is_file()):
        store.init(job)

    pairs = [p.as_messages_pair() for p in job.fewshot]
    for index, topic in enumerate(cfg.topics):
        if resume:
            existing = store.load_segment(index, topic)
            if existing is not None:
                job.segments.append((topic, existing))
                continue
        tail = _context_tail(job.segments[-1][1], cfg.context_tail_words) if job.segments else ""
        bundle = build_bundle(
            templates,
            cfg,
            topic,
            summary=source_summary,
            fewshot_pairs=pairs,
            context_tail=tail,
        )
        messages = bundle.messages()
        params = cfg.sampling_params()
        try:
            reply = client.complete(messages, **params)
        except ClientError:
            store.write_manifest(job)
            raise
        store.save_exchange(index, messages, reply, params)
        store.save_segment(index, topic, reply)
        job.segments.append((topic, reply))
        store.write_manifest(job)

    job.final_dialogue = job.join_segments()
    store.save_final(job.final_dialogue)
    store.write_manifest(job)
    return job


def load_job(job_dir: Path) -> GenerationJob:
    """Rehydrate a persisted job from its directory."""
    job_dir = Path(job_dir)
    manifest_path = job_dir / "manifest.json"
    if not manifest_path.is_file():
        raise FileNotFoundError(f"no job manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    cfg = GenerationConfig.from_dict(
        json.loads((job_dir / "config.json").read_text(encoding="utf-8"))
    )
    summary_path = job_dir / "source_summary.txt"
    source_summary = summary_path.read_text(encoding="utf-8") if summary_path.is_file() else ""
    fewshot_path = job_dir / "fewshot.json"
    fewshot: tuple[FewshotPair, ...] = ()
    if fewshot_path.is_file():
        fewshot = tuple(
            FewshotPair.from_dict(d)
            for d in json.loads(fewshot_path.read_text(encoding="utf-8"))
        )
    segments = []
    for entry in manifest.get("segments", []):
        path = job_dir / entry["file"]
        segments.append((entry["topic"], path.read_text(encoding="utf-8")))
    final = ""
    if manifest.get("final_dialogue"):
        final_path = job_dir / manifest["final_dialogue"]
        if final_path.is_file():
            final = final_path.read_text(encoding="utf-8")
    return GenerationJob(
        config=cfg,
        source_summary=source_summary,
        fewshot=fewshot,
        segments=segments,
        final_dialogue=final,
        job_dir=job_dir,
    )
