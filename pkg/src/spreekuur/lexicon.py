"""Keyword lexicons and token-sequence matching.

A lexicon is a named list of normalized keywords, single- or multi-word,
scoped to a speaker role, a conversation topic, or a phrase family
(greetings, closings). Lexicon files are UTF-8 with one entry per line;
``#`` starts a comment. Matching is exact on normalized tokens: a
multi-word entry matches as a contiguous token sequence, which keeps
"dag" from matching inside "vandaag" and makes counts deterministic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .dialogue import tokenize

__all__ = [
    "Lexicon",
    "LexiconSet",
    "load_lexicon",
    "match_starts",
    "covered_positions",
]


@dataclass(frozen=True)
class Lexicon:
    name: str
    scope: str  # role-doctor | role-patient | topic:<name> | greeting | closing
    entries: frozenset[str]

    @classmethod
    def from_entries(cls, name: str, scope: str, entries: Iterable[str]) -> "Lexicon":
        normalized = frozenset(" ".join(tokenize(e)) for e in entries if e.strip())
        return cls(name=name, scope=scope, entries=normalized)

    def __len__(self) -> int:
        return len(self.entries)

    @functools.cached_property
    def token_sequences(self) -> tuple[tuple[str, ...], ...]:
        return tuple(sorted(tuple(e.split()) for e in self.entries))


def load_lexicon(path: str | Path, name: str = "", scope: str = "") -> Lexicon:
    path = Path(path)
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            entries.append(line)
    return Lexicon.from_entries(name or path.stem, scope or path.stem, entries)


def _first_token_index(lexicon: Lexicon) -> dict[str, list[tuple[str, ...]]]:
    index: dict[str, list[tuple[str, ...]]] = {}
    for seq in lexicon.token_sequences:
        index.setdefault(seq[0], []).append(seq)
    return index


def match_starts(tokens: Sequence[str], lexicon: Lexicon) -> list[int]:
    """Positions where at least one entry matches; each start counted once."""
    index = _first_token_index(lexicon)
    starts = []
    for i, tok in enumerate(tokens):
        for seq in index.get(tok, ()):
            if tuple(tokens[i : i + len(seq)]) == seq:
                starts.append(i)
                break
    return starts


def covered_positions(tokens: Sequence[str], lexicon: Lexicon) -> set[int]:
    """Token positions covered by any entry match (union over all matches)."""
    index = _first_token_index(lexicon)
    covered: set[int] = set()
    for i, tok in enumerate(tokens):
        for seq in index.get(tok, ()):
            if tuple(tokens[i : i + len(seq)]) == seq:
                covered.update(range(i, i + len(seq)))
    return covered


@dataclass(frozen=True)
class LexiconSet:
    """The full lexicon bundle the evaluation suite needs."""

    greetings: Lexicon
    closings: Lexicon
    role_doctor: Lexicon
    role_patient: Lexicon
    topics: tuple[Lexicon, ...]

    @classmethod
    def from_dir(cls, directory: str | Path) -> "LexiconSet":
        """Load ``greetings/closings/role_doctor/role_patient.txt`` + ``topic_*.txt``."""
        directory = Path(directory)
        if not directory.is_dir():
            raise FileNotFoundError(f"lexicon directory not found: {directory}")

        def required(stem: str, scope: str) -> Lexicon:
            path = directory / f"{stem}.txt"
            if not path.exists():
                raise FileNotFoundError(f"missing lexicon file: {path}")
            return load_lexicon(path, name=stem, scope=scope)

        topics = tuple(
            load_lexicon(p, name=p.stem[len("topic_"):], scope=f"topic:{p.stem[len('topic_'):]}")
            for p in sorted(directory.glob("topic_*.txt"))
        )
        if not topics:
            raise FileNotFoundError(f"no topic_*.txt lexicons in {directory}")
        return cls(
            greetings=required("greetings", "greeting"),
            closings=required("closings", "closing"),
            role_doctor=required("role_doctor", "role-doctor"),
            role_patient=required("role_patient", "role-patient"),
            topics=topics,
        )

    @classmethod
    def bundled(cls) -> "LexiconSet":
        """The lexicons shipped with the package."""
        return cls.from_dir(bundled_lexicon_dir())


def bundled_lexicon_dir() -> Path:
    return Path(str(resources.files("spreekuur").joinpath("data", "lexicons")))
