from __future__ import annotations

import pytest
from hypothesis import strategies as st

from spreekuur.dialogue import Dialogue, Speaker, Turn

# Small Dutch-ish word pool; lowercase so tokenization is a no-op on them.
WORDS = [
    "ja", "nee", "goed", "pijn", "vandaag", "morgen", "dokter", "bloed",
    "moe", "beter", "huis", "werk", "slapen", "eten", "drinken", "lopen",
    "hoofd", "buik", "arm", "been", "hart", "long", "nier", "suiker",
]


def make_turn(speaker: Speaker, text: str) -> Turn:
    return Turn.from_text(speaker, text)


def make_dialogue(pairs: list[tuple[Speaker, str]], dialogue_id: str = "d") -> Dialogue:
    turns = [make_turn(sp, tx) for sp, tx in pairs]
    return Dialogue(id=dialogue_id, turns=turns)


def alternating_dialogue(texts: list[str], dialogue_id: str = "d") -> Dialogue:
    pairs = []
    for i, text in enumerate(texts):
        sp = Speaker.DOCTOR if i % 2 == 0 else Speaker.PATIENT
        pairs.append((sp, text))
    return make_dialogue(pairs, dialogue_id)


@pytest.fixture
def two_turn_dialogue() -> Dialogue:
    return make_dialogue(
        [
            (Speaker.DOCTOR, "Goedemorgen, hoe gaat het met u?"),
            (Speaker.PATIENT, "Het gaat wel, beetje moe."),
        ]
    )


# --- hypothesis strategies ----------------------------------------------

tokens_strategy = st.lists(st.sampled_from(WORDS), min_size=1, max_size=300)

speakers_strategy = st.lists(
    st.sampled_from([Speaker.DOCTOR, Speaker.PATIENT, Speaker.OTHER]),
    min_size=2,
    max_size=60,
)


def turn_texts_strategy(min_turns: int = 2, max_turns: int = 20):
    word = st.sampled_from(WORDS)
    sentence = st.lists(word, min_size=1, max_size=12).map(
        lambda ws: " ".join(ws).capitalize() + "."
    )
    text = st.lists(sentence, min_size=1, max_size=4).map(" ".join)
    return st.lists(text, min_size=min_turns, max_size=max_turns)
