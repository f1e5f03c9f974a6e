from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreekuur.dialogue import (
    Dialogue,
    Speaker,
    Turn,
    parse_transcript,
    segment_sentences,
    to_transcript,
    tokenize,
)
from spreekuur.errors import EmptyTranscript

from .conftest import WORDS, turn_texts_strategy


class TestTokenize:
    def test_simple_question(self):
        assert tokenize("Hoe gaat het?") == ["hoe", "gaat", "het"]

    def test_hyphen_and_diacritics_kept(self):
        assert tokenize("HbA1c-waarde, oké!") == ["hba1c-waarde", "oké"]

    def test_empty(self):
        assert tokenize("") == []

    def test_whitespace_only(self):
        assert tokenize("   \n\t ") == []

    def test_lowercases(self):
        assert tokenize("JA Nee") == ["ja", "nee"]

    @given(st.lists(st.sampled_from(WORDS), min_size=1, max_size=50))
    def test_whitespace_invariance(self, words):
        single = " ".join(words)
        messy = "  " + "\t\n ".join(words) + "   "
        assert tokenize(single) == tokenize(messy) == words


class TestSegmentSentences:
    def test_single_sentence(self):
        assert len(segment_sentences("Ja.")) == 1

    def test_two_sentences(self):
        sents = segment_sentences("Ik slik paracetamol. Het helpt niet echt.")
        assert len(sents) == 2
        assert sents[0].text == "Ik slik paracetamol."
        assert sents[1].text == "Het helpt niet echt."

    def test_no_terminator_is_one_sentence(self):
        assert len(segment_sentences("Gaat het goed")) == 1

    def test_question_and_statement(self):
        assert len(segment_sentences("Hoe voelt u zich? Best goed.")) == 2

    def test_abbreviation_not_a_boundary(self):
        sents = segment_sentences("Dr. Jansen komt zo. Ga zitten.")
        assert len(sents) == 2
        assert sents[0].text.startswith("Dr. Jansen")

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            segment_sentences("")

    def test_tokens_attached(self):
        sents = segment_sentences("Ik ben moe.")
        assert list(sents[0].tokens) == ["ik", "ben", "moe"]


class TestParseTranscript:
    def test_two_turns(self):
        d = parse_transcript("Arts: Goedemorgen.\nPatiënt: Hallo.")
        assert d.turn_count == 2
        assert d.turns[0].speaker is Speaker.DOCTOR
        assert d.turns[1].speaker is Speaker.PATIENT

    def test_continuation_line_joins_previous_turn(self):
        d = parse_transcript("Arts: Hoe gaat het?\nNog steeds moe.\nPatiënt: Ja.")
        assert d.turn_count == 2
        assert "Nog steeds moe" in d.turns[0].raw_text
        assert len(d.turns[0].sentences) == 2

    def test_unknown_single_word_label_becomes_other(self):
        d = parse_transcript("Arts: Dag.\nZuster: Ik kom zo.\nArts: Goed.")
        assert d.turns[1].speaker is Speaker.OTHER
        assert d.turns[1].label.lower() == "zuster"

    def test_multi_word_colon_prefix_is_continuation(self):
        text = "Arts: Let op.\nDe uitslag van vorige week: die is goed.\nPatiënt: Fijn."
        d = parse_transcript(text)
        assert d.turn_count == 2
        assert "die is goed" in d.turns[0].raw_text

    def test_case_insensitive_labels(self):
        d = parse_transcript("ARTS: Dag.\npatiënt: Hallo.")
        assert [t.speaker for t in d.turns] == [Speaker.DOCTOR, Speaker.PATIENT]

    def test_patient_without_diacritic(self):
        d = parse_transcript("Arts: Dag.\nPatient: Hallo.")
        assert d.turns[1].speaker is Speaker.PATIENT

    def test_empty_raises(self):
        with pytest.raises(EmptyTranscript):
            parse_transcript("   \n  ")

    def test_turn_count_26(self):
        lines = []
        for i in range(26):
            who = "Arts" if i % 2 == 0 else "Patiënt"
            lines.append(f"{who}: Regel nummer {i}.")
        d = parse_transcript("\n".join(lines))
        assert d.turn_count == 26

    def test_custom_label_map(self):
        d = parse_transcript(
            "Huisarts: Dag.\nClient: Hallo.",
            label_map={"huisarts": Speaker.DOCTOR, "client": Speaker.PATIENT},
        )
        assert [t.speaker for t in d.turns] == [Speaker.DOCTOR, Speaker.PATIENT]


class TestRoundTrip:
    @given(turn_texts_strategy())
    @settings(max_examples=50)
    def test_parse_to_transcript_round_trip(self, texts):
        lines = []
        for i, text in enumerate(texts):
            who = "Arts" if i % 2 == 0 else "Patiënt"
            lines.append(f"{who}: {text}")
        original = "\n".join(lines)
        d = parse_transcript(original)
        rendered = to_transcript(d)
        d2 = parse_transcript(rendered)
        assert [t.speaker for t in d2.turns] == [t.speaker for t in d.turns]
        assert [t.raw_text for t in d2.turns] == [t.raw_text for t in d.turns]

    def test_to_transcript_labels(self):
        d = parse_transcript("Arts: Dag.\nPatiënt: Hallo.")
        out = to_transcript(d)
        assert out == "Arts: Dag.\nPatiënt: Hallo.\n"

    def test_dict_round_trip(self):
        d = parse_transcript("Arts: Dag meneer. Gaat u zitten.\nPatiënt: Dank u.")
        d2 = Dialogue.from_dict(d.to_dict())
        assert d2.id == d.id
        assert [t.speaker for t in d2.turns] == [t.speaker for t in d.turns]
        assert [t.raw_text for t in d2.turns] == [t.raw_text for t in d.turns]
        assert d2.word_count == d.word_count


class TestTurnAndCounts:
    def test_word_count_sums_turn_tokens(self):
        d = parse_transcript("Arts: Een twee drie.\nPatiënt: Vier vijf.")
        assert d.word_count == 5
        assert len(d.turns[0].tokens) == 3
        assert len(d.turns[1].tokens) == 2

    @given(turn_texts_strategy())
    @settings(max_examples=50)
    def test_token_totals_consistent(self, texts):
        lines = []
        for i, text in enumerate(texts):
            who = "Arts" if i % 2 == 0 else "Patiënt"
            lines.append(f"{who}: {text}")
        d = parse_transcript("\n".join(lines))
        per_turn = sum(len(t.tokens) for t in d.turns)
        per_sentence = sum(
            len(s.tokens) for t in d.turns for s in t.sentences
        )
        assert per_turn == per_sentence == d.word_count

    def test_turn_from_text_rejects_empty(self):
        with pytest.raises(ValueError):
            Turn.from_text(Speaker.DOCTOR, "   ")

    def test_speaker_key_distinguishes_other_labels(self):
        a = Turn.from_text(Speaker.OTHER, "Ja.", label="Zuster")
        b = Turn.from_text(Speaker.OTHER, "Ja.", label="Assistent")
        assert a.speaker_key != b.speaker_key
        assert a.speaker_key == "other:zuster"
