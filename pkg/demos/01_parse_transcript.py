"""Walk through parsing a raw consultation transcript.

The parser turns "Label: text" lines into a Dialogue of speaker turns,
each turn split into sentences with normalized tokens. Run it directly:

    python3 demos/01_parse_transcript.py
"""

from spreekuur import parse_transcript, to_transcript
from spreekuur.harness import bundled_sample_corpus_dir

path = bundled_sample_corpus_dir() / "consult_a.txt"
dialogue = parse_transcript(path.read_text(encoding="utf-8"), dialogue_id=path.stem)

print(f"Dialogue {dialogue.id!r}: {dialogue.turn_count} turns, {dialogue.word_count} words")
print()

# the first few turns, with the sentence segmentation made visible
for turn in dialogue.turns[:4]:
    print(f"[{turn.speaker_key}]")
    for sentence in turn.sentences:
        print(f"  sentence: {sentence.text}")
        print(f"  tokens:   {' '.join(sentence.tokens)}")
    print()

# continuation lines without a known "Label:" prefix glue onto the
# previous turn, so word counts survive odd line wrapping
wrapped = "Arts: Dit is een lange uitleg\ndie doorloopt op de volgende regel.\nPatiënt: Helder."
d = parse_transcript(wrapped, dialogue_id="wrapped")
print(f"wrapped transcript -> {d.turn_count} turns")
print(f"first turn text: {d.turns[0].raw_text!r}")

# round trip: a parsed dialogue serializes back to the same transcript shape
print()
print("round trip output:")
print(to_transcript(d), end="")
