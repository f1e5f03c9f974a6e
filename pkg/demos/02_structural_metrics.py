"""Turn-structure metrics on the bundled sample consultations.

Covers alternation rate, greeting and closing detection, average
sentence length, and sentences per turn.
"""

from spreekuur import (
    alternation_rate,
    average_sentence_length,
    detect_phrases,
    parse_transcript,
    sentences_per_turn,
)
from spreekuur.harness import bundled_sample_corpus_dir
from spreekuur.lexicon import LexiconSet

lexicons = LexiconSet.bundled()

for path in sorted(bundled_sample_corpus_dir().glob("*.txt")):
    d = parse_transcript(path.read_text(encoding="utf-8"), dialogue_id=path.stem)

    greetings = detect_phrases(d, lexicons.greetings, scope="greeting")
    closings = detect_phrases(d, lexicons.closings, scope="closing")

    print(f"== {d.id} ({d.turn_count} turns)")
    print(f"   alternation rate:  {alternation_rate(d):.3f}")
    print(f"   avg sentence len:  {average_sentence_length(d):.2f} words")
    print(f"   sentences/turn:    {sentences_per_turn(d):.2f}")
    print(f"   greetings: {greetings.count} at turns {list(greetings.turn_indices)}")
    print(f"   closings:  {closings.count} at turns {list(closings.turn_indices)}")
    print()

# a lexicon entry matches as a contiguous token sequence; "dag" the
# greeting also fires inside "per dag", which is why curating the
# editable lexicon files matters for real corpora
noisy = parse_transcript(
    "Arts: Neem twee tabletten per dag.\nPatiënt: Doe ik.", dialogue_id="noisy"
)
hit = detect_phrases(noisy, lexicons.greetings, scope="greeting")
print(f"'per dag' demo: greeting count = {hit.count} (lexical match, not pragmatic)")
