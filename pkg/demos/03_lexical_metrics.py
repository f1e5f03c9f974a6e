"""Lexical diversity, role consistency, and topic coverage.

TTR family metrics work on the token stream of a whole dialogue;
role consistency and topic coverage match curated keyword lexicons
against it.
"""

from spreekuur import mattr, msttr, parse_transcript, role_consistency, topic_coverage, ttr
from spreekuur.harness import bundled_sample_corpus_dir
from spreekuur.lexicon import LexiconSet

lexicons = LexiconSet.bundled()
path = bundled_sample_corpus_dir() / "consult_b.txt"
d = parse_transcript(path.read_text(encoding="utf-8"), dialogue_id=path.stem)
tokens = [t for turn in d.turns for t in turn.tokens]

print(f"{d.id}: {len(tokens)} tokens")
print(f"  TTR          {ttr(tokens):.3f}   (types / tokens, length-sensitive)")
print(f"  MSTTR w=25   {msttr(tokens, window=25):.3f}   (mean TTR of fixed segments)")
print(f"  MATTR w=25   {mattr(tokens, window=25):.3f}   (mean TTR of every sliding window)")
print()

# role consistency: share of each role's token positions covered by
# that role's lexicon, with a heuristic plausibility band
rc = role_consistency(d, lexicons.role_doctor, lexicons.role_patient)
print(f"  doctor consistency  {rc.doctor:.3f} ({rc.doctor_band} band)")
print(f"  patient consistency {rc.patient:.3f} ({rc.patient_band} band)")
print()

# topic coverage: which prompted topics actually show up
tc = topic_coverage(d, lexicons.topics)
print(f"  topic coverage score {tc.score:.2f}")
for name in sorted(tc.hits):
    print(f"    {name:24s} hits={tc.hits[name]:2d} share={tc.proportions[name]:.2f}")
