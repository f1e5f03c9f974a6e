"""Evaluate a whole corpus and write the report bundle.

evaluate_corpus computes every per-dialogue metric, aggregates means
and SDs, and records per-metric failure reasons instead of aborting
on short or odd dialogues. The writer emits deterministic JSON, CSV,
and a plain-text table.
"""

import tempfile
from pathlib import Path

from spreekuur.harness import bundled_sample_corpus_dir, evaluate_corpus, load_corpus
from spreekuur.lexicon import LexiconSet
from spreekuur.report import render_table, write_metric_outputs

dialogues = load_corpus(bundled_sample_corpus_dir())
report = evaluate_corpus(dialogues, LexiconSet.bundled())

print(render_table(report))

# per-dialogue rows keep every metric; missing cells carry a reason
row = report.per_dialogue["consult_a"]
print(f"consult_a: ttr={row['ttr']:.3f} mattr={row['mattr']:.3f} turn_count={row['turn_count']}")
if report.missing:
    for dialogue_id, reasons in report.missing.items():
        for metric, reason in reasons.items():
            print(f"  missing {dialogue_id}/{metric}: {reason}")
else:
    print("  no missing cells in this corpus")
print()

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "rapport"
    paths = write_metric_outputs(report, out)
    print("report bundle:")
    for path in sorted(paths):
        print(f"  {path.name:22s} {path.stat().st_size:6d} bytes")
