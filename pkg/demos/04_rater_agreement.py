"""Inter-rater agreement and rank correlation on rubric scores.

Three raters score four dialogues on a 0-5 scale. Krippendorff's
alpha measures how much they agree beyond chance; leave-one-out
shows each rater's pull on it; Spearman's rho relates scores to any
quantitative metric.
"""

from spreekuur.stats import (
    RatingTable,
    krippendorff_alpha,
    leave_one_out_alpha,
    spearman_rho,
)

scores = {
    "R1": {"d1": 4, "d2": 3, "d3": 2, "d4": 5},
    "R2": {"d1": 4, "d2": 3, "d3": 1, "d4": 5},
    "R3": {"d1": 3, "d2": 3, "d3": 2, "d4": 4},
}
cells = {
    (rater, (dialogue, "fluency")): score
    for rater, by_dialogue in scores.items()
    for dialogue, score in by_dialogue.items()
}
table = RatingTable.from_cells(cells)

# ordinal level treats 1-vs-2 as closer than 1-vs-5, which fits
# Likert-style rubric scales; nominal would punish both equally
for level in ("ordinal", "nominal"):
    result = krippendorff_alpha(table, level=level)
    print(f"alpha ({level:7s}) = {result.alpha:.4f}  n_pairable={result.n_pairable}")
print()

print("leave-one-out (does dropping a rater move alpha?):")
for rater, result in sorted(leave_one_out_alpha(table, "fluency").items()):
    print(f"  without {rater}: alpha = {result.alpha:.4f}")
print()

# correlate one rater's scores with a word count per dialogue
word_counts = [310.0, 290.0, 150.0, 420.0]
r1 = [float(scores["R1"][f"d{i}"]) for i in range(1, 5)]
rho = spearman_rho(r1, word_counts)
note = " (small sample, treat as indicative)" if rho.small_sample else ""
print(f"spearman rho(R1 scores, word counts) = {rho.rho:.3f}  n={rho.n}{note}")
