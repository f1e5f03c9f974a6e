"""Toolkit for generating and evaluating synthetic Dutch doctor-patient
dialogues: transcript parsing, structural and lexical metrics,
inter-rater statistics, an LLM generation pipeline and reporting.
"""

from .dialogue import Dialogue, Sentence, Speaker, Turn, parse_transcript, to_transcript, tokenize
from .errors import SpreekuurError
from .harness import (
    MetricReport,
    QualReport,
    bundled_sample_corpus_dir,
    evaluate_corpus,
    ingest_ratings,
    load_corpus,
    qual_report,
)
from .lexical import mattr, msttr, role_consistency, topic_coverage, ttr
from .lexicon import Lexicon, LexiconSet, load_lexicon
from .stats import (
    RatingTable,
    krippendorff_alpha,
    leave_one_out_alpha,
    mean_sd,
    spearman_rho,
)
from .structural import (
    alternation_rate,
    average_sentence_length,
    detect_phrases,
    sentences_per_turn,
)

__version__ = "0.1.0"

__all__ = [
    "Dialogue",
    "Lexicon",
    "LexiconSet",
    "MetricReport",
    "QualReport",
    "RatingTable",
    "Sentence",
    "Speaker",
    "SpreekuurError",
    "Turn",
    "alternation_rate",
    "average_sentence_length",
    "bundled_sample_corpus_dir",
    "detect_phrases",
    "evaluate_corpus",
    "ingest_ratings",
    "krippendorff_alpha",
    "leave_one_out_alpha",
    "load_corpus",
    "load_lexicon",
    "mattr",
    "mean_sd",
    "msttr",
    "parse_transcript",
    "qual_report",
    "role_consistency",
    "sentences_per_turn",
    "spearman_rho",
    "to_transcript",
    "tokenize",
    "topic_coverage",
    "ttr",
    "__version__",
]
