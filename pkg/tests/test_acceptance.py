"""End-to-end acceptance checks for the toolkit.

One test per guarantee; each prints a single PASS line so a plain
``pytest -v tests/test_acceptance.py`` run reads as a checklist. These
lean on the brute-force reference implementations in oracles.py rather
than the package's own code paths.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from pathlib import Path

import pytest

from spreekuur import cli
from spreekuur.dialogue import Dialogue, Speaker, Turn, parse_transcript
from spreekuur.generation import GenerationConfig, StubLLMClient, generate_dialogue
from spreekuur.generation.client import ClientError
from spreekuur.harness import bundled_sample_corpus_dir
from spreekuur.lexical import mattr, msttr, topic_coverage, ttr
from spreekuur.lexicon import LexiconSet, bundled_lexicon_dir
from spreekuur.stats import RatingTable, krippendorff_alpha, spearman_rho
from spreekuur.structural import alternation_rate

from .conftest import WORDS
from .oracles import (
    alternation_oracle,
    krippendorff_oracle,
    mattr_oracle,
    msttr_oracle,
    spearman_classical,
    ttr_oracle,
)

DATA_DIR = Path(__file__).parent / "data"


def _speaker_dialogue(speakers):
    turns = [Turn.from_text(s, f"Tekst nummer {i}.") for i, s in enumerate(speakers)]
    return Dialogue(id="acc", turns=tuple(turns))


def test_01_metric_oracles_on_randomized_streams():
    """alternation/TTR/MSTTR/MATTR equal brute force on 1,000 streams each."""
    rng = random.Random(20251101)
    started = time.monotonic()

    for _ in range(1000):
        speakers = [
            rng.choice([Speaker.DOCTOR, Speaker.PATIENT, Speaker.OTHER])
            for _ in range(rng.randint(2, 40))
        ]
        d = _speaker_dialogue(speakers)
        keys = [t.speaker_key for t in d.turns]
        assert abs(alternation_rate(d) - alternation_oracle(keys)) <= 1e-12

    for _ in range(1000):
        tokens = [rng.choice(WORDS) for _ in range(rng.randint(1, 200))]
        assert abs(ttr(tokens) - ttr_oracle(tokens)) <= 1e-12

    for _ in range(1000):
        tokens = [rng.choice(WORDS) for _ in range(rng.randint(50, 300))]
        assert abs(msttr(tokens, 50) - msttr_oracle(tokens, 50)) <= 1e-12

    for _ in range(1000):
        tokens = [rng.choice(WORDS) for _ in range(rng.randint(50, 300))]
        assert abs(mattr(tokens, 50) - mattr_oracle(tokens, 50)) <= 1e-12

    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"oracle sweep took {elapsed:.1f}s"
    print(f"PASS metric oracles: 4x1000 randomized streams within 1e-12 ({elapsed:.2f}s)")


def test_02_msttr_definition():
    """Segment TTRs {1.0, 0.5} average to exactly 0.75; trailing partial dropped."""
    distinct = [f"woord{i}" for i in range(50)]
    repeated = [f"dubbel{i}" for i in range(25)] * 2
    stream = distinct + repeated
    assert len(stream) == 100
    assert msttr(stream, 50) == 0.75

    tail = [f"rest{i}" for i in range(49)]
    assert msttr(stream + tail, 50) == msttr(stream, 50)
    print("PASS MSTTR definition: 100-token {1.0,0.5} -> 0.75; 149-token stream -> 2 segments")


def test_03_topic_coverage_arithmetic():
    """9 dialogues, lab topic missing in exactly 4 -> mean coverage 32/36."""
    lex = LexiconSet.bundled()
    with_lab = (
        "Arts: U noemde pijn en vermoeidheid als klachten.\n"
        "Patiënt: Ja, en ik gebruik paracetamol naast mijn dieet.\n"
        "Arts: Uw glucose en creatinine zien er goed uit.\n"
    )
    without_lab = (
        "Arts: U noemde pijn en vermoeidheid als klachten.\n"
        "Patiënt: Ja, en ik gebruik paracetamol naast mijn dieet.\n"
        "Arts: Blijf vooral rustig wandelen en let op zout.\n"
    )
    scores = []
    for i in range(9):
        text = without_lab if i < 4 else with_lab
        d = parse_transcript(text, dialogue_id=f"d{i}")
        scores.append(topic_coverage(d, lex.topics).score)
    mean = sum(scores) / len(scores)
    assert abs(mean - 32 / 36) <= 1e-9
    print(f"PASS topic coverage: mean over 9 dialogues = {mean:.10f} (32/36)")


def test_04_krippendorff_alpha():
    """Perfect tables hit 1.0; small nominal tables match the oracle; random data ~0."""
    # perfect agreement, all three levels
    columns = [(1, 1), (3, 3), (0, 0), (4, 4)]
    for level in ("nominal", "ordinal", "interval"):
        items = {(f"d{i}", "fluency"): {"A": a, "B": b} for i, (a, b) in enumerate(columns)}
        cells = {
            (rater, item): score
            for item, by_rater in items.items()
            for rater, score in by_rater.items()
        }
        table = RatingTable.from_cells(cells)
        assert krippendorff_alpha(table, level=level).alpha == 1.0

    # exhaustive small nominal tables, canonicalized as multisets of
    # 2-rater columns over values {0,1,2}; item order is irrelevant to
    # alpha (a property test elsewhere pins that), so multisets cover
    # every distinct table up to 6 items
    pair_types = list(itertools.product(range(3), repeat=2))
    checked = 0
    for n_items in range(2, 7):
        for combo in itertools.combinations_with_replacement(pair_types, n_items):
            cells = {}
            for i, (a, b) in enumerate(combo):
                cells[("A", (f"d{i}", "fluency"))] = a
                cells[("B", (f"d{i}", "fluency"))] = b
            result = krippendorff_alpha(RatingTable.from_cells(cells), level="nominal")
            expected = krippendorff_oracle([[a, b] for a, b in combo], level="nominal")
            assert abs(result.alpha - expected) <= 1e-10, (combo, result.alpha, expected)
            checked += 1

    # independent ratings: alpha averages out near zero
    rng = random.Random(7)
    total = 0.0
    for _ in range(1000):
        cells = {}
        for i in range(30):
            cells[("A", (f"d{i}", "fluency"))] = rng.randint(0, 4)
            cells[("B", (f"d{i}", "fluency"))] = rng.randint(0, 4)
        total += krippendorff_alpha(RatingTable.from_cells(cells), level="nominal").alpha
    mean_alpha = total / 1000
    assert abs(mean_alpha) < 0.1
    print(
        f"PASS Krippendorff alpha: perfect=1.0, {checked} exhaustive tables vs oracle, "
        f"Monte Carlo mean {mean_alpha:+.4f}"
    )


def test_05_spearman_rho():
    """Classical tie-free formula to 1e-12; monotone-transform invariance."""
    rng = random.Random(99)
    for _ in range(500):
        n = rng.randint(3, 50)
        x = [float(v) for v in rng.sample(range(100000), n)]
        y = [float(v) for v in rng.sample(range(100000), n)]
        got = spearman_rho(x, y).rho
        assert abs(got - spearman_classical(x, y)) <= 1e-12

    for _ in range(500):
        n = rng.randint(3, 40)
        x = [rng.uniform(-5, 5) for _ in range(n)]
        y = [rng.uniform(-5, 5) for _ in range(n)]
        base = spearman_rho(x, y).rho
        fx = [v * 3.0 + 1.0 for v in x]
        gy = [2.718281828 ** v for v in y]
        assert spearman_rho(fx, gy).rho == base
    print("PASS Spearman rho: classical formula (500 tie-free) and monotone invariance (500)")


def test_06_stub_generation_pipeline(tmp_path):
    """4 topics -> 4 calls, verbatim 150-word tails, byte-exact join, clean resume."""
    topics = ("symptomen", "medicatiegebruik", "leefstijl", "laboratoriumuitslagen")
    cfg = GenerationConfig(topics=topics, token_ratio=1.0)
    replies = [" ".join(f"{tag}{i}" for i in range(170)) for tag in "abcd"]

    stub = StubLLMClient(replies=list(replies))
    job = generate_dialogue(cfg, "- samenvatting", [], stub)
    assert len(stub.calls) == 4
    for i in range(1, 4):
        tail = " ".join(replies[i - 1].split()[-150:])
        assert tail in stub.calls[i]["messages"][-1]["content"]
    assert job.final_dialogue == "\n".join(replies)

    # interrupted run leaves two finished segments; the resume makes
    # exactly the two missing calls and keeps the rest byte-identical
    job_dir = tmp_path / "job"
    first = StubLLMClient(replies=list(replies), fail_on=2)
    with pytest.raises(ClientError):
        generate_dialogue(cfg, "- samenvatting", [], first, job_dir=job_dir)
    second = StubLLMClient(replies=list(replies)[2:])
    resumed = generate_dialogue(cfg, "- samenvatting", [], second, job_dir=job_dir, resume=True)
    assert len(second.calls) == 2
    assert resumed.complete
    assert resumed.final_dialogue == "\n".join(replies)
    print("PASS stub generation: 4 calls, 150-word tails verbatim, join byte-exact, resume=2 calls")


def test_07_lexicon_fidelity():
    """Shipped lexicon files match the checked-in word-list manifest exactly."""
    manifest = json.loads((DATA_DIR / "lexicon_manifest.json").read_text(encoding="utf-8"))
    lexicon_dir = bundled_lexicon_dir()
    shipped_files = sorted(p.stem for p in lexicon_dir.glob("*.txt"))
    assert shipped_files == sorted(manifest)

    for name, expected in manifest.items():
        raw = (lexicon_dir / f"{name}.txt").read_text(encoding="utf-8")
        entries = []
        for line in raw.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                entries.append(line)
        assert entries == expected, f"{name}.txt diverges from the manifest"
    total = sum(len(v) for v in manifest.values())
    print(f"PASS lexicon fidelity: 8 files, {total} entries, zero diffs")


def test_08_end_to_end_evaluate_golden(tmp_path):
    """CLI evaluate on the bundled corpus reproduces the golden report, < 1 s."""
    golden = DATA_DIR / "golden"
    out = tmp_path / "rapport"
    started = time.monotonic()
    code = cli.main(
        ["evaluate", "--corpus", str(bundled_sample_corpus_dir()), "--out", str(out)]
    )
    elapsed = time.monotonic() - started
    assert code == 0
    assert elapsed < 1.0, f"evaluate took {elapsed:.2f}s"

    names = [
        "metrics.json",
        "metrics_table.txt",
        "per_dialogue.csv",
        "role_consistency.csv",
        "topic_proportions.csv",
    ]
    for name in names:
        produced = (out / name).read_bytes()
        expected = (golden / name).read_bytes()
        assert produced == expected, f"{name} differs from the golden copy"
    print(f"PASS end-to-end: 5 golden files byte-identical ({elapsed:.2f}s)")
