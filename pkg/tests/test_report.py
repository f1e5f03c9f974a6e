from __future__ import annotations

import json

from spreekuur.dialogue import parse_transcript
from spreekuur.harness import ROW_METRICS, evaluate_corpus, ingest_ratings, qual_report
from spreekuur.lexicon import LexiconSet
from spreekuur.report import (
    combined_dict,
    correlation_matrix_csv,
    dumps,
    metric_report_dict,
    per_dialogue_csv,
    qual_report_dict,
    render_table,
    write_combined,
    write_metric_outputs,
    write_qual_outputs,
)
from spreekuur.stats import RUBRIC_CATEGORIES

LEXICONS = LexiconSet.bundled()


def build_metrics(n: int = 3):
    dialogues = []
    for i in range(n):
        filler = " ".join(f"vulwoord{i}_{j}" for j in range(20 * i))
        text = (
            "Arts: Goedemorgen, vertel eens rustig over uw klachten en uw medicatie.\n"
            "Patiënt: Ik heb pijn en wat koorts, en ik slik sinds kort paracetamol.\n"
            "Arts: Uw glucose was vorige keer goed, blijf vooral genoeg bewegen.\n"
            f"Patiënt: Dank u wel dokter, tot ziens. {filler}".rstrip()
        )
        dialogues.append(parse_transcript(text, dialogue_id=f"D{i + 1}"))
    return evaluate_corpus(dialogues, LEXICONS)


def build_qual(tmp_path, metrics):
    tmp_path.mkdir(parents=True, exist_ok=True)
    rows = ["rater_id,dialogue_id,category,score"]
    for i, did in enumerate(metrics.dialogue_ids, start=1):
        rows.append(f"R1,{did},fluency,{i}")
        rows.append(f"R2,{did},fluency,{min(i + 1, 5)}")
        rows.append(f"R1,{did},coherence,{i + 1}")
    path = tmp_path / "ratings.csv"
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return qual_report(ingest_ratings(path), metrics)


class TestJsonShape:
    def test_metric_dict_keys(self):
        data = metric_report_dict(build_metrics())
        assert set(data) == {
            "window", "per_dialogue", "missing", "detail", "corpus", "totals",
        }
        assert set(data["totals"]) == {"greetings", "closings"}

    def test_nan_becomes_none(self, tmp_path):
        metrics = build_metrics()
        qual = build_qual(tmp_path, metrics)
        data = qual_report_dict(qual)
        # alternation is constant across the corpus, so rho is NaN-degenerate
        cell = data["quant_qual_rho"]["fluency"]["alternation"]
        assert cell["rho"] is None
        assert cell["degenerate"] is True
        text = dumps(data)
        assert "NaN" not in text
        json.loads(text)

    def test_dumps_deterministic_and_utf8(self):
        data = {"b": 1, "a": "Patiënt"}
        text = dumps(data)
        assert text == dumps(dict(reversed(list(data.items()))))
        assert "Patiënt" in text
        assert text.endswith("\n")

    def test_combined_with_and_without_ratings(self, tmp_path):
        metrics = build_metrics()
        assert set(combined_dict(metrics)) == {"metrics"}
        qual = build_qual(tmp_path, metrics)
        assert set(combined_dict(metrics, qual)) == {"metrics", "ratings"}


class TestTableText:
    def test_table_lines(self):
        text = render_table(build_metrics())
        lines = text.splitlines()
        assert lines[0].startswith("Metric")
        assert lines[0].rstrip().endswith("SD")
        assert any(line.startswith("Type-token ratio") or "TTR" in line for line in lines)
        assert any(line.startswith("Greeting phrases (total)") for line in lines)
        assert any(line.startswith("Dialogues") for line in lines)
        assert text.endswith("\n")

    def test_three_decimal_formatting(self):
        report = build_metrics()
        text = render_table(report)
        mean = report.corpus["ttr"].mean
        assert f"{mean:.3f}" in text

    def test_missing_aggregate_renders_dashes(self):
        # a corpus of one very short dialogue has no msttr aggregate
        d = parse_transcript("Arts: Dag.\nPatiënt: Hallo.", dialogue_id="kort")
        report = evaluate_corpus([d], LEXICONS)
        assert "msttr" not in report.corpus
        text = render_table(report)
        msttr_line = next(line for line in text.splitlines() if "MSTTR" in line)
        assert "--" in msttr_line


class TestCsv:
    def test_per_dialogue_header_and_rows(self):
        report = build_metrics()
        text = per_dialogue_csv(report)
        lines = text.splitlines()
        assert lines[0] == "dialogue_id," + ",".join(ROW_METRICS)
        assert len(lines) == 1 + len(report.per_dialogue)
        assert lines[1].startswith("D1,")

    def test_none_cell_is_empty_string(self):
        d = parse_transcript("Arts: Dag.\nPatiënt: Hallo.", dialogue_id="kort")
        report = evaluate_corpus([d], LEXICONS)
        lines = per_dialogue_csv(report).splitlines()
        msttr_pos = 1 + ROW_METRICS.index("msttr")
        row = lines[1].split(",")
        assert row[msttr_pos] == ""

    def test_float_cells_round_trip(self):
        report = build_metrics()
        lines = per_dialogue_csv(report).splitlines()
        header = lines[0].split(",")
        row = lines[1].split(",")
        ttr_pos = header.index("ttr")
        assert float(row[ttr_pos]) == report.per_dialogue["D1"]["ttr"]

    def test_correlation_matrix_order(self, tmp_path):
        metrics = build_metrics()
        qual = build_qual(tmp_path, metrics)
        lines = correlation_matrix_csv(qual).splitlines()
        assert lines[0] == "category,metric,rho,n,degenerate"
        body = [line.split(",")[:2] for line in lines[1:]]
        categories = [c for c, _ in body]
        # categories appear in rubric order, metrics in row order within each
        seen_order = list(dict.fromkeys(categories))
        rubric_order = [c for c in RUBRIC_CATEGORIES if c in seen_order]
        assert seen_order == rubric_order
        fluency_metrics = [m for c, m in body if c == "fluency"]
        assert fluency_metrics == [m for m in ROW_METRICS if m in fluency_metrics]


class TestWriters:
    def test_write_metric_outputs(self, tmp_path):
        report = build_metrics()
        paths = write_metric_outputs(report, tmp_path)
        names = {p.name for p in paths}
        assert names == {
            "metrics.json",
            "metrics_table.txt",
            "per_dialogue.csv",
            "role_consistency.csv",
            "topic_proportions.csv",
        }
        for p in paths:
            assert p.is_file()
        json.loads((tmp_path / "metrics.json").read_text(encoding="utf-8"))

    def test_write_qual_outputs(self, tmp_path):
        metrics = build_metrics()
        qual = build_qual(tmp_path / "in", metrics)
        outdir = tmp_path / "out"
        paths = write_qual_outputs(qual, outdir)
        names = {p.name for p in paths}
        assert names == {
            "ratings.json",
            "rater_category_means.csv",
            "alpha_per_category.csv",
            "leave_one_out_alpha.csv",
            "correlation_matrix.csv",
        }

    def test_write_combined(self, tmp_path):
        metrics = build_metrics()
        qual = build_qual(tmp_path / "in", metrics)
        path = write_combined(metrics, qual, tmp_path / "out")
        data = json.loads(path.read_text(encoding="utf-8"))
        assert set(data) == {"metrics", "ratings"}

    def test_outputs_deterministic(self, tmp_path):
        report = build_metrics()
        dir_a = tmp_path / "a"
        dir_b = tmp_path / "b"
        write_metric_outputs(report, dir_a)
        write_metric_outputs(build_metrics(), dir_b)
        for name in ("metrics.json", "metrics_table.txt", "per_dialogue.csv"):
            assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()
