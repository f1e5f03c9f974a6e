"""Command-line entry point.

Subcommands: parse, generate, evaluate, ratings (ingest | report),
report. Data goes to files or stdout; diagnostics go to stderr. Exit
codes: 0 success, 1 validation problem, 2 runtime or endpoint failure.

Settings resolve as flags over config file over built-in defaults. The
config file is ``./spreekuur.json`` unless --config points elsewhere.
The endpoint token comes only from the SPREEKUUR_TOKEN environment
variable; there is no token flag on purpose.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from dataclasses import fields as dataclass_fields
from pathlib import Path
from typing import Optional

from . import report as report_mod
from .dialogue import parse_transcript
from .errors import (
    BudgetExceeded,
    ClientError,
    ContextOverflow,
    SpreekuurError,
)
from .generation import (
    GenerationConfig,
    HttpLLMClient,
    StubLLMClient,
    build_fewshot_pair,
    chunk_source,
    generate_dialogue,
    load_job,
    summarize,
)
from .generation.prompts import PromptTemplates
from .harness import evaluate_corpus, ingest_ratings, load_corpus, qual_report
from .lexicon import LexiconSet

TOKEN_ENV_VAR = "SPREEKUUR_TOKEN"
CONFIG_FILENAME = "spreekuur.json"

_GENERATION_FIELDS = {f.name for f in dataclass_fields(GenerationConfig)}


def _eprint(*parts) -> None:
    print(*parts, file=sys.stderr)


def _load_config_file(explicit: Optional[str]) -> dict:
    path = Path(explicit) if explicit else Path.cwd() / CONFIG_FILENAME
    if path.is_file():
        data = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"config file {path} must hold a JSON object")
        return data
    if explicit:
        raise FileNotFoundError(f"config file not found: {path}")
    return {}


def _setting(args: argparse.Namespace, cfg: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return cfg.get(name, default)


def _lexicons(args: argparse.Namespace, cfg: dict) -> LexiconSet:
    directory = _setting(args, cfg, "lexicons")
    if directory:
        return LexiconSet.from_dir(directory)
    return LexiconSet.bundled()


def _templates(args: argparse.Namespace, cfg: dict) -> PromptTemplates:
    directory = _setting(args, cfg, "prompts")
    return PromptTemplates.load(Path(directory) if directory else None)


def _generation_config(args: argparse.Namespace, cfg: dict) -> GenerationConfig:
    data = dict(cfg.get("generation", {}))
    unknown = set(data) - _GENERATION_FIELDS
    if unknown:
        raise ValueError(f"unknown generation settings in config file: {sorted(unknown)}")
    overrides = {
        "domain": args.domain,
        "topics": tuple(t.strip() for t in args.topics.split(",")) if args.topics else None,
        "target_turns": args.target_turns,
        "target_words": args.target_words,
        "token_ratio": args.token_ratio,
        "context_budget": args.context_budget,
        "temperature": args.temperature,
        "seed": args.seed,
        "max_output_tokens": args.max_output_tokens,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    return GenerationConfig.from_dict(data)


def _client(args: argparse.Namespace, cfg: dict):
    if args.stub:
        return None  # built later, once the topic list is known
    endpoint = _setting(args, cfg, "endpoint")
    model = _setting(args, cfg, "model")
    if not endpoint or not model:
        raise ValueError(
            "generate needs --endpoint and --model (or config file entries), or --stub"
        )
    return HttpLLMClient(
        base_url=endpoint,
        model=model,
        token=os.environ.get(TOKEN_ENV_VAR),
    )


def _stub_client(topics) -> StubLLMClient:
    replies = [
        f"Arts: Laten we het nu hebben over {topic}.\nPatiënt: Dat is goed, vertel."
        for topic in topics
    ]
    return StubLLMClient(replies=replies)


def _cmd_parse(args: argparse.Namespace, cfg: dict) -> int:
    source = Path(args.input)
    if source.is_dir():
        files = sorted(source.glob("*.txt"))
        if not files:
            raise FileNotFoundError(f"no .txt transcripts in {source}")
    elif source.is_file():
        files = [source]
    else:
        raise FileNotFoundError(f"input not found: {source}")

    outdir = Path(args.out)
    (outdir / "dialogues").mkdir(parents=True, exist_ok=True)
    entries = []
    for file in files:
        dialogue = parse_transcript(
            file.read_text(encoding="utf-8"), dialogue_id=file.stem, source="file"
        )
        rel = f"dialogues/{dialogue.id}.json"
        (outdir / rel).write_text(
            json.dumps(dialogue.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        entries.append(
            {
                "id": dialogue.id,
                "file": rel,
                "turns": dialogue.turn_count,
                "words": dialogue.word_count,
            }
        )
    manifest = {"dialogues": entries}
    (outdir / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    _eprint(f"parsed {len(entries)} dialogue(s) into {outdir}")
    return 0


def _cmd_generate(args: argparse.Namespace, cfg: dict) -> int:
    outdir = Path(args.out)
    templates = _templates(args, cfg)

    if args.resume:
        job = load_job(outdir)
        gen_cfg = job.config
        client = _stub_client(gen_cfg.topics) if args.stub else _client(args, cfg)
        job = generate_dialogue(
            gen_cfg,
            job.source_summary,
            job.fewshot,
            client,
            templates=templates,
            job_dir=outdir,
            resume=True,
        )
        _eprint(f"resumed job in {outdir}: {len(job.segments)} segment(s) complete")
        return 0

    gen_cfg = _generation_config(args, cfg)
    client = _stub_client(gen_cfg.topics) if args.stub else _client(args, cfg)

    source_summary = ""
    fewshot = ()
    if args.source and not args.stub:
        source_text = Path(args.source).read_text(encoding="utf-8")
        chunks = chunk_source(source_text, gen_cfg.chunk_budget, gen_cfg.estimator)
        source_summary = summarize(chunks[0], client, templates=templates).text
        try:
            fewshot = (build_fewshot_pair(source_text, gen_cfg, client, templates=templates),)
        except SpreekuurError as exc:
            _eprint(f"skipping few-shot example: {exc}")

    job = generate_dialogue(
        gen_cfg,
        source_summary,
        fewshot,
        client,
        templates=templates,
        job_dir=outdir,
    )
    _eprint(f"generated {len(job.segments)} segment(s) into {outdir}")
    return 0


def _cmd_evaluate(args: argparse.Namespace, cfg: dict) -> int:
    dialogues = load_corpus(args.corpus)
    lexicons = _lexicons(args, cfg)
    window = _setting(args, cfg, "window", 50)
    jobs = _setting(args, cfg, "jobs", 1)
    metric_report = evaluate_corpus(dialogues, lexicons, window=int(window), jobs=int(jobs))
    outdir = Path(_setting(args, cfg, "out", "spreekuur-out"))
    paths = report_mod.write_metric_outputs(metric_report, outdir)
    print(report_mod.render_table(metric_report), end="")
    _eprint(f"wrote {len(paths)} file(s) to {outdir}")
    return 0


def _cmd_ratings_ingest(args: argparse.Namespace, cfg: dict) -> int:
    table = ingest_ratings(args.csv)
    summary = {
        "raters": list(table.raters),
        "dialogues": list(table.dialogue_ids),
        "categories": list(table.categories),
        "cells": len(table.cells),
    }
    print(json.dumps(summary, ensure_ascii=False, indent=2, sort_keys=True))
    return 0


def _cmd_ratings_report(args: argparse.Namespace, cfg: dict) -> int:
    table = ingest_ratings(args.csv)
    dialogues = load_corpus(args.corpus)
    lexicons = _lexicons(args, cfg)
    window = _setting(args, cfg, "window", 50)
    metric_report = evaluate_corpus(dialogues, lexicons, window=int(window))
    qual = qual_report(
        table,
        metric_report,
        level=_setting(args, cfg, "alpha_level", "ordinal"),
        pooling=_setting(args, cfg, "pooling", "mean"),
    )
    outdir = Path(_setting(args, cfg, "out", "spreekuur-out"))
    paths = report_mod.write_qual_outputs(qual, outdir)
    _eprint(f"wrote {len(paths)} file(s) to {outdir}")
    return 0


def _cmd_report(args: argparse.Namespace, cfg: dict) -> int:
    dialogues = load_corpus(args.corpus)
    lexicons = _lexicons(args, cfg)
    window = _setting(args, cfg, "window", 50)
    jobs = _setting(args, cfg, "jobs", 1)
    metric_report = evaluate_corpus(dialogues, lexicons, window=int(window), jobs=int(jobs))
    outdir = Path(_setting(args, cfg, "out", "spreekuur-out"))
    report_mod.write_metric_outputs(metric_report, outdir)
    qual = None
    if args.ratings:
        table = ingest_ratings(args.ratings)
        qual = qual_report(
            table,
            metric_report,
            level=_setting(args, cfg, "alpha_level", "ordinal"),
            pooling=_setting(args, cfg, "pooling", "mean"),
        )
        report_mod.write_qual_outputs(qual, outdir)
    combined = report_mod.write_combined(metric_report, qual, outdir)
    _eprint(f"combined report at {combined}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spreekuur",
        description="Generate and evaluate synthetic Dutch medical consultation dialogues.",
    )
    parser.add_argument("--config", help=f"config file (default ./{CONFIG_FILENAME})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="parse raw transcripts into a structured corpus")
    p_parse.add_argument("--input", required=True, help="transcript file or directory of .txt")
    p_parse.add_argument("--out", required=True, help="output directory")

    p_gen = sub.add_parser("generate", help="generate a synthetic dialogue via the endpoint")
    p_gen.add_argument("--out", required=True, help="job directory")
    p_gen.add_argument("--source", help="real transcript file for summary and few-shot example")
    p_gen.add_argument("--resume", action="store_true", help="resume a persisted job")
    p_gen.add_argument("--stub", action="store_true", help="dry run with a canned client")
    p_gen.add_argument("--endpoint", help="chat-completion base URL")
    p_gen.add_argument("--model", help="model name")
    p_gen.add_argument("--prompts", help="prompt template directory")
    p_gen.add_argument("--domain", help="medical domain of the dialogue")
    p_gen.add_argument("--topics", help="comma-separated topic list")
    p_gen.add_argument("--target-turns", dest="target_turns", type=int)
    p_gen.add_argument("--target-words", dest="target_words", type=int)
    p_gen.add_argument("--token-ratio", dest="token_ratio", type=float)
    p_gen.add_argument("--context-budget", dest="context_budget", type=int)
    p_gen.add_argument("--temperature", type=float)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--max-output-tokens", dest="max_output_tokens", type=int)

    p_eval = sub.add_parser("evaluate", help="run the metric suite over a corpus")
    p_eval.add_argument("--corpus", required=True, help="corpus directory (.txt/.json)")
    p_eval.add_argument("--lexicons", help="lexicon directory (default: bundled)")
    p_eval.add_argument("--out", help="output directory (default spreekuur-out)")
    p_eval.add_argument("--window", type=int, help="window size for MSTTR/MATTR")
    p_eval.add_argument("--jobs", type=int, help="parallel dialogue evaluations")

    p_ratings = sub.add_parser("ratings", help="work with human rating CSVs")
    ratings_sub = p_ratings.add_subparsers(dest="ratings_command", required=True)
    p_ingest = ratings_sub.add_parser("ingest", help="validate and summarize a ratings CSV")
    p_ingest.add_argument("--csv", required=True, help="ratings CSV file")
    p_rreport = ratings_sub.add_parser("report", help="rating statistics joined with metrics")
    p_rreport.add_argument("--csv", required=True, help="ratings CSV file")
    p_rreport.add_argument("--corpus", required=True, help="corpus directory")
    p_rreport.add_argument("--lexicons", help="lexicon directory (default: bundled)")
    p_rreport.add_argument("--out", help="output directory (default spreekuur-out)")
    p_rreport.add_argument("--window", type=int, help="window size for MSTTR/MATTR")
    p_rreport.add_argument("--alpha-level", dest="alpha_level",
                           choices=("nominal", "ordinal", "interval"))
    p_rreport.add_argument("--pooling", choices=("mean", "median"))

    p_report = sub.add_parser("report", help="combined metric + rating report")
    p_report.add_argument("--corpus", required=True, help="corpus directory")
    p_report.add_argument("--ratings", help="ratings CSV file")
    p_report.add_argument("--lexicons", help="lexicon directory (default: bundled)")
    p_report.add_argument("--out", help="output directory (default spreekuur-out)")
    p_report.add_argument("--window", type=int, help="window size for MSTTR/MATTR")
    p_report.add_argument("--jobs", type=int, help="parallel dialogue evaluations")
    p_report.add_argument("--alpha-level", dest="alpha_level",
                          choices=("nominal", "ordinal", "interval"))
    p_report.add_argument("--pooling", choices=("mean", "median"))

    return parser


_DISPATCH = {
    "parse": _cmd_parse,
    "generate": _cmd_generate,
    "evaluate": _cmd_evaluate,
    "report": _cmd_report,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        cfg = _load_config_file(args.config)
        if args.command == "ratings":
            handler = (
                _cmd_ratings_ingest if args.ratings_command == "ingest" else _cmd_ratings_report
            )
        else:
            handler = _DISPATCH[args.command]
        return handler(args, cfg)
    except (ClientError, ContextOverflow, BudgetExceeded) as exc:
        _eprint(f"error: {exc}")
        return 2
    except (SpreekuurError, FileNotFoundError, NotADirectoryError, ValueError) as exc:
        _eprint(f"error: {exc}")
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
