"""Command-line interface.

Subcommands cover the whole pipeline: ingest corpus/event files, inspect
corpus statistics, print the question catalog, train both familiarity
models, rank from an exported session transcript, run the simulation
benchmark and the mean-vs-median comparison (both write reports with
figures), and serve the wizard HTTP API.

Exit codes: 0 success, 1 data errors (one-line diagnostic on stderr),
2 usage errors (argparse).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import report as report_mod
from .config import load_config
from .corpus import (
    UserProfile,
    compute_corpus_stats,
    read_corpus,
    read_profile,
    validate_document,
    write_corpus,
    write_profile,
)
from .errors import RefindError
from .events import ExperienceLog, summarize_experience
from .model import (
    TrainingExample,
    fit_candidate_model,
    fit_target_model,
    load_model,
    predict_target,
    save_model,
)
from .questions import SessionMetrics, _fmt_number, build_catalog
from .ranker import rank, ranked_to_json
from .simulate import SimulationConfig, build_view, run_benchmark, run_compare_splits
from .synth import World


def _default_data_dir() -> str:
    return os.environ.get("REFIND_DATA_DIR", "refind-data")


def _load_world(corpus_path, events_path=None, profile_path=None) -> World:
    vocab, records = read_corpus(corpus_path)
    log = ExperienceLog.read(events_path) if events_path else ExperienceLog()
    if profile_path:
        profile_vocab, profile = read_profile(profile_path)
        if list(profile_vocab) != list(vocab):
            raise RefindError("profile vocabulary does not match the corpus header")
    else:
        profile = UserProfile(interest_vector=tuple(0.0 for _ in vocab))
    now = 0
    for rec in records:
        now = max(now, rec.created_at, rec.modified_at, rec.last_accessed_at)
    for ev in log:
        now = max(now, ev.timestamp)
    return World(records=tuple(records), log=log, profile=profile,
                 vocab=tuple(vocab), now=now)


def _summaries(world: World):
    return [summarize_experience(world.log, rec) for rec in world.records]


def cmd_ingest(args) -> int:
    world = _load_world(args.corpus, args.events, args.profile)
    bad = [validate_document(rec) for rec in world.records]
    bad = [r for r in bad if not r.ok]
    if bad:
        details = "; ".join(
            f"{r.doc_id}: {', '.join(r.violations)}" for r in bad[:5]
        )
        raise RefindError(f"{len(bad)} invalid document(s): {details}")
    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    write_corpus(data_dir / "corpus.jsonl", list(world.vocab), world.records)
    world.log.write(data_dir / "events.jsonl")
    if args.profile:
        write_profile(data_dir / "profile.json", list(world.vocab), world.profile)
    print(f"ingested {len(world.records)} documents, {len(world.log)} events "
          f"-> {data_dir}")
    return 0


def cmd_stats(args) -> int:
    world = _load_world(args.corpus, args.events)
    summaries = _summaries(world) if args.events else None
    stats = compute_corpus_stats(world.records, summaries)
    rows = []
    for name, st in stats.numeric.items():
        rows.append((name, _fmt_number(st.mean), _fmt_number(st.median),
                     _fmt_number(st.min), _fmt_number(st.max)))
    print(report_mod.render_table(rows, headers=("attribute", "mean", "median",
                                                 "min", "max")), end="")
    print()
    for name, hist in stats.categorical.items():
        parts = ", ".join(
            f"{value}={hist[value]}"
            for value in sorted(hist, key=lambda v: (-hist[v], str(v)))
        )
        print(f"{name}: {parts}")
    return 0


def cmd_catalog(args) -> int:
    world = _load_world(args.corpus, args.events)
    summaries = _summaries(world) if args.events else None
    stats = compute_corpus_stats(world.records, summaries)
    catalog = build_catalog(stats, policy=args.policy)
    for i, q in enumerate(catalog, start=1):
        print(f"{i:2d}. [{q.question_id}] {q.prompt}")
        if q.kind == "binary_split":
            print(f"      A. {q.option_a}   B. {q.option_b}")
        elif q.options:
            print(f"      options: {', '.join(str(o) for o in q.options)}")
    return 0


def cmd_train_candidate(args) -> int:
    world = _load_world(args.corpus, args.events, args.profile)
    view = build_view(world)
    examples = []
    with open(args.grades, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            doc_id = row["doc_id"]
            if doc_id not in view.features:
                raise RefindError(f"grades file references unknown document {doc_id!r}")
            examples.append(TrainingExample(
                features=view.features[doc_id].as_vector(),
                grade=float(row["grade"]),
            ))
    model = fit_candidate_model(examples)
    save_model(model, args.out)
    print(f"fitted candidate model on {len(examples)} examples -> {args.out}")
    return 0


def cmd_train_target(args) -> int:
    examples = []
    with open(args.transcripts, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            m = row.get("metrics")
            if m is None or "grade" not in row:
                raise RefindError("each transcript line needs metrics and grade")
            examples.append(TrainingExample(
                features=(float(m["T_a"]), float(m["P_s"]), float(m["P_e"])),
                grade=float(row["grade"]),
            ))
    model = fit_target_model(examples)
    save_model(model, args.out)
    print(f"fitted target model on {len(examples)} examples -> {args.out}")
    return 0


def cmd_rank(args) -> int:
    world = _load_world(args.corpus, args.events, args.profile)
    view = build_view(world)
    candidate_model = load_model(args.candidate_model)
    target_model = load_model(args.target_model)
    with open(args.session, "r", encoding="utf-8") as fh:
        transcript = json.load(fh)
    m = transcript.get("metrics") or {"T_a": 0.0, "P_s": 0.0, "P_e": 0.0}
    metrics = SessionMetrics(T_a=float(m["T_a"]), P_s=float(m["P_s"]),
                             P_e=float(m["P_e"]))
    f_t = predict_target(target_model, metrics)
    candidate_ids = transcript.get("candidate_ids", list(view.all_ids))
    unknown = [cid for cid in candidate_ids if cid not in view.features]
    if unknown:
        raise RefindError(f"transcript references unknown documents: {unknown[:5]}")
    ranked = rank([(cid, view.features[cid]) for cid in candidate_ids],
                  candidate_model, f_t)
    if args.top:
        ranked = ranked[:args.top]
    rows = [
        (rc.rank, rc.doc_id, f"{rc.familiarity:.4f}", f"{rc.distance:.4f}",
         view.records_by_id[rc.doc_id].path)
        for rc in ranked
    ]
    print(f"F_t = {f_t:.4f}")
    print(report_mod.render_table(rows, headers=("rank", "doc_id", "F_i", "d", "path")),
          end="")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report_mod.to_json(ranked_to_json(ranked)))
    return 0


def _build_config(args) -> SimulationConfig:
    config = SimulationConfig()
    if getattr(args, "config", None):
        config = load_config(args.config, base=config)
    overrides = {}
    for flag, key in (("seed", "seed"), ("docs", "n_docs"), ("tasks", "n_tasks"),
                      ("training_tasks", "n_training_tasks"), ("policy", "policy")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    if overrides:
        import dataclasses

        config = dataclasses.replace(config, **overrides)
    return config


def cmd_simulate(args) -> int:
    config = _build_config(args)
    run = run_benchmark(config)
    out_dir = Path(args.out_dir) if args.out_dir else Path(
        f"reports/simulate-seed{config.seed}")
    outputs = report_mod.write_benchmark_outputs(run, out_dir)
    print(report_mod.benchmark_table(run), end="")
    print(f"\nreport written to {outputs['json']}")
    return 0


def cmd_compare_splits(args) -> int:
    config = _build_config(args)
    comparison = run_compare_splits(config, n_tasks=config.n_tasks)
    out_dir = Path(args.out_dir) if args.out_dir else Path(
        f"reports/splits-seed{config.seed}")
    outputs = report_mod.write_splits_outputs(comparison, out_dir)
    print(report_mod.splits_table(comparison), end="")
    print(f"report written to {outputs['json']}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import AppState, create_app

    if args.demo:
        state = AppState.demo(seed=args.seed if args.seed is not None else 7,
                              n_docs=args.docs if args.docs is not None else 120)
    else:
        data_dir = Path(args.data_dir)
        corpus_path = data_dir / "corpus.jsonl"
        if not corpus_path.exists():
            raise RefindError(
                f"no corpus at {corpus_path}; run ingest first or use --demo")
        events_path = data_dir / "events.jsonl"
        profile_path = data_dir / "profile.json"
        world = _load_world(
            corpus_path,
            events_path if events_path.exists() else None,
            profile_path if profile_path.exists() else None,
        )
        view = build_view(world)
        summaries = list(view.summaries.values())
        stats = compute_corpus_stats(world.records, summaries)
        catalog = build_catalog(stats, policy=args.policy)
        candidate_model = target_model = None
        cm_path = data_dir / "candidate_model.json"
        tm_path = data_dir / "target_model.json"
        if cm_path.exists():
            candidate_model = load_model(cm_path)
        if tm_path.exists():
            target_model = load_model(tm_path)
        state = AppState(view, catalog, candidate_model, target_model)
    app = create_app(state)
    print(f"serving on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refind",
        description="Familiarity-based re-finding engine for personal document corpora",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and store corpus/event files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--events")
    p.add_argument("--profile")
    p.add_argument("--data-dir", default=_default_data_dir())
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="print corpus statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--events")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("catalog", help="print the question catalog")
    p.add_argument("--corpus", required=True)
    p.add_argument("--events")
    p.add_argument("--policy", choices=["mean", "median"], default="mean")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("train-candidate", help="fit the candidate familiarity model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--events", required=True)
    p.add_argument("--profile")
    p.add_argument("--grades", required=True,
                   help="JSON Lines of {doc_id, grade}")
    p.add_argument("--out", default="candidate_model.json")
    p.set_defaults(func=cmd_train_candidate)

    p = sub.add_parser("train-target", help="fit the target familiarity model")
    p.add_argument("--transcripts", required=True,
                   help="JSON Lines of {metrics: {T_a, P_s, P_e}, grade}")
    p.add_argument("--out", default="target_model.json")
    p.set_defaults(func=cmd_train_target)

    p = sub.add_parser("rank", help="rank candidates from a session transcript")
    p.add_argument("--corpus", required=True)
    p.add_argument("--events", required=True)
    p.add_argument("--profile")
    p.add_argument("--candidate-model", required=True)
    p.add_argument("--target-model", required=True)
    p.add_argument("--session", required=True, help="session transcript JSON")
    p.add_argument("--top", type=int, default=0)
    p.add_argument("--json", help="also write the ranked list as JSON")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("simulate", help="run the end-to-end simulation benchmark")
    p.add_argument("--seed", type=int)
    p.add_argument("--docs", type=int)
    p.add_argument("--tasks", type=int)
    p.add_argument("--training-tasks", type=int, dest="training_tasks")
    p.add_argument("--policy", choices=["mean", "median"])
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare-splits",
                       help="mean vs median as the page-question parameter")
    p.add_argument("--seed", type=int)
    p.add_argument("--docs", type=int)
    p.add_argument("--tasks", type=int, default=4000)
    p.add_argument("--config")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_compare_splits)

    p = sub.add_parser("serve", help="serve the wizard HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=_default_data_dir())
    p.add_argument("--policy", choices=["mean", "median"], default="mean")
    p.add_argument("--demo", action="store_true",
                   help="serve a synthetic demo corpus with trained models")
    p.add_argument("--seed", type=int)
    p.add_argument("--docs", type=int)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RefindError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
