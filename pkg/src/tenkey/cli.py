"""Command-line surface tying corpus analysis, optimization and scoring together.

Exit codes: 0 success, 1 usage error, 2 data or validation error. Reports are
JSON on stdout; --pretty switches to paper-style tables. Progress goes to
stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from .corpus import CharsetPolicy, NormalizedCorpus, ngram_counts, normalize, top_candidates
from .cost import FitnessBreakdown, FitnessWeights, evaluate
from .evolve import GaParams, TrialReport, multi_trial_optimize
from .keypad import abc_baseline, load_layout, save_layout
from .multigrams import SelectionParams, select_multigrams
from .sessions import load_session_file, score_session
from .stats import EmptySample, wilcoxon_rank_sum


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise _UsageError(message)


def _read_corpus(path: str, charset: str | None) -> NormalizedCorpus:
    policy = CharsetPolicy(frozenset(charset)) if charset is not None else CharsetPolicy()
    raw = Path(path).read_text(encoding="utf-8", errors="replace")
    return normalize(raw, policy)


def _emit(doc: dict, pretty_lines: list[str] | None, pretty: bool) -> None:
    if pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    else:
        print(json.dumps(doc, indent=2))


def _breakdown_doc(bd: FitnessBreakdown, weights: FitnessWeights) -> dict:
    return {
        "metric": weights.variant,
        "f1": bd.f1,
        "f2": bd.f2,
        "f3": bd.f3,
        "f4": bd.f4,
        "total": bd.total,
    }


def _breakdown_table(title: str, bd: FitnessBreakdown) -> list[str]:
    return [
        title,
        f"{'Overall Fitness':>16} {'Mean Strokes':>13} {'Same Key':>9} {'Same Hand':>10} {'Travel':>8}",
        f"{bd.total:>16.5f} {bd.f1:>13.5f} {bd.f2:>9.5f} {bd.f3:>10.5f} {bd.f4:>8.5f}",
    ]


def _report_doc(report: TrialReport) -> dict:
    doc = {
        "metric": report.params.weights.variant,
        "params": {
            "trials": report.params.trials,
            "population": report.params.population,
            "evaluations": report.params.evaluations,
            "mutation_rate_each": report.params.mutation_rate_each,
            "crossover_rate": report.params.crossover_rate,
            "elite": report.params.elite,
            "seed": report.params.seed,
        },
        "multigrams": list(report.multigrams) if report.multigrams is not None else None,
        "trials": [
            {
                "trial": o.trial,
                "seed": o.seed,
                "best": dataclasses.asdict(o.best),
            }
            for o in report.trials
        ],
        "optimized": {"best": report.best, "mean": report.mean, "sd": report.sd},
        "wall_clock_s": report.wall_clock_s,
    }
    if report.random_baseline is not None:
        doc["random_baseline"] = {
            "per_trial_best": list(report.random_baseline.per_trial_best),
            "best": report.random_baseline.best,
            "mean": report.random_baseline.mean,
            "sd": report.random_baseline.sd,
        }
    if report.abc is not None:
        doc["abc"] = dataclasses.asdict(report.abc)
    return doc


def _report_table(report: TrialReport) -> list[str]:
    lines = [
        f"metric: {report.params.weights.variant}   trials: {report.params.trials}   "
        f"evaluations: {report.params.evaluations}",
        f"{'':>18} {'Best':>8} {'Average':>16}",
        f"{'Optimized Keypad':>18} {report.best:>8.3f} {report.mean:>10.3f} +- {report.sd:.3f}",
    ]
    if report.random_baseline is not None:
        rb = report.random_baseline
        lines.append(f"{'Random Keypad':>18} {rb.best:>8.3f} {rb.mean:>10.3f} +- {rb.sd:.3f}")
    if report.abc is not None:
        lines.append(f"{'ABC pad':>18} {report.abc.total:>8.3f}")
    return lines


def _cmd_analyze(args) -> int:
    corpus = _read_corpus(args.corpus, args.charset)
    unigrams = ngram_counts(corpus, 1).entries
    candidates = top_candidates(corpus, args.top)
    doc = {
        "digest": corpus.source_digest,
        "char_count_all": corpus.char_count_all,
        "char_count_layout": corpus.char_count_layout,
        "unigrams": dict(sorted(unigrams.items(), key=lambda kv: (-kv[1], kv[0]))),
        "candidates": [
            {"rank": c.rank, "text": c.text, "count": c.count} for c in candidates
        ],
    }
    pretty = [f"characters: {corpus.char_count_all} (layout: {corpus.char_count_layout})", ""]
    pretty.append(f"{'rank':>4} {'ngram':>6} {'count':>7}")
    pretty.extend(f"{c.rank:>4} {c.text:>6} {c.count:>7}" for c in candidates)
    _emit(doc, pretty, args.pretty)
    return 0


def _cmd_multigrams(args) -> int:
    corpus = _read_corpus(args.corpus, args.charset)
    params = SelectionParams(
        pool_size=args.pool,
        set_size=args.size,
        population=args.pop,
        iterations=args.iters,
        seed=args.seed,
    )
    chosen = select_multigrams(corpus, params)
    counts = {}
    counts.update(ngram_counts(corpus, 2).entries)
    counts.update(ngram_counts(corpus, 3).entries)
    members = sorted(chosen.members, key=lambda t: (-counts.get(t, 0), t))
    doc = {
        "members": members,
        "fitness": chosen.fitness,
        "counts": {m: counts.get(m, 0) for m in members},
    }
    pretty = [f"rank-shift fitness: {chosen.fitness:.0f}", ""]
    pretty.extend(f"{m:>5} {counts.get(m, 0):>7}" for m in members)
    _emit(doc, pretty, args.pretty)
    return 0


def _cmd_optimize(args) -> int:
    corpus = _read_corpus(args.corpus, args.charset)
    weights = FitnessWeights.for_metric(args.metric)
    params = GaParams(
        population=args.pop,
        evaluations=args.evals,
        trials=args.trials,
        seed=args.seed,
        weights=weights,
    )
    if args.multigrams == "none":
        multigrams = None
    elif args.multigrams == "auto":
        print("selecting multigrams...", file=sys.stderr)
        chosen = select_multigrams(corpus, SelectionParams(seed=args.seed))
        multigrams = sorted(chosen.members)
    else:
        doc = json.loads(Path(args.multigrams).read_text(encoding="utf-8"))
        multigrams = doc["members"] if isinstance(doc, dict) else doc
    report = multi_trial_optimize(
        corpus,
        params,
        multigrams,
        workers=args.workers,
        baselines=not args.no_baselines,
        progress=lambda line: print(line, file=sys.stderr),
    )
    if args.out:
        save_layout(report.best_layout, args.out)
        print(f"best layout written to {args.out}", file=sys.stderr)
    _emit(_report_doc(report), _report_table(report), args.pretty)
    return 0


def _cmd_evaluate(args) -> int:
    layout = load_layout(args.layout)
    corpus = _read_corpus(args.corpus, args.charset)
    weights = FitnessWeights.for_metric(args.metric)
    bd = evaluate(layout, corpus, weights)
    _emit(_breakdown_doc(bd, weights), _breakdown_table(args.layout, bd), args.pretty)
    return 0


def _cmd_compare(args) -> int:
    corpus = _read_corpus(args.corpus, args.charset)
    weights = FitnessWeights.for_metric(args.metric)
    docs = {}
    pretty: list[str] = []
    for path in (args.layout_a, args.layout_b):
        bd = evaluate(load_layout(path), corpus, weights)
        docs[path] = _breakdown_doc(bd, weights)
        pretty.extend(_breakdown_table(path, bd))
        pretty.append("")
    _emit({"metric": weights.variant, "layouts": docs}, pretty, args.pretty)
    return 0


def _read_samples(path: str) -> list[float]:
    values = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            values.append(float(line))
    return values


def _cmd_wilcoxon(args) -> int:
    try:
        a = _read_samples(args.file_a)
        b = _read_samples(args.file_b)
    except ValueError as exc:
        raise EmptySample(f"samples must be one number per line: {exc}") from exc
    result = wilcoxon_rank_sum(a, b)
    doc = dataclasses.asdict(result)
    pretty = [
        f"m={result.m} n={result.n}",
        f"W      {result.w:.1f}",
        f"E(W)   {result.e_w:.1f}",
        f"sigma  {result.sigma_w:.1f}",
        f"Z_w    {result.z_w:.2f}",
        f"P      {result.p_one_sided:.3g}",
    ]
    _emit(doc, pretty, args.pretty)
    return 0


def _cmd_baseline(args) -> int:
    layout = abc_baseline()
    if args.out:
        save_layout(layout, args.out)
        print(f"ABC layout written to {args.out}", file=sys.stderr)
    else:
        doc = {
            sym: {"row": slot.row, "col": slot.col, "stroke": slot.stroke}
            for sym, slot in sorted(layout.placements.items())
        }
        print(json.dumps(doc, indent=2))
    return 0


def _cmd_score_session(args) -> int:
    layout_id, subject_id, records = load_session_file(args.session)
    scores = [score_session(r) for r in records]
    mean_cpm = sum(s.cpm for s in scores) / len(scores) if scores else 0.0
    doc = {
        "layout_id": layout_id,
        "subject_id": subject_id,
        "messages": [
            {
                "target": r.target,
                "edit_distance": s.edit_distance,
                "effective_seconds": s.effective_seconds,
                "cpm": s.cpm,
            }
            for r, s in zip(records, scores)
        ],
        "mean_cpm": mean_cpm,
    }
    pretty = [f"{'cpm':>8} {'typos':>6}  target"]
    pretty.extend(
        f"{s.cpm:>8.2f} {s.edit_distance:>6}  {r.target}" for r, s in zip(records, scores)
    )
    pretty.append(f"mean CPM: {mean_cpm:.2f} over {len(scores)} messages")
    _emit(doc, pretty, args.pretty)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="tenkey", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, corpus: bool = True) -> None:
        if corpus:
            p.add_argument("--charset", help="special characters to keep besides a-z and space")
        p.add_argument("--pretty", action="store_true", help="human-readable tables")

    p = sub.add_parser("analyze", help="n-gram report and candidate table")
    p.add_argument("corpus")
    p.add_argument("--top", type=int, default=50)
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("multigrams", help="select the 14 multigrams for a corpus")
    p.add_argument("corpus")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--pop", type=int, default=50)
    p.add_argument("--pool", type=int, default=50)
    p.add_argument("--size", type=int, default=14)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_multigrams)

    p = sub.add_parser("optimize", help="evolve layouts over repeated trials")
    p.add_argument("corpus")
    p.add_argument("--metric", choices=["two-thumb", "moradi"], default="two-thumb")
    p.add_argument("--multigrams", default="auto", help="auto, none, or a multigram file")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--evals", type=int, default=50_050)
    p.add_argument("--pop", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the best layout file here")
    p.add_argument("--workers", type=int, default=min(4, os.cpu_count() or 1))
    p.add_argument("--no-baselines", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("evaluate", help="cost breakdown of a layout on a corpus")
    p.add_argument("layout")
    p.add_argument("corpus")
    p.add_argument("--metric", choices=["two-thumb", "moradi"], default="two-thumb")
    common(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("compare", help="side-by-side breakdowns of two layouts")
    p.add_argument("layout_a")
    p.add_argument("layout_b")
    p.add_argument("corpus")
    p.add_argument("--metric", choices=["two-thumb", "moradi"], default="two-thumb")
    common(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("wilcoxon", help="rank-sum test over two sample files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    common(p, corpus=False)
    p.set_defaults(func=_cmd_wilcoxon)

    p = sub.add_parser("baseline", help="emit a reference layout")
    p.add_argument("name", choices=["abc"])
    p.add_argument("--out")
    common(p, corpus=False)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("score-session", help="score a recorded typing session file")
    p.add_argument("session")
    common(p, corpus=False)
    p.set_defaults(func=_cmd_score_session)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
