"""Command-line interface: mine, predict, evaluate, inspect.

Every run prints its full effective configuration first, so any output can
be reproduced from the header alone. Exit status is 0 exactly when the
requested artifact (knowledge base, ledger, metrics table, or dump) was
fully produced.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .baseline import evaluate, logistic_predictor
from .data import Dataset, Schema, parse_cases, parse_schema
from .errors import WoediagError
from .evidence import ContingencyTable, estimate_weight
from .fuzzy import FuzzyEvent, default_alpha_grid, membership
from .inference import infer, kb_predictor, render_report, report_document
from .mining import KnowledgeBase, MiningConfig, load_kb, mine, save_kb
from .symptoms import hypothesis_labels

__all__ = ["main", "run_mine", "run_predict", "run_evaluate", "run_inspect"]


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_schema(path: str) -> Schema:
    return parse_schema(_read(path))


def _load_dataset(schema_path: str, data_path: str) -> Dataset:
    schema = _load_schema(schema_path)
    return parse_cases(_read(data_path), schema)


def _load_kb_file(path: str) -> KnowledgeBase:
    return load_kb(_read(path))


def _print_header(command: str, settings: dict) -> None:
    rendered = " ".join(f"{k}={v}" for k, v in settings.items())
    print(f"# woediag {command} {rendered}")


def _parse_score_weights(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("score weights must be three comma-separated numbers")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


def run_mine(args: argparse.Namespace) -> int:
    config = MiningConfig(
        max_size=args.max_size,
        min_support=args.min_support,
        z_crit=args.z_crit,
        smoothing=args.smoothing,
        alpha_step=args.alpha_step,
        score_weights=args.score_weights,
    )
    _print_header(
        "mine",
        {
            "schema": args.schema,
            "data": args.data,
            "hypothesis": args.hypothesis,
            "max_size": config.max_size,
            "min_support": config.min_support,
            "z_crit": config.z_crit,
            "smoothing": config.smoothing,
            "alpha_step": config.alpha_step,
            "score_weights": ",".join(str(w) for w in config.score_weights),
            "prior": "data" if args.prior is None else args.prior,
            "shards": args.shards,
            "out": args.out,
        },
    )
    dataset = _load_dataset(args.schema, args.data)
    kb = mine(
        dataset,
        hypothesis=args.hypothesis,
        config=config,
        shards=args.shards,
        prior_prevalence=args.prior,
    )
    Path(args.out).write_text(save_kb(kb), encoding="utf-8")
    print(f"rules: {len(kb.rules)}")
    print(f"prior: prevalence={kb.prior.prevalence:.4f} log_odds={kb.prior.log_odds:.4f}")
    top = sorted(kb.rules, key=lambda r: (-abs(r.estimate.w), r.group.canonical_id))[:10]
    for rule in top:
        print(f"  {rule.estimate.w:8.3f}  (z={rule.estimate.z:6.2f})  {rule.group.describe()}")
    print(f"knowledge base written to {args.out}")
    return 0


def run_predict(args: argparse.Namespace) -> int:
    mode = "compat" if args.compat_odds else "canonical"
    _print_header(
        "predict",
        {
            "kb": args.kb,
            "case": args.case,
            "schema": args.schema,
            "mode": mode,
            "score_weights": "kb" if args.score_weights is None else ",".join(map(str, args.score_weights)),
            "json": args.json,
        },
    )
    kb = _load_kb_file(args.kb)
    dataset = _load_dataset(args.schema, args.case)
    if len(dataset) == 0:
        raise WoediagError(f"case file {args.case} contains no cases")
    for case in dataset:
        report = infer(case, kb, dataset.schema, mode=mode, score_weights=args.score_weights)
        if args.json:
            print(json.dumps(report_document(report), indent=2))
        else:
            print(render_report(report))
    return 0


def _format_rate(value: float | None) -> str:
    return f"{100.0 * value:6.1f}%" if value is not None else "     -"


def _metrics_row(name: str, metrics) -> str:
    return (
        f"{name:<20} {_format_rate(metrics.npv)}  {_format_rate(metrics.ppv)}"
        f"  {_format_rate(metrics.sensitivity)}  {_format_rate(metrics.specificity)}"
        f"  {metrics.n_scored:>7}  {metrics.n_unscored:>9}"
    )


def run_evaluate(args: argparse.Namespace) -> int:
    _print_header(
        "evaluate",
        {
            "kb": args.kb,
            "schema": args.schema,
            "data": args.data,
            "threshold": args.threshold,
        },
    )
    kb = _load_kb_file(args.kb)
    dataset = _load_dataset(args.schema, args.data)
    woe = kb_predictor(kb, dataset.schema)
    logistic = logistic_predictor()
    woe_metrics = evaluate(woe, dataset, threshold=args.threshold, hypothesis=kb.hypothesis)
    print(f"Comparison of predictive power ({len(dataset)} cases, threshold {args.threshold})")
    print(
        f"{'Method':<20} {'NPV':>7}  {'PPV':>7}  {'Sens.':>7}  {'Spec.':>7}"
        f"  {'Scored':>7}  {'Unscored':>9}"
    )
    print(_metrics_row("weight-of-evidence", woe_metrics))
    try:
        logit_metrics = evaluate(logistic, dataset, threshold=args.threshold, hypothesis=kb.hypothesis)
        print(_metrics_row("logistic", logit_metrics))
    except ValueError:
        print(f"{'logistic':<20} (no scorable cases: required inputs absent from this data)")
    if args.predictions_out:
        lines = ["id,label,p_weight_of_evidence,p_logistic"]
        for case in dataset:
            label = case.outcome_label(kb.hypothesis)
            p_woe = woe(case)
            p_log = logistic(case)
            lines.append(
                ",".join(
                    [
                        case.id,
                        "?" if label is None else ("yes" if label else "no"),
                        "" if p_woe is None else f"{p_woe:.6f}",
                        "" if p_log is None else f"{p_log:.6f}",
                    ]
                )
            )
        Path(args.predictions_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"per-case predictions written to {args.predictions_out}")
    return 0


def run_inspect(args: argparse.Namespace) -> int:
    _print_header(
        "inspect",
        {
            "kb": args.kb,
            "top": args.top,
            "fuzzy": args.fuzzy or "-",
            "schema": args.schema or "-",
            "data": args.data or "-",
        },
    )
    kb = _load_kb_file(args.kb)
    if args.fuzzy:
        if not args.schema or not args.data:
            raise WoediagError("--fuzzy needs --schema and --data to grade the cases")
        try:
            attribute, label = args.fuzzy.split(":", 1)
        except ValueError:
            raise WoediagError("--fuzzy expects ATTRIBUTE:LABEL") from None
        dataset = _load_dataset(args.schema, args.data)
        mf = dataset.schema[attribute].fuzzy_label(label)
        grades = {
            case.id: membership(mf, float(case.values[attribute]))
            for case in dataset
            if case.values.get(attribute) is not None
        }
        event = FuzzyEvent(attribute=attribute, label=label, grades=grades)
        labels = hypothesis_labels(dataset, kb.hypothesis)
        n_pos = sum(1 for i, v in labels.items() if i in grades and v)
        n_neg = sum(1 for i, v in labels.items() if i in grades and not v)
        print("alpha,p_cut,weight")
        for alpha in default_alpha_grid(kb.config.alpha_step):
            cut = {i for i, g in event.grades.items() if g >= alpha}
            p_cut = len(cut) / len(grades) if grades else 0.0
            a = sum(1 for i in cut if labels.get(i) is True)
            c = sum(1 for i in cut if labels.get(i) is False)
            if 0 < len(cut) < len(grades) and n_pos and n_neg:
                est = estimate_weight(
                    ContingencyTable(a, n_pos - a, c, n_neg - c), kb.config.smoothing
                )
                print(f"{alpha:g},{p_cut:.6f},{est.w:.6f}")
            else:
                print(f"{alpha:g},{p_cut:.6f},")
        return 0
    top = sorted(kb.rules, key=lambda r: (-abs(r.estimate.w), r.group.canonical_id))
    if args.top is not None:
        top = top[: args.top]
    print(f"rules: {len(kb.rules)} (showing {len(top)}), hypothesis: {kb.hypothesis}")
    print(f"{'w':>8}  {'se':>7}  {'z':>7}  {'a':>5} {'b':>5} {'c':>5} {'d':>5}  group")
    for rule in top:
        t = rule.table
        print(
            f"{rule.estimate.w:8.3f}  {rule.estimate.se:7.3f}  {rule.estimate.z:7.2f}"
            f"  {t.a:5d} {t.b:5d} {t.c:5d} {t.d:5d}  {rule.group.describe()}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="woediag",
        description="Weight-of-evidence diagnostic engine: mine symptom groups, "
        "predict cases with auditable ledgers, and compare predictors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_mine = sub.add_parser("mine", help="mine a knowledge base from labeled cases")
    p_mine.add_argument("--schema", required=True, help="schema JSON file")
    p_mine.add_argument("--data", required=True, help="case CSV file")
    p_mine.add_argument("--hypothesis", default="surgical_lesion")
    p_mine.add_argument("--max-size", type=int, default=3)
    p_mine.add_argument("--min-support", type=int, default=5)
    p_mine.add_argument("--z-crit", type=float, default=1.96)
    p_mine.add_argument("--smoothing", type=float, default=0.5)
    p_mine.add_argument("--alpha-step", type=float, default=0.01)
    p_mine.add_argument("--score-weights", type=_parse_score_weights, default=(1.0, 1.0, 1.0))
    p_mine.add_argument("--prior", type=float, default=None, help="override the data prevalence")
    p_mine.add_argument("--shards", type=int, default=1, help="partition the candidate stream")
    p_mine.add_argument("--out", required=True, help="knowledge base output path")
    p_mine.set_defaults(func=run_mine)

    p_pred = sub.add_parser("predict", help="print the evidence ledger for each case in a file")
    p_pred.add_argument("--kb", required=True)
    p_pred.add_argument("--case", required=True, help="case CSV file (one or more rows)")
    p_pred.add_argument("--schema", required=True, help="schema the KB was mined against")
    p_pred.add_argument("--compat-odds", action="store_true", help="read posterior log odds as plain odds")
    p_pred.add_argument("--score-weights", type=_parse_score_weights, default=None)
    p_pred.add_argument("--json", action="store_true", help="machine-readable ledgers")
    p_pred.set_defaults(func=run_predict)

    p_eval = sub.add_parser("evaluate", help="compare predictors on a labeled dataset")
    p_eval.add_argument("--kb", required=True)
    p_eval.add_argument("--schema", required=True)
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--threshold", type=float, default=0.5)
    p_eval.add_argument("--predictions-out", default=None, help="optional per-case CSV")
    p_eval.set_defaults(func=run_evaluate)

    p_insp = sub.add_parser("inspect", help="dump rules or a fuzzy event's alpha profile")
    p_insp.add_argument("--kb", required=True)
    p_insp.add_argument("--top", type=int, default=None, help="show the N largest |w| rules")
    p_insp.add_argument("--fuzzy", default=None, metavar="ATTRIBUTE:LABEL")
    p_insp.add_argument("--schema", default=None)
    p_insp.add_argument("--data", default=None)
    p_insp.set_defaults(func=run_inspect)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WoediagError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
