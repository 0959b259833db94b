"""Discovery of significant symptom groups and the persisted knowledge base.

Candidate groups up to a configured size are enumerated level-wise with
support pruning (group support is anti-monotone, so a support floor on the
group itself bounds every subset too), each candidate's weight of evidence
is estimated, and only the groups whose weight differs significantly from
zero are kept.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .data import Dataset, schema_digest
from .errors import DegenerateEventError, DegenerateHypothesisError, ParseError
from .evidence import (
    ContingencyTable,
    PriorOdds,
    WeightEstimate,
    estimate_weight,
    is_significant,
    prior_log_odds,
)
from .fuzzy import FuzzyEvent, default_alpha_grid, membership, optimal_alpha
from .symptoms import KIND_EQUALS, KIND_FUZZY, SymptomDescriptor, SymptomGroup, hypothesis_labels

logger = logging.getLogger(__name__)

__all__ = [
    "MiningConfig",
    "MinedRule",
    "KnowledgeBase",
    "binarize_symptoms",
    "enumerate_candidates",
    "mine",
    "save_kb",
    "load_kb",
]

KB_FORMAT = "woediag-kb-v1"


@dataclass(frozen=True)
class MiningConfig:
    max_size: int = 3
    min_support: int = 5
    z_crit: float = 1.96
    smoothing: float = 0.5
    alpha_step: float = 0.01
    score_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self) -> None:
        if self.max_size < 1:
            raise ValueError(f"max_size must be >= 1, got {self.max_size}")
        if self.min_support < 1:
            raise ValueError(f"min_support must be >= 1, got {self.min_support}")
        if self.z_crit <= 0:
            raise ValueError(f"z_crit must be > 0, got {self.z_crit}")
        if self.smoothing < 0:
            raise ValueError(f"smoothing must be >= 0, got {self.smoothing}")
        if not 0.0 < self.alpha_step <= 1.0:
            raise ValueError(f"alpha_step must lie in (0,1], got {self.alpha_step}")
        if len(self.score_weights) != 3:
            raise ValueError("score_weights must be a (size, weight, error) triple")
        object.__setattr__(self, "score_weights", tuple(float(x) for x in self.score_weights))


@dataclass(frozen=True)
class MinedRule:
    group: SymptomGroup
    estimate: WeightEstimate
    table: ContingencyTable
    significant: bool


@dataclass(frozen=True)
class KnowledgeBase:
    """The trained model: significant rules, the prior, and provenance."""

    rules: tuple[MinedRule, ...]
    prior: PriorOdds
    hypothesis: str
    config: MiningConfig
    schema_digest: str

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.rules, key=lambda r: r.group.canonical_id))
        ids = [r.group.canonical_id for r in ordered]
        if len(set(ids)) != len(ids):
            raise ValueError("knowledge base contains duplicate symptom groups")
        object.__setattr__(self, "rules", ordered)


class _EventMatrix:
    """Per-descriptor boolean masks over the dataset's case axis."""

    def __init__(self, dataset: Dataset, descriptors: Sequence[SymptomDescriptor], hypothesis: str):
        schema = dataset.schema
        for d in descriptors:
            d.validate_against(schema)
        self.descriptors = tuple(sorted(descriptors, key=lambda d: d.canonical_id))
        self.n = len(dataset)
        k = len(self.descriptors)
        self.holds = np.zeros((k, self.n), dtype=bool)
        self.observed = np.zeros((k, self.n), dtype=bool)
        self.labeled = np.zeros(self.n, dtype=bool)
        self.positive = np.zeros(self.n, dtype=bool)
        for j, case in enumerate(dataset):
            label = case.outcome_label(hypothesis)
            if label is not None:
                self.labeled[j] = True
                self.positive[j] = label
            for i, d in enumerate(self.descriptors):
                if d.observed(case):
                    self.observed[i, j] = True
                    self.holds[i, j] = d.holds(case, schema)

    def table(self, event: np.ndarray, complete: np.ndarray) -> ContingencyTable:
        included = complete & self.labeled
        pos = included & self.positive
        neg = included & ~self.positive
        a = int((event & pos).sum())
        c = int((event & neg).sum())
        b = int(pos.sum()) - a
        d = int(neg.sum()) - c
        return ContingencyTable(a, b, c, d, n_excluded=self.n - (a + b + c + d))


def binarize_symptoms(
    dataset: Dataset,
    hypothesis: str = "surgical_lesion",
    config: MiningConfig | None = None,
) -> list[SymptomDescriptor]:
    """Turn every attribute into crisp descriptors, sorted canonically.

    Categorical attributes yield one equality descriptor per declared value
    that at least one case exhibits. Each fuzzy label on a continuous
    attribute yields one descriptor at the alpha maximizing |w| against the
    hypothesis; labels whose optimization is degenerate are skipped with a
    warning.
    """
    config = config or MiningConfig()
    labels = hypothesis_labels(dataset, hypothesis)
    classes = set(labels.values())
    if len(classes) < 2:
        raise DegenerateHypothesisError(
            f"degenerate hypothesis {hypothesis!r}: need both classes among labeled cases"
        )
    grid = default_alpha_grid(config.alpha_step)
    descriptors: list[SymptomDescriptor] = []
    for attr in dataset.schema:
        if attr.kind == "categorical":
            counts = {v: 0 for v in attr.values}
            for case in dataset:
                v = case.values.get(attr.name)
                if v is not None:
                    counts[v] += 1
            for value in attr.values:
                if counts[value] > 0:
                    descriptors.append(
                        SymptomDescriptor(attribute=attr.name, kind=KIND_EQUALS, value=value)
                    )
            continue
        for label, mf in attr.fuzzy_labels:
            grades = {
                case.id: membership(mf, float(case.values[attr.name]))
                for case in dataset
                if case.values.get(attr.name) is not None
            }
            event = FuzzyEvent(attribute=attr.name, label=label, grades=grades)
            try:
                choice = optimal_alpha(event, labels, grid, config.smoothing)
            except DegenerateEventError as exc:
                logger.warning("omitting fuzzy label %s~%s: %s", attr.name, label, exc)
                continue
            descriptors.append(
                SymptomDescriptor(
                    attribute=attr.name, kind=KIND_FUZZY, value=label, alpha=choice.alpha
                )
            )
    descriptors.sort(key=lambda d: d.canonical_id)
    return descriptors


def _masked_candidates(
    matrix: _EventMatrix, config: MiningConfig
) -> Iterator[tuple[tuple[int, ...], np.ndarray, np.ndarray]]:
    """Yield (descriptor indices, event mask, completeness mask) level-wise.

    Indices are ascending within a group; levels are emitted in increasing
    group size, lexicographically within a level.
    """
    ms = config.min_support
    descs = matrix.descriptors
    level: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]] = []
    singles: list[int] = []
    for i in range(len(descs)):
        event = matrix.holds[i]
        if int(event.sum()) >= ms:
            entry = ((i,), event, matrix.observed[i])
            singles.append(i)
            level.append(entry)
            yield entry
    for _size in range(2, config.max_size + 1):
        frequent = {idx for idx, _, _ in level}
        next_level: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]] = []
        for idx, event, complete in level:
            attrs = {descs[i].attribute for i in idx}
            for j in singles:
                if j <= idx[-1] or descs[j].attribute in attrs:
                    continue
                candidate = idx + (j,)
                # all strict (size-1)-subsets must already be frequent
                if any(
                    candidate[:k] + candidate[k + 1 :] not in frequent
                    for k in range(len(candidate) - 1)
                ):
                    continue
                extended = event & matrix.holds[j]
                if int(extended.sum()) < ms:
                    continue
                entry = (candidate, extended, complete & matrix.observed[j])
                next_level.append(entry)
                yield entry
        level = next_level


def enumerate_candidates(
    dataset: Dataset,
    descriptors: Sequence[SymptomDescriptor],
    config: MiningConfig | None = None,
) -> Iterator[SymptomGroup]:
    """Stream every group of size <= max_size whose every non-empty subset
    has support >= min_support, in canonical order (size, then id)."""
    config = config or MiningConfig()
    matrix = _EventMatrix(dataset, descriptors, "surgical_lesion")
    for idx, _event, _complete in _masked_candidates(matrix, config):
        yield SymptomGroup(tuple(matrix.descriptors[i] for i in idx))


def mine(
    dataset: Dataset,
    hypothesis: str = "surgical_lesion",
    config: MiningConfig | None = None,
    shards: int = 1,
    prior_prevalence: float | None = None,
) -> KnowledgeBase:
    """Mine the dataset into a knowledge base of significant rules.

    The candidate stream may be partitioned across ``shards`` workers; the
    output is identical for any shard count.
    """
    config = config or MiningConfig()
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    descriptors = binarize_symptoms(dataset, hypothesis, config)
    matrix = _EventMatrix(dataset, descriptors, hypothesis)
    candidates = list(_masked_candidates(matrix, config))

    def work(chunk: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]]) -> list[MinedRule]:
        out = []
        for idx, event, complete in chunk:
            table = matrix.table(event, complete)
            est = estimate_weight(table, config.smoothing)
            if is_significant(est, config.z_crit):
                group = SymptomGroup(tuple(matrix.descriptors[i] for i in idx))
                out.append(MinedRule(group=group, estimate=est, table=table, significant=True))
        return out

    if shards == 1 or len(candidates) <= 1:
        shard_results = [work(candidates)]
    else:
        bounds = [round(i * len(candidates) / shards) for i in range(shards + 1)]
        chunks = [candidates[bounds[i] : bounds[i + 1]] for i in range(shards)]
        with ThreadPoolExecutor(max_workers=shards) as pool:
            shard_results = list(pool.map(work, chunks))
    rules = tuple(rule for chunk_rules in shard_results for rule in chunk_rules)

    labels = hypothesis_labels(dataset, hypothesis)
    if prior_prevalence is None:
        prior_prevalence = sum(labels.values()) / len(labels)
    prior = prior_log_odds(prior_prevalence)
    return KnowledgeBase(
        rules=rules,
        prior=prior,
        hypothesis=hypothesis,
        config=config,
        schema_digest=schema_digest(dataset.schema),
    )


# --- persistence ---------------------------------------------------------


def _format_number(x: object) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    v = float(x)
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def _emit(value: object, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {_emit(v, indent + 1)}' for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}  {_emit(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    return _format_number(value)


def _descriptor_doc(d: SymptomDescriptor) -> dict:
    if d.kind == KIND_EQUALS:
        return {"attribute": d.attribute, "equals": d.value}
    return {"attribute": d.attribute, "label": d.value, "alpha": d.alpha}


def save_kb(kb: KnowledgeBase) -> str:
    """Serialize a knowledge base to its JSON text format.

    Floats are written with 17 significant digits, so the round trip through
    ``load_kb`` is lossless and re-saving is byte-identical.
    """
    doc = {
        "format": KB_FORMAT,
        "hypothesis": kb.hypothesis,
        "schema_digest": kb.schema_digest,
        "prior": {"prevalence": kb.prior.prevalence, "log_odds": kb.prior.log_odds},
        "config": {
            "max_size": kb.config.max_size,
            "min_support": kb.config.min_support,
            "z_crit": kb.config.z_crit,
            "smoothing": kb.config.smoothing,
            "alpha_step": kb.config.alpha_step,
            "score_weights": list(kb.config.score_weights),
        },
        "rules": [
            {
                "group": [_descriptor_doc(d) for d in rule.group],
                "a": rule.table.a,
                "b": rule.table.b,
                "c": rule.table.c,
                "d": rule.table.d,
                "n_excluded": rule.table.n_excluded,
                "w": rule.estimate.w,
                "se": rule.estimate.se,
                "z": rule.estimate.z,
            }
            for rule in kb.rules
        ],
    }
    return _emit(doc, 0) + "\n"


def _require(doc: dict, key: str, context: str) -> object:
    if key not in doc:
        raise ParseError(f"knowledge base {context}: missing field {key!r}")
    return doc[key]


def _int_field(doc: dict, key: str, context: str) -> int:
    v = _require(doc, key, context)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"knowledge base {context}: field {key!r} must be an integer")
    return v


def _float_field(doc: dict, key: str, context: str) -> float:
    v = _require(doc, key, context)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"knowledge base {context}: field {key!r} must be a number")
    return float(v)


def load_kb(text: str) -> KnowledgeBase:
    """Parse the JSON knowledge-base format; inverse of ``save_kb``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"knowledge base parse error at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("format") != KB_FORMAT:
        raise ParseError(f"not a {KB_FORMAT} file")
    cfg_doc = _require(doc, "config", "config")
    if not isinstance(cfg_doc, dict):
        raise ParseError("knowledge base config: must be an object")
    sw = _require(cfg_doc, "score_weights", "config")
    if not isinstance(sw, list) or len(sw) != 3:
        raise ParseError("knowledge base config: score_weights must be a 3-element array")
    config = MiningConfig(
        max_size=_int_field(cfg_doc, "max_size", "config"),
        min_support=_int_field(cfg_doc, "min_support", "config"),
        z_crit=_float_field(cfg_doc, "z_crit", "config"),
        smoothing=_float_field(cfg_doc, "smoothing", "config"),
        alpha_step=_float_field(cfg_doc, "alpha_step", "config"),
        score_weights=tuple(float(x) for x in sw),
    )
    prior_doc = _require(doc, "prior", "prior")
    if not isinstance(prior_doc, dict):
        raise ParseError("knowledge base prior: must be an object")
    prior = prior_log_odds(_float_field(prior_doc, "prevalence", "prior"))
    rules = []
    rules_doc = _require(doc, "rules", "rules")
    if not isinstance(rules_doc, list):
        raise ParseError("knowledge base rules: must be an array")
    for i, rule_doc in enumerate(rules_doc):
        context = f"rule {i}"
        group_doc = _require(rule_doc, "group", context)
        if not isinstance(group_doc, list) or not group_doc:
            raise ParseError(f"knowledge base {context}: group must be a non-empty array")
        descriptors = []
        for d in group_doc:
            if not isinstance(d, dict) or "attribute" not in d:
                raise ParseError(f"knowledge base {context}: malformed descriptor")
            if "equals" in d:
                descriptors.append(
                    SymptomDescriptor(
                        attribute=str(d["attribute"]), kind=KIND_EQUALS, value=str(d["equals"])
                    )
                )
            elif "label" in d and "alpha" in d:
                descriptors.append(
                    SymptomDescriptor(
                        attribute=str(d["attribute"]),
                        kind=KIND_FUZZY,
                        value=str(d["label"]),
                        alpha=float(d["alpha"]),
                    )
                )
            else:
                raise ParseError(
                    f"knowledge base {context}: descriptor needs 'equals' or 'label'+'alpha'"
                )
        table = ContingencyTable(
            a=_int_field(rule_doc, "a", context),
            b=_int_field(rule_doc, "b", context),
            c=_int_field(rule_doc, "c", context),
            d=_int_field(rule_doc, "d", context),
            n_excluded=_int_field(rule_doc, "n_excluded", context),
        )
        est = WeightEstimate(
            w=_float_field(rule_doc, "w", context),
            se=_float_field(rule_doc, "se", context),
            z=_float_field(rule_doc, "z", context),
            smoothing=config.smoothing,
        )
        rules.append(
            MinedRule(
                group=SymptomGroup(tuple(descriptors)),
                estimate=est,
                table=table,
                significant=is_significant(est, config.z_crit),
            )
        )
    return KnowledgeBase(
        rules=tuple(rules),
        prior=prior,
        hypothesis=str(_require(doc, "hypothesis", "header")),
        config=config,
        schema_digest=str(_require(doc, "schema_digest", "header")),
    )
