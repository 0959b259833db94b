"""Per-case inference: rule matching, disjoint selection, and the evidence ledger.

Matched rules may overlap on attributes; combining overlapping groups would
count the same finding more than once, so a greedy pass selects an
attribute-disjoint subset by a size/weight/error score before the weights
are summed onto the prior.
"""

from __future__ import annotations

from dataclasses import dataclass

from .data import Case, Schema, schema_digest
from .errors import SchemaDigestError
from .evidence import to_probability
from .mining import KnowledgeBase, MinedRule

__all__ = [
    "CaseEvidence",
    "EvidenceReport",
    "match_rules",
    "case_evidence",
    "group_score",
    "select_disjoint",
    "infer",
    "render_report",
    "report_document",
    "kb_predictor",
]


@dataclass(frozen=True)
class CaseEvidence:
    """Rules applicable to one case and the disjoint subset actually used."""

    matched: tuple[MinedRule, ...]
    selected: tuple[MinedRule, ...]
    unmatched_missing: tuple[str, ...]

    def __post_init__(self) -> None:
        matched_ids = {id(r) for r in self.matched}
        if any(id(r) not in matched_ids for r in self.selected):
            raise ValueError("selected rules must be a subset of the matched rules")
        seen: set[str] = set()
        for rule in self.selected:
            if rule.group.attributes & seen:
                raise ValueError("selected rules overlap on an attribute")
            seen |= rule.group.attributes


@dataclass(frozen=True)
class EvidenceReport:
    """The auditable ledger for one prediction."""

    case_id: str
    rows: tuple[tuple[str, float], ...]  # (group description, w), sorted by w desc
    prior: float
    weight_sum: float
    posterior: float
    probability: float
    mode: str
    hypothesis: str
    unmatched_missing: tuple[str, ...] = ()


def _check_digest(schema: Schema, kb: KnowledgeBase) -> None:
    digest = schema_digest(schema)
    if digest != kb.schema_digest:
        raise SchemaDigestError(
            f"schema digest {digest} does not match the knowledge base's {kb.schema_digest}"
        )


def _match(case: Case, kb: KnowledgeBase, schema: Schema) -> tuple[list[MinedRule], list[str]]:
    matched: list[MinedRule] = []
    missing: set[str] = set()
    for rule in kb.rules:
        blocked = [d.attribute for d in rule.group if not d.observed(case)]
        if blocked:
            missing.update(blocked)
            continue
        if rule.group.holds(case, schema):
            matched.append(rule)
    return matched, sorted(missing)


def match_rules(case: Case, kb: KnowledgeBase, schema: Schema) -> list[MinedRule]:
    """All rules whose every descriptor holds for the case.

    A rule touching any missing attribute never matches. The schema must be
    the one the knowledge base was mined against.
    """
    _check_digest(schema, kb)
    matched, _missing = _match(case, kb, schema)
    return matched


def case_evidence(
    case: Case,
    kb: KnowledgeBase,
    schema: Schema,
    score_weights: tuple[float, float, float] | None = None,
) -> CaseEvidence:
    """Match the knowledge base against a case and select the disjoint subset."""
    _check_digest(schema, kb)
    matched, missing = _match(case, kb, schema)
    weights = score_weights if score_weights is not None else kb.config.score_weights
    selected = select_disjoint(matched, weights)
    return CaseEvidence(
        matched=tuple(matched), selected=tuple(selected), unmatched_missing=tuple(missing)
    )


def group_score(rule: MinedRule, score_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)) -> float:
    """Selection score: w_size*|group| + w_weight*|w| - w_error*se."""
    w_size, w_weight, w_error = score_weights
    return w_size * len(rule.group) + w_weight * abs(rule.estimate.w) - w_error * rule.estimate.se


def select_disjoint(
    matched: list[MinedRule] | tuple[MinedRule, ...],
    score_weights: tuple[float, float, float] = (1.0, 1.0, 1.0),
) -> list[MinedRule]:
    """Greedy attribute-disjoint selection, best score first.

    Ties are broken by canonical group id, so selection is deterministic.
    """
    ranked = sorted(
        matched, key=lambda r: (-group_score(r, score_weights), r.group.canonical_id)
    )
    selected: list[MinedRule] = []
    used: set[str] = set()
    for rule in ranked:
        attrs = rule.group.attributes
        if attrs & used:
            continue
        selected.append(rule)
        used |= attrs
    return selected


def infer(
    case: Case,
    kb: KnowledgeBase,
    schema: Schema,
    mode: str = "canonical",
    score_weights: tuple[float, float, float] | None = None,
) -> EvidenceReport:
    """Produce the evidence ledger for one case."""
    evidence = case_evidence(case, kb, schema, score_weights)
    # canonical (ascending) summation order, matching evidence.combine
    weight_sum = 0.0
    for w in sorted(r.estimate.w for r in evidence.selected):
        weight_sum += w
    posterior = kb.prior.log_odds + weight_sum
    rows = tuple(
        sorted(
            ((r.group.describe(), r.estimate.w) for r in evidence.selected),
            key=lambda row: (-row[1], row[0]),
        )
    )
    return EvidenceReport(
        case_id=case.id,
        rows=rows,
        prior=kb.prior.log_odds,
        weight_sum=weight_sum,
        posterior=posterior,
        probability=to_probability(posterior, mode),
        mode=mode,
        hypothesis=kb.hypothesis,
        unmatched_missing=evidence.unmatched_missing,
    )


def render_report(report: EvidenceReport) -> str:
    """Render the ledger: favor/against sections, then the odds arithmetic."""
    lines = [f"Case {report.case_id}: evidence for hypothesis '{report.hypothesis}'"]
    favor = [(desc, w) for desc, w in report.rows if w > 0]
    against = [(desc, w) for desc, w in report.rows if w < 0]
    width = max((len(desc) for desc, _ in report.rows), default=20)
    lines.append("")
    lines.append(f"Evidence in favor of {report.hypothesis}:")
    if favor:
        lines.extend(f"  {desc.ljust(width)}  {w:8.3f}" for desc, w in favor)
    else:
        lines.append("  (none)")
    lines.append(f"Evidence against {report.hypothesis}:")
    if against:
        lines.extend(f"  {desc.ljust(width)}  {w:8.3f}" for desc, w in against)
    else:
        lines.append("  (none)")
    if report.unmatched_missing:
        lines.append("")
        lines.append(
            "Rules skipped for missing attributes: " + ", ".join(report.unmatched_missing)
        )
    lines.append("")
    lines.append(f"Prior log odds       {report.prior:8.3f}")
    lines.append(f"+ Sum of evidence    {report.weight_sum:8.3f}")
    lines.append(f"= Posterior log odds {report.posterior:8.3f}")
    lines.append(f"p({report.hypothesis}) = {report.probability:.3f}   [{report.mode} mode]")
    return "\n".join(lines) + "\n"


def report_document(report: EvidenceReport) -> dict:
    """Machine-readable form of the ledger (same fields as the text report)."""
    return {
        "case_id": report.case_id,
        "hypothesis": report.hypothesis,
        "rows": [{"group": desc, "w": w} for desc, w in report.rows],
        "prior": report.prior,
        "weight_sum": report.weight_sum,
        "posterior": report.posterior,
        "probability": report.probability,
        "mode": report.mode,
        "unmatched_missing": list(report.unmatched_missing),
    }


def kb_predictor(kb: KnowledgeBase, schema: Schema, mode: str = "canonical"):
    """Adapt a knowledge base into a case -> probability scorer."""

    def predict(case: Case) -> float:
        return infer(case, kb, schema, mode=mode).probability

    return predict
