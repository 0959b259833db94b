"""Crisp symptom descriptors, symptom groups, and their contingency tables.

A descriptor binarizes one attribute: exact value match for categoricals,
membership grade >= alpha for a fuzzy label on a continuous attribute. A
group is a conjunction of up to a few descriptors on distinct attributes,
treated as one evidential event.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .data import Case, Dataset, Schema
from .errors import SchemaValidationError
from .evidence import ContingencyTable
from .fuzzy import membership

__all__ = ["SymptomDescriptor", "SymptomGroup", "build_table", "hypothesis_labels"]

KIND_EQUALS = "equals"
KIND_FUZZY = "fuzzy"


@dataclass(frozen=True, order=True)
class SymptomDescriptor:
    """A single crisp test on one attribute."""

    attribute: str
    kind: str  # KIND_EQUALS | KIND_FUZZY
    value: str = ""  # categorical value, or fuzzy label
    alpha: float = 0.0  # cut level, fuzzy only

    def __post_init__(self) -> None:
        if self.kind not in (KIND_EQUALS, KIND_FUZZY):
            raise ValueError(f"unknown descriptor kind {self.kind!r}")
        if self.kind == KIND_FUZZY and not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"fuzzy descriptor alpha must lie in (0,1], got {self.alpha}")

    @property
    def canonical_id(self) -> tuple:
        return (self.attribute, self.kind, self.value, self.alpha)

    def describe(self) -> str:
        if self.kind == KIND_EQUALS:
            return f"{self.attribute}={self.value}"
        return f"{self.attribute}~{self.value}@{self.alpha:g}"

    def validate_against(self, schema: Schema) -> None:
        attr = schema[self.attribute]
        if self.kind == KIND_EQUALS:
            if attr.kind != "categorical":
                raise SchemaValidationError(
                    f"descriptor {self.describe()}: attribute {self.attribute!r} is not categorical"
                )
            if self.value not in attr.values:
                raise SchemaValidationError(
                    f"descriptor {self.describe()}: value {self.value!r} not in schema value list"
                )
        else:
            attr.fuzzy_label(self.value)  # raises if absent or non-continuous

    def observed(self, case: Case) -> bool:
        return case.values.get(self.attribute) is not None

    def holds(self, case: Case, schema: Schema) -> bool:
        """True iff the attribute is observed and the test passes."""
        v = case.values.get(self.attribute)
        if v is None:
            return False
        if self.kind == KIND_EQUALS:
            return v == self.value
        mf = schema[self.attribute].fuzzy_label(self.value)
        return membership(mf, float(v)) >= self.alpha


@dataclass(frozen=True)
class SymptomGroup:
    """A conjunction of descriptors on pairwise-distinct attributes, kept in
    canonical order."""

    descriptors: tuple[SymptomDescriptor, ...]

    def __post_init__(self) -> None:
        if not self.descriptors:
            raise ValueError("symptom group cannot be empty")
        attrs = [d.attribute for d in self.descriptors]
        if len(set(attrs)) != len(attrs):
            raise ValueError(f"symptom group repeats an attribute: {attrs}")
        ordered = tuple(sorted(self.descriptors, key=lambda d: d.canonical_id))
        object.__setattr__(self, "descriptors", ordered)

    def __len__(self) -> int:
        return len(self.descriptors)

    def __iter__(self):
        return iter(self.descriptors)

    @property
    def canonical_id(self) -> tuple:
        return tuple(d.canonical_id for d in self.descriptors)

    @property
    def attributes(self) -> frozenset[str]:
        return frozenset(d.attribute for d in self.descriptors)

    def describe(self) -> str:
        return " & ".join(d.describe() for d in self.descriptors)

    def holds(self, case: Case, schema: Schema) -> bool:
        return all(d.holds(case, schema) for d in self.descriptors)

    def observed(self, case: Case) -> bool:
        return all(d.observed(case) for d in self.descriptors)


def hypothesis_labels(dataset: Dataset, hypothesis: str) -> dict[str, bool]:
    """Map case id -> boolean hypothesis label, over labeled cases only."""
    labels: dict[str, bool] = {}
    for case in dataset:
        value = case.outcome_label(hypothesis)
        if value is not None:
            labels[case.id] = value
    return labels


def build_table(
    dataset: Dataset,
    group: SymptomGroup | Iterable[SymptomDescriptor],
    hypothesis: str = "surgical_lesion",
) -> ContingencyTable:
    """Tally the group event against the hypothesis, case by case.

    A case counts toward the event iff every descriptor holds. Cases missing
    any group attribute, or missing the hypothesis label, are excluded from
    the counts and reported in n_excluded.
    """
    if not isinstance(group, SymptomGroup):
        group = SymptomGroup(tuple(group))
    for d in group:
        d.validate_against(dataset.schema)
    a = b = c = d_ = excluded = 0
    for case in dataset:
        label = case.outcome_label(hypothesis)
        if label is None or not group.observed(case):
            excluded += 1
            continue
        e = group.holds(case, dataset.schema)
        if e and label:
            a += 1
        elif not e and label:
            b += 1
        elif e:
            c += 1
        else:
            d_ += 1
    return ContingencyTable(a, b, c, d_, n_excluded=excluded)
