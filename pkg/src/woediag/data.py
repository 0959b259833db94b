"""Attribute schema, case records, and dataset ingestion.

Schemas are JSON (an array of attribute objects); cases are CSV with a
header row. The literal "?" marks a missing cell. Missing values are kept
at ingestion; each downstream estimate excludes only the cases incomplete
for the attributes that estimate needs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ParseError, SchemaValidationError
from .fuzzy import MembershipFunction

__all__ = [
    "MISSING_TOKEN",
    "OUTCOME_COLUMNS",
    "Attribute",
    "Schema",
    "Case",
    "Dataset",
    "parse_schema",
    "parse_cases",
    "render_cases",
    "render_schema",
    "complete_for",
    "schema_digest",
    "load_default_schema",
]

MISSING_TOKEN = "?"
ID_COLUMN = "id"
OUTCOME_COLUMNS = ("surgery_performed", "surgical_lesion", "outcome", "lesion_type")
BOOLEAN_OUTCOMES = ("surgery_performed", "surgical_lesion")
OUTCOME_VALUES = ("lived", "died", "euthanized")

_TRUE_TOKENS = {"yes", "true", "1"}
_FALSE_TOKENS = {"no", "false", "0"}


@dataclass(frozen=True)
class Attribute:
    """One clinical attribute: categorical with a closed value list, or
    continuous with a unit and optional fuzzy labels."""

    name: str
    kind: str  # "categorical" | "continuous"
    values: tuple[str, ...] = ()
    unit: str = ""
    fuzzy_labels: tuple[tuple[str, MembershipFunction], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("categorical", "continuous"):
            raise SchemaValidationError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if self.kind == "categorical":
            if not self.values:
                raise SchemaValidationError(f"attribute {self.name!r}: categorical value list is empty")
            if len(set(self.values)) != len(self.values):
                raise SchemaValidationError(f"attribute {self.name!r}: duplicate categorical values")
            if self.fuzzy_labels:
                raise SchemaValidationError(
                    f"attribute {self.name!r}: fuzzy labels are only allowed on continuous attributes"
                )
        else:
            if self.values:
                raise SchemaValidationError(f"attribute {self.name!r}: continuous attributes carry no value list")
            labels = [label for label, _ in self.fuzzy_labels]
            if len(set(labels)) != len(labels):
                raise SchemaValidationError(f"attribute {self.name!r}: duplicate fuzzy labels")

    def fuzzy_label(self, label: str) -> MembershipFunction:
        for name, mf in self.fuzzy_labels:
            if name == label:
                return mf
        raise SchemaValidationError(f"attribute {self.name!r} has no fuzzy label {label!r}")


@dataclass(frozen=True)
class Schema:
    """Ordered set of attributes, unique by name."""

    attributes: tuple[Attribute, ...]
    _by_name: dict[str, Attribute] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_name: dict[str, Attribute] = {}
        for attr in self.attributes:
            if attr.name in by_name:
                raise SchemaValidationError(f"duplicate attribute name {attr.name!r}")
            if attr.name == ID_COLUMN or attr.name in OUTCOME_COLUMNS:
                raise SchemaValidationError(f"attribute name {attr.name!r} is reserved")
            by_name[attr.name] = attr
        object.__setattr__(self, "_by_name", by_name)

    def __iter__(self):
        return iter(self.attributes)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> Attribute:
        try:
            return self._by_name[name]
        except KeyError:
            raise SchemaValidationError(f"unknown attribute {name!r}") from None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)


@dataclass(frozen=True)
class Case:
    """One patient: attribute values (None = missing) plus outcome labels."""

    id: str
    values: Mapping[str, object]
    surgery_performed: bool | None = None
    surgical_lesion: bool | None = None
    outcome: str | None = None
    lesion_type: str | None = None

    def outcome_label(self, hypothesis: str) -> bool | None:
        """Boolean hypothesis label, or None when it was not recorded."""
        if hypothesis not in BOOLEAN_OUTCOMES:
            raise SchemaValidationError(
                f"hypothesis must be one of {BOOLEAN_OUTCOMES}, got {hypothesis!r}"
            )
        return getattr(self, hypothesis)


@dataclass(frozen=True)
class Dataset:
    schema: Schema
    cases: tuple[Case, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for case in self.cases:
            if case.id in seen:
                raise SchemaValidationError(f"duplicate case id {case.id!r}")
            seen.add(case.id)

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)


def _parse_membership(attr_name: str, label: str, points: object) -> MembershipFunction:
    if not isinstance(points, list) or not points:
        raise SchemaValidationError(
            f"attribute {attr_name!r}, fuzzy label {label!r}: points must be a non-empty array"
        )
    breakpoints = []
    for pt in points:
        if not isinstance(pt, list) or len(pt) != 2:
            raise SchemaValidationError(
                f"attribute {attr_name!r}, fuzzy label {label!r}: each point must be [x, grade]"
            )
        breakpoints.append((float(pt[0]), float(pt[1])))
    try:
        return MembershipFunction(tuple(breakpoints))
    except ValueError as exc:
        raise SchemaValidationError(f"attribute {attr_name!r}, fuzzy label {label!r}: {exc}") from exc


def parse_schema(text: str) -> Schema:
    """Parse the JSON schema format into a validated Schema."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"schema parse error at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, list):
        raise ParseError("schema file must be a JSON array of attribute objects")
    attributes = []
    for i, entry in enumerate(doc):
        if not isinstance(entry, dict) or "name" not in entry or "kind" not in entry:
            raise ParseError(f"schema entry {i}: expected an object with 'name' and 'kind'")
        name = str(entry["name"])
        kind = str(entry["kind"])
        fuzzy = []
        for f in entry.get("fuzzy", []):
            if not isinstance(f, dict) or "label" not in f or "points" not in f:
                raise ParseError(f"schema entry {name!r}: fuzzy entries need 'label' and 'points'")
            fuzzy.append((str(f["label"]), _parse_membership(name, str(f["label"]), f["points"])))
        attributes.append(
            Attribute(
                name=name,
                kind=kind,
                values=tuple(str(v) for v in entry.get("values", [])),
                unit=str(entry.get("unit", "")),
                fuzzy_labels=tuple(fuzzy),
            )
        )
    return Schema(tuple(attributes))


def _parse_bool(token: str, row: int, column: str) -> bool:
    lowered = token.strip().lower()
    if lowered in _TRUE_TOKENS:
        return True
    if lowered in _FALSE_TOKENS:
        return False
    raise ParseError(f"row {row}, column {column!r}: expected yes/no, got {token!r}")


def parse_cases(text: str, schema: Schema) -> Dataset:
    """Parse case CSV against ``schema``.

    Header columns must be schema attributes, outcome columns, or "id".
    "?" cells become missing values; rows are never dropped for
    missingness. Categorical cells outside the schema's value list are an
    error naming the offending row and column.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("case file is empty") from None
    header = [h.strip() for h in header]
    known = set(schema.names) | set(OUTCOME_COLUMNS) | {ID_COLUMN}
    for column in header:
        if column not in known:
            raise ParseError(f"unknown column {column!r} in case file header")
    if len(set(header)) != len(header):
        raise ParseError("duplicate column in case file header")

    cases = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"row {row_no}: expected {len(header)} cells, got {len(row)}")
        cells = dict(zip(header, (cell.strip() for cell in row)))
        case_id = cells.get(ID_COLUMN, "") or f"case{row_no - 1:04d}"
        values: dict[str, object] = {}
        for name in schema.names:
            if name not in cells:
                continue
            token = cells[name]
            if token == MISSING_TOKEN or token == "":
                values[name] = None
                continue
            attr = schema[name]
            if attr.kind == "categorical":
                if token not in attr.values:
                    raise ParseError(
                        f"row {row_no}, column {name!r}: value {token!r} is not in the schema's value list"
                    )
                values[name] = token
            else:
                try:
                    values[name] = float(token)
                except ValueError:
                    raise ParseError(
                        f"row {row_no}, column {name!r}: expected a number, got {token!r}"
                    ) from None
        outcomes: dict[str, object] = {}
        for column in BOOLEAN_OUTCOMES:
            token = cells.get(column, MISSING_TOKEN)
            outcomes[column] = None if token in (MISSING_TOKEN, "") else _parse_bool(token, row_no, column)
        token = cells.get("outcome", MISSING_TOKEN)
        if token in (MISSING_TOKEN, ""):
            outcomes["outcome"] = None
        elif token in OUTCOME_VALUES:
            outcomes["outcome"] = token
        else:
            raise ParseError(
                f"row {row_no}, column 'outcome': expected one of {OUTCOME_VALUES}, got {token!r}"
            )
        token = cells.get("lesion_type", MISSING_TOKEN)
        outcomes["lesion_type"] = None if token in (MISSING_TOKEN, "") else token
        cases.append(Case(id=case_id, values=values, **outcomes))
    return Dataset(schema=schema, cases=tuple(cases))


def render_cases(dataset: Dataset) -> str:
    """Write a dataset back to the CSV case format (inverse of parse_cases)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [ID_COLUMN, *dataset.schema.names, *OUTCOME_COLUMNS]
    writer.writerow(header)
    for case in dataset.cases:
        row = [case.id]
        for name in dataset.schema.names:
            v = case.values.get(name)
            if v is None:
                row.append(MISSING_TOKEN)
            elif isinstance(v, float):
                row.append(repr(v))
            else:
                row.append(str(v))
        for column in BOOLEAN_OUTCOMES:
            v = getattr(case, column)
            row.append(MISSING_TOKEN if v is None else ("yes" if v else "no"))
        row.append(case.outcome if case.outcome is not None else MISSING_TOKEN)
        row.append(case.lesion_type if case.lesion_type is not None else MISSING_TOKEN)
        writer.writerow(row)
    return buf.getvalue()


def complete_for(case: Case, attrs: Iterable[str], schema: Schema) -> bool:
    """True iff every attribute in ``attrs`` is observed (non-missing) in the case."""
    for name in attrs:
        if name not in schema:
            raise SchemaValidationError(f"unknown attribute {name!r}")
        if case.values.get(name) is None:
            return False
    return True


def _schema_document(schema: Schema) -> list[dict]:
    doc = []
    for attr in schema.attributes:
        entry: dict[str, object] = {"name": attr.name, "kind": attr.kind}
        if attr.kind == "categorical":
            entry["values"] = list(attr.values)
        else:
            entry["unit"] = attr.unit
            if attr.fuzzy_labels:
                entry["fuzzy"] = [
                    {"label": label, "points": [[x, g] for x, g in mf.breakpoints]}
                    for label, mf in attr.fuzzy_labels
                ]
        doc.append(entry)
    return doc


def render_schema(schema: Schema) -> str:
    """Write a schema back to its JSON file format."""
    return json.dumps(_schema_document(schema), indent=2) + "\n"


def schema_digest(schema: Schema) -> str:
    """Content hash of the schema, stable under file-level whitespace changes."""
    canonical = json.dumps(_schema_document(schema), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_default_schema() -> Schema:
    """The equine-colic attribute schema shipped with the package.

    The attribute names, value lists, and membership breakpoints are a
    working clinical configuration, not ground truth; they can be replaced
    wholesale by any schema file.
    """
    from importlib import resources

    text = resources.files("woediag").joinpath("resources/colic_schema.json").read_text("utf-8")
    return parse_schema(text)
