"""Shared test utilities: synthetic datasets and a brute-force mining oracle.

The oracle enumerates candidate groups with itertools and counts support and
contingency cells with plain per-case loops, independently of the library's
level-wise enumeration and mask algebra.
"""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from woediag import (
    Attribute,
    Case,
    Dataset,
    MembershipFunction,
    Schema,
    SymptomDescriptor,
)

CAT_VALUES = ["low", "mid", "high"]


def make_schema(n_cat: int = 4, values_per: int = 3, fuzzy_labels: int = 0) -> Schema:
    attrs = [
        Attribute(name=f"cat{i}", kind="categorical", values=tuple(CAT_VALUES[:values_per]))
        for i in range(n_cat)
    ]
    if fuzzy_labels:
        labels = [("raised", MembershipFunction(((30.0, 0.0), (70.0, 1.0))))]
        if fuzzy_labels > 1:
            labels.append(("depressed", MembershipFunction(((20.0, 1.0), (50.0, 0.0)))))
        attrs.append(
            Attribute(name="meas", kind="continuous", unit="u", fuzzy_labels=tuple(labels[:fuzzy_labels]))
        )
    return Schema(tuple(attrs))


def make_dataset(
    schema: Schema,
    n_cases: int,
    rng: random.Random,
    missing_rate: float = 0.1,
    signal: float = 1.5,
    label_missing_rate: float = 0.0,
) -> Dataset:
    """Random dataset whose label leans on the first categorical attribute.

    ``signal`` is the log-odds bump applied when that attribute takes its
    last value; 0 gives labels independent of every attribute.
    """
    cases = []
    cat_attrs = [a for a in schema if a.kind == "categorical"]
    cont_attrs = [a for a in schema if a.kind == "continuous"]
    for i in range(n_cases):
        values: dict[str, object] = {}
        bump = 0.0
        for attr in cat_attrs:
            if rng.random() < missing_rate:
                values[attr.name] = None
                continue
            v = rng.choice(attr.values)
            values[attr.name] = v
            if attr is cat_attrs[0] and v == attr.values[-1]:
                bump = signal
        for attr in cont_attrs:
            if rng.random() < missing_rate:
                values[attr.name] = None
                continue
            x = rng.gauss(50.0, 18.0)
            values[attr.name] = round(x, 2)
            if x > 60.0:
                bump += signal / 2.0
        p = 1.0 / (1.0 + math.exp(-bump))
        label: bool | None = rng.random() < p
        if rng.random() < label_missing_rate:
            label = None
        cases.append(Case(id=f"c{i:05d}", values=values, surgical_lesion=label))
    return Dataset(schema=schema, cases=tuple(cases))


# --- oracle ---------------------------------------------------------------


def oracle_membership(breakpoints, value: float) -> float:
    xs = [x for x, _ in breakpoints]
    gs = [g for _, g in breakpoints]
    return float(np.interp(value, xs, gs))


def oracle_holds(case: Case, d: SymptomDescriptor, schema: Schema) -> bool:
    v = case.values.get(d.attribute)
    if v is None:
        return False
    if d.kind == "equals":
        return v == d.value
    mf = schema[d.attribute].fuzzy_label(d.value)
    return oracle_membership(mf.breakpoints, float(v)) >= d.alpha


def oracle_support(dataset: Dataset, descs) -> int:
    return sum(
        1
        for case in dataset
        if all(oracle_holds(case, d, dataset.schema) for d in descs)
    )


def oracle_table(dataset: Dataset, descs, hypothesis: str = "surgical_lesion"):
    a = b = c = d_ = excluded = 0
    for case in dataset:
        label = getattr(case, hypothesis)
        if label is None or any(case.values.get(x.attribute) is None for x in descs):
            excluded += 1
            continue
        e = all(oracle_holds(case, x, dataset.schema) for x in descs)
        if e and label:
            a += 1
        elif not e and label:
            b += 1
        elif e:
            c += 1
        else:
            d_ += 1
    return a, b, c, d_, excluded


def oracle_weight(a: int, b: int, c: int, d: int, s: float):
    w = math.log((a + s) / (a + b + 2 * s)) - math.log((c + s) / (c + d + 2 * s))
    term_h = 1.0 / (a + s) - 1.0 / (a + b + 2 * s)
    term_nh = 1.0 / (c + s) - 1.0 / (c + d + 2 * s)
    se = math.sqrt(max(term_h + term_nh, 0.0))
    if se > 0.0:
        z = w / se
    else:
        z = 0.0 if w == 0.0 else math.copysign(math.inf, w)
    return w, se, z


def oracle_candidates(dataset: Dataset, descriptors, max_size: int, min_support: int):
    """Every group of size <= max_size, attribute-distinct, whose every
    non-empty subset has support >= min_support (checked literally)."""
    descs = sorted(descriptors, key=lambda d: d.canonical_id)
    out = []
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(descs, size):
            attrs = [d.attribute for d in combo]
            if len(set(attrs)) != len(attrs):
                continue
            if all(
                oracle_support(dataset, sub) >= min_support
                for k in range(1, size + 1)
                for sub in itertools.combinations(combo, k)
            ):
                out.append(combo)
    return out


def oracle_mine(dataset: Dataset, descriptors, config, hypothesis: str = "surgical_lesion"):
    """(group key, table, w, se, z) for each oracle candidate passing |z| >= z_crit."""
    rows = []
    for combo in oracle_candidates(dataset, descriptors, config.max_size, config.min_support):
        a, b, c, d_, excl = oracle_table(dataset, combo, hypothesis)
        w, se, z = oracle_weight(a, b, c, d_, config.smoothing)
        if abs(z) >= config.z_crit:
            key = tuple(d.canonical_id for d in combo)
            rows.append((key, (a, b, c, d_, excl), w, se, z))
    rows.sort(key=lambda r: r[0])
    return rows
