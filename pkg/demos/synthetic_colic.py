"""Deterministic synthetic colic caseload over the shipped schema.

Surgical cases lean toward high pulse, marked distension, quiet gut sounds,
a distended intestine on palpation, and serosanguinous abdominal fluid;
medical cases lean the other way, with plenty of overlap. Several fields
(age class, mucous membranes, reflux pH) are deliberately uninformative,
and roughly a tenth of the clinical fields are missing, as they would be
on real admission records.
"""

from __future__ import annotations

import random

from woediag import Case, Dataset, load_default_schema


def _pick(rng, values, surgical_weights, medical_weights, lesion):
    return rng.choices(values, weights=surgical_weights if lesion else medical_weights)[0]


def generate_cases(n: int = 253, seed: int = 20260810, missing_rate: float = 0.1) -> Dataset:
    schema = load_default_schema()
    rng = random.Random(seed)
    cases = []
    for i in range(n):
        lesion = rng.random() < 0.62
        v: dict[str, object] = {}
        v["rectal_temperature"] = round(rng.gauss(38.4 if lesion else 38.1, 0.7), 1)
        v["pulse"] = round(max(20.0, rng.gauss(82.0 if lesion else 58.0, 20.0)), 0)
        v["respiratory_rate"] = round(max(6.0, rng.gauss(24.0 if lesion else 16.0, 8.0)), 0)
        v["extremity_temperature"] = _pick(
            rng, ["normal", "warm", "cool", "cold"], [3, 1, 4, 2], [6, 2, 2, 1], lesion
        )
        v["peripheral_pulse"] = _pick(
            rng, ["normal", "increased", "reduced", "absent"], [4, 1, 4, 1], [7, 2, 2, 0.5], lesion
        )
        v["mucous_membranes"] = _pick(
            rng,
            ["normal_pink", "bright_pink", "pale_pink", "pale_cyanotic", "bright_red", "dark_cyanotic"],
            [3, 2, 2, 1, 1, 1],
            [3, 2, 2, 1, 1, 1],
            lesion,
        )
        v["capillary_refill"] = _pick(rng, ["under_3s", "over_3s"], [5, 3], [7, 1], lesion)
        v["pain"] = _pick(
            rng,
            ["alert_no_pain", "depressed", "mild_intermittent", "severe_intermittent", "severe_continuous"],
            [1, 3, 2, 4, 3],
            [4, 2, 4, 1, 0.5],
            lesion,
        )
        v["peristalsis"] = _pick(
            rng, ["hypermotile", "normal", "hypomotile", "absent"], [0.5, 1, 5, 3], [2, 5, 3, 0.5], lesion
        )
        v["abdominal_distension"] = _pick(
            rng, ["none", "slight", "moderate", "severe"], [1, 2, 4, 3], [4, 4, 1.5, 0.5], lesion
        )
        v["nasogastric_reflux"] = _pick(
            rng, ["none", "slight", "significant"], [3, 3, 2], [6, 2, 0.5], lesion
        )
        v["reflux_amount"] = _pick(rng, ["none", "small", "large"], [4, 2, 2], [6, 2, 0.5], lesion)
        v["reflux_ph"] = round(rng.gauss(5.2, 1.0), 1)
        v["rectal_exam"] = _pick(
            rng, ["normal", "increased", "decreased", "absent"], [3, 1, 4, 2], [6, 2, 2, 0.5], lesion
        )
        v["abdomen"] = _pick(
            rng,
            ["normal", "other", "firm_feces_large_intestine", "distended_small_intestine", "distended_large_intestine"],
            [1, 1, 2, 3, 4],
            [4, 2, 3, 0.7, 0.7],
            lesion,
        )
        v["packed_cell_volume"] = round(rng.gauss(47.0 if lesion else 42.0, 7.0), 1)
        v["total_protein"] = round(rng.gauss(7.2 if lesion else 6.8, 0.9), 1)
        v["abdominocentesis_appearance"] = _pick(
            rng, ["clear", "cloudy", "serosanguinous"], [1.5, 3, 3], [5, 2, 0.7], lesion
        )
        v["abdominal_fluid_protein"] = round(max(0.1, rng.gauss(3.2 if lesion else 2.2, 1.1)), 1)
        v["age_class"] = "young" if rng.random() < 0.08 else "adult"
        for name in list(v):
            if rng.random() < missing_rate:
                v[name] = None
        surgery = lesion if rng.random() < 0.9 else not lesion
        outcome = rng.choices(
            ["lived", "died", "euthanized"],
            weights=[4, 2, 2] if lesion else [9, 1, 1],
        )[0]
        cases.append(
            Case(
                id=f"horse{i:04d}",
                values=v,
                surgery_performed=surgery,
                surgical_lesion=lesion,
                outcome=outcome,
                lesion_type=f"{rng.randint(1, 12)}{rng.randint(1, 4)}" if lesion else None,
            )
        )
    return Dataset(schema=schema, cases=tuple(cases))


if __name__ == "__main__":
    ds = generate_cases()
    n_lesion = sum(1 for c in ds if c.surgical_lesion)
    print(f"generated {len(ds)} cases, {n_lesion} with a surgical lesion")
