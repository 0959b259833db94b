"""Fixed-coefficient logistic baseline and predictive-value evaluation.

The baseline scores a case from three inputs (an indicator for a distended
large intestine or firm feces, the pulse, and an ordinal distension level)
using published coefficients; it is a comparison yardstick, not a fitted
model. The evaluation harness tallies any case -> probability scorer into
a confusion matrix and the derived predictive values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .data import Case, Dataset

__all__ = [
    "LogisticModel",
    "Metrics",
    "logistic_score",
    "evaluate",
    "ColicLogisticInputs",
    "logistic_predictor",
]


@dataclass(frozen=True)
class LogisticModel:
    """Published regression coefficients; natural log throughout."""

    intercept: float = 7.86
    coef_a2: float = -1.73
    coef_ln_pulse: float = -1.54
    coef_distension: float = -0.498


def logistic_score(
    a2: int,
    pulse: float,
    distension: float,
    model: LogisticModel = LogisticModel(),
) -> tuple[float, float]:
    """Linear score Y and its back-transformed probability e^Y/(1+e^Y)."""
    if pulse <= 0:
        raise ValueError(f"pulse must be > 0 beats/min, got {pulse}")
    if a2 not in (0, 1):
        raise ValueError(f"a2 must be the indicator 0 or 1, got {a2}")
    if not 0 <= distension <= 3:
        raise ValueError(f"distension must lie in 0..3, got {distension}")
    y = (
        model.intercept
        + model.coef_a2 * a2
        + model.coef_ln_pulse * math.log(pulse)
        + model.coef_distension * distension
    )
    if y >= 0:
        p = 1.0 / (1.0 + math.exp(-y))
    else:
        e = math.exp(y)
        p = e / (1.0 + e)
    return y, p


@dataclass(frozen=True)
class Metrics:
    """Confusion counts plus the derived rates; undefined rates are None."""

    tp: int
    fp: int
    tn: int
    fn: int
    n_unscored: int

    @staticmethod
    def _rate(num: int, den: int) -> Optional[float]:
        return num / den if den > 0 else None

    @property
    def npv(self) -> Optional[float]:
        return self._rate(self.tn, self.tn + self.fn)

    @property
    def ppv(self) -> Optional[float]:
        return self._rate(self.tp, self.tp + self.fp)

    @property
    def sensitivity(self) -> Optional[float]:
        return self._rate(self.tp, self.tp + self.fn)

    @property
    def specificity(self) -> Optional[float]:
        return self._rate(self.tn, self.tn + self.fp)

    @property
    def n_scored(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def evaluate(
    predictor: Callable[[Case], Optional[float]],
    dataset: Dataset,
    threshold: float = 0.5,
    hypothesis: str = "surgical_lesion",
) -> Metrics:
    """Score every case and tally the confusion matrix at ``threshold``.

    A case enters the matrix only when the predictor returns a probability
    and the hypothesis label is recorded; all other cases are counted in
    n_unscored. Predicted positive means p >= threshold.
    """
    tp = fp = tn = fn = unscored = 0
    for case in dataset:
        label = case.outcome_label(hypothesis)
        p = predictor(case)
        if label is None or p is None:
            unscored += 1
            continue
        predicted = p >= threshold
        if predicted and label:
            tp += 1
        elif predicted:
            fp += 1
        elif label:
            fn += 1
        else:
            tn += 1
    if tp + fp + tn + fn == 0:
        raise ValueError("no scorable cases: every case lacks a label or a prediction")
    return Metrics(tp=tp, fp=fp, tn=tn, fn=fn, n_unscored=unscored)


@dataclass(frozen=True)
class ColicLogisticInputs:
    """How to read the baseline's three inputs out of a case.

    The attribute names and the label -> number mappings are configuration;
    the defaults match the schema shipped with the package.
    """

    pulse_attribute: str = "pulse"
    distension_attribute: str = "abdominal_distension"
    distension_levels: Mapping[str, float] = field(
        default_factory=lambda: {"none": 0.0, "slight": 1.0, "moderate": 2.0, "severe": 3.0}
    )
    a2_attribute: str = "abdomen"
    a2_positive_values: tuple[str, ...] = (
        "distended_large_intestine",
        "firm_feces_large_intestine",
    )

    def extract(self, case: Case) -> Optional[tuple[int, float, float]]:
        """(a2, pulse, distension) for the case, or None if any is missing."""
        pulse = case.values.get(self.pulse_attribute)
        distension_label = case.values.get(self.distension_attribute)
        abdomen = case.values.get(self.a2_attribute)
        if pulse is None or distension_label is None or abdomen is None:
            return None
        distension = self.distension_levels.get(str(distension_label))
        if distension is None:
            return None
        return (1 if str(abdomen) in self.a2_positive_values else 0, float(pulse), distension)


def logistic_predictor(
    model: LogisticModel = LogisticModel(),
    inputs: ColicLogisticInputs = ColicLogisticInputs(),
) -> Callable[[Case], Optional[float]]:
    """Adapt the logistic baseline into a case -> probability scorer.

    Cases missing any of the three inputs are left unscored.
    """

    def predict(case: Case) -> Optional[float]:
        extracted = inputs.extract(case)
        if extracted is None:
            return None
        a2, pulse, distension = extracted
        if pulse <= 0:
            return None
        _y, p = logistic_score(a2, pulse, distension, model)
        return p

    return predict
