"""Fuzzy clinical events: membership functions, alpha cuts, and event probabilities.

A fuzzy event grades each observed case in [0,1]. It is turned into a crisp
event by a strong alpha-level cut (grade >= alpha); the alpha used downstream
is the one that maximizes the absolute weight of evidence the cut provides
for the hypothesis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegenerateEventError
from .evidence import ContingencyTable, estimate_weight

__all__ = [
    "MembershipFunction",
    "FuzzyEvent",
    "AlphaChoice",
    "default_alpha_grid",
    "alpha_cut",
    "zadeh_probability",
    "yager_probability",
    "optimal_alpha",
]

PROBABILITY_SUM_TOL = 1e-9


@dataclass(frozen=True)
class MembershipFunction:
    """Piecewise-linear membership curve over an attribute's value axis.

    Defined by breakpoints (x, grade); evaluation interpolates linearly
    between breakpoints and clamps to the end grades outside their range.
    """

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.breakpoints:
            raise ValueError("membership function needs at least one breakpoint")
        xs = [x for x, _ in self.breakpoints]
        if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError(f"breakpoint x values must be strictly increasing, got {xs}")
        for x, g in self.breakpoints:
            if not 0.0 <= g <= 1.0:
                raise ValueError(f"grade at x={x} must lie in [0,1], got {g}")

    def __call__(self, value: float) -> float:
        return membership(self, value)


def membership(mf: MembershipFunction, value: float) -> float:
    """Grade of ``value`` under ``mf``; exact at breakpoints, linear between."""
    pts = mf.breakpoints
    if value <= pts[0][0]:
        return pts[0][1]
    if value >= pts[-1][0]:
        return pts[-1][1]
    for (x1, g1), (x2, g2) in zip(pts, pts[1:]):
        if x1 <= value <= x2:
            if value == x1:
                return g1
            if value == x2:
                return g2
            return g1 + (g2 - g1) * (value - x1) / (x2 - x1)
    raise AssertionError("unreachable: value inside breakpoint range not bracketed")


@dataclass(frozen=True)
class FuzzyEvent:
    """A linguistic symptom with per-case grades.

    ``grades`` maps case id -> grade in [0,1] and contains only cases where
    the underlying attribute was observed.
    """

    attribute: str
    label: str
    grades: Mapping[str, float]

    def __post_init__(self) -> None:
        for case_id, g in self.grades.items():
            if not 0.0 <= g <= 1.0:
                raise ValueError(f"grade for case {case_id!r} must lie in [0,1], got {g}")


@dataclass(frozen=True)
class AlphaChoice:
    """The alpha level selected for an event, with the weight it achieves."""

    alpha: float
    weight_at_alpha: float
    subset_size: int

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0,1], got {self.alpha}")


def default_alpha_grid(step: float = 0.01) -> tuple[float, ...]:
    """Alpha grid step, 2*step, ..., up to 1.0; zero is excluded because a
    >=0 cut at alpha=0 is vacuous."""
    if not 0.0 < step <= 1.0:
        raise ValueError(f"alpha step must lie in (0,1], got {step}")
    n = int(math.floor(1.0 / step + 1e-9))
    grid = [round(i * step, 12) for i in range(1, n + 1)]
    if grid[-1] > 1.0:
        grid.pop()
    return tuple(grid)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0,1], got {alpha}")


def alpha_cut(event: FuzzyEvent, alpha: float) -> set[str]:
    """Strong alpha-level cut: the case ids with grade >= alpha."""
    _check_alpha(alpha)
    return {case_id for case_id, g in event.grades.items() if g >= alpha}


def _check_probabilities(event: FuzzyEvent, case_probabilities: Mapping[str, float]) -> None:
    total = math.fsum(case_probabilities.get(case_id, 0.0) for case_id in event.grades)
    if abs(total - 1.0) > PROBABILITY_SUM_TOL:
        raise ValueError(
            f"case probabilities must sum to 1 over the event's cases, got {total!r}"
        )


def zadeh_probability(event: FuzzyEvent, case_probabilities: Mapping[str, float]) -> float:
    """Expected membership grade of the event: sum of grade(x) * p(x).

    A scalar in [0,1]; for a crisp event this reduces to the ordinary
    probability of the cut.
    """
    _check_probabilities(event, case_probabilities)
    return math.fsum(
        g * case_probabilities.get(case_id, 0.0) for case_id, g in event.grades.items()
    )


def yager_probability(
    event: FuzzyEvent,
    alpha_grid: Sequence[float],
    case_probabilities: Mapping[str, float],
) -> list[tuple[float, float]]:
    """Probability of the event as a family over alpha: P(cut at alpha).

    Returns (alpha, P) pairs along the grid; P is non-increasing in alpha
    because cuts shrink as alpha grows.
    """
    if not alpha_grid:
        raise ValueError("alpha grid must be non-empty")
    for a in alpha_grid:
        _check_alpha(a)
    if any(a2 <= a1 for a1, a2 in zip(alpha_grid, alpha_grid[1:])):
        raise ValueError(f"alpha grid must be strictly increasing, got {list(alpha_grid)}")
    _check_probabilities(event, case_probabilities)
    out: list[tuple[float, float]] = []
    for a in alpha_grid:
        cut = alpha_cut(event, a)
        out.append((a, math.fsum(case_probabilities.get(case_id, 0.0) for case_id in cut)))
    return out


def optimal_alpha(
    event: FuzzyEvent,
    hypothesis_labels: Mapping[str, bool],
    grid: Iterable[float] | None = None,
    smoothing: float = 0.5,
) -> AlphaChoice:
    """Pick the grid alpha whose cut carries the most evidence about H.

    Each admissible alpha (cut neither empty nor the whole graded set) is
    scored by |w| of the cut's 2x2 table against the hypothesis labels,
    estimated with ``smoothing``; the maximizing alpha is returned, ties
    broken toward the smallest alpha. Graded cases without a hypothesis
    label are excluded from the table (and counted in its n_excluded).
    """
    grid = tuple(grid) if grid is not None else default_alpha_grid()
    for a in grid:
        _check_alpha(a)
    ids = sorted(event.grades)
    if not ids:
        raise DegenerateEventError(
            f"degenerate fuzzy event {event.attribute}:{event.label}: no graded cases"
        )
    grades = np.array([event.grades[i] for i in ids], dtype=float)
    labeled = np.array([i in hypothesis_labels for i in ids], dtype=bool)
    positive = np.array([bool(hypothesis_labels.get(i, False)) for i in ids], dtype=bool)
    n_pos = int((labeled & positive).sum())
    n_neg = int((labeled & ~positive).sum())
    if n_pos == 0 or n_neg == 0:
        raise DegenerateEventError(
            f"degenerate fuzzy event {event.attribute}:{event.label}: "
            "needs at least one positive and one negative labeled case"
        )
    n_unlabeled = int((~labeled).sum())

    best: AlphaChoice | None = None
    for alpha in grid:
        cut = grades >= alpha
        size = int(cut.sum())
        if size == 0 or size == len(ids):
            continue
        a = int((cut & labeled & positive).sum())
        c = int((cut & labeled & ~positive).sum())
        table = ContingencyTable(a, n_pos - a, c, n_neg - c, n_excluded=n_unlabeled)
        est = estimate_weight(table, smoothing)
        if best is None or abs(est.w) > abs(best.weight_at_alpha):
            best = AlphaChoice(alpha=alpha, weight_at_alpha=est.w, subset_size=size)
    if best is None:
        raise DegenerateEventError(
            f"degenerate fuzzy event {event.attribute}:{event.label}: "
            "every grid alpha yields an empty or universal cut"
        )
    return best
