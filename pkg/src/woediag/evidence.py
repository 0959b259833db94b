"""Weight-of-evidence arithmetic on 2x2 contingency tables.

The central quantity is the log likelihood ratio of a crisp event E under a
binary hypothesis H:

    w = ln[ p(E|H) / p(E|not H) ]

estimated from a 2x2 table with optional additive smoothing, plus the
log-odds bookkeeping used to turn a prior and a list of such weights into a
posterior probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UndefinedWeightError

__all__ = [
    "ContingencyTable",
    "WeightEstimate",
    "PriorOdds",
    "estimate_weight",
    "is_significant",
    "prior_log_odds",
    "combine",
    "to_probability",
]

DEFAULT_SMOOTHING = 0.5
DEFAULT_Z_CRIT = 1.96


@dataclass(frozen=True)
class ContingencyTable:
    """Counts for (event, hypothesis): a=E&H, b=~E&H, c=E&~H, d=~E&~H.

    ``n_excluded`` counts cases dropped because an attribute required by the
    event, or the hypothesis label itself, was missing.
    """

    a: int
    b: int
    c: int
    d: int
    n_excluded: int = 0

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d", "n_excluded"):
            v = getattr(self, name)
            if not isinstance(v, (int,)) or isinstance(v, bool) or v < 0:
                raise ValueError(f"table cell {name} must be a count >= 0, got {v!r}")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    def swapped(self) -> "ContingencyTable":
        """Table for the negated hypothesis (rows exchanged)."""
        return ContingencyTable(self.c, self.d, self.a, self.b, self.n_excluded)


@dataclass(frozen=True)
class WeightEstimate:
    """A weight of evidence in natural-log-odds units with its standard error."""

    w: float
    se: float
    z: float
    smoothing: float


@dataclass(frozen=True)
class PriorOdds:
    prevalence: float
    log_odds: float


def estimate_weight(table: ContingencyTable, smoothing: float = DEFAULT_SMOOTHING) -> WeightEstimate:
    """Estimate w = ln[p(E|H)/p(E|~H)] from a 2x2 table.

    With additive smoothing ``s`` the two conditional event rates are
    estimated as (a+s)/(a+b+2s) and (c+s)/(c+d+2s); the standard error is the
    first-order (delta method) variance of the log of their ratio:

        se = sqrt( 1/(a+s) - 1/(a+b+2s) + 1/(c+s) - 1/(c+d+2s) )

    w is computed as a difference of logs so that exchanging the hypothesis
    rows negates it exactly.
    """
    if smoothing < 0:
        raise ValueError(f"smoothing must be >= 0, got {smoothing}")
    a, b, c, d = table.a, table.b, table.c, table.d
    s = float(smoothing)
    if s == 0.0:
        if a == 0 or c == 0 or a + b == 0 or c + d == 0:
            raise UndefinedWeightError(
                f"undefined weight: table ({a},{b},{c},{d}) has an empty cell and smoothing is 0"
            )
    elif table.n == 0:
        raise UndefinedWeightError("undefined weight: empty table")

    w = math.log((a + s) / (a + b + 2 * s)) - math.log((c + s) / (c + d + 2 * s))
    # The two per-row variance terms are kept separate so the sum, and hence
    # se, is bit-identical under a row swap.
    term_h = 1.0 / (a + s) - 1.0 / (a + b + 2 * s)
    term_nh = 1.0 / (c + s) - 1.0 / (c + d + 2 * s)
    se = math.sqrt(max(term_h + term_nh, 0.0))
    if se > 0.0:
        z = w / se
    else:
        z = 0.0 if w == 0.0 else math.copysign(math.inf, w)
    return WeightEstimate(w=w, se=se, z=z, smoothing=s)


def is_significant(est: WeightEstimate, z_crit: float = DEFAULT_Z_CRIT) -> bool:
    """Two-sided z-test at critical value ``z_crit``: true iff |z| >= z_crit."""
    if z_crit <= 0:
        raise ValueError(f"z_crit must be > 0, got {z_crit}")
    return abs(est.z) >= z_crit


def prior_log_odds(prevalence: float) -> PriorOdds:
    """Convert a hypothesis prevalence in (0,1) to natural prior log odds."""
    if not 0.0 < prevalence < 1.0:
        raise ValueError(f"prevalence must lie strictly inside (0,1), got {prevalence}")
    return PriorOdds(prevalence=prevalence, log_odds=math.log(prevalence / (1.0 - prevalence)))


def combine(prior: PriorOdds, weights: list[float]) -> float:
    """Posterior log odds: prior plus the weights summed in canonical order.

    Weights are sorted ascending before summation, so the result is invariant
    under permutation of the input list.
    """
    total = prior.log_odds
    for w in sorted(weights):
        total += w
    return total


def to_probability(log_odds: float, mode: str = "canonical") -> float:
    """Convert posterior log odds to a probability.

    ``canonical``: p = e^L / (1 + e^L).
    ``compat``: p = L / (1 + L), defined only for L > 0; this reproduces a
    reporting convention that reads the posterior value as plain odds.
    """
    if mode == "canonical":
        if log_odds >= 0:
            return 1.0 / (1.0 + math.exp(-log_odds))
        e = math.exp(log_odds)
        return e / (1.0 + e)
    if mode == "compat":
        if log_odds <= 0:
            raise ValueError(f"compat probability mode is undefined for log odds <= 0, got {log_odds}")
        return log_odds / (1.0 + log_odds)
    raise ValueError(f"unknown probability mode {mode!r} (expected 'canonical' or 'compat')")
