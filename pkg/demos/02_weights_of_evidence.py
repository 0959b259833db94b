"""From a 2x2 table to a posterior probability.

The weight of evidence of a crisp event E for hypothesis H is the log
likelihood ratio ln[p(E|H)/p(E|~H)]. Weights from independent findings add
up on prior log odds; the total converts back to a probability at the end.
"""

from woediag import (
    ContingencyTable,
    combine,
    estimate_weight,
    is_significant,
    prior_log_odds,
    to_probability,
)

# 100 labeled cases: the event holds for 30 of 50 surgical cases and for
# 10 of 50 medical ones.
table = ContingencyTable(a=30, b=20, c=10, d=40)
exact = estimate_weight(table, smoothing=0.0)
print("event rates: 60% under H, 20% under ~H")
print(f"exact weight      w={exact.w:+.4f}  se={exact.se:.4f}  z={exact.z:.2f}")
print(f"significant at 5%? {is_significant(exact, 1.96)}")

# Zero cells make the exact ratio blow up; additive smoothing keeps every
# table estimable and pulls weights slightly toward zero.
smoothed = estimate_weight(table, smoothing=0.5)
print(f"smoothed (s=0.5)  w={smoothed.w:+.4f}  se={smoothed.se:.4f}  z={smoothed.z:.2f}")
rare = ContingencyTable(a=7, b=43, c=0, d=50)
print(f"zero-cell table, smoothed: w={estimate_weight(rare, 0.5).w:+.4f}")

# Bayesian updating in log-odds space: prior + sum of weights = posterior.
prior = prior_log_odds(0.6295)
weights = [1.053, 0.861, 0.861, 0.661, 0.372, 0.312, -0.547]
posterior = combine(prior, weights)
print(f"\nprior log odds      {prior.log_odds:+.3f}   (prevalence {prior.prevalence:.2%})")
print(f"sum of weights      {sum(weights):+.3f}")
print(f"posterior log odds  {posterior:+.3f}")

# Two conversions are available. The canonical sigmoid is the default; the
# compat form treats the posterior value as plain odds, matching a
# reporting convention seen in older evidence ledgers.
print(f"p = e^L/(1+e^L)     {to_probability(posterior, 'canonical'):.4f}")
print(f"p = L/(1+L)         {to_probability(posterior, 'compat'):.4f}   (compat convention)")
