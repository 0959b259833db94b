"""Fuzzy clinical events: grades, alpha cuts, and two notions of probability.

A clinician rarely calls a temperature "high" outright; the statement is
true to a degree. This demo walks one fuzzy symptom from its membership
curve to the crisp event actually used for inference.
"""

from woediag import (
    FuzzyEvent,
    MembershipFunction,
    alpha_cut,
    membership,
    optimal_alpha,
    yager_probability,
    zadeh_probability,
)

# "high rectal temperature": fully false at 38.0 C, fully true at 39.5 C,
# linear in between, clamped outside.
high_temp = MembershipFunction(((38.0, 0.0), (39.5, 1.0)))

print("membership curve for 'high rectal temperature':")
for t in (37.5, 38.0, 38.4, 38.75, 39.1, 39.5, 40.2):
    bar = "#" * round(20 * membership(high_temp, t))
    print(f"  {t:5.2f} C  grade {membership(high_temp, t):4.2f}  {bar}")

# Four patients with graded membership in the event.
event = FuzzyEvent(
    attribute="rectal_temperature",
    label="high",
    grades={"x1": 0.2, "x2": 0.7, "x3": 0.0, "x4": 0.4},
)
print("\npatient grades:", dict(event.grades))

# A strong alpha-level cut keeps the patients whose grade reaches alpha.
for alpha in (0.2, 0.4, 0.7, 1.0):
    print(f"  cut at alpha={alpha:0.1f}: {sorted(alpha_cut(event, alpha)) or '{}'}")

# Two ways to speak of the probability of a fuzzy event. The expected-grade
# (scalar) form averages the membership function; the alpha-indexed family
# reports the ordinary probability of every cut.
uniform = {k: 0.25 for k in event.grades}
print("\nexpected membership grade:", zadeh_probability(event, uniform))
print("probability of the cut, per alpha:")
for alpha, p in yager_probability(event, [0.2, 0.5, 0.8], uniform):
    print(f"  alpha={alpha:0.1f}  P(cut)={p:0.2f}")

# To binarize the symptom for evidence mining we pick the alpha whose cut
# is most biased toward (or against) the hypothesis. Here x1 and x2 have a
# surgical lesion, x3 and x4 do not.
labels = {"x1": True, "x2": True, "x3": False, "x4": False}
sharp = FuzzyEvent(
    attribute="rectal_temperature",
    label="high",
    grades={"x1": 0.9, "x2": 0.6, "x3": 0.3, "x4": 0.1},
)
choice = optimal_alpha(sharp, labels, grid=[0.25, 0.5, 0.75], smoothing=0.5)
print(
    f"\noptimal cut for the lesion hypothesis: alpha={choice.alpha}"
    f" (|w|={abs(choice.weight_at_alpha):.3f}, {choice.subset_size} patients in the cut)"
)
print("the cut at 0.5 isolates exactly the two surgical patients, hence the peak bias")
