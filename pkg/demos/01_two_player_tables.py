"""
Two-player tables: classify, estimate, compare baselines
========================================================

Walks a handful of 2x2 payoff tables through classification and the
balanced-probability estimate, then lines the estimate up against the
maximin and payoff-maximizing baselines on the same tables.
"""

from cooprob import (
    PayoffTable2,
    balanced_p,
    best_response_threshold,
    classify2,
    equiprobability,
    maximin_p,
    payoff_max_p,
)

tables = {
    "close-call dilemma": PayoffTable2(101, 100, 1, 0),
    "textbook dilemma": PayoffTable2(9, 8, 5, 2),
    "harsh dilemma": PayoffTable2(100, 51, 50, 0),
    "chicken": PayoffTable2(7, 3, 0, 2),
    "battle of the sexes": PayoffTable2(3, 0, 0, 2),
    "stag hunt": PayoffTable2(10, 11, 1, -30),
}

for name, t in tables.items():
    cls = classify2(t)
    est = balanced_p(t)
    print(f"{name:22s} {cls.tag.value:20s} p = {est.p:.4f}")
    if cls.boundary_flags:
        print(f"{'':22s} boundary: {sorted(cls.boundary_flags)}")

# the balanced estimate is scale- and shift-free: tripling the stakes of
# the split-or-grab table leaves p at the golden ratio conjugate
print()
for stake in (1.0, 3.0, 1e6):
    t = PayoffTable2(stake, stake / 2, 0.0, 0.0)
    print(f"stake {stake:>9g}: p = {balanced_p(t).p:.12f}")

# baselines; maximin equalizes the guaranteed-payoff lines, the payoff
# maximizer climbs the mutual expected-payoff curve, and both land away
# from the balanced answer
print()
t = PayoffTable2(10, 7, 5, 1)
print("balanced  ", round(balanced_p(t).p, 6))
mm = maximin_p(t)
print("maximin   ", round(mm.estimate.p, 6) if mm.estimate else f"undefined (raw {mm.value})")
print("payoff-max", round(payoff_max_p(t).p, 6))
print("best-response threshold:", best_response_threshold(t))

# on most dilemmas the maximin mix is not even a probability; the raw
# value is reported instead of being clamped
mm = maximin_p(PayoffTable2(9, 8, 5, 2))
print("maximin on (9, 8, 5, 2):", f"undefined (raw value {mm.value})")

# the sign test: 3(b - c) against (a - d) decides which side of 1/2 the
# balanced probability falls on, without solving anything
print()
for name, t in tables.items():
    if classify2(t).tag.value != "prisoners-dilemma":
        continue
    report = equiprobability(t)
    print(f"{name:22s} gap = {report.gap:8.1f}  verdict = {report.verdict.value}")
