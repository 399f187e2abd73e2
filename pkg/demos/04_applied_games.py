"""
Applied games: diner's dilemma, public goods, traveler, attrition
=================================================================

Each application maps its parameters onto pairwise tables and reuses the
same balanced-probability machinery; the multi-option games then stack
pairwise results into a full distribution over options.
"""

from cooprob import (
    AttritionSpec,
    DinerSpec,
    PublicGoodsSpec,
    TravelerSpec,
    attrition_distribution,
    diner_conjecture_test,
    diner_p,
    diner_table2,
    public_goods_distribution,
    traveler_distribution,
    traveler_mean,
)

# diner's dilemma: order the pricey dish or the cheap one; everything is
# controlled by the costs-benefits ratio R_cb = (r - w) / (s - u)
spec = DinerSpec(r=4.0, s=3.5, u=1.5, w=1.0, n=2)
print(f"R_cb = {spec.r_cb}:  p(cheap) = {diner_p(spec).p:.6f}")
print("mapped table:", diner_table2(spec).values())

# the same closed form 2 - n / R_cb keeps matching the generic solver as
# the player count grows; here n = 4 via the ladder
rep = diner_conjecture_test(r_cb=2.5, n=4)
print(f"n=4, R_cb=2.5: solver {rep.p_solver:.12f} vs closed {rep.p_conjecture:.12f}")

# public goods: contribute 0..N shares to a pot multiplied by k; k pins
# the whole shape of the distribution
print()
for k, label in ((4 / 3, "uniform"), (1.5, "rising"), (1.2, "falling")):
    dist = public_goods_distribution(PublicGoodsSpec(r=100.0, k=k, options=4))
    probs = "  ".join(f"{p:.4f}" for p in dist.probabilities)
    print(f"k = {k:<5.3f} ({label:7s}): {probs}")

# traveler's dilemma: claims from s to r in steps of v, bonus/penalty t;
# low claims barely ever win, and the mean tracks the bonus size
print()
small = traveler_distribution(TravelerSpec(r=4.0, s=2.0, t=2.0, steps=2))
print("claims 2/3/4:", [round(float(p), 3) for p in small.probabilities])
for t in (5.0, 80.0):
    mu = traveler_mean(TravelerSpec(r=200.0, s=80.0, t=t, steps=120))
    print(f"bonus t = {t:5.1f}: mean claim = {mu:.2f}")

# war of attrition: bid waiting time for a prize x; the middle bid is
# forced to exactly 1/(max_bid + 1) and opposite bids pair up
print()
dist = attrition_distribution(AttritionSpec(x=2.0, max_bid=4), mode="paper")
for i, p in enumerate(dist.probabilities):
    print(f"bid {i}: {p:.6f}")
print("p_1 + p_3 =", round(dist.probabilities[1] + dist.probabilities[3], 12))
