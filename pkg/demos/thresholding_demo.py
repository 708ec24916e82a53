"""Conditioning, thresholding, and the lottery
==============================================

Conditioning on a formula peels off the worlds it excludes; the last
class is the effective sample space. Thresholding is conditioning with
an entrance exam: a formula may only be treated as settled while the
mass it discards stays a small fraction of what is still in play. All
arithmetic is exact rationals, so boundary cases are decided exactly.
"""

from fractions import Fraction
from pathlib import Path

from partseq import (
    BelowThresholdError,
    cond_prob,
    condition,
    enumerate_threshold_orders,
    format_fraction,
    lottery_space,
    parse_formula,
    parse_kb,
    persistent_prob,
    threshold,
    threshold_prob,
)

space = parse_kb(
    (Path(__file__).parent / "kb" / "weather.prob").read_text(), "prob"
).body
vocab = space.vocab

# Plain conditioning: each formula splits off its falsifiers in turn.
conds = [parse_formula("p -> q", vocab), parse_formula("p | q", vocab)]
seq = condition(space, conds)
for j, cls in enumerate(seq.classes):
    print(f"W{j} = {sorted(cls, key=lambda w: w.bits())}")
print("Pr(p | p->q, p|q) =", cond_prob(seq, parse_formula("p", vocab)))
print("Pr(q | p->q, p|q) =", cond_prob(seq, parse_formula("q", vocab)))
# earlier stages stay readable off the same sequence
print("Pr(p | p->q) =", persistent_prob(seq, parse_formula("p", vocab), 1))

# The lottery: n tickets, exactly one wins, each world carries mass 1/n.
print()
lottery = lottery_space(100)
losing = [parse_formula(f"~p{i}", lottery.vocab) for i in range(1, 4)]

# At eps = 1/99 we may call two tickets losing: the first discard is
# 1/100 of everything, the second 1/99 of what remains.
eps = Fraction(1, 99)
seq = threshold(lottery, eps, losing[:2])
print("accepted at eps=1/99, class sizes:", [len(c) for c in seq.classes])
print("Pr(p1) =", format_fraction(threshold_prob(lottery, eps, losing[:2], parse_formula("p1", lottery.vocab))))
print("Pr(p3) =", format_fraction(threshold_prob(lottery, eps, losing[:2], parse_formula("p3", lottery.vocab))))

# A third ticket would discard 1/98 of the remaining mass: over the bar.
try:
    threshold(lottery, eps, losing)
except BelowThresholdError as exc:
    print("third step refused:", exc)

# Tighten to eps = 1/100 and only single tickets can be called losing;
# the search over candidate orderings confirms it.
orders = enumerate_threshold_orders(lottery, Fraction(1, 100), losing, maxlen=3)
print("orders accepted at eps=1/100:", [
    tuple(str(phi) for phi in order) for order in orders
])

# This is what defuses the all-tickets-lose paradox: accepting every
# "ticket i loses" at once needs eps = 1, i.e. no exam at all.
