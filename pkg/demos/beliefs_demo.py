"""Introspective beliefs as world partitions
============================================

Premises of the form  L a & ~L b -> g  condition conclusions on what is
and is not believed. A stable expansion is a belief set that licenses
exactly itself; its non-modal kernel is a set of worlds, and the same
partition-sequence construction that serves default rules captures it,
with one twist: belief conditions are judged against the final class.
"""

from pathlib import Path

from partseq import (
    Kernel,
    build_ael_sequences,
    check_ael_sequence,
    enumerate_worlds,
    models,
    omega_operator,
    parse_formula,
    parse_kb,
    stable_expansions,
)

kb_text = (Path(__file__).parent / "kb" / "introspective.ael").read_text()
print(kb_text)

doc = parse_kb(kb_text, "ael")
premises = doc.body
worlds = enumerate_worlds(doc.vocab)

# The fixed-point view: feed a candidate belief set to the operator and
# see whether it reproduces itself.
for text in ("p", "q", "p & q"):
    candidate = Kernel(models(parse_formula(text, doc.vocab), worlds), doc.vocab)
    image = omega_operator(premises, candidate)
    verdict = "fixed point" if image.worlds == candidate.worlds else "moves away"
    print(f"believing exactly {text!r}: {verdict}")

print()
for i, kernel in enumerate(stable_expansions(premises), 1):
    print(f"stable expansion {i}: kernel worlds "
          f"{sorted(kernel.worlds, key=lambda w: w.bits())}")

# The sequences: the first class is empty by definition, then each
# firing premise peels off the worlds falsifying its conclusion.
print()
for seq in build_ael_sequences(premises):
    print("sequence:")
    for j, cls in enumerate(seq.classes):
        origin = f"  <- {seq.provenance[j]}" if seq.provenance[j] else ""
        print(f"  W{j} = {sorted(cls, key=lambda w: w.bits())}{origin}")
    assert check_ael_sequence(premises, seq) == []
    print()

# And premises that cannot settle: q is forced unless p is believed,
# yet ~q is asserted and nothing grounds believing p.
thwarted = parse_kb(
    (Path(__file__).parent / "kb" / "thwarted.ael").read_text(), "ael"
).body
print("thwarted premises expansions:", stable_expansions(thwarted))
print("thwarted premises sequences:", build_ael_sequences(thwarted))
