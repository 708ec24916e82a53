"""Default rules as world partitions
====================================

A default rule  alpha : M beta / gamma  says: once alpha is settled and
beta is still conceivable, conclude gamma. Extensions are the belief
sets a rational agent can end up with; each is witnessed by an ordered
partition of the possible worlds, peeled off one rule at a time.
"""

from pathlib import Path

from partseq import (
    build_default_sequences,
    check_default_sequence,
    extensions,
    parse_kb,
    preference_view,
)

kb_text = (Path(__file__).parent / "kb" / "rivals.dl").read_text()
print(kb_text)

theory = parse_kb(kb_text, "default").body

# Extension search: every fixed point of the rule-application operator.
# r1 and r2 are rivals, so there are two ways the dust can settle.
for i, kernel in enumerate(extensions(theory), 1):
    print(f"extension {i}: worlds {sorted(kernel.worlds, key=lambda w: w.bits())}")

# Each extension is witnessed by at least one partition sequence. The
# first class holds the worlds the facts already exclude (none here),
# then each applied rule splits off the worlds its conclusion rules out,
# and the last class is exactly the extension's model set.
print()
for seq in build_default_sequences(theory):
    print("sequence:")
    for j, cls in enumerate(seq.classes):
        origin = f"  <- {seq.provenance[j]}" if seq.provenance[j] else ""
        print(f"  W{j} = {sorted(cls, key=lambda w: w.bits())}{origin}")
    # the same sequence read as preference: later tail unions are the
    # more preferred models
    chain = preference_view(seq)
    print(f"  most preferred models: {sorted(chain.models[-1], key=lambda w: w.bits())}")
    assert check_default_sequence(theory, seq) == []
    print()

# A theory can also have no extension at all: a rule whose conclusion
# contradicts its own justification never stabilises.
no_ext = parse_kb(
    (Path(__file__).parent / "kb" / "no_extension.dl").read_text(), "default"
).body
print("self-defeating rule extensions:", extensions(no_ext))
print("self-defeating rule sequences:", build_default_sequences(no_ext))
