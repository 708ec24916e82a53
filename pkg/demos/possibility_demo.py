"""Possibility measures as weighted world partitions
====================================================

A possibilistic base grades formulas by how possible they are. Its
sequence sorts worlds into classes of increasing possibility, with the
weight gap between consecutive grades spread over each class. The
possibility of any formula is then the cumulative weight up to the
highest class where it holds somewhere; necessity is the dual.
"""

from pathlib import Path

from partseq import (
    InconsistencyReport,
    build_poss_sequence,
    format_fraction,
    necessity,
    parse_formula,
    parse_kb,
    possibility,
)

doc = parse_kb((Path(__file__).parent / "kb" / "nested.poss").read_text(), "poss")
kb = doc.body
vocab = doc.vocab

seq = build_poss_sequence(kb)
for j, cls in enumerate(seq.classes):
    print(f"W{j} = {sorted(cls, key=lambda w: w.bits())}")

# The stated grades are recovered exactly, and formulas the base never
# mentions get sensible values: q is unconstrained, so both q and ~q
# are fully possible and neither is necessary.
for text in ("p & q", "p", "q", "~q", "~p"):
    phi = parse_formula(text, vocab)
    print(
        f"possibility({text}) = {format_fraction(possibility(seq, phi))}   "
        f"necessity({text}) = {format_fraction(necessity(seq, phi))}"
    )

# A base can overreach: claiming more possibility for a stronger formula
# than for a weaker one it entails leaves no worlds to support it.
bad = parse_kb(
    (Path(__file__).parent / "kb" / "contradictory.poss").read_text(), "poss"
).body
report = build_poss_sequence(bad)
assert isinstance(report, InconsistencyReport)
print()
print("contradictory base:", report)
