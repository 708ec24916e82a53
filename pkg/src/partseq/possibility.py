"""Possibility theory: graded statement sets, their world sequences, and
the possibility / necessity measures read off them.

A base assigns possibility values to sets of formulas. Its sequence
groups worlds by increasing possibility: class i collects the supporters
of the level-(i+1) formulas not already placed, with total class weight
equal to the gap between consecutive possibility values. The possibility
of a formula is then the cumulative weight up to the highest class where
it holds somewhere; necessity is the dual through negation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .logic import (
    DEFAULT_WORLD_CAP,
    Formula,
    Not,
    Vocabulary,
    World,
    enumerate_worlds,
    evaluate,
    format_formula,
    satisfiable_in,
)
from .sequences import PartitionSequence, Violation, validate_structure

# Class weight totals are compared within this tolerance so that checked
# sequences may carry float-derived weights.
CLASS_WEIGHT_TOLERANCE = Fraction(1, 10**9)


@dataclass(frozen=True)
class PossibilisticKB:
    """Levels <S_i, r_i> with 0 <= r_1 < ... < r_n <= 1, each S_i a
    non-empty formula set meaning "every member has possibility r_i"."""

    levels: tuple[tuple[frozenset[Formula], Fraction], ...]
    vocab: Vocabulary

    def __post_init__(self):
        if not self.levels:
            raise ValueError("a possibilistic base needs at least one level")
        previous = None
        for formulas, value in self.levels:
            if not formulas:
                raise ValueError("empty formula set in a possibilistic level")
            if not 0 <= value <= 1:
                raise ValueError(f"possibility value {value} outside [0, 1]")
            if previous is not None and value <= previous:
                raise ValueError("possibility values must increase strictly")
            previous = value

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(value for _, value in self.levels)


@dataclass(frozen=True)
class InconsistencyReport:
    """Why no sequence exists: the base violates the measure axioms."""

    violations: tuple[Violation, ...]

    def __str__(self) -> str:
        return "; ".join(str(v) for v in self.violations)


def _level_supports(
    kb: PossibilisticKB, worlds: list[World]
) -> tuple[list[frozenset[World]], list[Violation]]:
    """Per level, the union of each formula's still-unplaced supporters.

    A formula with no supporters left is an axiom violation unless its
    stated possibility is zero (an impossible formula may well have
    possibility zero, but a positive value needs a witnessing world).
    """
    placed: set[World] = set()
    classes = []
    problems = []
    for formulas, value in kb.levels:
        union: set[World] = set()
        for phi in sorted(formulas, key=format_formula):
            support = {w for w in worlds if w not in placed and evaluate(phi, w)}
            if not support and value > 0:
                problems.append(
                    Violation(
                        "condition 1",
                        f"no world left can support it at possibility {value}",
                        item=format_formula(phi),
                    )
                )
            union |= support
        classes.append(frozenset(union))
        placed |= union
    return classes, problems


def build_poss_sequence(
    kb: PossibilisticKB, max_names: int = DEFAULT_WORLD_CAP
) -> PartitionSequence | InconsistencyReport:
    """The possibility sequence of ``kb``, or why there is none.

    Classes are built per level in increasing possibility order, the final
    class taking the remaining worlds. Each class's weight gap is split
    uniformly over its worlds; any split meeting the totals would do, the
    uniform one keeps the builder deterministic.
    """
    worlds = enumerate_worlds(kb.vocab, max_names)
    classes, problems = _level_supports(kb, worlds)
    placed = frozenset().union(*classes) if classes else frozenset()
    remainder = frozenset(w for w in worlds if w not in placed)
    classes.append(remainder)

    values = (Fraction(0),) + kb.values + (Fraction(1),)
    gaps = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    if not remainder and gaps[-1] > 0:
        problems.append(
            Violation(
                "condition 2",
                f"no worlds remain for the top class yet weight {gaps[-1]} "
                f"is left to place",
                class_index=len(classes) - 1,
            )
        )
    if problems:
        return InconsistencyReport(tuple(problems))

    weighted = []
    for cls, gap in zip(classes, gaps):
        if cls:
            share = gap / len(cls)
            weighted.append(frozenset(w.reweighted(share) for w in cls))
        else:
            weighted.append(frozenset())
    provenance = tuple(
        "; ".join(sorted(format_formula(phi) for phi in formulas))
        for formulas, _ in kb.levels
    ) + ("",)
    return PartitionSequence(
        classes=tuple(weighted),
        vocab=kb.vocab,
        kind="possibility",
        provenance=provenance,
    )


def check_poss_sequence(
    kb: PossibilisticKB,
    seq: PartitionSequence,
    max_names: int = DEFAULT_WORLD_CAP,
) -> list[Violation]:
    """Every violated clause of the possibility-sequence conditions.

    Class memberships must match the level construction exactly; weights
    inside a class may be distributed any way whose total equals the
    level's gap (within a small tolerance).
    """
    worlds = enumerate_worlds(kb.vocab, max_names)
    structural = validate_structure(seq, worlds)
    if structural:
        return structural

    problems = []
    n = len(kb.levels)
    if len(seq.classes) != n + 1:
        problems.append(
            Violation(
                "shape",
                f"expected {n + 1} classes for {n} levels, found {len(seq.classes)}",
            )
        )
        return problems

    expected_classes, support_problems = _level_supports(kb, worlds)
    problems.extend(support_problems)
    for i, expected in enumerate(expected_classes):
        if seq.classes[i] != expected:
            problems.append(
                Violation(
                    "condition 1",
                    "class does not match the level's supporting worlds",
                    class_index=i,
                )
            )

    values = (Fraction(0),) + kb.values + (Fraction(1),)
    for i, cls in enumerate(seq.classes):
        gap = values[i + 1] - values[i]
        total = sum((w.weight for w in cls), Fraction(0))
        if abs(total - gap) > CLASS_WEIGHT_TOLERANCE:
            problems.append(
                Violation(
                    "condition 2",
                    f"class weight totals {total}, expected {gap}",
                    class_index=i,
                )
            )
    return problems


def possibility(seq: PartitionSequence, phi: Formula) -> Fraction:
    """Cumulative weight up to the highest class where ``phi`` holds
    somewhere; zero when it holds nowhere."""
    top = None
    for i, cls in enumerate(seq.classes):
        if satisfiable_in(phi, cls):
            top = i
    if top is None:
        return Fraction(0)
    return sum(
        (w.weight for cls in seq.classes[: top + 1] for w in cls), Fraction(0)
    )


def necessity(seq: PartitionSequence, phi: Formula) -> Fraction:
    """Dual measure: 1 minus the possibility of the negation."""
    return 1 - possibility(seq, Not(phi))
