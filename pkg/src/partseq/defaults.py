"""Default rules: the fixed-point operator, extension search, and the
construction and checking of default partition sequences.

A rule  alpha : M beta_1, ..., M beta_n / gamma  asserts gamma once alpha
is provable and no ~beta_i is. Extensions are the fixed points of the
operator implemented by :func:`gamma_operator`; a theory may have one,
several, or none. Sequences and extensions determine each other: the last
class of any valid sequence is the model set of an extension, and every
extension is witnessed by at least one sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ResourceLimitError
from .logic import (
    DEFAULT_WORLD_CAP,
    Formula,
    Kernel,
    Not,
    Vocabulary,
    World,
    conjoin,
    enumerate_worlds,
    evaluate,
    holds_throughout,
    models,
    satisfiable_in,
)
from .sequences import PartitionSequence, Violation, validate_structure

# Candidate extensions are searched over subsets of the rule set.
DEFAULT_RULE_CAP = 16

# Bound on how many rule application orders the sequence builder explores.
DEFAULT_ORDER_LIMIT = 1000


@dataclass(frozen=True)
class DefaultRule:
    """alpha : M beta_1, ..., M beta_n / gamma, with n >= 1."""

    rule_id: str
    alpha: Formula
    betas: tuple[Formula, ...]
    gamma: Formula

    def __post_init__(self):
        if not self.betas:
            raise ValueError(f"rule {self.rule_id}: at least one justification required")

    def __str__(self) -> str:
        justs = ", ".join(f"M {b}" for b in self.betas)
        return f"{self.alpha} : {justs} / {self.gamma}"


@dataclass(frozen=True)
class DefaultTheory:
    rules: tuple[DefaultRule, ...]
    facts: tuple[Formula, ...]
    vocab: Vocabulary

    @property
    def fact_formula(self) -> Formula:
        return conjoin(self.facts)


def gamma_operator(
    theory: DefaultTheory,
    candidate: frozenset[World],
    max_names: int = DEFAULT_WORLD_CAP,
) -> frozenset[World]:
    """Model set of the operator value at ``candidate``.

    Starting from the models of the facts, repeatedly apply every rule
    whose prerequisite already holds throughout the current model set and
    whose justifications are each consistent with the candidate theory
    (no ~beta_i holds throughout ``candidate``), shrinking the model set
    by the rule's conclusion. Runs to the least fixed point; the result
    is independent of application order.
    """
    worlds = enumerate_worlds(theory.vocab, max_names)
    current = models(theory.fact_formula, worlds)
    # justification status depends only on the candidate, so compute once
    unblocked = [
        rule
        for rule in theory.rules
        if all(not holds_throughout(Not(b), candidate) for b in rule.betas)
    ]
    changed = True
    while changed:
        changed = False
        for rule in unblocked:
            if holds_throughout(rule.alpha, current):
                shrunk = current & models(rule.gamma, current)
                if shrunk != current:
                    current = shrunk
                    changed = True
    return current


def extensions(
    theory: DefaultTheory,
    max_names: int = DEFAULT_WORLD_CAP,
    max_rules: int = DEFAULT_RULE_CAP,
) -> list[Kernel]:
    """All fixed points of the operator, as kernels, deterministically ordered.

    Every extension is generated by the facts plus the conclusions of the
    rules that fire in it, so sweeping rule subsets and verifying each
    candidate with one operator evaluation finds exactly the fixed points.
    The inconsistent extension (empty model set) appears alone when the
    facts themselves are unsatisfiable.
    """
    if len(theory.rules) > max_rules:
        raise ResourceLimitError(
            f"theory has {len(theory.rules)} rules; extension search is "
            f"capped at {max_rules}"
        )
    worlds = enumerate_worlds(theory.vocab, max_names)
    fact_worlds = models(theory.fact_formula, worlds)
    seen: set[frozenset[World]] = set()
    found = []
    for size in range(len(theory.rules) + 1):
        for chosen in combinations(theory.rules, size):
            candidate = fact_worlds
            for rule in chosen:
                candidate &= models(rule.gamma, candidate)
            if candidate in seen:
                continue
            seen.add(candidate)
            if gamma_operator(theory, candidate, max_names) == candidate:
                found.append(candidate)
    found.sort(key=lambda ws: (len(ws), sorted(w.bits() for w in ws)))
    return [Kernel(ws, theory.vocab) for ws in found]


def _applicable(
    theory: DefaultTheory,
    remaining: frozenset[World],
    extension: frozenset[World],
) -> list[tuple[DefaultRule, frozenset[World]]]:
    """Rules ready to split off a non-empty class from ``remaining``.

    The prerequisite must hold throughout the remaining worlds and every
    justification must be satisfiable in the target last class.
    """
    ready = []
    for rule in theory.rules:
        if not holds_throughout(rule.alpha, remaining):
            continue
        if not all(satisfiable_in(b, extension) for b in rule.betas):
            continue
        peel = frozenset(w for w in remaining if not evaluate(rule.gamma, w))
        if peel:
            ready.append((rule, peel))
    return ready


def build_default_sequences(
    theory: DefaultTheory,
    max_names: int = DEFAULT_WORLD_CAP,
    max_rules: int = DEFAULT_RULE_CAP,
    order_limit: int = DEFAULT_ORDER_LIMIT,
) -> list[PartitionSequence]:
    """Sequences witnessing each extension of ``theory``.

    The first class collects the worlds falsifying the facts; then an
    applicable rule is picked and the worlds falsifying its conclusion are
    split off, until no rule applies. Any maximal application order lands
    exactly on the extension's model set, so alternative orders yield
    further valid sequences differing in their intermediate classes only.
    At most ``order_limit`` orders are explored per call; past that, each
    remaining extension still gets one greedily built sequence. Exact
    duplicates are dropped. The inconsistent extension, having no worlds
    to end on, gets no sequence.
    """
    worlds = enumerate_worlds(theory.vocab, max_names)
    fact_worlds = models(theory.fact_formula, worlds)
    w0 = frozenset(worlds) - fact_worlds

    results: list[PartitionSequence] = []
    seen: set[tuple] = set()
    budget = [order_limit]  # shared across extensions, per call

    def emit(classes, labels):
        seq = PartitionSequence(
            classes=classes,
            vocab=theory.vocab,
            kind="default",
            provenance=labels,
        )
        if seq.classes not in seen:
            seen.add(seq.classes)
            results.append(seq)

    for kernel in extensions(theory, max_names, max_rules):
        if not kernel.is_consistent:
            continue
        count_before = len(results)

        def explore(remaining, classes, labels):
            if budget[0] <= 0:
                return
            ready = _applicable(theory, remaining, kernel.worlds)
            if not ready:
                budget[0] -= 1
                emit((*classes, remaining), (*labels, ""))
                return
            for rule, peel in ready:
                explore(remaining - peel, (*classes, peel), (*labels, rule.rule_id))

        explore(fact_worlds, (w0,), ("",))
        if len(results) == count_before:
            # budget ran out before this extension produced anything; one
            # greedy order is always emitted regardless
            remaining, classes, labels = fact_worlds, (w0,), ("",)
            while True:
                ready = _applicable(theory, remaining, kernel.worlds)
                if not ready:
                    break
                rule, peel = ready[0]
                remaining -= peel
                classes += (peel,)
                labels += (rule.rule_id,)
            emit((*classes, remaining), (*labels, ""))
    return results


def check_default_sequence(
    theory: DefaultTheory,
    seq: PartitionSequence,
    max_names: int = DEFAULT_WORLD_CAP,
    strict: bool = False,
) -> list[Violation]:
    """Every violated clause of the sequence conditions for ``theory``.

    Clause 1: the first class holds exactly the worlds falsifying the
    facts. Clause 2: each intermediate class is the set of remaining
    worlds falsifying the conclusion of some rule whose prerequisite
    holds from that class onward and whose justifications are witnessed.
    Clause 3: the last class is closed under every applicable rule.

    Witnesses live in the final class; ``strict=True`` instead demands
    them inside the class being split off, a tighter variant under which
    a rule whose conclusion equals its justification can never justify
    its own split (each split removes exactly those witnesses).
    """
    worlds = enumerate_worlds(theory.vocab, max_names)
    structural = validate_structure(seq, worlds)
    if structural:
        return structural

    problems = []
    fact = theory.fact_formula
    expected_w0 = frozenset(w for w in worlds if not evaluate(fact, w))
    if seq.classes[0] != expected_w0:
        problems.append(
            Violation(
                "condition 1",
                "first class must hold exactly the worlds falsifying the facts",
                class_index=0,
            )
        )

    last = seq.last_class
    n = len(seq.classes)
    for i in range(1, n - 1):
        peeled_before = frozenset().union(*seq.classes[:i])
        remaining = frozenset().union(*seq.classes[i:])
        witness_pool = seq.classes[i] if strict else last
        justified = False
        for rule in theory.rules:
            if not holds_throughout(rule.alpha, remaining):
                continue
            if not all(satisfiable_in(b, witness_pool) for b in rule.betas):
                continue
            expected = frozenset(
                w for w in worlds if w not in peeled_before and not evaluate(rule.gamma, w)
            )
            if seq.classes[i] == expected:
                justified = True
                break
        if not justified:
            problems.append(
                Violation(
                    "condition 2",
                    "no rule produces this class from the remaining worlds",
                    class_index=i,
                )
            )

    for rule in theory.rules:
        if not holds_throughout(rule.alpha, last):
            continue
        if not all(satisfiable_in(b, last) for b in rule.betas):
            continue
        if not holds_throughout(rule.gamma, last):
            problems.append(
                Violation(
                    "condition 3",
                    "applicable rule's conclusion fails somewhere in the last class",
                    class_index=n - 1,
                    item=rule.rule_id,
                )
            )
    return problems
