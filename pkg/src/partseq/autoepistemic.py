"""Introspective belief premises in normal form: the belief fixed-point
operator, stable-expansion search, and belief partition sequences.

Premises have the shape  L a & ~L b1 & ... & ~L bn -> g  where L reads
"is believed" and all components are non-modal. A consistent belief set
closed under introspection is determined by its kernel (its non-modal
part), so kernels stand in for whole belief sets here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ResourceLimitError
from .logic import (
    DEFAULT_WORLD_CAP,
    TRUE,
    Formula,
    Kernel,
    ModalFormula,
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

# The expansion search guesses belief values for the distinct formulas
# appearing under L, so it is exponential in their number.
DEFAULT_GUESS_CAP = 16

DEFAULT_ORDER_LIMIT = 1000


@dataclass(frozen=True)
class AelPremises:
    formulas: tuple[ModalFormula, ...]
    vocab: Vocabulary


def _guess_formulas(premises: AelPremises) -> list[Formula]:
    """Distinct formulas whose belief status decides which premises fire."""
    seen: list[Formula] = []
    for pm in premises.formulas:
        for phi in ((pm.alpha,) if pm.alpha is not None else ()) + pm.betas:
            if phi not in seen:
                seen.append(phi)
    return seen


def _fires(premise: ModalFormula, believed) -> bool:
    if premise.alpha is not None and not believed(premise.alpha):
        return False
    return all(not believed(b) for b in premise.betas)


def omega_operator(
    premises: AelPremises,
    kernel: Kernel,
    max_names: int = DEFAULT_WORLD_CAP,
) -> Kernel:
    """The least kernel containing the conclusions the belief set licenses.

    A premise contributes its conclusion when its positive condition is in
    the given belief set and none of its negative ones are. All conditions
    refer to the argument belief set only, never to the growing result, so
    a single pass reaches the fixed point.
    """
    if not kernel.is_consistent:
        raise ValueError("the belief operator is defined for consistent kernels only")
    worlds = frozenset(enumerate_worlds(premises.vocab, max_names))
    result = worlds
    for pm in premises.formulas:
        if _fires(pm, kernel.contains):
            result &= models(pm.gamma, result)
    return Kernel(result, premises.vocab)


def forced_inconsistency(premises: AelPremises, max_names: int = DEFAULT_WORLD_CAP) -> bool:
    """Whether the premises are contradictory regardless of beliefs.

    Premises without negative belief conditions fire under total belief,
    so when their conclusions are jointly unsatisfiable the only candidate
    belief set is the inconsistent one. The expansion enumeration reports
    consistent kernels only; this flag covers the remaining case.
    """
    worlds = enumerate_worlds(premises.vocab, max_names)
    hard = conjoin(pm.gamma for pm in premises.formulas if not pm.betas)
    return not models(hard, worlds)


def stable_expansions(
    premises: AelPremises,
    max_names: int = DEFAULT_WORLD_CAP,
    max_guesses: int = DEFAULT_GUESS_CAP,
) -> list[Kernel]:
    """All consistent fixed points of the belief operator.

    For every assignment of believed/not-believed to the distinct
    condition formulas, the firing premises induce a kernel; the guess is
    kept when the kernel agrees with it on every condition formula, which
    is exactly the fixed-point property. Deduplicated by model set and
    deterministically ordered.
    """
    guesses = _guess_formulas(premises)
    if len(guesses) > max_guesses:
        raise ResourceLimitError(
            f"premises mention {len(guesses)} distinct belief conditions; "
            f"expansion search is capped at {max_guesses}"
        )
    worlds = frozenset(enumerate_worlds(premises.vocab, max_names))
    found = []
    seen: set[frozenset[World]] = set()
    for bits in product((False, True), repeat=len(guesses)):
        assignment = dict(zip(guesses, bits))
        believed = assignment.__getitem__
        kernel_worlds = worlds
        for pm in premises.formulas:
            if _fires(pm, believed):
                kernel_worlds &= models(pm.gamma, kernel_worlds)
        if not kernel_worlds or kernel_worlds in seen:
            continue
        if all(holds_throughout(g, kernel_worlds) == assignment[g] for g in guesses):
            seen.add(kernel_worlds)
            found.append(kernel_worlds)
    found.sort(key=lambda ws: (len(ws), sorted(w.bits() for w in ws)))
    return [Kernel(ws, premises.vocab) for ws in found]


def _firing_premises(premises: AelPremises, kernel: Kernel) -> list[ModalFormula]:
    return [pm for pm in premises.formulas if _fires(pm, kernel.contains)]


def build_ael_sequences(
    premises: AelPremises,
    max_names: int = DEFAULT_WORLD_CAP,
    max_guesses: int = DEFAULT_GUESS_CAP,
    order_limit: int = DEFAULT_ORDER_LIMIT,
) -> list[PartitionSequence]:
    """Sequences witnessing each consistent stable expansion.

    The first class is empty by definition; afterwards the firing premises
    split off the worlds falsifying their conclusions, in any order, until
    nothing is left to split, which lands exactly on the expansion kernel.
    Alternative orders are explored up to ``order_limit`` per expansion
    and exact duplicates dropped.
    """
    worlds = frozenset(enumerate_worlds(premises.vocab, max_names))
    results: list[PartitionSequence] = []
    seen: set[tuple] = set()
    budget = [order_limit]  # shared across expansions, per call

    def emit(classes, labels):
        seq = PartitionSequence(
            classes=classes,
            vocab=premises.vocab,
            kind="autoepistemic",
            provenance=labels,
        )
        if seq.classes not in seen:
            seen.add(seq.classes)
            results.append(seq)

    for kernel in stable_expansions(premises, max_names, max_guesses):
        firing = _firing_premises(premises, kernel)
        count_before = len(results)

        def ready_peels(remaining):
            ready = []
            for pm in firing:
                peel = frozenset(w for w in remaining if not evaluate(pm.gamma, w))
                if peel:
                    ready.append((pm, peel))
            return ready

        def explore(remaining, classes, labels):
            if budget[0] <= 0:
                return
            ready = ready_peels(remaining)
            if not ready:
                budget[0] -= 1
                emit((*classes, remaining), (*labels, ""))
                return
            for pm, peel in ready:
                explore(remaining - peel, (*classes, peel), (*labels, str(pm)))

        explore(worlds, (frozenset(),), ("",))
        if len(results) == count_before:
            remaining, classes, labels = worlds, (frozenset(),), ("",)
            while True:
                ready = ready_peels(remaining)
                if not ready:
                    break
                pm, peel = ready[0]
                remaining -= peel
                classes += (peel,)
                labels += (str(pm),)
            emit((*classes, remaining), (*labels, ""))
    return results


def check_ael_sequence(
    premises: AelPremises,
    seq: PartitionSequence,
    max_names: int = DEFAULT_WORLD_CAP,
    strict: bool = False,
) -> list[Violation]:
    """Every violated clause of the belief-sequence conditions.

    Clause 1: the first class is empty. Clause 2: each intermediate class
    is exactly the remaining worlds falsifying the conclusion of some
    premise whose belief conditions the last class vouches for (positive
    condition true throughout it, each negative condition false somewhere
    in it). Clause 3: the last class is closed under every premise it
    licenses, and must be non-empty to characterise a consistent belief
    set. ``strict=True`` evaluates clause 2's conditions on the class
    being split off instead of the last class, a tighter variant kept
    for comparison.
    """
    worlds = enumerate_worlds(premises.vocab, max_names)
    structural = validate_structure(seq, worlds)
    if structural:
        return structural

    problems = []
    if seq.classes[0]:
        problems.append(
            Violation("condition 1", "the first class must be empty", class_index=0)
        )
    last = seq.last_class
    n = len(seq.classes)
    if not last:
        problems.append(
            Violation(
                "condition 3",
                "the last class is empty: no consistent belief set is characterised",
                class_index=n - 1,
            )
        )

    for i in range(1, n - 1):
        peeled_before = frozenset().union(*seq.classes[:i])
        pool = seq.classes[i] if strict else last
        justified = False
        for pm in premises.formulas:
            alpha = pm.alpha if pm.alpha is not None else TRUE
            if not holds_throughout(alpha, pool):
                continue
            if not all(satisfiable_in(Not(b), pool) for b in pm.betas):
                continue
            expected = frozenset(
                w for w in worlds if w not in peeled_before and not evaluate(pm.gamma, w)
            )
            if seq.classes[i] == expected:
                justified = True
                break
        if not justified:
            problems.append(
                Violation(
                    "condition 2",
                    "no premise produces this class from the remaining worlds",
                    class_index=i,
                )
            )

    for pm in premises.formulas:
        alpha = pm.alpha if pm.alpha is not None else TRUE
        if not holds_throughout(alpha, last):
            continue
        if not all(satisfiable_in(Not(b), last) for b in pm.betas):
            continue
        if not holds_throughout(pm.gamma, last):
            problems.append(
                Violation(
                    "condition 3",
                    "licensed premise's conclusion fails somewhere in the last class",
                    class_index=n - 1,
                    item=str(pm),
                )
            )
    return problems
