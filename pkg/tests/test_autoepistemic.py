"""Belief-premise engine: the operator, expansions, sequences."""

import random

import pytest

from partseq import (
    AelPremises,
    Const,
    Kernel,
    ModalFormula,
    Not,
    PartitionSequence,
    ResourceLimitError,
    Vocabulary,
    build_ael_sequences,
    check_ael_sequence,
    conjoin,
    enumerate_worlds,
    forced_inconsistency,
    models,
    omega_operator,
    stable_expansions,
    validate_structure,
)
from genkit import brute_force_ael_last_classes, random_premises

P, Q = Const("p"), Const("q")


def by_bits(vocab):
    return {w.bits(): w for w in enumerate_worlds(vocab)}


class TestOmegaOperator:
    def test_both_fixed_points(self, introspective_premises, pq):
        worlds = enumerate_worlds(pq)
        for phi in (P, Q):
            kernel = Kernel(models(phi, worlds), pq)
            assert omega_operator(introspective_premises, kernel).worlds == kernel.worlds

    def test_plain_premise_forces_its_models(self, pq):
        premises = AelPremises((ModalFormula(gamma=P),), pq)
        worlds = enumerate_worlds(pq)
        full = Kernel(frozenset(worlds), pq)
        assert omega_operator(premises, full).worlds == models(P, worlds)

    def test_empty_kernel_rejected(self, introspective_premises, pq):
        with pytest.raises(ValueError):
            omega_operator(introspective_premises, Kernel(frozenset(), pq))


class TestStableExpansions:
    def test_two_expansions(self, introspective_premises, pq):
        worlds = enumerate_worlds(pq)
        got = {k.worlds for k in stable_expansions(introspective_premises)}
        assert got == {models(P, worlds), models(Q, worlds)}

    def test_thwarted_premises_have_none(self, thwarted_premises):
        assert stable_expansions(thwarted_premises) == []
        assert not forced_inconsistency(thwarted_premises)

    def test_plain_premise_single_expansion(self, pq):
        premises = AelPremises((ModalFormula(gamma=P),), pq)
        kernels = stable_expansions(premises)
        assert len(kernels) == 1
        assert kernels[0].worlds == models(P, enumerate_worlds(pq))

    def test_forced_inconsistency_flag(self, pq):
        premises = AelPremises(
            (ModalFormula(gamma=P), ModalFormula(gamma=Not(P))), pq
        )
        assert stable_expansions(premises) == []
        assert forced_inconsistency(premises)

    def test_guess_cap(self, pq):
        formulas = tuple(
            ModalFormula(gamma=P, alpha=conjoin([P] * (i + 1))) for i in range(17)
        )
        with pytest.raises(ResourceLimitError):
            stable_expansions(AelPremises(formulas, pq))

    def test_every_expansion_verifies_belief_guesses(self):
        # stability and groundedness, checked semantically: each reported
        # kernel equals the models of the conclusions its own belief
        # statuses license
        rng = random.Random(606060)
        for _ in range(80):
            premises = random_premises(rng)
            worlds = frozenset(enumerate_worlds(premises.vocab))
            for kernel in stable_expansions(premises):
                licensed = worlds
                for pm in premises.formulas:
                    fires = (
                        pm.alpha is None or kernel.contains(pm.alpha)
                    ) and not any(kernel.contains(b) for b in pm.betas)
                    if fires:
                        licensed &= models(pm.gamma, licensed)
                assert licensed == kernel.worlds


class TestBuildSequences:
    def test_published_classes(self, introspective_premises, pq):
        bb = by_bits(pq)
        seqs = build_ael_sequences(introspective_premises)
        as_tuples = {tuple(s.classes) for s in seqs}
        toward_p = (
            frozenset(),
            frozenset({bb[(0, 1)], bb[(0, 0)]}),
            frozenset({bb[(1, 1)], bb[(1, 0)]}),
        )
        toward_q = (
            frozenset(),
            frozenset({bb[(1, 0)], bb[(0, 0)]}),
            frozenset({bb[(1, 1)], bb[(0, 1)]}),
        )
        assert as_tuples == {toward_p, toward_q}

    def test_thwarted_premises_build_nothing(self, thwarted_premises):
        assert build_ael_sequences(thwarted_premises) == []

    def test_single_plain_premise(self):
        vocab = Vocabulary(["p"])
        premises = AelPremises((ModalFormula(gamma=P),), vocab)
        (seq,) = build_ael_sequences(premises)
        w_false, w_true = enumerate_worlds(vocab)
        assert seq.classes == (
            frozenset(),
            frozenset({w_false}),
            frozenset({w_true}),
        )

    def test_exhausted_order_budget_still_covers_every_expansion(
        self, introspective_premises
    ):
        seqs = build_ael_sequences(introspective_premises, order_limit=1)
        last_classes = {s.last_class for s in seqs}
        assert last_classes == {
            k.worlds for k in stable_expansions(introspective_premises)
        }

    def test_first_class_always_empty_and_checker_agrees(self):
        rng = random.Random(717171)
        for _ in range(60):
            premises = random_premises(rng)
            worlds = enumerate_worlds(premises.vocab)
            for seq in build_ael_sequences(premises, order_limit=20):
                assert seq.classes[0] == frozenset()
                assert validate_structure(seq, worlds) == []
                assert check_ael_sequence(premises, seq) == []


class TestCheckSequence:
    def test_published_sequences_pass(self, introspective_premises):
        for seq in build_ael_sequences(introspective_premises):
            assert check_ael_sequence(introspective_premises, seq) == []

    def test_nonempty_first_class_fails_condition_one(self, introspective_premises, pq):
        bb = by_bits(pq)
        seq = PartitionSequence(
            (
                frozenset({bb[(0, 0)]}),
                frozenset({bb[(0, 1)], bb[(1, 0)]}),
                frozenset({bb[(1, 1)]}),
            ),
            pq,
            "autoepistemic",
        )
        problems = check_ael_sequence(introspective_premises, seq)
        assert any(p.clause == "condition 1" for p in problems)

    def test_thwarted_candidate_fails_condition_three(self, thwarted_premises, pq):
        # ending on the ~q worlds: q is licensed there (p not believed)
        # yet false throughout
        bb = by_bits(pq)
        seq = PartitionSequence(
            (
                frozenset(),
                frozenset({bb[(1, 1)], bb[(0, 1)]}),
                frozenset({bb[(1, 0)], bb[(0, 0)]}),
            ),
            pq,
            "autoepistemic",
        )
        problems = check_ael_sequence(thwarted_premises, seq)
        assert any(p.clause == "condition 3" for p in problems)

    def test_empty_last_class_rejected(self, introspective_premises, pq):
        worlds = enumerate_worlds(pq)
        seq = PartitionSequence(
            (frozenset(), frozenset(worlds), frozenset()), pq, "autoepistemic"
        )
        problems = check_ael_sequence(introspective_premises, seq)
        assert any(p.clause == "condition 3" for p in problems)

    def test_strict_mode_rejects_operator_style_split(self, introspective_premises):
        # the split is guided by the final class, so the per-class variant,
        # which wants the belief conditions vouched for inside each class,
        # turns it down
        seqs = build_ael_sequences(introspective_premises)
        strict_failures = [
            check_ael_sequence(introspective_premises, s, strict=True) for s in seqs
        ]
        assert any(strict_failures)


class TestAgainstBruteForce:
    def test_last_classes_equal_expansions_on_random_premises(self):
        rng = random.Random(808080)
        for _ in range(60):
            premises = random_premises(rng)
            worlds = enumerate_worlds(premises.vocab)
            expected = brute_force_ael_last_classes(premises, worlds)
            got = {k.worlds for k in stable_expansions(premises)}
            assert got == expected
