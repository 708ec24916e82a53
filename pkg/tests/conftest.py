"""Shared fixtures: the small knowledge bases exercised throughout."""

from fractions import Fraction

import pytest

from partseq import (
    TRUE,
    AelPremises,
    Const,
    DefaultRule,
    DefaultTheory,
    ModalFormula,
    Not,
    PossibilisticKB,
    SampleSpace,
    Vocabulary,
    World,
    parse_formula,
)

P = Const("p")
Q = Const("q")


@pytest.fixture
def pq() -> Vocabulary:
    return Vocabulary(["p", "q"])


@pytest.fixture
def rival_theory(pq) -> DefaultTheory:
    """Two rules fighting over p, a third adding q when p went through."""
    return DefaultTheory(
        rules=(
            DefaultRule("r1", TRUE, (P,), P),
            DefaultRule("r2", TRUE, (Not(P),), Not(P)),
            DefaultRule("r3", P, (Q,), Q),
        ),
        facts=(),
        vocab=pq,
    )


@pytest.fixture
def self_defeating_theory() -> DefaultTheory:
    """One rule whose conclusion destroys its own justification."""
    vocab = Vocabulary(["p"])
    return DefaultTheory(
        rules=(DefaultRule("r1", TRUE, (Const("p"),), Not(Const("p"))),),
        facts=(),
        vocab=vocab,
    )


@pytest.fixture
def introspective_premises(pq) -> AelPremises:
    """Believe p if p is believed; conclude q if p is not believed."""
    return AelPremises(
        formulas=(
            ModalFormula(gamma=P, alpha=P),
            ModalFormula(gamma=Q, betas=(P,)),
        ),
        vocab=pq,
    )


@pytest.fixture
def thwarted_premises(pq) -> AelPremises:
    """The conclusion q is forced unless p is believed, yet ~q is asserted."""
    return AelPremises(
        formulas=(
            ModalFormula(gamma=Q, betas=(P,)),
            ModalFormula(gamma=Not(Q)),
        ),
        vocab=pq,
    )


@pytest.fixture
def weather_space(pq) -> SampleSpace:
    """Four-world space with weights 0.2 / 0.3 / 0.1 / 0.4."""
    return SampleSpace(
        worlds=(
            World(pq, ["p", "q"], Fraction("0.2")),
            World(pq, ["p"], Fraction("0.3")),
            World(pq, ["q"], Fraction("0.1")),
            World(pq, [], Fraction("0.4")),
        ),
        vocab=pq,
    )


@pytest.fixture
def nested_kb(pq) -> PossibilisticKB:
    """p & q possible to 0.3 while the weaker p reaches 0.7."""
    return PossibilisticKB(
        levels=(
            (frozenset([parse_formula("p & q", pq)]), Fraction("0.3")),
            (frozenset([P]), Fraction("0.7")),
        ),
        vocab=pq,
    )


@pytest.fixture
def contradictory_kb(pq) -> PossibilisticKB:
    """p capped at 0.3 yet the stronger p & q claimed at 0.5."""
    return PossibilisticKB(
        levels=(
            (frozenset([P]), Fraction("0.3")),
            (frozenset([parse_formula("p & q", pq)]), Fraction("0.5")),
        ),
        vocab=pq,
    )
