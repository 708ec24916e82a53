"""Finite propositional language: formulas, worlds, valuation, entailment.

Everything here is immutable and purely functional, so values can be
shared freely across threads. Theories are never materialised as formula
sets; a deductively closed theory is represented by the set of worlds
satisfying it, which is exact over a finite vocabulary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from .errors import ParseError, ResourceLimitError, SemanticError
from .rationals import Rational, as_fraction

# Exhaustive world enumeration is O(2^n); this is the practical desk-scale
# ceiling. Every enumerating operation takes it as an overridable argument.
DEFAULT_WORLD_CAP = 20

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


# ---------------------------------------------------------------------------
# Vocabulary and worlds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vocabulary:
    """An ordered tuple of distinct propositional constant names.

    The order is fixed at creation; world enumeration and serialisation
    both depend on it.
    """

    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        object.__setattr__(self, "names", tuple(names))
        seen = set()
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad constant name: {name!r}")
            if name in ("true", "false"):
                raise ValueError(f"{name!r} is a reserved literal")
            if name in seen:
                raise ValueError(f"duplicate constant name: {name!r}")
            seen.add(name)
        object.__setattr__(self, "_name_set", frozenset(self.names))

    def __contains__(self, name: str) -> bool:
        return name in self._name_set  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __repr__(self) -> str:
        return f"Vocabulary({list(self.names)!r})"


class World:
    """One interpretation of the vocabulary, with an optional weight.

    Two worlds are equal when they assign the same truth values over the
    same vocabulary; the weight is an annotation (the value a weight
    function gives this world) and does not take part in identity. The
    weight defaults to 1, the convention for purely qualitative settings.
    """

    __slots__ = ("vocab", "true_names", "weight", "_hash")

    def __init__(self, vocab: Vocabulary, true_names: Iterable[str], weight: Rational = 1):
        self.vocab = vocab
        self.true_names = frozenset(true_names)
        unknown = self.true_names - vocab._name_set  # type: ignore[attr-defined]
        if unknown:
            raise SemanticError(f"constants not in vocabulary: {sorted(unknown)}")
        self.weight = as_fraction(weight)
        if self.weight < 0:
            raise ValueError(f"negative world weight: {self.weight}")
        self._hash = hash((self.vocab.names, self.true_names))

    def truth(self, name: str) -> bool:
        if name not in self.vocab:
            raise SemanticError(f"unknown constant: {name!r}")
        return name in self.true_names

    def bits(self) -> tuple[int, ...]:
        """Truth values in vocabulary order; also the deterministic sort key."""
        return tuple(1 if n in self.true_names else 0 for n in self.vocab.names)

    def reweighted(self, weight: Rational) -> "World":
        return World(self.vocab, self.true_names, weight)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, World)
            and self.vocab.names == other.vocab.names
            and self.true_names == other.true_names
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        lits = [n if n in self.true_names else "~" + n for n in self.vocab.names]
        inner = "{" + ", ".join(lits) + "}"
        if self.weight != 1:
            return f"<{inner}, {self.weight}>"
        return inner


def enumerate_worlds(vocab: Vocabulary, max_names: int = DEFAULT_WORLD_CAP) -> list[World]:
    """All 2^n interpretations of ``vocab``, each with weight 1.

    The order is binary counting over the vocabulary order (first name
    most significant), so it is deterministic and duplicate-free.
    """
    if len(vocab) > max_names:
        raise ResourceLimitError(
            f"vocabulary has {len(vocab)} constants; exhaustive world "
            f"enumeration is capped at {max_names}"
        )
    worlds = []
    for bits in product((0, 1), repeat=len(vocab)):
        trues = [name for name, bit in zip(vocab.names, bits) if bit]
        worlds.append(World(vocab, trues))
    return worlds


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


class Formula:
    """Base class of the propositional syntax tree. Nodes are frozen."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Const(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = Top()
FALSE = Bottom()


def atoms(phi: Formula) -> frozenset[str]:
    """Constant names mentioned in ``phi``."""
    match phi:
        case Const(name):
            return frozenset((name,))
        case Not(sub):
            return atoms(sub)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return atoms(l) | atoms(r)
        case _:
            return frozenset()


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Fold a formula collection into one conjunction (Top when empty).

    A set of facts and the single conjunction of its members are used
    interchangeably throughout.
    """
    result: Formula | None = None
    for phi in formulas:
        result = phi if result is None else And(result, phi)
    return TRUE if result is None else result


def evaluate(phi: Formula, world: World) -> bool:
    """Standard truth-functional valuation of ``phi`` at ``world``."""
    match phi:
        case Top():
            return True
        case Bottom():
            return False
        case Const(name):
            return world.truth(name)
        case Not(sub):
            return not evaluate(sub, world)
        case And(l, r):
            return evaluate(l, world) and evaluate(r, world)
        case Or(l, r):
            return evaluate(l, world) or evaluate(r, world)
        case Implies(l, r):
            return (not evaluate(l, world)) or evaluate(r, world)
        case Iff(l, r):
            return evaluate(l, world) == evaluate(r, world)
        case _:
            raise SemanticError(f"not a formula: {phi!r}")


def models(phi: Formula, worlds: Iterable[World]) -> frozenset[World]:
    """The subset of ``worlds`` satisfying ``phi``."""
    return frozenset(w for w in worlds if evaluate(phi, w))


def entails(
    premises: Iterable[Formula],
    phi: Formula,
    vocab: Vocabulary,
    max_names: int = DEFAULT_WORLD_CAP,
) -> bool:
    """Semantic entailment by exhaustive model checking.

    Sound and complete over the finite vocabulary: true iff every world
    satisfying all premises satisfies ``phi``.
    """
    worlds = enumerate_worlds(vocab, max_names)
    antecedent = conjoin(premises)
    return all(evaluate(phi, w) for w in worlds if evaluate(antecedent, w))


def holds_throughout(phi: Formula, worlds: Iterable[World]) -> bool:
    """True when ``phi`` is satisfied by every world in the set.

    For a deductively closed theory represented by its model set this is
    exactly membership of ``phi`` in the theory (vacuously true on the
    empty set, matching the inconsistent theory containing everything).
    """
    return all(evaluate(phi, w) for w in worlds)


def satisfiable_in(phi: Formula, worlds: Iterable[World]) -> bool:
    """True when some world in the set satisfies ``phi``."""
    return any(evaluate(phi, w) for w in worlds)


# ---------------------------------------------------------------------------
# Modal premises and kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModalFormula:
    """A belief-conditional premise  L a & ~L b1 & ... & ~L bn -> g.

    ``alpha`` absent stands for an always-believed antecedent; the
    non-modal conclusion ``gamma`` is always present. All components are
    plain propositional formulas (no nesting of the belief operator).
    """

    gamma: Formula
    alpha: Formula | None = None
    betas: tuple[Formula, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.alpha is not None:
            parts.append(f"L {_modal_operand(self.alpha)}")
        parts.extend(f"~L {_modal_operand(b)}" for b in self.betas)
        if not parts:
            return format_formula(self.gamma)
        return " & ".join(parts) + " -> " + format_formula(self.gamma)


def _modal_operand(phi: Formula) -> str:
    text = format_formula(phi)
    if isinstance(phi, (Const, Top, Bottom, Not)):
        return text
    return f"({text})"


@dataclass(frozen=True)
class Kernel:
    """A deductively closed non-modal theory, held as its model set.

    The empty model set is the inconsistent theory (it contains every
    formula); consistent kernels are non-empty.
    """

    worlds: frozenset[World]
    vocab: Vocabulary

    @property
    def is_consistent(self) -> bool:
        return bool(self.worlds)

    def contains(self, phi: Formula) -> bool:
        """Membership of ``phi`` in the theory the kernel represents."""
        return holds_throughout(phi, self.worlds)

    def __repr__(self) -> str:
        return f"Kernel({sorted(self.worlds, key=World.bits)!r})"


# ---------------------------------------------------------------------------
# Concrete formula syntax
# ---------------------------------------------------------------------------
#
#   identifiers  [a-zA-Z_][a-zA-Z0-9_]*      literals  true false
#   operators    ~  &  |  ->  <->            parentheses
#
# Precedence high to low: ~, &, |, -> (right-associative), <->.
# Whitespace is insignificant; formulas never span lines in the KB formats.

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<iff><->)
      | (?P<imp>->)
      | (?P<not>~)
      | (?P<and>&)
      | (?P<or>\|)
      | (?P<lp>\()
      | (?P<rp>\))
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    """Split ``text`` into formula tokens, tracking 1-based positions.

    ``line``/``column`` locate the first character of ``text`` inside a
    larger document so errors point at the original source.
    """
    tokens = []
    pos = 0
    cur_line, cur_col = line, column
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", cur_line, cur_col)
        kind = m.lastgroup or ""
        lexeme = m.group()
        if kind != "ws":
            tokens.append(Token(kind, lexeme, cur_line, cur_col))
        newlines = lexeme.count("\n")
        if newlines:
            cur_line += newlines
            cur_col = len(lexeme) - lexeme.rfind("\n")
        else:
            cur_col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", cur_line, cur_col))
    return tokens


class _FormulaParser:
    def __init__(self, tokens: list[Token], vocab: Vocabulary | None):
        self.tokens = tokens
        self.pos = 0
        self.vocab = vocab

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            got = tok.text or "end of input"
            raise ParseError(f"expected {what}, found {got!r}", tok.line, tok.column)
        return self.take()

    def parse(self) -> Formula:
        phi = self.iff()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r} after formula", tok.line, tok.column)
        return phi

    def iff(self) -> Formula:
        phi = self.imp()
        while self.peek().kind == "iff":
            self.take()
            phi = Iff(phi, self.imp())
        return phi

    def imp(self) -> Formula:
        phi = self.disj()
        if self.peek().kind == "imp":
            self.take()
            return Implies(phi, self.imp())
        return phi

    def disj(self) -> Formula:
        phi = self.conj()
        while self.peek().kind == "or":
            self.take()
            phi = Or(phi, self.conj())
        return phi

    def conj(self) -> Formula:
        phi = self.unary()
        while self.peek().kind == "and":
            self.take()
            phi = And(phi, self.unary())
        return phi

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Not(self.unary())
        if tok.kind == "lp":
            self.take()
            phi = self.iff()
            self.expect("rp", "')'")
            return phi
        if tok.kind == "name":
            self.take()
            if tok.text == "true":
                return TRUE
            if tok.text == "false":
                return FALSE
            if self.vocab is not None and tok.text not in self.vocab:
                raise ParseError(f"unknown constant {tok.text!r}", tok.line, tok.column)
            return Const(tok.text)
        got = tok.text or "end of input"
        raise ParseError(f"expected a formula, found {got!r}", tok.line, tok.column)


def parse_formula(
    text: str,
    vocab: Vocabulary | None = None,
    line: int = 1,
    column: int = 1,
) -> Formula:
    """Parse concrete syntax into a Formula.

    With ``vocab`` given, constants outside it are rejected at the parse
    stage (with a location); without it any identifier is accepted.
    """
    return parse_tokens(tokenize(text, line, column), vocab)


def parse_tokens(tokens: list[Token], vocab: Vocabulary | None = None) -> Formula:
    return _FormulaParser(tokens, vocab).parse()


def format_formula(phi: Formula) -> str:
    """Concrete syntax for ``phi``, parenthesised only where required.

    ``parse_formula(format_formula(phi))`` reproduces ``phi`` exactly.
    """

    # min_prec is the lowest operator precedence printable without parens
    # in the current position; it encodes associativity (-> chains to the
    # right, & | <-> to the left).
    def fmt(node: Formula, min_prec: int) -> str:
        match node:
            case Top():
                return "true"
            case Bottom():
                return "false"
            case Const(name):
                return name
            case Not(sub):
                text, prec = "~" + fmt(sub, 5), 5
            case And(l, r):
                text, prec = f"{fmt(l, 4)} & {fmt(r, 5)}", 4
            case Or(l, r):
                text, prec = f"{fmt(l, 3)} | {fmt(r, 4)}", 3
            case Implies(l, r):
                text, prec = f"{fmt(l, 3)} -> {fmt(r, 2)}", 2
            case Iff(l, r):
                text, prec = f"{fmt(l, 1)} <-> {fmt(r, 2)}", 1
            case _:
                raise SemanticError(f"not a formula: {node!r}")
        return f"({text})" if prec < min_prec else text

    return fmt(phi, 0)
