"""Text formats for the four knowledge-base kinds, and their parsers.

All four formats are line based. ``#`` starts a comment, blank lines are
ignored, and an optional ``vocab:`` header fixes the constant names and
their order (required for sample spaces, whose world lines must assign
every constant). Without a header the vocabulary is inferred from the
formulas in order of first appearance. Parsers never throw anything but
:class:`~partseq.errors.ParseError`, and every rejection carries the
offending line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .autoepistemic import AelPremises
from .defaults import DefaultRule, DefaultTheory
from .errors import ParseError
from .logic import (
    And,
    Const,
    Formula,
    Iff,
    Implies,
    ModalFormula,
    Not,
    Or,
    Token,
    Vocabulary,
    World,
    format_formula,
    parse_formula,
    parse_tokens,
    tokenize,
)
from .possibility import PossibilisticKB
from .probability import SampleSpace
from .rationals import format_fraction

KB_KINDS = ("default", "ael", "prob", "poss")

_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class KbDocument:
    """A parsed knowledge base: its kind, vocabulary, typed body, and a
    map from item labels to source lines for error reporting."""

    kind: str
    vocab: Vocabulary
    body: DefaultTheory | AelPremises | SampleSpace | PossibilisticKB
    source_map: tuple[tuple[str, int], ...] = ()


def parse_kb(text: str, kind: str) -> KbDocument:
    """Parse KB text of the given kind ("default", "ael", "prob", "poss")."""
    if kind not in KB_KINDS:
        raise ValueError(f"unknown KB kind {kind!r}")
    parser = {
        "default": _parse_default,
        "ael": _parse_ael,
        "prob": _parse_prob,
        "poss": _parse_poss,
    }[kind]
    return parser(text)


def serialize_kb(doc: KbDocument) -> str:
    """Render ``doc`` back to text; parsing the result reproduces it."""
    writer = {
        "default": _write_default,
        "ael": _write_ael,
        "prob": _write_prob,
        "poss": _write_poss,
    }[doc.kind]
    return writer(doc)


# ---------------------------------------------------------------------------
# Shared line machinery
# ---------------------------------------------------------------------------


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _parse_vocab_header(line: str, lineno: int) -> Vocabulary:
    body = line.split(":", 1)[1]
    names = [n for n in re.split(r"[,\s]+", body.strip()) if n]
    if not names:
        raise ParseError("vocab header lists no constants", lineno, line.find(":") + 2)
    try:
        return Vocabulary(names)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, line.find(":") + 2) from None


def _ordered_atoms(phi: Formula, out: list[str]):
    match phi:
        case Const(name):
            if name not in out:
                out.append(name)
        case Not(sub):
            _ordered_atoms(sub, out)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            _ordered_atoms(l, out)
            _ordered_atoms(r, out)


def _infer_vocab(formulas, lineno_of_first: int) -> Vocabulary:
    names: list[str] = []
    for phi in formulas:
        _ordered_atoms(phi, names)
    try:
        return Vocabulary(names)
    except ValueError as exc:
        raise ParseError(str(exc), lineno_of_first, 1) from None


def _formula_at(
    line: str,
    lineno: int,
    start: int,
    vocab: Vocabulary | None,
    end: int | None = None,
) -> Formula:
    """Parse the formula in ``line[start:end]`` (0-based offsets)."""
    segment = line[start:end] if end is not None else line[start:]
    return parse_formula(segment, vocab, line=lineno, column=start + 1)


def _split_required(line: str, sep: str, start: int, lineno: int, what: str) -> int:
    pos = line.find(sep, start)
    if pos < 0:
        raise ParseError(f"expected {what!r} in {line.strip()!r}", lineno, len(line) + 1)
    return pos


# ---------------------------------------------------------------------------
# Default theories (.dl)
# ---------------------------------------------------------------------------
#
#   fact: <formula>
#   rule <id>: <formula> : M <formula> [, M <formula>]* / <formula>
#
# An absent prerequisite is written "true".


def _parse_default(text: str) -> KbDocument:
    vocab: Vocabulary | None = None
    fact_lines: list[tuple[int, str, int]] = []
    rule_lines: list[tuple[int, str]] = []
    first_line: int | None = None

    for lineno, line in _content_lines(text):
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if first_line is None:
            first_line = lineno
        if stripped.startswith("vocab:"):
            vocab = _parse_vocab_header(line, lineno)
        elif stripped.startswith("fact:"):
            fact_lines.append((lineno, line, indent + len("fact:")))
        elif stripped.startswith("rule"):
            rule_lines.append((lineno, line))
        else:
            raise ParseError(
                "expected a vocab:, fact:, or rule line", lineno, indent + 1
            )

    rule_spans = [(lineno, line, *_split_rule(line, lineno)) for lineno, line in rule_lines]

    # two passes when the vocabulary must be inferred: parse all formulas
    # free first, then rebuild nothing (the parsed trees already carry the
    # constants the inferred vocabulary is made of)
    def parse_all(v):
        facts = [
            _formula_at(line, lineno, start, v) for lineno, line, start in fact_lines
        ]
        rules = []
        for lineno, line, rule_id, alpha_span, just_spans, gamma_start in rule_spans:
            alpha = _formula_at(line, lineno, alpha_span[0], v, alpha_span[1])
            betas = tuple(
                _justification(line, lineno, span, v) for span in just_spans
            )
            gamma = _formula_at(line, lineno, gamma_start, v)
            rules.append((rule_id, alpha, betas, gamma, lineno))
        return facts, rules

    if vocab is None:
        fact_formulas, rule_parts = parse_all(None)
        # constants are taken in order of first appearance in the file
        by_line = [
            (lineno, (phi,))
            for (lineno, _, _), phi in zip(fact_lines, fact_formulas)
        ] + [
            (lineno, (alpha, *betas, gamma))
            for _, alpha, betas, gamma, lineno in rule_parts
        ]
        everything = [
            phi for _, group in sorted(by_line, key=lambda t: t[0]) for phi in group
        ]
        vocab = _infer_vocab(everything, first_line or 1)
    else:
        fact_formulas, rule_parts = parse_all(vocab)

    rules = []
    source_map: list[tuple[str, int]] = []
    seen_ids = set()
    for rule_id, alpha, betas, gamma, lineno in rule_parts:
        if rule_id in seen_ids:
            raise ParseError(f"duplicate rule id {rule_id!r}", lineno, 1)
        seen_ids.add(rule_id)
        rules.append(DefaultRule(rule_id, alpha, betas, gamma))
        source_map.append((f"rule {rule_id}", lineno))
    for i, (lineno, _, _) in enumerate(fact_lines, start=1):
        source_map.append((f"fact {i}", lineno))

    theory = DefaultTheory(rules=tuple(rules), facts=tuple(fact_formulas), vocab=vocab)
    return KbDocument("default", vocab, theory, tuple(source_map))


def _split_rule(line: str, lineno: int):
    """Spans of the rule id, prerequisite, justifications, and conclusion.

    Formula syntax contains no ':', ',', or '/', so plain scanning splits
    the line unambiguously.
    """
    stripped = line.lstrip()
    indent = len(line) - len(stripped)
    head_end = _split_required(line, ":", indent + 4, lineno, ":")
    rule_id = line[indent + 4 : head_end].strip()
    if not _ID_RE.match(rule_id):
        raise ParseError(f"bad rule id {rule_id!r}", lineno, indent + 5)
    alpha_end = _split_required(line, ":", head_end + 1, lineno, ":")
    slash = _split_required(line, "/", alpha_end + 1, lineno, "/")
    just_spans = []
    piece_start = alpha_end + 1
    for m in re.finditer(",", line[alpha_end + 1 : slash]):
        just_spans.append((piece_start, alpha_end + 1 + m.start()))
        piece_start = alpha_end + 1 + m.end()
    just_spans.append((piece_start, slash))
    return rule_id, (head_end + 1, alpha_end), tuple(just_spans), slash + 1


def _justification(line: str, lineno: int, span, vocab) -> Formula:
    start, end = span
    piece = line[start:end]
    lead = len(piece) - len(piece.lstrip())
    body = piece.lstrip()
    if not body.startswith("M") or (len(body) > 1 and body[1] not in " \t("):
        raise ParseError("justification must start with 'M'", lineno, start + lead + 1)
    inner_start = start + lead + 1
    return parse_formula(
        line[inner_start:end], vocab, line=lineno, column=inner_start + 1
    )


def _write_default(doc: KbDocument) -> str:
    theory = doc.body
    lines = ["vocab: " + " ".join(doc.vocab.names)]
    for phi in theory.facts:
        lines.append(f"fact: {format_formula(phi)}")
    for rule in theory.rules:
        justs = ", ".join(f"M {format_formula(b)}" for b in rule.betas)
        lines.append(
            f"rule {rule.rule_id}: {format_formula(rule.alpha)} : {justs} / "
            f"{format_formula(rule.gamma)}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Belief premises (.ael)
# ---------------------------------------------------------------------------
#
#   [L <formula>] [& ~L <formula>]* -> <formula>     belief-conditional
#   <formula>                                        plain premise
#   L <formula>  /  ~L <formula>                     bare belief assertions
#
# The formulas under L extend to the next top-level & or ->; parenthesise
# them when they contain those operators. "L" is reserved here.


def _parse_ael(text: str) -> KbDocument:
    vocab: Vocabulary | None = None
    raw: list[tuple[int, str]] = []
    for lineno, line in _content_lines(text):
        if line.lstrip().startswith("vocab:"):
            vocab = _parse_vocab_header(line, lineno)
            if "L" in vocab:
                raise ParseError("'L' is reserved in belief premises", lineno, 1)
        else:
            raw.append((lineno, line))

    shapes = [_split_premise(line, lineno) for lineno, line in raw]

    def build(v):
        premises = []
        for (lineno, _), (alpha_toks, beta_toks, gamma_toks) in zip(raw, shapes):
            alpha = parse_tokens(alpha_toks, v) if alpha_toks is not None else None
            betas = tuple(parse_tokens(ts, v) for ts in beta_toks)
            gamma = parse_tokens(gamma_toks, v)
            premises.append(ModalFormula(gamma=gamma, alpha=alpha, betas=betas))
        return premises

    if vocab is None:
        premises = build(None)
        everything = []
        for pm in premises:
            if pm.alpha is not None:
                everything.append(pm.alpha)
            everything.extend(pm.betas)
            everything.append(pm.gamma)
        vocab = _infer_vocab(everything, raw[0][0] if raw else 1)
        if "L" in vocab:
            raise ParseError(
                "'L' is reserved in belief premises", raw[0][0] if raw else 1, 1
            )
    else:
        premises = build(vocab)

    source_map = tuple((f"premise {i}", lineno) for i, (lineno, _) in enumerate(raw, 1))
    return KbDocument(
        "ael", vocab, AelPremises(tuple(premises), vocab), source_map
    )


def _terminate(tokens: list[Token]) -> list[Token]:
    if tokens:
        last = tokens[-1]
        eof = Token("eof", "", last.line, last.column + len(last.text))
    else:
        eof = Token("eof", "", 1, 1)
    return tokens + [eof]


def _modal_piece(tokens: list[Token]):
    """Match [~] L <formula tokens>; None when the piece is not modal."""
    if tokens and tokens[0].kind == "name" and tokens[0].text == "L":
        return ("pos", tokens[1:])
    if (
        len(tokens) >= 2
        and tokens[0].kind == "not"
        and tokens[1].kind == "name"
        and tokens[1].text == "L"
    ):
        return ("neg", tokens[2:])
    return None


def _split_premise(line: str, lineno: int):
    """Token spans (alpha, betas, gamma) of one premise line."""
    tokens = tokenize(line, line=lineno, column=1)[:-1]
    depth = 0
    arrow = None
    for i, tok in enumerate(tokens):
        if tok.kind == "lp":
            depth += 1
        elif tok.kind == "rp":
            depth -= 1
        elif tok.kind == "imp" and depth == 0 and arrow is None:
            arrow = i
    head = tokens[:arrow] if arrow is not None else tokens
    tail = tokens[arrow + 1 :] if arrow is not None else None

    pieces = []
    depth = 0
    current: list[Token] = []
    for tok in head:
        if tok.kind == "lp":
            depth += 1
        elif tok.kind == "rp":
            depth -= 1
        if tok.kind == "and" and depth == 0:
            pieces.append(current)
            current = []
        else:
            current.append(tok)
    pieces.append(current)

    matches = [_modal_piece(p) for p in pieces]
    if all(m is not None and m[1] for m in matches):
        alpha_toks = None
        beta_toks = []
        for piece, match in zip(pieces, matches):
            sign, inner = match
            if sign == "pos":
                if alpha_toks is not None:
                    raise ParseError(
                        "at most one positive belief condition per premise",
                        piece[0].line,
                        piece[0].column,
                    )
                alpha_toks = _terminate(inner)
            else:
                beta_toks.append(_terminate(inner))
        if tail is None:
            # bare L f  /  ~L f: the belief assertion itself, rewritten to
            # conditional form (believing f is refusing to not-believe it)
            if alpha_toks is not None and not beta_toks:
                return (None, (alpha_toks,), _terminate([_false_token(lineno)]))
            if alpha_toks is None and len(beta_toks) == 1:
                return (beta_toks[0], (), _terminate([_false_token(lineno)]))
            raise ParseError(
                "belief conditions need a '->' conclusion", lineno, len(line) + 1
            )
        return (alpha_toks, tuple(beta_toks), _terminate(tail))

    # plain non-modal premise; a stray L means a malformed conditional
    for tok in tokens:
        if tok.kind == "name" and tok.text == "L":
            raise ParseError(
                "'L' is reserved in belief premises; parenthesise or fix the "
                "belief conditions",
                tok.line,
                tok.column,
            )
    return (None, (), _terminate(tokens))


def _false_token(lineno: int) -> Token:
    return Token("name", "false", lineno, 1)


def _write_ael(doc: KbDocument) -> str:
    lines = ["vocab: " + " ".join(doc.vocab.names)]
    lines.extend(str(pm) for pm in doc.body.formulas)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Sample spaces (.prob)
# ---------------------------------------------------------------------------
#
#   vocab: p q          (required: world lines must assign every constant)
#   world p,~q : 0.3    (weights are decimals or a/b ratios)


def _parse_prob(text: str) -> KbDocument:
    vocab: Vocabulary | None = None
    worlds: list[World] = []
    source_map: list[tuple[str, int]] = []
    last_line = 1

    for lineno, line in _content_lines(text):
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        last_line = lineno
        if stripped.startswith("vocab:"):
            vocab = _parse_vocab_header(line, lineno)
        elif stripped.startswith("world"):
            if vocab is None:
                raise ParseError(
                    "sample spaces need a vocab: header before world lines",
                    lineno,
                    indent + 1,
                )
            worlds.append(_parse_world_line(line, lineno, indent, vocab))
            source_map.append((f"world {len(worlds)}", lineno))
        else:
            raise ParseError("expected a vocab: or world line", lineno, indent + 1)

    if vocab is None:
        raise ParseError("sample space has no vocab: header", last_line, 1)
    try:
        space = SampleSpace(worlds=tuple(worlds), vocab=vocab)
    except ValueError as exc:
        raise ParseError(str(exc), last_line, 1) from None
    return KbDocument("prob", vocab, space, tuple(source_map))


def _parse_world_line(line: str, lineno: int, indent: int, vocab: Vocabulary) -> World:
    colon = _split_required(line, ":", indent + 5, lineno, ":")
    lits_text = line[indent + 5 : colon]
    assigned: dict[str, bool] = {}
    offset = indent + 5
    for piece in lits_text.split(","):
        lead = len(piece) - len(piece.lstrip())
        body = piece.strip()
        col = offset + lead + 1
        offset += len(piece) + 1
        if not body:
            raise ParseError("empty literal", lineno, col)
        negated = body.startswith("~")
        name = body[1:].strip() if negated else body
        if not _ID_RE.match(name):
            raise ParseError(f"bad literal {body!r}", lineno, col)
        if name not in vocab:
            raise ParseError(f"unknown constant {name!r}", lineno, col)
        if name in assigned:
            raise ParseError(f"constant {name!r} assigned twice", lineno, col)
        assigned[name] = not negated
    missing = [n for n in vocab.names if n not in assigned]
    if missing:
        raise ParseError(
            f"world line must assign every constant; missing {', '.join(missing)}",
            lineno,
            indent + 6,
        )
    weight_text = line[colon + 1 :].strip()
    try:
        weight = Fraction(weight_text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {weight_text!r}", lineno, colon + 2) from None
    if weight < 0:
        raise ParseError(f"negative weight {weight_text}", lineno, colon + 2)
    return World(vocab, (n for n, v in assigned.items() if v), weight)


def _write_prob(doc: KbDocument) -> str:
    space = doc.body
    lines = ["vocab: " + " ".join(doc.vocab.names)]
    for w in space.worlds:
        lits = ",".join(
            n if n in w.true_names else "~" + n for n in doc.vocab.names
        )
        lines.append(f"world {lits} : {format_fraction(w.weight)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Possibilistic bases (.poss)
# ---------------------------------------------------------------------------
#
#   poss <r> : <formula>
#
# Lines sharing a value form one level; levels are sorted on load.


def _parse_poss(text: str) -> KbDocument:
    vocab: Vocabulary | None = None
    entries: list[tuple[Fraction, int, str, int]] = []
    first_line = 1

    for lineno, line in _content_lines(text):
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if stripped.startswith("vocab:"):
            vocab = _parse_vocab_header(line, lineno)
            continue
        if not stripped.startswith("poss"):
            raise ParseError("expected a vocab: or poss line", lineno, indent + 1)
        colon = _split_required(line, ":", indent + 4, lineno, ":")
        value_text = line[indent + 4 : colon].strip()
        try:
            value = Fraction(value_text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(
                f"bad possibility value {value_text!r}", lineno, indent + 6
            ) from None
        if not 0 <= value <= 1:
            raise ParseError(
                f"possibility value {value_text} outside [0, 1]", lineno, indent + 6
            )
        entries.append((value, lineno, line, colon + 1))
        if len(entries) == 1:
            first_line = lineno

    if not entries:
        raise ParseError("possibilistic base has no poss lines", first_line, 1)

    def build(v):
        by_value: dict[Fraction, set[Formula]] = {}
        for value, lineno, line, start in entries:
            by_value.setdefault(value, set()).add(_formula_at(line, lineno, start, v))
        levels = tuple(
            (frozenset(by_value[value]), value) for value in sorted(by_value)
        )
        return levels

    if vocab is None:
        formulas = [
            _formula_at(line, lineno, start, None)
            for _, lineno, line, start in entries
        ]
        vocab = _infer_vocab(formulas, first_line)
    levels = build(vocab)

    source_map = tuple(
        (f"poss {format_fraction(value)}", lineno) for value, lineno, _, _ in entries
    )
    try:
        kb = PossibilisticKB(levels=levels, vocab=vocab)
    except ValueError as exc:
        raise ParseError(str(exc), first_line, 1) from None
    return KbDocument("poss", vocab, kb, source_map)


def _write_poss(doc: KbDocument) -> str:
    lines = ["vocab: " + " ".join(doc.vocab.names)]
    for formulas, value in doc.body.levels:
        for phi in sorted(formulas, key=format_formula):
            lines.append(f"poss {format_fraction(value)} : {format_formula(phi)}")
    return "\n".join(lines) + "\n"
