"""Modal formulas with three negations: parser, printer, enumerator.

Concrete syntax (ASCII)::

    formula := atom | top | bot | !f | ~f | @f | []f | <>f
             | f & f | f | f | f -> f | ( f )

Unary operators bind tightest, then ``&``, ``|`` and ``->``.  ``&`` and ``|``
associate to the left, ``->`` to the right.  ``!`` is classical negation,
``~`` the closed complement and ``@`` the open complement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

from .errors import FormulaSyntaxError, InputError

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED = {"top", "bot"}


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not ATOM_RE.match(self.name) or self.name in RESERVED:
            raise InputError(f"bad atom name {self.name!r}")


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class NotClassical:
    sub: "Formula"


@dataclass(frozen=True)
class NegClosed:
    sub: "Formula"


@dataclass(frozen=True)
class NegOpen:
    sub: "Formula"


@dataclass(frozen=True)
class Box:
    sub: "Formula"


@dataclass(frozen=True)
class Diamond:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Top, Bot, NotClassical, NegClosed, NegOpen, Box, Diamond, And, Or, Implies]

UNARY = {NotClassical: "!", NegClosed: "~", NegOpen: "@", Box: "[]", Diamond: "<>"}
BINARY = {And: "&", Or: "|", Implies: "->"}
SYMBOL = {**UNARY, **BINARY}

# binding strength; higher binds tighter
_PREC = {Implies: 1, Or: 2, And: 3}
_UNARY_PREC = 4


def modal_depth(f: Formula) -> int:
    t = type(f)
    if t in (Box, Diamond):
        return 1 + modal_depth(f.sub)
    if t in UNARY:
        return modal_depth(f.sub)
    if t in BINARY:
        return max(modal_depth(f.left), modal_depth(f.right))
    return 0


def size(f: Formula) -> int:
    t = type(f)
    if t in UNARY:
        return 1 + size(f.sub)
    if t in BINARY:
        return 1 + size(f.left) + size(f.right)
    return 1


def atoms(f: Formula) -> set[str]:
    t = type(f)
    if t is Atom:
        return {f.name}
    if t in UNARY:
        return atoms(f.sub)
    if t in BINARY:
        return atoms(f.left) | atoms(f.right)
    return set()


def connectives(f: Formula) -> set[str]:
    t = type(f)
    if t in UNARY:
        return {UNARY[t]} | connectives(f.sub)
    if t in BINARY:
        return {BINARY[t]} | connectives(f.left) | connectives(f.right)
    return set()


# ---------------------------------------------------------------- printing


def to_text(f: Formula) -> str:
    """Canonical text with the fewest parentheses that still round-trips."""
    return _show(f, 0)


def _show(f: Formula, ctx: int) -> str:
    t = type(f)
    if t is Atom:
        return f.name
    if t is Top:
        return "top"
    if t is Bot:
        return "bot"
    if t in UNARY:
        return UNARY[t] + _show(f.sub, _UNARY_PREC)
    prec = _PREC[t]
    if t is Implies:
        text = f"{_show(f.left, prec + 1)} -> {_show(f.right, prec)}"
    else:
        text = f"{_show(f.left, prec)} {BINARY[t]} {_show(f.right, prec + 1)}"
    return f"({text})" if prec < ctx else text


# ----------------------------------------------------------------- parsing

_OPERATORS = ("[]", "<>", "->", "!", "~", "@", "&", "|", "(", ")")
_WORD_RE = re.compile(r"[a-z][a-z0-9_]*")


def _tokenize(text: str):
    """Yield ``(kind, value, line, col)``; operators are their own kind."""
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        op = next((o for o in _OPERATORS if text.startswith(o, i)), None)
        if op:
            yield (op, op, line, col)
        else:
            m = _WORD_RE.match(text, i)
            if m:
                op = m.group()
                yield (op if op in RESERVED else "atom", op, line, col)
            else:
                op = ch
                yield ("bad", ch, line, col)
        col, i = col + len(op), i + len(op)
    yield ("EOF", "end of input", line, col)


_PREFIX = {"!": NotClassical, "~": NegClosed, "@": NegOpen, "[]": Box, "<>": Diamond}


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected):
        kind, value, line, col = self.tok
        found = "end of input" if kind == "EOF" else repr(value)
        raise FormulaSyntaxError(line, col, expected, found)

    def parse(self) -> Formula:
        f = self.implication()
        if self.tok[0] != "EOF":
            self.fail({"&", "|", "->", "end of input"})
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.tok[0] == "->":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.tok[0] == "|":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.tok[0] == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value = self.tok[0], self.tok[1]
        if kind in _PREFIX:
            self.i += 1
            return _PREFIX[kind](self.unary())
        if kind == "atom":
            self.i += 1
            return Atom(value)
        if kind == "top":
            self.i += 1
            return Top()
        if kind == "bot":
            self.i += 1
            return Bot()
        if kind == "(":
            self.i += 1
            f = self.implication()
            if self.tok[0] != ")":
                self.fail({"&", "|", "->", ")"})
            self.i += 1
            return f
        self.fail({"atom", "top", "bot", "(", *_PREFIX})


def parse(text: str) -> Formula:
    """Parse formula text; raises :class:`FormulaSyntaxError` with position."""
    return _Parser(text).parse()


# ------------------------------------------------------------- enumeration


class Regime(Enum):
    CLASSICAL = "classical"
    PARACONSISTENT = "paraconsistent"
    PARACOMPLETE = "paracomplete"

    @property
    def unary(self) -> tuple[type, ...]:
        neg = {"classical": NotClassical, "paraconsistent": NegClosed, "paracomplete": NegOpen}
        return (neg[self.value], Box, Diamond)

    @property
    def binary(self) -> tuple[type, ...]:
        return (And, Or, Implies) if self is Regime.CLASSICAL else (And, Or)

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(SYMBOL[c] for c in self.unary + self.binary)


def enumerate_formulas(
    atom_names: Iterable[str],
    depth: int,
    regime: Regime,
    size_cap: int,
) -> Iterator[Formula]:
    """Stream every formula legal in ``regime`` up to a modal depth and node count."""
    return enumerate_with(atom_names, depth, regime.unary, regime.binary, size_cap)


def enumerate_with(
    atom_names: Iterable[str],
    depth: int,
    unary: Iterable[type],
    binary: Iterable[type],
    size_cap: int,
) -> Iterator[Formula]:
    """All formulas over the given connectives, ordered by size, without repeats.

    Within one size the order is: atoms (as given), ``top``, ``bot``, then each
    unary connective over the previous size, then each binary connective over
    every split of the remaining nodes.  The order is fixed by the arguments.
    """
    if depth < 0 or size_cap < 0:
        return
    unary = tuple(unary)
    binary = tuple(binary)
    # by_size[k] holds (formula, modal depth) pairs of node count k
    by_size: list[list[tuple[Formula, int]]] = [[]]
    for k in range(1, size_cap + 1):
        level: list[tuple[Formula, int]] = []
        if k == 1:
            level = [(Atom(a), 0) for a in atom_names] + [(Top(), 0), (Bot(), 0)]
        else:
            for op in unary:
                bump = 1 if op in (Box, Diamond) else 0
                for g, d in by_size[k - 1]:
                    if d + bump <= depth:
                        level.append((op(g), d + bump))
            for op in binary:
                for i in range(1, k - 1):
                    for g, dg in by_size[i]:
                        for h, dh in by_size[k - 1 - i]:
                            level.append((op(g, h), max(dg, dh)))
        by_size.append(level)
        for g, _ in level:
            yield g
