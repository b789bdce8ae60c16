import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import naive_formulas, random_formula
from topomodal.errors import FormulaSyntaxError, InputError
from topomodal.formula import (
    And,
    Atom,
    Bot,
    Box,
    Diamond,
    Implies,
    NegClosed,
    NotClassical,
    Or,
    Regime,
    Top,
    atoms,
    enumerate_formulas,
    modal_depth,
    parse,
    size,
    to_text,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_parse_examples():
    assert parse("[]p & <>q") == And(Box(p), Diamond(q))
    assert parse("~(p | ~q)") == NegClosed(Or(p, NegClosed(q)))
    with pytest.raises(FormulaSyntaxError) as e:
        parse("p ->")
    assert e.value.column == 5 and e.value.line == 1


def test_print_examples():
    assert to_text(Box(p)) == "[]p"
    assert to_text(Implies(p, Implies(q, r))) == "p -> q -> r"
    assert to_text(And(Or(p, q), r)) == "(p | q) & r"
    assert to_text(Implies(Implies(p, q), r)) == "(p -> q) -> r"


def test_precedence():
    assert parse("!p & q") == And(NotClassical(p), q)
    assert parse("p | q & r") == Or(p, And(q, r))
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("[]<>~p") == Box(Diamond(NegClosed(p)))
    assert parse("top | bot") == Or(Top(), Bot())


@pytest.mark.parametrize(
    "text, col",
    [("", 1), ("p q", 3), ("(p", 3), ("p & & q", 5), ("P", 1), ("p $ q", 3), ("[p", 1)],
)
def test_syntax_errors_have_positions(text, col):
    with pytest.raises(FormulaSyntaxError) as e:
        parse(text)
    assert e.value.column == col


def test_syntax_error_line_tracking():
    with pytest.raises(FormulaSyntaxError) as e:
        parse("p &\n  | q")
    assert (e.value.line, e.value.column) == (2, 3)


def test_reserved_names_are_not_atoms():
    with pytest.raises(InputError):
        Atom("top")


def test_measures():
    f = parse("[](p & <>q) | r")
    assert modal_depth(f) == 2 and size(f) == 7 and atoms(f) == {"p", "q", "r"}


def test_round_trip_1000_seeded():
    rng = random.Random(42)
    for _ in range(1000):
        f = random_formula(rng)
        assert parse(to_text(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_property(seed):
    f = random_formula(random.Random(seed), 5)
    text = to_text(f)
    assert parse(text) == f
    assert to_text(parse(text)) == text


def test_enumeration_examples():
    classical = enumerate_formulas(["p"], 0, Regime.CLASSICAL, 2)
    assert {p, NotClassical(p), Top(), Bot()} <= set(classical)
    pc = set(enumerate_formulas(["p"], 1, Regime.PARACONSISTENT, 3))
    assert Box(p) in pc and Diamond(NegClosed(p)) in pc
    assert not any("!" in to_text(f) for f in pc)


@pytest.mark.parametrize("regime", list(Regime))
@pytest.mark.parametrize("depth, cap", [(0, 4), (1, 3), (1, 5), (2, 5)])
def test_enumeration_matches_naive_generator(regime, depth, cap):
    got = list(enumerate_formulas(["p", "q"], depth, regime, cap))
    want = naive_formulas(["p", "q"], depth, regime.unary, regime.binary, cap)
    assert len(got) == len(set(got))
    assert set(got) == set(want)


def test_enumeration_respects_caps():
    for f in enumerate_formulas(["p"], 2, Regime.PARACOMPLETE, 6):
        assert modal_depth(f) <= 2 and size(f) <= 6
        assert "~" not in to_text(f)
