import pytest
from hypothesis import given, settings

from strategies import models, naive_eval
from topomodal.errors import ConnectiveNotInRegime, RegimeViolation, UnknownAtom, UnknownPoint
from topomodal.formula import And, Atom, Or, Regime, enumerate_formulas, parse
from topomodal.semantics import Evaluator, extension, new_model, satisfies, valid
from topomodal.topology import discrete, sierpinski, validate

S = sierpinski()
PC = new_model(S, "paraconsistent", {"p": ["a"], "q": []})
PK = new_model(S, "paracomplete", {"p": ["b"]})


def ext(m, text):
    return set(m.topology.labels(extension(m, parse(text))))


def test_new_model_examples():
    assert PC.value("p") == S.mask("a")
    with pytest.raises(RegimeViolation) as e:
        new_model(S, "paraconsistent", {"p": ["b"]})
    assert e.value.details["atom"] == "p" and e.value.details["expected"] == "closed"
    new_model(S, "paracomplete", {"p": ["b"]})
    with pytest.raises(RegimeViolation):
        new_model(S, "paracomplete", {"p": ["a"]})


def test_paraconsistent_glut_and_no_explosion():
    assert ext(PC, "p & ~p") == {"a"}
    assert ext(PC, "q") == set()
    assert satisfies(PC, "a", parse("p & ~p"))
    assert not satisfies(PC, "a", parse("q"))


def test_paracomplete_gap():
    assert ext(PK, "p | @p") == {"b"}
    assert not valid(PK, parse("p | @p"))
    assert ext(PK, "@p") == set()


def test_modal_operators():
    assert ext(PC, "[]p") == set()
    assert ext(PC, "<>p") == {"a"}
    assert ext(PK, "<>p") == {"a", "b"}
    assert ext(PC, "top") == {"a", "b"} and ext(PC, "bot") == set()


def test_regime_errors():
    with pytest.raises(ConnectiveNotInRegime):
        extension(PC, parse("!p"))
    with pytest.raises(ConnectiveNotInRegime):
        extension(PC, parse("p -> p"))
    with pytest.raises(ConnectiveNotInRegime):
        extension(PK, parse("~p"))
    with pytest.raises(UnknownAtom):
        extension(PC, parse("r"))
    with pytest.raises(UnknownPoint):
        satisfies(PC, "z", parse("p"))


def test_classical_implication_is_sugar():
    m = new_model(S, "classical", {"p": ["a"], "q": ["b"]})
    assert ext(m, "p -> q") == ext(m, "!p | q") == {"b"}


def test_evaluator_memo_is_per_object():
    ev = Evaluator(PC)
    f = parse("<>p | []~p")
    assert ev(f) == ev(parse("<>p | []~p"))


@settings(max_examples=120, deadline=None)
@given(models())
def test_agrees_with_label_set_oracle(m):
    ev = Evaluator(m, check=False)
    for f in enumerate_formulas(m.atoms, 2, m.regime, 4):
        assert set(m.topology.labels(ev(f))) == naive_eval(m, f)


def _is_legal(m, e):
    return m.topology.is_closed(e) if m.regime is Regime.PARACONSISTENT else m.topology.is_open(e)


@settings(max_examples=80, deadline=None)
@given(models(regimes=[Regime.PARACONSISTENT, Regime.PARACOMPLETE]))
def test_regime_closure_without_the_dual_modality(m):
    # [] keeps paraconsistent extensions closed only when it is absent; dually for <> and openness
    dual = "[]" if m.regime is Regime.PARACONSISTENT else "<>"
    ev = Evaluator(m, check=False)
    for f in enumerate_formulas(m.atoms, 2, m.regime, 5):
        if dual not in _t(f):
            assert _is_legal(m, ev(f))


def test_interior_of_a_closed_set_need_not_be_closed():
    T = validate("abc", [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]])
    m = new_model(T, "paraconsistent", {"q": ["a", "c"]})
    assert ext(m, "[]q") == {"a"}
    assert not T.is_closed(extension(m, parse("[]q")))
    k = new_model(T, "paracomplete", {"q": ["a"]})
    assert ext(k, "<>q") == {"a", "c"}
    assert not T.is_open(extension(k, parse("<>q")))


def test_discrete_classical_modalities_collapse():
    m = new_model(discrete("abc"), "classical", {"p": ["a"], "q": ["b", "c"]})
    for f in enumerate_formulas(m.atoms, 1, m.regime, 4):
        e = extension(m, f)
        assert extension(m, parse(f"[]({_t(f)})")) == e == extension(m, parse(f"<>({_t(f)})"))


def _t(f):
    from topomodal.formula import to_text

    return to_text(f)


@settings(max_examples=80, deadline=None)
@given(models())
def test_monotone_connectives(m):
    ev = Evaluator(m, check=False)
    fs = list(enumerate_formulas(m.atoms, 1, m.regime, 3))
    for f in fs[:12]:
        for g in fs[:12]:
            a = ev(f)
            both, either = ev(And(f, g)), ev(Or(f, g))
            assert both & ~a == 0 and a & ~either == 0


@settings(max_examples=100, deadline=None)
@given(models(regimes=[Regime.PARACONSISTENT]))
def test_boundary_points_are_gluts(m):
    T = m.topology
    glut = extension(m, And(Atom("p"), parse("~p")))
    assert T.boundary(m.value("p")) & ~glut == 0


@settings(max_examples=100, deadline=None)
@given(models(regimes=[Regime.PARACOMPLETE]))
def test_boundary_points_are_gaps(m):
    T = m.topology
    covered = extension(m, Or(Atom("p"), parse("@p")))
    assert T.boundary(m.value("p")) & covered == 0
