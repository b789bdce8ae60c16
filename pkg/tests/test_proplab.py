import random
from collections import Counter

import pytest

from topomodal.formula import Regime
from topomodal.proplab import (
    REGISTRY,
    TheoremId,
    TrialConfig,
    instance_from_dict,
    random_model,
    random_topology,
    replay,
    run_theorem,
    shrink,
    trial_rng,
)
from topomodal.topology import discrete, sierpinski


class ZeroK(random.Random):
    """Draws k = 0 subbasis sets."""

    def randint(self, a, b):
        return a


def test_random_topology_examples():
    for seed in range(20):
        assert random_topology(random.Random(seed), 1).opens == (0, 1)
    assert random_topology(ZeroK(42), 3).opens == (0, 0b111)


def test_random_model_respects_regime():
    S = sierpinski()
    seen = {Regime.PARACONSISTENT: set(), Regime.PARACOMPLETE: set()}
    for seed in range(60):
        for regime in seen:
            m = random_model(random.Random(seed), S, regime, ("p",))
            seen[regime].add(m.value("p"))
    assert seen[Regime.PARACONSISTENT] <= set(S.closed_sets())
    assert seen[Regime.PARACOMPLETE] <= set(S.opens)
    reached = {random_model(random.Random(s), discrete("ab"), Regime.CLASSICAL, ("p",)).value("p") for s in range(60)}
    assert reached == {0, 1, 2, 3}


def test_config_validation():
    with pytest.raises(ValueError):
        TrialConfig(max_points=9)
    with pytest.raises(ValueError):
        TrialConfig(formula_depth=4)
    with pytest.raises(ValueError):
        TrialConfig(reading="sometimes")


def test_t2_2_full_pass():
    rep = run_theorem("T2_2", TrialConfig(seed=42, trials=200, max_points=5, formula_depth=3))
    assert rep.summary() == "T2_2: 200/200 pass"
    assert not rep.hard_fail


def test_c2_3_ablation_finds_small_counterexample():
    rep = run_theorem("C2_3", TrialConfig(seed=42, trials=100, ablate=frozenset({"continuity"})))
    assert rep.failed >= 1 and rep.shrunk_points <= 3
    assert replay("C2_3", rep.counterexample, TrialConfig(seed=42, ablate=frozenset({"continuity"})))


def test_c2_3_holds_for_injective_continuous_maps():
    rep = run_theorem("C2_3", TrialConfig(seed=42, trials=100, require=frozenset({"injective"})))
    assert rep.failed == 0 and rep.passed == 100


def test_p1_3_witnesses():
    rep = run_theorem("P1_3", TrialConfig(trials=5, max_points=5))
    assert rep.passed == 5
    w3 = next(w for w in rep.witnesses if w["n"] == 3)
    assert w3["bijection"] == {"a": "A", "b": "B", "c": "C"}


def test_reports_are_deterministic():
    cfg = TrialConfig(seed=7, trials=30)
    for theorem in ("C2_4", "T2_10", "T3_3"):
        assert run_theorem(theorem, cfg).to_json() == run_theorem(theorem, cfg).to_json()


def test_counterexamples_replay():
    cfg = TrialConfig(seed=42, trials=60)
    for theorem in ("C2_3", "C2_4"):
        rep = run_theorem(theorem, cfg)
        assert rep.failed
        assert replay(theorem, rep.counterexample, cfg)


def test_ablation_note_when_nothing_found():
    rep = run_theorem("T2_10", TrialConfig(seed=42, trials=10, ablate=frozenset({"respect_valuation"})))
    if rep.failed == 0:
        assert rep.notes == ["no counterexample found within 10 trials"]


def _failing_t2_7():
    cfg = TrialConfig(seed=42, ablate=frozenset({"respect_valuation"}))
    entry = REGISTRY[TheoremId.T2_7]
    inst, _ = entry.draw(trial_rng(cfg, TheoremId.T2_7, 4), cfg, 4)

    def failing(i):
        v = entry.check(i, cfg)
        return v is not None and v is not True

    return inst, failing


def test_shrink_five_points_to_at_most_three():
    inst, failing = _failing_t2_7()
    assert inst.size == 5 and failing(inst)
    small = shrink(inst, failing)
    assert small.size <= 3 and failing(small)


def test_shrink_fixpoint_and_precondition():
    inst, failing = _failing_t2_7()
    small = shrink(inst, failing)
    assert shrink(small, failing) == small
    passing = instance_from_dict(small.as_dict())
    with pytest.raises(ValueError):
        shrink(passing, lambda i: False)


def test_instance_round_trip():
    cfg = TrialConfig(seed=3)
    inst, _ = REGISTRY[TheoremId.T3_3].draw(trial_rng(cfg, TheoremId.T3_3, 0), cfg, 0)
    again = instance_from_dict(inst.as_dict())
    assert again.as_dict() == inst.as_dict()


def test_registry_classification():
    kinds = Counter(e.classification for e in REGISTRY.values())
    assert REGISTRY[TheoremId.T2_2].classification == "self-test"
    for t in (TheoremId.T2_7, TheoremId.T2_10, TheoremId.T3_3):
        assert REGISTRY[t].classification == "tested-hypothesis"
    assert kinds["self-test"] == 2


@pytest.mark.parametrize("theorem", [t.value for t in TheoremId])
def test_every_theorem_runs(theorem):
    rep = run_theorem(theorem, TrialConfig(seed=1, trials=5, max_points=3, formula_depth=2))
    assert rep.passed + rep.failed + rep.not_applicable == 5
    assert not rep.hard_fail
