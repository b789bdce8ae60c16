"""Randomized theorem laboratory.

Each registry entry draws instances meeting a theorem's hypotheses, checks
the conclusion by exhaustive formula sweep and, on failure, shrinks the
instance.  Entries classed ``self-test`` follow by plain structural reasoning,
so a counterexample there means an implementation bug (``hard_fail``).
Entries classed ``tested-hypothesis`` report counterexamples as findings.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .errors import ChainNotFound, RegimeViolation, TopoModalError
from .formula import Regime, enumerate_formulas
from .homotopy import (
    HomotopyChain,
    _neighbours,
    find_chain,
    generate_family,
    verify_homotopy_invariance,
    verify_isotopy,
)
from .mappings import (
    DEFAULT_SIZE_CAP,
    Direction,
    PointMap,
    Reading,
    admissible,
    classify,
    compare,
    find_homeomorphism,
    inverse_continuous,
    is_continuous,
    open_witness,
    pushforward_masks,
    transport,
    verify_preservation,
)
from .bisim import verify_homeo_topo_bisim
from .semantics import TopoModel, model_from_masks
from .topology import FiniteTopology, close_family, discrete, members

SOURCE_LABELS = "abcdefgh"
TARGET_LABELS = "ABCDEFGH"
ATOMS = ("p", "q")


class TheoremId(Enum):
    P1_3 = "P1_3"
    T2_2 = "T2_2"
    C2_3 = "C2_3"
    C2_4 = "C2_4"
    T2_7 = "T2_7"
    C2_8 = "C2_8"
    C2_9 = "C2_9"
    T2_10 = "T2_10"
    T2_11 = "T2_11"
    T2_12 = "T2_12"
    T3_3 = "T3_3"


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 42
    trials: int = 100
    max_points: int = 5
    formula_depth: int = 3
    reading: str = "global"
    size_cap: int = DEFAULT_SIZE_CAP
    ablate: frozenset[str] = frozenset()
    require: frozenset[str] = frozenset()

    def __post_init__(self):
        if not 1 <= self.max_points <= 8:
            raise ValueError("max_points must lie in 1..8")
        if not 0 <= self.formula_depth <= 3:
            raise ValueError("formula_depth must lie in 0..3")
        if self.reading not in ("global", "pointwise", "both"):
            raise ValueError(f"unknown reading {self.reading!r}")

    @property
    def readings(self) -> list[Reading]:
        if self.reading == "both":
            return [Reading.POINTWISE, Reading.GLOBAL]
        return [Reading(self.reading)]

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ablate"] = sorted(self.ablate)
        d["require"] = sorted(self.require)
        return d


# -------------------------------------------------------------- generators


def random_topology(rng: random.Random, n: int, labels: str = SOURCE_LABELS) -> FiniteTopology:
    """Topology generated by ``k`` random subsets, ``k`` uniform in ``[0, 2n]``."""
    k = rng.randint(0, 2 * n)
    subbasis = [rng.getrandbits(n) for _ in range(k)]
    return FiniteTopology(tuple(labels[:n]), close_family(n, subbasis))


def legal_sets(T: FiniteTopology, regime: Regime) -> list[int]:
    if regime is Regime.PARACONSISTENT:
        return list(T.closed_sets())
    if regime is Regime.PARACOMPLETE:
        return list(T.opens)
    return list(range(1 << T.n))


def random_model(rng: random.Random, T: FiniteTopology, regime: Regime, atoms: Sequence[str] = ATOMS) -> TopoModel:
    family = legal_sets(T, regime)
    return model_from_masks(T, regime, {a: rng.choice(family) for a in atoms})


def random_atoms(rng: random.Random) -> tuple[str, ...]:
    return ATOMS[: rng.randint(1, len(ATOMS))]


def random_map(rng: random.Random, n: int, m: int) -> tuple[int, ...]:
    return tuple(rng.randrange(m) for _ in range(n))


def random_continuous(rng: random.Random, source: TopoModel, target: FiniteTopology, tries: int = 200) -> PointMap:
    for _ in range(tries):
        f = PointMap(source, target, random_map(rng, source.topology.n, target.n))
        if is_continuous(f):
            return f
    return PointMap(source, target, (rng.randrange(target.n),) * source.topology.n)


def random_permutation(rng: random.Random, n: int) -> tuple[int, ...]:
    perm = list(range(n))
    rng.shuffle(perm)
    return tuple(perm)


def homeomorphic_copy(rng: random.Random, model: TopoModel) -> tuple[TopoModel, PointMap]:
    """Model transported along a random carrier permutation, and the permutation as a map."""
    perm = random_permutation(rng, model.topology.n)
    copy = transport(model, perm)
    return copy, PointMap(model, copy.topology, perm)


# --------------------------------------------------------------- instances


@dataclass(frozen=True)
class Instance:
    """A candidate counterexample: source model, target space, maps."""

    source: TopoModel
    target: FiniteTopology
    maps: tuple[tuple[int, ...], ...]
    target_model: TopoModel | None = None

    @property
    def size(self) -> int:
        return self.source.topology.n

    def point_map(self, k: int = 0) -> PointMap:
        return PointMap(self.source, self.target, self.maps[k])

    def as_dict(self) -> dict:
        S, T = self.source.topology, self.target
        d = {
            "regime": self.source.regime.value,
            "source": {
                "points": list(S.points),
                "opens": [S.labels(u) for u in S.opens],
                "valuation": self.source.valuation_labels(),
            },
            "target": {"points": list(T.points), "opens": [T.labels(u) for u in T.opens]},
            "maps": [{S.points[i]: T.points[j] for i, j in enumerate(m)} for m in self.maps],
        }
        if self.target_model is not None:
            d["target"]["valuation"] = self.target_model.valuation_labels()
        return d


def instance_from_dict(d: dict) -> Instance:
    from .topology import validate

    regime = Regime(d["regime"])
    S = validate(d["source"]["points"], d["source"]["opens"])
    T = validate(d["target"]["points"], d["target"]["opens"])
    src = model_from_masks(S, regime, {a: S.mask(v) for a, v in d["source"]["valuation"].items()})
    maps = tuple(tuple(T.index(m[p]) for p in S.points) for m in d["maps"])
    tm = None
    if "valuation" in d["target"]:
        tm = model_from_masks(T, regime, {a: T.mask(v) for a, v in d["target"]["valuation"].items()})
    return Instance(src, T, maps, tm)


def _drop_source_point(inst: Instance, i: int) -> Instance:
    S = inst.source.topology
    keep = S.whole & ~(1 << i)
    sub = S.subspace(keep)
    idx = {old: new for new, old in enumerate(members(keep))}

    def restrict(mask):
        return sum(1 << idx[k] for k in members(mask & keep))

    src = model_from_masks(sub, inst.source.regime, {a: restrict(m) for a, m in inst.source.valuation})
    maps = tuple(tuple(m[k] for k in range(S.n) if k != i) for m in inst.maps)
    return Instance(src, inst.target, maps, None)


def _drop_target_point(inst: Instance, j: int) -> Instance:
    T = inst.target
    keep = T.whole & ~(1 << j)
    idx = {old: new for new, old in enumerate(members(keep))}
    maps = tuple(tuple(idx[k] for k in m) for m in inst.maps)
    return Instance(inst.source, T.subspace(keep), maps, None)


def _with_valuation(inst: Instance, val: dict) -> Instance:
    src = model_from_masks(inst.source.topology, inst.source.regime, val)
    return Instance(src, inst.target, inst.maps, None)


def _candidates(inst: Instance):
    S, T = inst.source.topology, inst.target
    if S.n > 1:
        for i in range(S.n):
            yield _drop_source_point(inst, i)
    used = set().union(*map(set, inst.maps))
    if T.n > 1:
        for j in range(T.n):
            if j not in used:
                yield _drop_target_point(inst, j)
    val = dict(inst.source.valuation)
    if len(val) > 1:
        for a in sorted(val):
            yield _with_valuation(inst, {b: m for b, m in val.items() if b != a})
    for a in sorted(val):
        if val[a]:
            yield _with_valuation(inst, {**val, a: 0})


def shrink(inst: Instance, failing: Callable[[Instance], bool]) -> Instance:
    """Greedy removal of points and valuation content while ``failing`` stays true.

    The result is minimal under single-step removals.  A passing input is a
    precondition violation.
    """
    if not failing(inst):
        raise ValueError("shrink needs a failing instance")
    improved = True
    while improved:
        improved = False
        for cand in _candidates(inst):
            if failing(cand):
                inst = cand
                improved = True
                break
    return inst


# ------------------------------------------------------- theorem checkers

# A checker returns ``None`` when the instance does not meet the (possibly
# ablated) hypotheses, ``True`` when the conclusion holds, and a detail dict
# describing the failure otherwise.
Check = Callable[[Instance, TrialConfig], object]


def _safe(fn):
    def wrapped(inst, cfg):
        try:
            return fn(inst, cfg)
        except (RegimeViolation, ChainNotFound):
            return None
    return wrapped


@_safe
def check_t2_2(inst: Instance, cfg: TrialConfig):
    f = inst.point_map()
    if not classify(f).homeomorphism:
        return None
    for reading in cfg.readings:
        rep = verify_preservation(f, cfg.formula_depth, Direction.BOTH, reading, cfg.size_cap)
        if not rep.ok:
            return {"reading": reading.value, **rep.counterexample}
    return True


def _directional(direction: Direction, hypothesis: str):
    @_safe
    def check(inst: Instance, cfg: TrialConfig):
        f = inst.point_map()
        if hypothesis not in cfg.ablate:
            if hypothesis == "continuity" and not is_continuous(f):
                return None
            if hypothesis == "openness" and open_witness(f, "closed" if f.source.regime is Regime.PARACONSISTENT else "open") is not None:
                return None
        if "injective" in cfg.require and not f.injective:
            return None
        if not admissible(f):
            return None
        for reading in cfg.readings:
            rep = verify_preservation(f, cfg.formula_depth, direction, reading, cfg.size_cap)
            if not rep.ok:
                return {"reading": reading.value, **rep.counterexample}
        return True

    return check


check_c2_3 = _directional(Direction.FORWARD, "continuity")
check_c2_4 = _directional(Direction.BACKWARD, "openness")


def _homotopy_setup(inst: Instance, cfg: TrialConfig):
    f, g = inst.point_map(0), inst.point_map(1)
    if not (is_continuous(f) and is_continuous(g)):
        return None
    if "respect_valuation" not in cfg.ablate and pushforward_masks(f) != pushforward_masks(g):
        return None
    if "onto" in cfg.require and (f.range != inst.target.whole or g.range != inst.target.whole):
        return None
    chain = find_chain(f, g, budget=10**5)
    return generate_family(chain)


@_safe
def check_t2_7(inst: Instance, cfg: TrialConfig):
    family = _homotopy_setup(inst, cfg)
    if family is None:
        return None
    for reading in cfg.readings:
        rep = verify_homotopy_invariance(family, cfg.formula_depth, reading, cfg.size_cap, limit=1)
        if not rep.ok:
            return {"reading": reading.value, "steps": family.chain.steps, **rep.examples[0]}
    return True


@_safe
def check_c2_8(inst: Instance, cfg: TrialConfig):
    family = _homotopy_setup(inst, cfg)
    if family is None:
        return None
    for reading in cfg.readings:
        rep = verify_homotopy_invariance(family, cfg.formula_depth, reading, cfg.size_cap, limit=0)
        bad = [k for k, c in enumerate(rep.source_forward_failures) if c]
        if bad:
            return {"reading": reading.value, "step": bad[0], "forward_failures": rep.source_forward_failures[bad[0]]}
    return True


@_safe
def check_c2_9(inst: Instance, cfg: TrialConfig):
    family = _homotopy_setup(inst, cfg)
    if family is None:
        return None
    chain = family.chain
    src = inst.source
    for reading in cfg.readings:
        for k in (0, chain.steps):
            formulas = enumerate_formulas(src.atoms, cfg.formula_depth, src.regime, cfg.size_cap)
            pairs = list(enumerate(family.onto[k].images))
            count, cex = compare(src, family.models[k], pairs, formulas, Direction.FORWARD, reading)
            direct = verify_preservation(chain.maps[k], cfg.formula_depth, Direction.FORWARD, reading, cfg.size_cap)
            if (count, cex) != (direct.formulas_checked, direct.counterexample):
                return {"reading": reading.value, "step": k, "family": cex, "direct": direct.counterexample}
    return True


@_safe
def check_t2_10(inst: Instance, cfg: TrialConfig):
    chain = HomotopyChain.from_images(inst.source, inst.target, inst.maps)
    if "respect_valuation" not in cfg.ablate:
        pushed = [pushforward_masks(f) for f in chain.maps]
        if any(p != pushed[0] for p in pushed):
            return None
    for reading in cfg.readings:
        rep = verify_isotopy(chain, cfg.formula_depth, reading, cfg.size_cap)
        if rep.failure is not None:
            return None
        if not rep.ok:
            inv = rep.invariance or {}
            return {
                "reading": reading.value,
                "examples": inv.get("examples", [])[:1],
                "endpoint": rep.endpoint_model,
            }
    return True


@_safe
def check_t3_3(inst: Instance, cfg: TrialConfig):
    f = PointMap(inst.source, inst.target, inst.maps[0])
    target = inst.target_model or model_from_masks(inst.target, inst.source.regime, pushforward_masks(f))
    rep = verify_homeo_topo_bisim(inst.source, target, f, cfg.formula_depth, cfg.size_cap)
    if not rep.ok:
        return None
    if not rep.sweep["validity_preserved"]:
        return {"counterexample": rep.sweep["counterexample"]}
    return True


# ------------------------------------------------------- instance drawing


def _draw_source(rng: random.Random, cfg: TrialConfig, regime: Regime) -> TopoModel:
    n = rng.randint(1, cfg.max_points)
    return random_model(rng, random_topology(rng, n), regime, random_atoms(rng))


def draw_t2_2(rng, cfg, idx):
    regime = list(Regime)[idx % 3]
    src = _draw_source(rng, cfg, regime)
    copy, f = homeomorphic_copy(rng, src)
    return Instance(src, copy.topology, (f.images,), copy)


def draw_directional(rng, cfg, idx, regime=Regime.PARACONSISTENT, hypothesis="continuity"):
    """Map between two topologies on one carrier; redraw until the hypotheses hold."""
    refused = 0
    for _ in range(1000):
        src = _draw_source(rng, cfg, regime)
        T = random_topology(rng, src.topology.n)
        if hypothesis in cfg.ablate:
            f = PointMap(src, T, random_map(rng, src.topology.n, T.n))
        elif hypothesis == "continuity":
            f = random_continuous(rng, src, T)
            if not is_continuous(f):
                continue
        else:
            f = _random_open(rng, src, T)
            if f is None:
                continue
        if "injective" in cfg.require and not f.injective:
            perm = random_permutation(rng, T.n)
            f = PointMap(src, T, perm)
            if hypothesis not in cfg.ablate and not _meets(f, hypothesis):
                continue
        if not admissible(f):
            refused += 1
            continue
        return Instance(src, T, (f.images,)), refused
    return None, refused


def _meets(f: PointMap, hypothesis: str) -> bool:
    if hypothesis == "continuity":
        return is_continuous(f)
    conv = "closed" if f.source.regime is Regime.PARACONSISTENT else "open"
    return open_witness(f, conv) is None


def _random_open(rng, src, T, tries=200):
    conv = "closed" if src.regime is Regime.PARACONSISTENT else "open"
    for _ in range(tries):
        f = PointMap(src, T, random_map(rng, src.topology.n, T.n))
        if open_witness(f, conv) is None:
            return f
    return None


def _walk(rng, f: PointMap, steps: int, keep: Callable[[PointMap], bool]) -> PointMap:
    """Random walk along comparable continuous neighbours satisfying ``keep``."""
    h = f
    for _ in range(steps):
        options = []
        for nb in _neighbours(f.target, h.images):
            g = PointMap(f.source, f.target, nb)
            if is_continuous(g) and keep(g):
                options.append(g)
        if not options:
            break
        h = rng.choice(options)
    return h


def draw_homotopy(rng, cfg, idx, regime=Regime.PARACONSISTENT):
    refused = 0
    for _ in range(1000):
        src = _draw_source(rng, cfg, regime)
        T = random_topology(rng, rng.randint(1, cfg.max_points), TARGET_LABELS)
        f = random_continuous(rng, src, T)
        if not is_continuous(f) or not admissible(f):
            refused += 1
            continue
        if "onto" in cfg.require and f.range != T.whole:
            refused += 1
            continue
        base = pushforward_masks(f)

        def keep(g):
            if not admissible(g):
                return False
            if "onto" in cfg.require and g.range != T.whole:
                return False
            return "respect_valuation" in cfg.ablate or pushforward_masks(g) == base

        g = _walk(rng, f, rng.randint(1, 3), keep)
        return Instance(src, T, (f.images, g.images)), refused
    return None, refused


def draw_isotopy(rng, cfg, idx, regime=Regime.PARACONSISTENT):
    src = _draw_source(rng, cfg, regime)
    copy, f = homeomorphic_copy(rng, src)
    T = copy.topology
    base = pushforward_masks(f)

    def is_homeo(g):
        return g.bijective and is_continuous(g) and inverse_continuous(g)

    maps = [f.images]
    h = f
    for _ in range(rng.randint(1, 3)):
        options = []
        for nb in _neighbours(T, h.images):
            g = PointMap(src, T, nb)
            if is_homeo(g) and ("respect_valuation" in cfg.ablate or pushforward_masks(g) == base):
                options.append(g)
        if not options:
            break
        h = rng.choice(options)
        maps.append(h.images)
    return Instance(src, T, tuple(maps)), 0


def draw_t3_3(rng, cfg, idx):
    regime = list(Regime)[idx % 3]
    src = _draw_source(rng, cfg, regime)
    copy, f = homeomorphic_copy(rng, src)
    return Instance(src, copy.topology, (f.images,), copy), 0


@dataclass(frozen=True)
class Entry:
    theorem: TheoremId
    classification: str
    hypothesis: str
    conclusion: str
    draw: Callable
    check: Check
    toggles: tuple[str, ...] = ()


def _wrap(draw):
    def inner(rng, cfg, idx):
        out = draw(rng, cfg, idx)
        return out if isinstance(out, tuple) else (out, 0)
    return inner


REGISTRY: dict[TheoremId, Entry] = {
    TheoremId.T2_2: Entry(
        TheoremId.T2_2, "self-test",
        "homeomorphism with transported valuation (all regimes)",
        "truth agrees in both directions",
        _wrap(draw_t2_2), check_t2_2,
    ),
    TheoremId.C2_3: Entry(
        TheoremId.C2_3, "tested-hypothesis",
        "continuous map between paraconsistent models on one carrier, admissible pushforward",
        "truth transfers forward to the image model",
        lambda rng, cfg, idx: draw_directional(rng, cfg, idx, hypothesis="continuity"), check_c2_3,
        ("ablate:continuity", "require:injective"),
    ),
    TheoremId.C2_4: Entry(
        TheoremId.C2_4, "tested-hypothesis",
        "map sending closed sets to closed sets, paraconsistent, admissible pushforward",
        "truth transfers backward from the image model",
        lambda rng, cfg, idx: draw_directional(rng, cfg, idx, hypothesis="openness"), check_c2_4,
        ("ablate:openness", "require:injective"),
    ),
    TheoremId.T2_7: Entry(
        TheoremId.T2_7, "tested-hypothesis",
        "fence-connected continuous maps respecting the valuation, paraconsistent",
        "homotopic models satisfy the same formulas",
        lambda rng, cfg, idx: draw_homotopy(rng, cfg, idx), check_t2_7,
        ("ablate:respect_valuation", "require:onto"),
    ),
    TheoremId.C2_8: Entry(
        TheoremId.C2_8, "tested-hypothesis",
        "as T2_7",
        "truth in the source transfers to every homotopic model",
        lambda rng, cfg, idx: draw_homotopy(rng, cfg, idx), check_c2_8,
        ("ablate:respect_valuation", "require:onto"),
    ),
    TheoremId.C2_9: Entry(
        TheoremId.C2_9, "self-test",
        "as T2_7",
        "fence endpoints reproduce the direct forward-preservation reports",
        lambda rng, cfg, idx: draw_homotopy(rng, cfg, idx), check_c2_9,
    ),
    TheoremId.T2_10: Entry(
        TheoremId.T2_10, "tested-hypothesis",
        "fence of homeomorphisms respecting the valuation, paraconsistent",
        "source, every step model and the target model agree",
        lambda rng, cfg, idx: draw_isotopy(rng, cfg, idx), check_t2_10,
        ("ablate:respect_valuation",),
    ),
    TheoremId.T2_11: Entry(
        TheoremId.T2_11, "tested-hypothesis",
        "as T2_7, paracomplete",
        "homotopic models satisfy the same formulas",
        lambda rng, cfg, idx: draw_homotopy(rng, cfg, idx, Regime.PARACOMPLETE), check_t2_7,
        ("ablate:respect_valuation", "require:onto"),
    ),
    TheoremId.T2_12: Entry(
        TheoremId.T2_12, "tested-hypothesis",
        "as T2_7, classical",
        "homotopic models satisfy the same formulas",
        lambda rng, cfg, idx: draw_homotopy(rng, cfg, idx, Regime.CLASSICAL), check_t2_7,
        ("ablate:respect_valuation", "require:onto"),
    ),
    TheoremId.T3_3: Entry(
        TheoremId.T3_3, "tested-hypothesis",
        "homeo-topo-bisimulation from a transported copy (all regimes)",
        "validity agrees",
        draw_t3_3, check_t3_3,
    ),
}


# ------------------------------------------------------------------ runner


@dataclass
class TrialReport:
    theorem: str
    classification: str
    hypothesis: str
    conclusion: str
    config: dict
    trials: int
    passed: int
    failed: int
    not_applicable: int
    refused_draws: int
    counterexample: dict | None = None
    shrunk_points: int | None = None
    witnesses: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def hard_fail(self) -> bool:
        return self.classification == "self-test" and self.failed > 0

    def as_dict(self) -> dict:
        return {**self.__dict__, "hard_fail": self.hard_fail}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        return f"{self.theorem}: {self.passed}/{self.trials} pass"


def trial_rng(cfg: TrialConfig, theorem: TheoremId, idx: int) -> random.Random:
    return random.Random(f"{cfg.seed}:{theorem.value}:{idx}")


def run_theorem(theorem: TheoremId | str, cfg: TrialConfig) -> TrialReport:
    theorem = TheoremId(theorem)
    if theorem is TheoremId.P1_3:
        return _run_p1_3(cfg)
    entry = REGISTRY[theorem]
    passed = failed = na = refused = 0
    first: Instance | None = None
    detail = None
    for idx in range(cfg.trials):
        rng = trial_rng(cfg, theorem, idx)
        inst, r = entry.draw(rng, cfg, idx)
        refused += r
        if inst is None:
            na += 1
            continue
        verdict = entry.check(inst, cfg)
        if verdict is None:
            na += 1
        elif verdict is True:
            passed += 1
        else:
            failed += 1
            if first is None:
                first, detail = inst, verdict
    report = TrialReport(
        theorem=theorem.value,
        classification=entry.classification,
        hypothesis=entry.hypothesis,
        conclusion=entry.conclusion,
        config=cfg.as_dict(),
        trials=cfg.trials,
        passed=passed,
        failed=failed,
        not_applicable=na,
        refused_draws=refused,
    )
    if first is not None:
        small = shrink(first, lambda i: _fails(entry, i, cfg))
        report.counterexample = {
            "instance": small.as_dict(),
            "detail": entry.check(small, cfg),
            "original_points": first.size,
            "original_detail": detail,
        }
        report.shrunk_points = small.size
    elif failed == 0 and cfg.ablate:
        report.notes.append(f"no counterexample found within {cfg.trials} trials")
    return report


def _fails(entry: Entry, inst: Instance, cfg: TrialConfig) -> bool:
    try:
        v = entry.check(inst, cfg)
    except TopoModalError:
        return False
    return v is not None and v is not True


def replay(theorem: TheoremId | str, counterexample: dict, cfg: TrialConfig) -> bool:
    """Re-run a reported counterexample standalone; ``True`` when it still fails."""
    entry = REGISTRY[TheoremId(theorem)]
    return _fails(entry, instance_from_dict(counterexample["instance"]), cfg)


def _run_p1_3(cfg: TrialConfig) -> TrialReport:
    """Equal-size paraconsistent and paracomplete models over their full-valuation spaces.

    Every subset must be both a legal closed and a legal open extension, so
    the carrier space is discrete and any bijection witnesses the homeomorphism.
    """
    passed = failed = 0
    witnesses = []
    for idx in range(cfg.trials):
        n = idx % cfg.max_points + 1
        rng = trial_rng(cfg, TheoremId.P1_3, idx)
        T1 = discrete(SOURCE_LABELS[:n])
        T2 = discrete(TARGET_LABELS[:n])
        m1 = random_model(rng, T1, Regime.PARACONSISTENT, random_atoms(rng))
        m2 = random_model(rng, T2, Regime.PARACOMPLETE, m1.atoms)
        perm = find_homeomorphism(T1, T2)
        back = find_homeomorphism(T2, T1)
        ok = (
            perm is not None
            and back is not None
            and classify(PointMap(m1, T2, perm)).homeomorphism
            and classify(PointMap(m2, T1, back)).homeomorphism
        )
        if ok:
            passed += 1
            if idx < cfg.max_points:
                witnesses.append({
                    "n": n,
                    "bijection": {T1.points[i]: T2.points[j] for i, j in enumerate(perm)},
                    "inverse": {T2.points[i]: T1.points[j] for i, j in enumerate(back)},
                })
        else:
            failed += 1
    return TrialReport(
        theorem="P1_3",
        classification="self-test",
        hypothesis="equal-size paraconsistent and paracomplete models over full-valuation (discrete) spaces",
        conclusion="homeomorphic in both directions, with an explicit bijection",
        config=cfg.as_dict(),
        trials=cfg.trials,
        passed=passed,
        failed=failed,
        not_applicable=0,
        refused_draws=0,
        witnesses=witnesses,
    )
