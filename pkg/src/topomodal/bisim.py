"""Topo-bisimulations, homeo-topo-bisimulations, Kripke import and x-indexing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError, RegimeMismatch, RelationInvalid, VocabularyMismatch
from .formula import Regime, enumerate_formulas
from .homotopy import DEFAULT_BUDGET, find_chain, generate_family, _fmt_x
from .mappings import DEFAULT_SIZE_CAP, Direction, PointMap, Reading, classify, compare, pushforward_masks
from .semantics import TopoModel, model_from_masks
from .topology import FiniteTopology, close_family, members


@dataclass(frozen=True)
class BisimRelation:
    left: TopoModel
    right: TopoModel
    pairs: frozenset[tuple[int, int]]
    trace: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def labels(self) -> list[tuple[str, str]]:
        return [(self.left.points[i], self.right.points[j]) for i, j in sorted(self.pairs)]


def _check_compatible(m1: TopoModel, m2: TopoModel) -> None:
    if m1.regime is not m2.regime:
        raise RegimeMismatch(f"regimes differ: {m1.regime.value} vs {m2.regime.value}")
    if set(m1.atoms) != set(m2.atoms):
        raise VocabularyMismatch(
            f"atom vocabularies differ: {sorted(m1.atoms)} vs {sorted(m2.atoms)}",
            left=sorted(m1.atoms),
            right=sorted(m2.atoms),
        )


def _base_ok(m1: TopoModel, m2: TopoModel, i: int, j: int) -> str | None:
    """Atom on which points disagree, if any."""
    for atom, mask in m1.valuation:
        if bool(mask >> i & 1) != bool(m2.value(atom) >> j & 1):
            return atom
    return None


def _image(rel: Iterable[tuple[int, int]], mask: int) -> int:
    r = 0
    for i, j in rel:
        if mask >> i & 1:
            r |= 1 << j
    return r


def _preimage(rel: Iterable[tuple[int, int]], mask: int) -> int:
    r = 0
    for i, j in rel:
        if mask >> j & 1:
            r |= 1 << i
    return r


def _forth_witness(T1: FiniteTopology, T2: FiniteTopology, rel, i: int, j: int) -> int | None:
    """First open ``U`` around ``i`` with no open around ``j`` inside ``rel[U]``."""
    for u in T1.opens:
        if u >> i & 1 and not T2.interior(_image(rel, u)) >> j & 1:
            return u
    return None


def _back_witness(T1: FiniteTopology, T2: FiniteTopology, rel, i: int, j: int) -> int | None:
    for u in T2.opens:
        if u >> j & 1 and not T1.interior(_preimage(rel, u)) >> i & 1:
            return u
    return None


def greatest_topo_bisim(m1: TopoModel, m2: TopoModel) -> BisimRelation | None:
    """Largest topo-bisimulation, by deleting violating pairs from the atom-agreement relation.

    Pairs are scanned in lexicographic order and removed as soon as they fail
    FORTH or BACK against the current relation, until a full pass removes
    nothing.  Returns ``None`` when the fixpoint is empty.
    """
    _check_compatible(m1, m2)
    T1, T2 = m1.topology, m2.topology
    rel = {(i, j) for i in range(T1.n) for j in range(T2.n) if _base_ok(m1, m2, i, j) is None}
    trace = []
    changed = True
    while changed:
        changed = False
        for pair in sorted(rel):
            i, j = pair
            if _forth_witness(T1, T2, rel, i, j) is not None or _back_witness(T1, T2, rel, i, j) is not None:
                rel.discard(pair)
                trace.append(pair)
                changed = True
    if not rel:
        return None
    return BisimRelation(m1, m2, frozenset(rel), tuple(trace))


def bisim_failure(m1: TopoModel, m2: TopoModel, rel: Iterable[tuple[int, int]]) -> dict | None:
    """First breached condition of a candidate relation, or ``None`` if it is a topo-bisimulation."""
    _check_compatible(m1, m2)
    rel = set(rel)
    if not rel:
        return {"condition": "NONEMPTY"}
    T1, T2 = m1.topology, m2.topology
    for i, j in sorted(rel):
        pair = [m1.points[i], m2.points[j]]
        atom = _base_ok(m1, m2, i, j)
        if atom is not None:
            return {"condition": "BASE", "pair": pair, "atom": atom}
        w = _forth_witness(T1, T2, rel, i, j)
        if w is not None:
            return {"condition": "FORTH", "pair": pair, "open": T1.labels(w)}
        w = _back_witness(T1, T2, rel, i, j)
        if w is not None:
            return {"condition": "BACK", "pair": pair, "open": T2.labels(w)}
    return None


def relation_from_labels(m1: TopoModel, m2: TopoModel, pairs: Iterable[Sequence[str]]) -> set[tuple[int, int]]:
    return {(m1.topology.index(a), m2.topology.index(b)) for a, b in pairs}


# ---------------------------------------------------------- homeo-topo-bisim


@dataclass
class HomeoBisimReport:
    ok: bool
    reading: str
    failure: dict | None
    relation: list[tuple[str, str]]
    sweep: dict | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def verify_homeo_topo_bisim(
    m1: TopoModel, m2: TopoModel, f: PointMap, depth: int = 3, size_cap: int = DEFAULT_SIZE_CAP
) -> HomeoBisimReport:
    """Check that ``f`` induces a homeo-topo-bisimulation, then sweep validity.

    ``f`` must be a homeomorphism onto its image; the report says whether the
    image is all of the target.  FORTH instantiates the witnessing open as
    ``f(U)``; BACK pulls target opens back along ``f``.
    """
    _check_compatible(m1, m2)
    if f.source != m1 or f.target != m2.topology:
        raise InputError("map must run from the first model into the second model's topology")
    T1, T2 = m1.topology, m2.topology
    graph = [(s, f.images[s]) for s in range(T1.n)]
    labels = [(m1.points[i], m2.points[j]) for i, j in graph]
    reading = "onto" if f.range == T2.whole else "onto-image"
    if not f.injective:
        return HomeoBisimReport(False, reading, {"kind": "NotHomeomorphism", "reason": "not injective"}, labels)
    img = f.range
    sub = T2.subspace(img)
    idx = {old: new for new, old in enumerate(members(img))}
    onto = PointMap(m1, sub, tuple(idx[j] for j in f.images))
    if not classify(onto).homeomorphism:
        return HomeoBisimReport(False, reading, {"kind": "NotHomeomorphism", "reason": "not a homeomorphism onto its image"}, labels)
    for s, t in graph:
        atom = _base_ok(m1, m2, s, t)
        if atom is not None:
            return HomeoBisimReport(
                False, reading,
                {"kind": "ConditionFailed", "condition": "BASE", "point": m1.points[s], "atom": atom},
                labels,
            )
    for s, _ in graph:
        for u in T1.opens:
            if u >> s & 1 and not T2.is_open(f.image(u)):
                return HomeoBisimReport(
                    False, reading,
                    {"kind": "ConditionFailed", "condition": "FORTH", "point": m1.points[s], "open": T1.labels(u)},
                    labels,
                )
    for s, t in graph:
        for u in T2.opens:
            if u >> t & 1:
                back = f.preimage(u)
                if not T1.is_open(back) or f.image(back) & ~u:
                    return HomeoBisimReport(
                        False, reading,
                        {"kind": "ConditionFailed", "condition": "BACK", "point": m2.points[t], "open": T2.labels(u)},
                        labels,
                    )
    count, cex = compare(
        m1, m2, graph,
        enumerate_formulas(m1.atoms, depth, m1.regime, size_cap),
        Direction.BOTH, Reading.GLOBAL,
    )
    sweep = {"depth": depth, "size_cap": size_cap, "formulas_checked": count, "validity_preserved": cex is None, "counterexample": cex}
    return HomeoBisimReport(True, reading, None, labels, sweep)


# ------------------------------------------------------------------ Kripke


@dataclass(frozen=True)
class KripkeModel:
    points: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    valuation: Mapping[str, Sequence[str]]
    name: str = ""

    def successors(self, p: str) -> list[str]:
        return [b for a, b in self.edges if a == p]


def reflexive_transitive_closure(K: KripkeModel) -> dict[str, set[str]]:
    reach = {}
    for p in K.points:
        seen = {p}
        stack = [p]
        while stack:
            for q in K.successors(stack.pop()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        reach[p] = seen
    return reach


def import_kripke(K: KripkeModel) -> TopoModel:
    """Classical model whose opens are the up-sets of the reflexive-transitive closure."""
    for a, b in K.edges:
        if a not in K.points or b not in K.points:
            raise InputError(f"edge {a}->{b} uses an undeclared point")
    index = {p: i for i, p in enumerate(K.points)}
    reach = reflexive_transitive_closure(K)
    ups = [sum(1 << index[q] for q in reach[p]) for p in K.points]
    T = FiniteTopology(tuple(K.points), close_family(len(K.points), ups))
    val = {a: T.mask(pts) for a, pts in K.valuation.items()}
    return model_from_masks(T, Regime.CLASSICAL, val, K.name)


# --------------------------------------------------------------- x-indexing


@dataclass
class XIndexReport:
    steps: int
    entries: list[dict]

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def x_indexed_family(
    model: TopoModel, f: PointMap, g: PointMap, budget: int = DEFAULT_BUDGET, depth: int = 3
) -> XIndexReport:
    """Index the models between two homeomorphic images of ``model`` by fence position."""
    for name, h in (("f", f), ("g", g)):
        if h.source != model:
            raise InputError(f"{name} does not start at the model")
        if not classify(h).homeomorphism:
            raise InputError(f"{name} is not a homeomorphism")
    chain = find_chain(f, g, budget)
    family = generate_family(chain)
    entries = []
    for k, (h, x) in enumerate(zip(chain.maps, family.x)):
        entry = {"k": k, "x": _fmt_x(x), "map": h.labels()}
        homeo = classify(h).homeomorphism
        entry["homeomorphism"] = homeo
        if homeo:
            target = model_from_masks(h.target, model.regime, pushforward_masks(h))
            rep = verify_homeo_topo_bisim(model, target, PointMap(model, h.target, h.images), depth)
            entry["homeo_topo_bisimilar"] = rep.ok
            entry["valuation_invariant"] = dict(target.valuation) == dict(model.valuation)
        entries.append(entry)
    return XIndexReport(chain.steps, entries)


# ----------------------------------------------------------- undefinability


@dataclass
class UndefinabilityReport:
    property_name: str
    verdicts: tuple[bool, bool]
    depth: int
    relation_kind: str
    pointwise_equivalent: bool
    globally_equivalent: bool | None
    witness: bool
    message: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def undefinability_witness(
    m1: TopoModel,
    m2: TopoModel,
    relation: PointMap | Iterable[Sequence[str]],
    property_name: str,
    verdicts: tuple[bool, bool],
    depth: int = 3,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> UndefinabilityReport:
    """Certify that a property separating two modally equivalent models is not definable."""
    if isinstance(relation, PointMap):
        rep = verify_homeo_topo_bisim(m1, m2, relation, depth, size_cap)
        if not rep.ok:
            raise RelationInvalid(f"not a homeo-topo-bisimulation: {rep.failure}", failure=rep.failure)
        pairs = [(s, relation.images[s]) for s in range(m1.topology.n)]
        kind = "homeo-topo-bisimulation"
    else:
        pairs = sorted(relation_from_labels(m1, m2, relation))
        failure = bisim_failure(m1, m2, pairs)
        if failure is not None:
            raise RelationInvalid(f"not a topo-bisimulation: {failure}", failure=failure)
        kind = "topo-bisimulation"

    def formulas():
        return enumerate_formulas(m1.atoms, depth, m1.regime, size_cap)

    _, cex = compare(m1, m2, pairs, formulas(), Direction.BOTH, Reading.POINTWISE)
    pointwise = cex is None
    total = {i for i, _ in pairs} == set(range(m1.topology.n)) and {j for _, j in pairs} == set(range(m2.topology.n))
    globally = None
    if total:
        _, gcex = compare(m1, m2, pairs, formulas(), Direction.BOTH, Reading.GLOBAL)
        globally = gcex is None
    differs = verdicts[0] != verdicts[1]
    witness = differs and pointwise and globally is not False
    if witness:
        message = f"property '{property_name}' differs across modally-equivalent models => not definable at depth {depth}"
    elif not differs:
        message = f"no witness: property '{property_name}' agrees"
    else:
        message = f"no witness: models are not modally equivalent at depth {depth}"
    return UndefinabilityReport(property_name, tuple(verdicts), depth, kind, pointwise, globally, witness, message)
