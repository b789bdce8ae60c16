"""Discrete homotopies: fences of continuous maps and the models they generate.

On a finite space two continuous maps are homotopic exactly when a fence
``f_0, ..., f_N`` joins them, with each consecutive pair pointwise comparable
in the target's specialization preorder.  Step ``k`` of a fence is indexed by
the exact rational ``k/N``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import BudgetExceeded, ChainNotFound, InputError, RegimeViolation, SourceTargetMismatch
from .formula import enumerate_formulas, to_text
from .mappings import (
    DEFAULT_SIZE_CAP,
    Direction,
    PointMap,
    Reading,
    classify,
    compare,
    continuity_witness,
    corestrict,
    is_continuous,
    pushforward_masks,
)
from .semantics import Evaluator, TopoModel, model_from_masks
from .topology import FiniteTopology, members

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class HomotopyChain:
    source: TopoModel
    target: FiniteTopology
    maps: tuple[PointMap, ...]

    def __post_init__(self):
        if not self.maps:
            raise InputError("a chain needs at least one map")
        for f in self.maps:
            if f.source != self.source or f.target != self.target:
                raise SourceTargetMismatch("every map in a chain shares one source and target")

    @property
    def steps(self) -> int:
        return len(self.maps) - 1

    @property
    def indices(self) -> list[Fraction]:
        N = self.steps
        return [Fraction(0)] if N == 0 else [Fraction(k, N) for k in range(N + 1)]

    def reversed(self) -> "HomotopyChain":
        return HomotopyChain(self.source, self.target, self.maps[::-1])

    @classmethod
    def from_images(cls, source: TopoModel, target: FiniteTopology, images: Sequence[Sequence[int]]) -> "HomotopyChain":
        return cls(source, target, tuple(PointMap(source, target, tuple(m)) for m in images))


def _fmt_x(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def comparable(T: FiniteTopology, f: Sequence[int], g: Sequence[int]) -> bool:
    up = all(T.leq(a, b) for a, b in zip(f, g))
    return up or all(T.leq(b, a) for a, b in zip(f, g))


@dataclass
class ChainReport:
    ok: bool
    steps: int
    indices: list[str]
    failure: dict | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def verify_chain(c: HomotopyChain) -> ChainReport:
    """Check continuity of every map and comparability of neighbours; report the first breach."""
    T = c.target
    xs = [_fmt_x(x) for x in c.indices]
    for k, f in enumerate(c.maps):
        w = continuity_witness(f)
        if w is not None:
            return ChainReport(False, c.steps, xs, {"kind": "NotContinuousAt", "step": k, "witness": T.labels(w)})
    for k in range(c.steps):
        f, g = c.maps[k].images, c.maps[k + 1].images
        if comparable(T, f, g):
            continue
        src = c.source.points
        incomparable = [i for i, (a, b) in enumerate(zip(f, g)) if not T.leq(a, b) and not T.leq(b, a)]
        witness = incomparable[0] if incomparable else next(i for i, (a, b) in enumerate(zip(f, g)) if not T.leq(a, b))
        return ChainReport(False, c.steps, xs, {"kind": "NotComparableAt", "step": k, "witness": src[witness]})
    return ChainReport(True, c.steps, xs)


def _neighbours(T: FiniteTopology, h: tuple[int, ...]):
    ups = [members(T.neighbourhood(y)) for y in h]
    downs = [[z for z in range(T.n) if T.leq(z, y)] for y in h]
    found = set(product(*ups)) | set(product(*downs))
    found.discard(h)
    return sorted(found)


@dataclass
class SearchStats:
    maps_materialized: int = 0
    exhausted: bool = False


def find_chain(f: PointMap, g: PointMap, budget: int = DEFAULT_BUDGET, stats: SearchStats | None = None) -> HomotopyChain:
    """Shortest fence from ``f`` to ``g`` by breadth-first search over continuous maps.

    Raises :class:`ChainNotFound` once the connected component of ``f`` is
    exhausted (a proof of absence) and :class:`BudgetExceeded` when more than
    ``budget`` continuous maps would have to be materialized.
    """
    if f.source != g.source or f.target != g.target:
        raise SourceTargetMismatch("endpoints must share source and target")
    for name, m in (("f", f), ("g", g)):
        if not is_continuous(m):
            raise InputError(f"endpoint {name} is not continuous")
    stats = stats if stats is not None else SearchStats()
    source, T = f.source, f.target
    start, goal = f.images, g.images
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    stats.maps_materialized = 1
    queue = deque([start])
    while queue:
        h = queue.popleft()
        if h == goal:
            path = []
            node: tuple[int, ...] | None = h
            while node is not None:
                path.append(node)
                node = parent[node]
            return HomotopyChain.from_images(source, T, path[::-1])
        for nb in _neighbours(T, h):
            if nb in parent:
                continue
            if not is_continuous(PointMap(source, T, nb)):
                continue
            stats.maps_materialized += 1
            if stats.maps_materialized > budget:
                raise BudgetExceeded(
                    f"more than {budget} continuous maps materialized; existence unknown",
                    budget=budget,
                )
            parent[nb] = h
            queue.append(nb)
    stats.exhausted = True
    details = {"maps_explored": stats.maps_materialized, "exhaustive": True}
    space = T.n ** source.topology.n
    message = f"no fence: component of {stats.maps_materialized} continuous maps exhausted"
    if space <= budget:
        # small enough to confirm against the whole map space
        total = sum(is_continuous(PointMap(source, T, m)) for m in product(range(T.n), repeat=source.topology.n))
        details.update(map_space=space, continuous_maps=total)
        message += f" ({total} continuous of {space} maps in the full space)"
    raise ChainNotFound(message, **details)


@dataclass
class HomotopicFamily:
    chain: HomotopyChain
    models: list[TopoModel]
    onto: list[PointMap]
    x: list[Fraction]


def generate_family(c: HomotopyChain) -> HomotopicFamily:
    """Image model of every fence step, tagged with its index ``k/N``."""
    report = verify_chain(c)
    if not report.ok:
        raise InputError(f"chain fails verification: {report.failure}", failure=report.failure)
    models, onto = [], []
    for k, f in enumerate(c.maps):
        try:
            m, o = corestrict(f)
        except RegimeViolation as e:
            raise RegimeViolation(f"step {k}: {e}", step=k, **e.details) from None
        models.append(m)
        onto.append(o)
    return HomotopicFamily(c, models, onto, c.indices)


@dataclass
class InvarianceReport:
    reading: str
    depth: int
    size_cap: int
    formulas_checked: int
    pairs_checked: int
    disagreements: int
    examples: list[dict]
    source_forward_failures: list[int]
    source_backward_failures: list[int]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def as_dict(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def verify_homotopy_invariance(
    family: HomotopicFamily,
    depth: int,
    reading: Reading | str = Reading.GLOBAL,
    size_cap: int = DEFAULT_SIZE_CAP,
    limit: int = 20,
) -> InvarianceReport:
    """Record, for every pair of family members and every formula, whether truth agrees.

    Disagreements are findings, not errors.  The report also counts, per
    member, formulas true in the source but not in the member and vice versa.
    """
    reading = Reading(reading)
    source = family.chain.source
    evs = [Evaluator(m, check=False) for m in family.models]
    ev_src = Evaluator(source, check=False)
    K = len(family.models)
    fwd = [0] * K
    bwd = [0] * K
    examples: list[dict] = []
    disagreements = 0
    count = 0
    n_src = source.topology.n
    for phi in enumerate_formulas(source.atoms, depth, source.regime, size_cap):
        count += 1
        exts = [e._ext(phi) for e in evs]
        src = ev_src._ext(phi)
        if reading is Reading.GLOBAL:
            truth = [[ext == m.topology.whole] for ext, m in zip(exts, family.models)]
            src_truth = [src == source.topology.whole]
            at = [None]
        else:
            truth = [[bool(ext >> o.images[s] & 1) for s in range(n_src)] for ext, o in zip(exts, family.onto)]
            src_truth = [bool(src >> s & 1) for s in range(n_src)]
            at = list(source.points)
        for k in range(K):
            if any(a and not b for a, b in zip(src_truth, truth[k])):
                fwd[k] += 1
            if any(b and not a for a, b in zip(src_truth, truth[k])):
                bwd[k] += 1
            for k2 in range(k + 1, K):
                diff = [i for i in range(len(at)) if truth[k][i] != truth[k2][i]]
                if diff:
                    disagreements += 1
                    if len(examples) < limit:
                        ex = {"formula": to_text(phi), "k": k, "k2": k2}
                        if at[0] is not None:
                            ex["point"] = at[diff[0]]
                        examples.append(ex)
    return InvarianceReport(
        reading=reading.value,
        depth=depth,
        size_cap=size_cap,
        formulas_checked=count,
        pairs_checked=K * (K - 1) // 2,
        disagreements=disagreements,
        examples=examples,
        source_forward_failures=fwd,
        source_backward_failures=bwd,
    )


@dataclass
class IsotopyReport:
    ok: bool
    chain: dict
    failure: dict | None
    valuation_respected: bool
    invariance: dict | None = None
    endpoint_model: dict | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def verify_isotopy(
    c: HomotopyChain,
    depth: int = 3,
    reading: Reading | str = Reading.GLOBAL,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> IsotopyReport:
    """Fence check, homeomorphism onto the image at every step, then the truth sweep.

    The sweep compares the source, every step model and the target model
    carrying the pushforward of the first map.
    """
    reading = Reading(reading)
    chain = verify_chain(c)
    if not chain.ok:
        return IsotopyReport(False, chain.as_dict(), chain.failure, False)
    for k, f in enumerate(c.maps):
        try:
            _, onto = corestrict(f)
        except RegimeViolation as e:
            return IsotopyReport(False, chain.as_dict(), {"kind": "RegimeViolation", "step": k, **e.details}, False)
        if not classify(onto).homeomorphism:
            return IsotopyReport(False, chain.as_dict(), {"kind": "NotHomeomorphismAt", "step": k}, False)
    pushed = [pushforward_masks(f) for f in c.maps]
    respected = all(p == pushed[0] for p in pushed)
    family = generate_family(c)
    inv = verify_homotopy_invariance(family, depth, reading, size_cap)
    # the target model M' = <S', sigma', f_0(V)> closes the chain of equivalences
    m_prime = model_from_masks(c.target, c.source.regime, pushed[0])
    f0 = c.maps[0]
    count, cex = compare(
        c.source,
        m_prime,
        list(enumerate(f0.images)),
        enumerate_formulas(c.source.atoms, depth, c.source.regime, size_cap),
        Direction.BOTH,
        reading,
    )
    ok = inv.ok and cex is None and not any(inv.source_forward_failures) and not any(inv.source_backward_failures)
    return IsotopyReport(
        ok=ok,
        chain=chain.as_dict(),
        failure=None,
        valuation_respected=respected,
        invariance=inv.as_dict(),
        endpoint_model={"formulas_checked": count, "counterexample": cex},
    )
