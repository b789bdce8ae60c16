"""Maps between models: classification, pushforward valuations, image models
and exhaustive truth-preservation sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import InputError, RegimeViolation
from .formula import Formula, Regime, enumerate_formulas, to_text
from .semantics import Evaluator, TopoModel, check_regime_set, model_from_masks
from .topology import FiniteTopology, PointSet, canonical, members

DEFAULT_SIZE_CAP = 5


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BOTH = "both"


class Reading(Enum):
    POINTWISE = "pointwise"
    GLOBAL = "global"


@dataclass(frozen=True)
class PointMap:
    source: TopoModel
    target: FiniteTopology
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.topology.n:
            raise InputError("map is not total on the source carrier")
        if any(not 0 <= i < self.target.n for i in self.images):
            raise InputError("map leaves the target carrier")

    @classmethod
    def from_labels(cls, source: TopoModel, target: FiniteTopology, mapping: Mapping[str, str]) -> "PointMap":
        extra = set(mapping) - set(source.points)
        if extra:
            raise InputError(f"map mentions unknown source points {sorted(extra)}")
        missing = [p for p in source.points if p not in mapping]
        if missing:
            raise InputError(f"map is undefined at {missing}", points=missing)
        return cls(source, target, tuple(target.index(mapping[p]) for p in source.points))

    def labels(self) -> dict[str, str]:
        return {p: self.target.points[i] for p, i in zip(self.source.points, self.images)}

    def image(self, mask: PointSet) -> PointSet:
        r = 0
        for i in members(mask):
            r |= 1 << self.images[i]
        return r

    def preimage(self, mask: PointSet) -> PointSet:
        r = 0
        for i, j in enumerate(self.images):
            if mask >> j & 1:
                r |= 1 << i
        return r

    @property
    def range(self) -> PointSet:
        return self.image(self.source.topology.whole)

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def bijective(self) -> bool:
        return self.injective and self.source.topology.n == self.target.n


def identity_map(model: TopoModel) -> PointMap:
    return PointMap(model, model.topology, tuple(range(model.topology.n)))


@dataclass(frozen=True)
class MapClassification:
    continuous: bool
    continuity_witness: list[str] | None
    open_map: bool
    open_witness: list[str] | None
    open_convention: str
    bijective: bool
    homeomorphism: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def continuity_witness(f: PointMap) -> PointSet | None:
    """First target open (canonical order) whose preimage is not open."""
    S = f.source.topology
    for u in f.target.opens:
        if not S.is_open(f.preimage(u)):
            return u
    return None


def is_continuous(f: PointMap) -> bool:
    return continuity_witness(f) is None


def open_witness(f: PointMap, convention: str) -> PointSet | None:
    S, T = f.source.topology, f.target
    if convention == "closed":
        for c in S.closed_sets():
            if not T.is_closed(f.image(c)):
                return c
    else:
        for u in S.opens:
            if not T.is_open(f.image(u)):
                return u
    return None


def inverse_continuous(f: PointMap) -> bool:
    """For a bijection: images of source opens are target opens."""
    return all(f.target.is_open(f.image(u)) for u in f.source.topology.opens)


def classify(f: PointMap) -> MapClassification:
    S = f.source.topology
    cw = continuity_witness(f)
    convention = "closed" if f.source.regime is Regime.PARACONSISTENT else "open"
    ow = open_witness(f, convention)
    bij = f.bijective
    return MapClassification(
        continuous=cw is None,
        continuity_witness=None if cw is None else f.target.labels(cw),
        open_map=ow is None,
        open_witness=None if ow is None else S.labels(ow),
        open_convention=convention,
        bijective=bij,
        homeomorphism=bij and cw is None and inverse_continuous(f),
    )


def inverse(f: PointMap, model: TopoModel) -> PointMap:
    """Inverse of a bijection, starting from ``model`` (whose topology must be the target)."""
    if not f.bijective:
        raise InputError("map is not bijective")
    if model.topology != f.target:
        raise InputError("inverse needs a model over the target topology")
    inv = [0] * f.target.n
    for i, j in enumerate(f.images):
        inv[j] = i
    return PointMap(model, f.source.topology, tuple(inv))


def pushforward_masks(f: PointMap) -> dict[str, PointSet]:
    out = {}
    for atom, mask in f.source.valuation:
        img = f.image(mask)
        check_regime_set(f.target, f.source.regime, atom, img)
        out[atom] = img
    return out


def pushforward_valuation(f: PointMap) -> dict[str, list[str]]:
    """Pointwise images of the source valuation; refuses images illegal in the target."""
    return {a: f.target.labels(m) for a, m in pushforward_masks(f).items()}


def admissible(f: PointMap) -> bool:
    try:
        pushforward_masks(f)
    except RegimeViolation:
        return False
    return True


def corestrict(f: PointMap) -> tuple[TopoModel, PointMap]:
    """The image model and the map from the source onto it."""
    img = f.range
    sub = f.target.subspace(img)
    idx = {old: new for new, old in enumerate(members(img))}
    val = {}
    for atom, mask in pushforward_masks(f).items():
        r = 0
        for j in members(mask):
            r |= 1 << idx[j]
        val[atom] = r
    model = model_from_masks(sub, f.source.regime, val)
    return model, PointMap(f.source, sub, tuple(idx[j] for j in f.images))


def image_model(f: PointMap) -> TopoModel:
    """Model over ``f(S)`` with the subspace topology and pushed-forward valuation."""
    return corestrict(f)[0]


# ----------------------------------------------------------- preservation


@dataclass
class PreservationReport:
    ok: bool
    direction: str
    reading: str
    depth: int
    size_cap: int
    formulas_checked: int
    counterexample: dict | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def compare(
    left: TopoModel,
    right: TopoModel,
    point_pairs: Sequence[tuple[int, int]],
    formulas: Iterable[Formula],
    direction: Direction,
    reading: Reading,
) -> tuple[int, dict | None]:
    """Check truth transfer between two models on shared formulas.

    ``point_pairs`` links left points to right points for the pointwise
    reading.  Returns the number of formulas checked and the first failure.
    """
    ev_l, ev_r = Evaluator(left, check=False), Evaluator(right, check=False)
    wl, wr = left.topology.whole, right.topology.whole
    fwd = direction in (Direction.FORWARD, Direction.BOTH)
    bwd = direction in (Direction.BACKWARD, Direction.BOTH)
    count = 0
    for phi in formulas:
        count += 1
        a, b = ev_l._ext(phi), ev_r._ext(phi)
        if reading is Reading.GLOBAL:
            va, vb = a == wl, b == wr
            if fwd and va and not vb:
                return count, {"formula": to_text(phi), "direction": "forward"}
            if bwd and vb and not va:
                return count, {"formula": to_text(phi), "direction": "backward"}
        else:
            for i, j in point_pairs:
                sa, sb = bool(a >> i & 1), bool(b >> j & 1)
                if fwd and sa and not sb:
                    return count, {
                        "formula": to_text(phi),
                        "direction": "forward",
                        "point": left.points[i],
                        "image": right.points[j],
                    }
                if bwd and sb and not sa:
                    return count, {
                        "formula": to_text(phi),
                        "direction": "backward",
                        "point": left.points[i],
                        "image": right.points[j],
                    }
    return count, None


def verify_preservation(
    f: PointMap,
    depth: int,
    direction: Direction | str = Direction.BOTH,
    reading: Reading | str = Reading.GLOBAL,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> PreservationReport:
    """Sweep every regime formula up to ``depth`` between the source and its image model."""
    direction, reading = Direction(direction), Reading(reading)
    if depth > 4:
        raise InputError("formula depth is capped at 4")
    target, onto = corestrict(f)
    pairs = list(enumerate(onto.images))
    formulas = enumerate_formulas(f.source.atoms, depth, f.source.regime, size_cap)
    count, cex = compare(f.source, target, pairs, formulas, direction, reading)
    return PreservationReport(
        ok=cex is None,
        direction=direction.value,
        reading=reading.value,
        depth=depth,
        size_cap=size_cap,
        formulas_checked=count,
        counterexample=cex,
    )


def find_homeomorphism(a: FiniteTopology, b: FiniteTopology) -> tuple[int, ...] | None:
    """First bijection (lexicographic) carrying the opens of ``a`` onto those of ``b``."""
    if a.n != b.n or len(a.opens) != len(b.opens):
        return None
    target = set(b.opens)
    for perm in permutations(range(b.n)):
        if all(_image(perm, u) in target for u in a.opens):
            return perm
    return None


def _image(images: Sequence[int], mask: PointSet) -> PointSet:
    r = 0
    for i in members(mask):
        r |= 1 << images[i]
    return r


def transport(model: TopoModel, images: Sequence[int], points: Sequence[str] | None = None) -> TopoModel:
    """Copy of ``model`` moved along a carrier permutation (topology and valuation)."""
    T = model.topology
    opens = canonical(_image(images, u) for u in T.opens)
    top = FiniteTopology(tuple(points) if points else T.points, opens)
    val = {a: _image(images, m) for a, m in model.valuation}
    return model_from_masks(top, model.regime, val, model.name)
