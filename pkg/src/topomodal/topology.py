"""Finite topological spaces over bit-set point sets.

A point set is a plain ``int`` whose bit ``i`` marks membership of the
``i``-th carrier point.  Open families are stored explicitly, deduplicated
and sorted in canonical set order (by size, then by member indices).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    DuplicateOpen,
    InputError,
    MissingEmpty,
    MissingWhole,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
)

PointSet = int

DEFAULT_MAX_POINTS = 16


def max_points() -> int:
    """Soft cap on carrier size; ``TOPOMODAL_MAX_POINTS`` overrides it."""
    value = os.environ.get("TOPOMODAL_MAX_POINTS")
    if value is None:
        return DEFAULT_MAX_POINTS
    try:
        return int(value)
    except ValueError:
        raise InputError(f"TOPOMODAL_MAX_POINTS is not an integer: {value!r}") from None


def members(mask: PointSet) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def set_key(mask: PointSet) -> tuple:
    return (mask.bit_count(), members(mask))


def canonical(family: Iterable[PointSet]) -> tuple[PointSet, ...]:
    return tuple(sorted(set(family), key=set_key))


@dataclass(frozen=True)
class FiniteTopology:
    """A validated finite topology.  Build with :func:`validate` or a constructor."""

    points: tuple[str, ...]
    opens: tuple[PointSet, ...]
    _interior: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def whole(self) -> PointSet:
        return (1 << len(self.points)) - 1

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise InputError(f"unknown point {label!r}", point=label) from None

    def mask(self, labels: Iterable[str]) -> PointSet:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: PointSet) -> list[str]:
        return [self.points[i] for i in members(mask)]

    def fmt(self, mask: PointSet) -> str:
        return "{" + ", ".join(self.labels(mask)) + "}"

    def complement(self, mask: PointSet) -> PointSet:
        return self.whole & ~mask

    def is_open(self, mask: PointSet) -> bool:
        return mask in self._open_set

    def is_closed(self, mask: PointSet) -> bool:
        return self.complement(mask) in self._open_set

    @property
    def _open_set(self) -> frozenset:
        cached = self._interior.get("opens")
        if cached is None:
            cached = self._interior["opens"] = frozenset(self.opens)
        return cached

    def interior(self, mask: PointSet) -> PointSet:
        """Union of all opens contained in ``mask``."""
        cached = self._interior.get(mask)
        if cached is None:
            cached = 0
            for u in self.opens:
                if u & ~mask == 0:
                    cached |= u
            self._interior[mask] = cached
        return cached

    def closure(self, mask: PointSet) -> PointSet:
        return self.complement(self.interior(self.complement(mask)))

    def boundary(self, mask: PointSet) -> PointSet:
        return self.closure(mask) & self.closure(self.complement(mask))

    def closed_sets(self) -> tuple[PointSet, ...]:
        return canonical(self.complement(u) for u in self.opens)

    def neighbourhood(self, i: int) -> PointSet:
        """Smallest open containing point ``i``."""
        m = self.whole
        for u in self.opens:
            if u >> i & 1:
                m &= u
        return m

    def specialization(self) -> set[tuple[int, int]]:
        """Pairs ``(s, t)`` with every open containing ``s`` also containing ``t``."""
        out = set()
        for s in range(self.n):
            nb = self.neighbourhood(s)
            for t in members(nb):
                out.add((s, t))
        return out

    def leq(self, s: int, t: int) -> bool:
        return bool(self.neighbourhood(s) >> t & 1)

    def subspace(self, mask: PointSet) -> "FiniteTopology":
        """Subspace topology on ``mask``, with points kept in carrier order."""
        idx = members(mask)
        remap = {old: new for new, old in enumerate(idx)}

        def restrict(u: PointSet) -> PointSet:
            r = 0
            for old in members(u & mask):
                r |= 1 << remap[old]
            return r

        return FiniteTopology(tuple(self.points[i] for i in idx), canonical(restrict(u) for u in self.opens))

    def relabel(self, points: Sequence[str]) -> "FiniteTopology":
        if len(points) != self.n or len(set(points)) != self.n:
            raise InputError("relabel needs one distinct label per point")
        return FiniteTopology(tuple(points), self.opens)

    def to_dot(self, name: str = "specialization") -> str:
        """Hasse-free DOT rendering of the specialization preorder (non-reflexive edges)."""
        lines = [f'digraph "{name}" {{']
        for p in self.points:
            lines.append(f'  "{p}";')
        for s, t in sorted(self.specialization()):
            if s != t:
                lines.append(f'  "{self.points[s]}" -> "{self.points[t]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _check_carrier(carrier: Sequence[str]) -> tuple[str, ...]:
    carrier = tuple(carrier)
    if not carrier:
        raise InputError("carrier must be nonempty")
    if len(set(carrier)) != len(carrier):
        raise InputError("carrier has duplicate points")
    cap = max_points()
    if len(carrier) > cap:
        raise InputError(f"carrier has {len(carrier)} points; soft cap is {cap}", cap=cap)
    return carrier


def _to_masks(carrier: tuple[str, ...], family: Iterable[Iterable[str]]) -> list[PointSet]:
    index = {p: i for i, p in enumerate(carrier)}
    out = []
    for s in family:
        m = 0
        for p in s:
            if p not in index:
                raise InputError(f"point {p!r} is not in the carrier", point=p)
            m |= 1 << index[p]
        out.append(m)
    return out


def validate_masks(carrier: Sequence[str], opens: Iterable[PointSet]) -> FiniteTopology:
    carrier = _check_carrier(carrier)
    whole = (1 << len(carrier)) - 1
    opens = list(opens)
    for u in opens:
        if u & ~whole:
            raise InputError("open set outside the carrier")

    def fmt(m):
        return "{" + ", ".join(carrier[i] for i in members(m)) + "}"

    seen = set()
    for u in sorted(opens, key=set_key):
        if u in seen:
            raise DuplicateOpen(f"duplicate open {fmt(u)}", witness=fmt(u))
        seen.add(u)
    if whole not in seen:
        raise MissingWhole("the carrier is not open")
    if 0 not in seen:
        raise MissingEmpty("the empty set is not open")
    family = canonical(seen)
    for a, b in combinations(family, 2):
        if a | b not in seen:
            raise NotClosedUnderUnion(
                f"union of {fmt(a)} and {fmt(b)} is not open", witness=[fmt(a), fmt(b)]
            )
    for a, b in combinations(family, 2):
        if a & b not in seen:
            raise NotClosedUnderIntersection(
                f"intersection of {fmt(a)} and {fmt(b)} is not open", witness=[fmt(a), fmt(b)]
            )
    return FiniteTopology(carrier, family)


def validate(carrier: Sequence[str], opens: Iterable[Iterable[str]]) -> FiniteTopology:
    """Check a candidate open family and return the topology; never repairs."""
    carrier = _check_carrier(carrier)
    return validate_masks(carrier, _to_masks(carrier, opens))


def close_family(carrier_size: int, family: Iterable[PointSet]) -> tuple[PointSet, ...]:
    """Smallest topology (as masks) containing ``family``."""
    whole = (1 << carrier_size) - 1
    basis = set(family) | {whole}
    frontier = list(basis)
    while frontier:
        new = []
        for a in frontier:
            for b in list(basis):
                c = a & b
                if c not in basis:
                    basis.add(c)
                    new.append(c)
        frontier = new
    opens = set(basis) | {0}
    frontier = list(opens)
    while frontier:
        new = []
        for a in frontier:
            for b in list(opens):
                c = a | b
                if c not in opens:
                    opens.add(c)
                    new.append(c)
        frontier = new
    return canonical(opens)


def generate_from_subbasis(carrier: Sequence[str], subbasis: Iterable[Iterable[str]]) -> FiniteTopology:
    carrier = _check_carrier(carrier)
    masks = _to_masks(carrier, subbasis)
    return FiniteTopology(carrier, close_family(len(carrier), masks))


def discrete(points: Sequence[str]) -> FiniteTopology:
    points = _check_carrier(points)
    return FiniteTopology(points, canonical(range(1 << len(points))))


def trivial(points: Sequence[str]) -> FiniteTopology:
    points = _check_carrier(points)
    return FiniteTopology(points, canonical({0, (1 << len(points)) - 1}))


def sierpinski() -> FiniteTopology:
    """Points ``a, b`` with ``{b}`` open."""
    return validate(["a", "b"], [[], ["b"], ["a", "b"]])
