"""Evaluation of formulas over topological models in three regimes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ConnectiveNotInRegime, InputError, RegimeViolation, UnknownAtom, UnknownPoint
from .formula import (
    And,
    Atom,
    Bot,
    Box,
    Diamond,
    Formula,
    Implies,
    NegClosed,
    NegOpen,
    NotClassical,
    Or,
    Regime,
    Top,
    connectives,
    enumerate_formulas,
)
from .topology import FiniteTopology, PointSet

__all__ = ["Regime", "TopoModel", "new_model", "extension", "satisfies", "valid", "Evaluator"]


@dataclass(frozen=True)
class TopoModel:
    topology: FiniteTopology
    regime: Regime
    valuation: tuple[tuple[str, PointSet], ...]
    name: str = ""

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.valuation)

    @property
    def points(self) -> tuple[str, ...]:
        return self.topology.points

    def value(self, atom: str) -> PointSet:
        for a, m in self.valuation:
            if a == atom:
                return m
        raise UnknownAtom(f"atom {atom!r} has no valuation", atom=atom)

    def valuation_labels(self) -> dict[str, list[str]]:
        return {a: self.topology.labels(m) for a, m in self.valuation}


def check_regime_set(topology: FiniteTopology, regime: Regime, atom: str, mask: PointSet) -> None:
    if regime is Regime.PARACONSISTENT and not topology.is_closed(mask):
        raise RegimeViolation(
            f"V({atom}) = {topology.fmt(mask)} is not closed",
            atom=atom,
            set=topology.labels(mask),
            expected="closed",
        )
    if regime is Regime.PARACOMPLETE and not topology.is_open(mask):
        raise RegimeViolation(
            f"V({atom}) = {topology.fmt(mask)} is not open",
            atom=atom,
            set=topology.labels(mask),
            expected="open",
        )


def model_from_masks(
    topology: FiniteTopology, regime: Regime, valuation: Mapping[str, PointSet], name: str = ""
) -> TopoModel:
    for atom in sorted(valuation):
        mask = valuation[atom]
        Atom(atom)
        if mask & ~topology.whole:
            raise InputError(f"V({atom}) leaves the carrier")
        check_regime_set(topology, regime, atom, mask)
    return TopoModel(topology, regime, tuple(sorted(valuation.items())), name)


def new_model(
    topology: FiniteTopology,
    regime: Regime | str,
    valuation: Mapping[str, Iterable[str]],
    name: str = "",
) -> TopoModel:
    """Validated model; valuation sets are given as point labels."""
    regime = Regime(regime)
    masks = {atom: topology.mask(pts) for atom, pts in valuation.items()}
    return model_from_masks(topology, regime, masks, name)


def check_formula(model: TopoModel, f: Formula) -> None:
    illegal = connectives(f) - model.regime.symbols
    if illegal:
        c = sorted(illegal)[0]
        raise ConnectiveNotInRegime(
            f"connective {c!r} is not available in the {model.regime.value} regime",
            connective=c,
            regime=model.regime.value,
        )


class Evaluator:
    """Bottom-up evaluator memoised on subformula identity.

    One evaluator belongs to one model; sweeps that share subtrees (as the
    enumerator's output does) reuse every intermediate extension.
    """

    def __init__(self, model: TopoModel, check: bool = True):
        self.model = model
        self.check = check
        self.topology = model.topology
        self.values = dict(model.valuation)
        self.memo: dict[int, tuple[Formula, PointSet]] = {}

    def __call__(self, f: Formula) -> PointSet:
        if self.check:
            check_formula(self.model, f)
        return self._ext(f)

    def _ext(self, f: Formula) -> PointSet:
        hit = self.memo.get(id(f))
        if hit is not None and hit[0] is f:
            return hit[1]
        T = self.topology
        t = type(f)
        if t is Atom:
            try:
                r = self.values[f.name]
            except KeyError:
                raise UnknownAtom(f"atom {f.name!r} has no valuation", atom=f.name) from None
        elif t is Top:
            r = T.whole
        elif t is Bot:
            r = 0
        elif t is And:
            r = self._ext(f.left) & self._ext(f.right)
        elif t is Or:
            r = self._ext(f.left) | self._ext(f.right)
        elif t is Implies:
            r = T.complement(self._ext(f.left)) | self._ext(f.right)
        elif t is NotClassical:
            r = T.complement(self._ext(f.sub))
        elif t is NegClosed:
            r = T.closure(T.complement(self._ext(f.sub)))
        elif t is NegOpen:
            r = T.interior(T.complement(self._ext(f.sub)))
        elif t is Box:
            r = T.interior(self._ext(f.sub))
        elif t is Diamond:
            r = T.closure(self._ext(f.sub))
        else:
            raise TypeError(f"not a formula: {f!r}")
        self.memo[id(f)] = (f, r)
        return r


def extension(model: TopoModel, f: Formula) -> PointSet:
    return Evaluator(model)(f)


def satisfies(model: TopoModel, point: str, f: Formula) -> bool:
    if point not in model.points:
        raise UnknownPoint(f"unknown point {point!r}", point=point)
    return bool(extension(model, f) >> model.points.index(point) & 1)


def valid(model: TopoModel, f: Formula) -> bool:
    return extension(model, f) == model.topology.whole


def sweep_formulas(model: TopoModel, depth: int, size_cap: int):
    """The regime's formulas over the model's atoms, in enumeration order."""
    return enumerate_formulas(model.atoms, depth, model.regime, size_cap)
