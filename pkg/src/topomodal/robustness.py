"""Robustness order between agents' models, decided by extension-pair saturation.

Agent ``i`` (model ``M``) is more robust than agent ``j`` (model ``N``) when
every formula's extension in ``N`` sits inside its extension in ``M``.  The
formula language is infinite but the pairs ``([phi]^M, [phi]^N)`` live in a
finite product, so closing the atom pairs under every connective of the
regime visits all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import BadCorrespondence, RegimeMismatch, VocabularyMismatch
from .formula import (
    And,
    Atom,
    Bot,
    Box,
    Diamond,
    NegClosed,
    NegOpen,
    NotClassical,
    Or,
    Top,
    to_text,
)
from .semantics import TopoModel
from .topology import FiniteTopology, members


class Verdict(Enum):
    MORE_ROBUST = "MoreRobust"
    LESS_ROBUST = "LessRobust"
    EQUALLY_ROBUST = "EquallyRobust"
    INCOMPARABLE = "Incomparable"


def _unary(T: FiniteTopology, op: type, a: int) -> int:
    if op is NotClassical:
        return T.complement(a)
    if op is NegClosed:
        return T.closure(T.complement(a))
    if op is NegOpen:
        return T.interior(T.complement(a))
    if op is Box:
        return T.interior(a)
    return T.closure(a)


def _binary(T: FiniteTopology, op: type, a: int, b: int) -> int:
    if op is And:
        return a & b
    if op is Or:
        return a | b
    return T.complement(a) | b


def saturate(m: TopoModel, n: TopoModel) -> dict[tuple[int, int], object]:
    """Every reachable pair ``([phi]^m, [phi]^n)`` with the first formula producing it."""
    Tm, Tn = m.topology, n.topology
    seen: dict[tuple[int, int], object] = {}
    work = []

    def add(pair, phi):
        if pair not in seen:
            seen[pair] = phi
            work.append(pair)

    for atom, mask in m.valuation:
        add((mask, n.value(atom)), Atom(atom))
    add((Tm.whole, Tn.whole), Top())
    add((0, 0), Bot())
    unary, binary = m.regime.unary, m.regime.binary
    done = []
    while work:
        pair = work.pop(0)
        a, b = pair
        phi = seen[pair]
        for op in unary:
            add((_unary(Tm, op, a), _unary(Tn, op, b)), op(phi))
        done.append(pair)
        for other in list(done):
            c, d = other
            psi = seen[other]
            for op in binary:
                add((_binary(Tm, op, a, c), _binary(Tn, op, b, d)), op(phi, psi))
                add((_binary(Tm, op, c, a), _binary(Tn, op, d, b)), op(psi, phi))
    return seen


def resolve_correspondence(m: TopoModel, n: TopoModel, correspondence: Mapping[str, str] | None) -> list[int]:
    """Index in ``m`` of each point of ``n``."""
    if correspondence is None:
        if set(n.points) - set(m.points):
            raise BadCorrespondence("carriers differ; an explicit correspondence is required")
        return [m.points.index(p) for p in n.points]
    if set(correspondence) != set(n.points):
        raise BadCorrespondence("correspondence must be defined on exactly the points of the second model")
    target = [correspondence[p] for p in n.points]
    if set(target) - set(m.points):
        raise BadCorrespondence("correspondence lands outside the first model")
    if len(set(target)) != len(target):
        raise BadCorrespondence("correspondence is not injective")
    return [m.points.index(p) for p in target]


@dataclass
class RobustnessReport:
    verdict: Verdict
    pairs_explored: int
    first_violation_more: str | None
    first_violation_less: str | None
    belief_superset: bool | None

    def as_dict(self) -> dict:
        return {**self.__dict__, "verdict": self.verdict.value}


def robustness_compare(
    m_i: TopoModel, m_j: TopoModel, correspondence: Mapping[str, str] | None = None
) -> RobustnessReport:
    if m_i.regime is not m_j.regime:
        raise RegimeMismatch(f"regimes differ: {m_i.regime.value} vs {m_j.regime.value}")
    if set(m_i.atoms) != set(m_j.atoms):
        raise VocabularyMismatch("atom vocabularies differ")
    emb = resolve_correspondence(m_i, m_j, correspondence)

    def carry(b: int) -> int:
        r = 0
        for k in members(b):
            r |= 1 << emb[k]
        return r

    pairs = saturate(m_i, m_j)
    more_bad = less_bad = None
    modal_ok = True
    for (a, b), phi in pairs.items():
        cb = carry(b)
        if more_bad is None and cb & ~a:
            more_bad = to_text(phi)
        if less_bad is None and a & ~cb:
            less_bad = to_text(phi)
        if type(phi) in (Box, Diamond) and cb & ~a:
            modal_ok = False
    more, less = more_bad is None, less_bad is None
    if more and less:
        verdict = Verdict.EQUALLY_ROBUST
    elif more:
        verdict = Verdict.MORE_ROBUST
    elif less:
        verdict = Verdict.LESS_ROBUST
    else:
        verdict = Verdict.INCOMPARABLE
    return RobustnessReport(
        verdict=verdict,
        pairs_explored=len(pairs),
        first_violation_more=more_bad,
        first_violation_less=less_bad,
        belief_superset=modal_ok if verdict is Verdict.MORE_ROBUST else None,
    )
