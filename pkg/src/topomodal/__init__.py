"""Modal logic over finite topological spaces.

Classical, paraconsistent and paracomplete regimes, maps and homotopy fences
between models, topo-bisimulation, robustness comparison and a randomized
property lab.
"""

from .formula import Regime, parse, to_text
from .semantics import TopoModel, extension, new_model, satisfies
from .topology import FiniteTopology, validate

__all__ = [
    "FiniteTopology",
    "Regime",
    "TopoModel",
    "extension",
    "new_model",
    "parse",
    "satisfies",
    "to_text",
    "validate",
]
