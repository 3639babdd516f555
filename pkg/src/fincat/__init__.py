"""fincat: computation and exhaustive verification of finite category theory."""

from .core import (
    Counterexample,
    FinCat,
    Functor,
    GuardExceeded,
    Mor,
    NatTrans,
    Report,
    StructuralError,
)

__all__ = [
    "FinCat", "Functor", "NatTrans", "Mor", "Report", "Counterexample",
    "StructuralError", "GuardExceeded",
]
