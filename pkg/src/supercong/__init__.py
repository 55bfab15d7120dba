"""Lucas sequences, central trinomial coefficients and binomial supercongruences mod p^2 and p^3."""

from .exactnum import NotInvertible, Residue, binom_exact, harmonic, jacobi, residue_of
from .sequences import LucasParams, TrinomialCache, lucas_u, lucas_v, trinomial
from .verdict import CheckReport, check, sweep

__all__ = [
    "CheckReport",
    "LucasParams",
    "NotInvertible",
    "Residue",
    "TrinomialCache",
    "binom_exact",
    "check",
    "harmonic",
    "jacobi",
    "lucas_u",
    "lucas_v",
    "residue_of",
    "sweep",
    "trinomial",
]
