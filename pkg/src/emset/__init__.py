"""Exact combinatorics of injection-monoid actions.

Ultimately periodic subsets of omega, piecewise-arithmetic injections,
monoid actions with exact support theory, truncated simplicial structures,
box products, and operadic normal forms, together with a verification
registry that machine-checks the combinatorial laws these satisfy.
"""

from .upsets import EMPTY, EVENS, ODDS, OMEGA, BiInfinite, Cofinite, Finite, UPSet

__all__ = [
    "UPSet",
    "Finite",
    "Cofinite",
    "BiInfinite",
    "EMPTY",
    "OMEGA",
    "EVENS",
    "ODDS",
]
