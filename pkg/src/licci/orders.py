"""Monomial orders: graded reverse lexicographic, graded lexicographic, and
block elimination orders.

An order exposes ``key(exps)`` returning a tuple that sorts monomials
ascending, so ``max(terms, key=...)`` picks the leading term.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DegRevLex:
    """Total degree first, ties broken reverse-lexicographically."""

    name = "degrevlex"

    def key(self, exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class DegLex:
    """Total degree first, ties broken lexicographically."""

    name = "deglex"

    def key(self, exps):
        return (sum(exps), exps)


@dataclass(frozen=True)
class Elimination:
    """Block order eliminating the first ``block`` variables.

    Degree-compatible within each block (degrevlex inside), so any monomial
    involving an eliminated variable beats any monomial that avoids them.
    """

    block: int

    def __post_init__(self):
        if self.block < 1:
            raise ValueError("elimination block must have at least one variable")

    @property
    def name(self) -> str:
        return f"elim:{self.block}"

    def key(self, exps):
        head, tail = exps[: self.block], exps[self.block :]
        return (
            sum(head),
            tuple(-e for e in reversed(head)),
            sum(tail),
            tuple(-e for e in reversed(tail)),
        )


DEGREVLEX = DegRevLex()
DEGLEX = DegLex()
