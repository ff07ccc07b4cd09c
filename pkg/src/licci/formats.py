"""Resolution-format arithmetic and ADE classification.

A length-3 resolution of a cyclic quotient has rank quadruple
``(1, m, m+n-1, n)``; its associated graph is the three-armed tree
``T(2, m-2, n+1)`` (arm lengths count the central node).  A format is
Dynkin exactly when ``1/p + 1/q + 1/r > 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ResolutionFormat:
    """The quadruple ``(1, m, m+n-1, n)`` determined by ``m >= 3, n >= 1``."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 3 or self.n < 1:
            raise ValueError(f"no format with m={self.m}, n={self.n}")

    @property
    def f0(self) -> int:
        return 1

    @property
    def f1(self) -> int:
        return self.m

    @property
    def f2(self) -> int:
        return self.m + self.n - 1

    @property
    def f3(self) -> int:
        return self.n

    @property
    def total_rank(self) -> int:
        return 2 * (self.m + self.n)

    def quadruple(self) -> tuple:
        return (1, self.m, self.m + self.n - 1, self.n)

    @classmethod
    def from_quadruple(cls, quad) -> "ResolutionFormat":
        f0, m, f2, n = quad
        fmt = cls(m, n)
        if f0 != 1 or f2 != fmt.f2:
            raise ValueError(f"{tuple(quad)} is not of the shape (1, m, m+n-1, n)")
        return fmt

    def __str__(self):
        return f"(1,{self.m},{self.f2},{self.n})"


@dataclass(frozen=True)
class FormatGraph:
    """Arm lengths of the T-shaped graph attached to a format."""

    p: int
    q: int
    r: int

    @property
    def node_count(self) -> int:
        return self.p + self.q + self.r - 2

    def is_dynkin(self) -> bool:
        arms = sorted((self.p, self.q, self.r))
        if arms[0] <= 1:
            return True  # degenerate arm: the graph is a path
        return Fraction(1, arms[0]) + Fraction(1, arms[1]) + Fraction(1, arms[2]) > 1


@dataclass(frozen=True)
class DynkinClass:
    """An ADE label ``A_k``/``D_k``/``E_k`` or the non-Dynkin marker."""

    letter: str | None
    index: int | None = None

    @property
    def is_dynkin(self) -> bool:
        return self.letter is not None

    def __str__(self):
        if self.letter is None:
            return "NotDynkin"
        return f"{self.letter}{self.index}"


NOT_DYNKIN = DynkinClass(None, None)


def format_graph(fmt: ResolutionFormat) -> FormatGraph:
    return FormatGraph(2, fmt.m - 2, fmt.n + 1)


def format_of(table) -> ResolutionFormat:
    """Read the format off a length-3 Betti table of a cyclic quotient."""
    ranks = table.format_ranks()
    if len(ranks) != 4 or ranks[0] != 1:
        raise ValueError(f"not a length-3 resolution of a cyclic quotient: {ranks}")
    return ResolutionFormat.from_quadruple(ranks)


def classify(fmt: ResolutionFormat) -> DynkinClass:
    """ADE class of the associated graph, or the non-Dynkin marker."""
    graph = format_graph(fmt)
    if not graph.is_dynkin():
        return NOT_DYNKIN
    k = graph.node_count  # equals f2 = m + n - 1
    if fmt.m == 3:
        return DynkinClass("A", k)
    if fmt.m == 4 or fmt.n == 1:
        return DynkinClass("D", k)
    return DynkinClass("E", k)


def realizable(fmt: ResolutionFormat) -> bool:
    """Whether some grade-3 perfect ideal attains this format.

    The two excluded families: type-1 formats need an odd number of
    generators, and m = 3 forces the complete-intersection format.
    """
    if fmt.n == 1 and fmt.m % 2 == 0:
        return False
    if fmt.m == 3 and fmt.n >= 2:
        return False
    return True


def enumerate_dynkin(max_m: int, max_n: int, realizable_only: bool = True):
    """All Dynkin-classified formats in range, optionally realizable only."""
    if max_m < 3 or max_n < 1:
        raise ValueError("bounds must allow at least (m, n) = (3, 1)")
    out = []
    for m in range(3, max_m + 1):
        for n in range(1, max_n + 1):
            fmt = ResolutionFormat(m, n)
            cls = classify(fmt)
            if not cls.is_dynkin:
                continue
            if realizable_only and not realizable(fmt):
                continue
            out.append((fmt, cls))
    return out
