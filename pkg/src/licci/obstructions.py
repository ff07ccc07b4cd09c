"""Licci obstructions and Hilbert-function bounds.

The numerical obstruction: with generator twists ``d_{1,1} <= ...`` and top
twists ``d_{3,1} <= ... <= d_{3,n}``, the inequality ``d_{3,n} <= 2 d_{1,1}``
rules out being in the linkage class of a complete intersection.  The
compressed-algebra machinery bounds Hilbert functions against socle data,
and two exhaustive sweeps recompute the closed-form inequalities that show
small E-type formats escape the obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .formats import ResolutionFormat
from .groebner import Ideal, _binom, hilbert, is_artinian
from .resolution import BettiTable, socle


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of the numerical licci obstruction for one Betti table."""

    verdict: str  # "NotLicci" | "Inconclusive"
    d_min: int
    d_top: int

    @property
    def margin(self) -> int:
        return 2 * self.d_min - self.d_top


def hu_obstruction(table: BettiTable) -> ObstructionReport:
    """Apply the Huneke-Ulrich bound; never certifies the licci property."""
    if table.length != 3 or table.rank(0) != 1:
        raise ValueError("expected the Betti table of a grade-3 perfect cyclic quotient")
    d_min = min(table.twists[1])
    d_top = max(table.twists[3])
    verdict = "NotLicci" if d_top <= 2 * d_min else "Inconclusive"
    return ObstructionReport(verdict, d_min, d_top)


# -- compressed algebras -------------------------------------------------------


@dataclass(frozen=True)
class CompressedProfile:
    """Socle data, Hilbert values and the maximal-growth bound."""

    socle_coeffs: dict  # degree -> multiplicity
    socle_degree: int
    embedding_dim: int
    hilbert_values: tuple
    bound: tuple
    weak_bound: tuple
    is_compressed: bool
    witness_degree: int | None

    @property
    def type(self) -> int:
        return sum(self.socle_coeffs.values())


def compressed_check(I: Ideal) -> CompressedProfile:
    """Compare the Hilbert function with the socle-polynomial growth bound."""
    if not is_artinian(I):
        raise ValueError("compressed test requires an Artinian quotient")
    e = I.ring.num_vars
    soc = socle(I)
    s = soc.socle_degree
    coeffs = dict(soc.degree_multiset)
    n = sum(coeffs.values())
    h = hilbert(I)
    values = tuple(h.values.get(i, 0) for i in range(s + 1))

    def hq(i: int) -> int:
        return _binom(e - 1 + i, e - 1)

    bound = []
    weak = []
    for i in range(s + 1):
        dual = sum(coeffs.get(j, 0) * hq(j - i) for j in range(i, s + 1))
        bound.append(min(hq(i), dual))
        weak.append(min(hq(i), n * hq(s - i)))
    witness = None
    for i in range(s + 1):
        if values[i] > bound[i]:
            raise AssertionError(f"Hilbert value exceeds the socle bound at degree {i}")
        if witness is None and values[i] < bound[i]:
            witness = i
    return CompressedProfile(
        socle_coeffs=coeffs,
        socle_degree=s,
        embedding_dim=e,
        hilbert_values=values,
        bound=tuple(bound),
        weak_bound=tuple(weak),
        is_compressed=witness is None,
        witness_degree=witness,
    )


# -- reduction table -----------------------------------------------------------


@dataclass(frozen=True)
class ReductionRow:
    """One row: a Dynkin format directly linked to a potential minimal format."""

    label: str
    parametrized: bool
    _source: object  # callable l -> format, or a fixed format
    _target: object

    def instance(self, l: int | None = None):
        if self.parametrized:
            if l is None:
                raise ValueError(f"row {self.label} needs a parameter")
            return self._source(l), self._target(l)
        return self._source, self._target


def reduction_table():
    """The seven-row table of Dynkin formats and their direct-link targets.

    Rows one and two are families in ``l >= 2``; in each row the target is
    the two-minimal-generator link of the source, with total rank two more.
    """
    return [
        ReductionRow(
            "(1,2l+1,2l+1,1) -> (1,4,2l+2,2l-1)",
            True,
            lambda l: ResolutionFormat(2 * l + 1, 1),
            lambda l: ResolutionFormat(4, 2 * l - 1),
        ),
        ReductionRow(
            "(1,4,l+3,l) -> (1,l+3,l+4,2)",
            True,
            lambda l: ResolutionFormat(4, l),
            lambda l: ResolutionFormat(l + 3, 2),
        ),
        ReductionRow(
            "(1,5,6,2) -> (1,5,7,3)",
            False,
            ResolutionFormat(5, 2),
            ResolutionFormat(5, 3),
        ),
        ReductionRow(
            "(1,5,7,3) -> (1,6,8,3)",
            False,
            ResolutionFormat(5, 3),
            ResolutionFormat(6, 3),
        ),
        ReductionRow(
            "(1,5,8,4) -> (1,7,9,3)",
            False,
            ResolutionFormat(5, 4),
            ResolutionFormat(7, 3),
        ),
        ReductionRow(
            "(1,6,7,2) -> (1,5,8,4)",
            False,
            ResolutionFormat(6, 2),
            ResolutionFormat(5, 4),
        ),
        ReductionRow(
            "(1,7,8,2) -> (1,5,9,5)",
            False,
            ResolutionFormat(7, 2),
            ResolutionFormat(5, 5),
        ),
    ]


# -- exhaustive sweeps ---------------------------------------------------------


@dataclass
class SweepReport:
    cases: int
    branch_counts: dict


def _hq(i: int) -> int:
    """Hilbert function of a 3-variable polynomial ring (0 for negative)."""
    return _binom(i + 2, 2)


class SweepFailure(AssertionError):
    def __init__(self, prop, s, d, case, detail):
        super().__init__(f"{prop} failed at s={s}, d={d} ({case}): {detail}")


def verify_type2_bound(s_max: int) -> SweepReport:
    """Check every closed form and inequality behind the type-2 escape bound.

    Covers formats ``(1,m,m+1,2)`` with ``4 <= m <= 7``: the Hilbert lower
    bound uses at most six copies of the shifted ``h_Q`` in case 1 and seven
    in case 2, and must beat ``2 h_Q(s-u)``.
    """
    if s_max < 1:
        raise ValueError("s_max must be positive")
    counts = {"case1_d2": 0, "case1_even": 0, "case1_odd": 0, "case2_even": 0, "case2_odd": 0}
    cases = 0
    for s in range(1, s_max + 1):
        for d in range(2, s + 2):
            cases += 1
            if 2 * d < s + 3:
                # case 1
                if d == 2:
                    lhs = _hq(s) - _hq(s - 2)
                    if lhs != 2 * s + 1:
                        raise SweepFailure("type2", s, d, "case1_d2", "closed form")
                    if not lhs > 2 * _hq(0):
                        raise SweepFailure("type2", s, d, "case1_d2", "final bound")
                    counts["case1_d2"] += 1
                    continue
                u = s + 2 - (d + 1) // 2
                if u > s:
                    raise SweepFailure("type2", s, d, "case1", "u exceeds s")
                rhs = 2 * _hq(s - u)
                lower = _hq(u) - _hq(u - d) - 6 * _hq(u - s - 3 + d)
                if d % 2 == 0:
                    if Fraction(d * (d - 2), 4) != rhs:
                        raise SweepFailure("type2", s, d, "case1_even", "2hQ closed form")
                    if Fraction(d * (4 * s - 7 * d + 8), 4) != lower:
                        raise SweepFailure("type2", s, d, "case1_even", "lower closed form")
                    margin = Fraction(d * (2 * (s - 2 * d + 3) - 1), 2)
                    if lower - rhs != margin or margin < Fraction(d, 2):
                        raise SweepFailure("type2", s, d, "case1_even", "margin")
                    counts["case1_even"] += 1
                else:
                    if Fraction((d + 1) * (d - 1), 4) != rhs:
                        raise SweepFailure("type2", s, d, "case1_odd", "2hQ closed form")
                    if Fraction(d * (4 * s - 7 * d + 12) + 3, 4) != lower:
                        raise SweepFailure("type2", s, d, "case1_odd", "lower closed form")
                    margin = d * (s - 2 * d + 3) + 1
                    if lower - rhs != margin or margin < d + 1:
                        raise SweepFailure("type2", s, d, "case1_odd", "margin")
                    counts["case1_odd"] += 1
                if not lower > rhs:
                    raise SweepFailure("type2", s, d, "case1", "final bound")
            else:
                # case 2
                u = (s + d) // 2
                sigma = s - d + 3
                if not (1 <= sigma <= d <= s + 1 and u <= s):
                    raise SweepFailure("type2", s, d, "case2", "parameter range")
                rhs = 2 * _hq(s - u)
                lower = _hq(u) - 7 * _hq(u - d)
                if (s + d) % 2 == 0:
                    if Fraction(sigma * sigma - 1, 4) != rhs:
                        raise SweepFailure("type2", s, d, "case2_even", "2hQ closed form")
                    if Fraction(2 * d * (d + sigma) - 3 * (sigma * sigma - 1), 4) != lower:
                        raise SweepFailure("type2", s, d, "case2_even", "lower closed form")
                    if lower - rhs < 1:
                        raise SweepFailure("type2", s, d, "case2_even", "margin")
                    counts["case2_even"] += 1
                else:
                    if Fraction(sigma * (sigma + 2), 4) != rhs:
                        raise SweepFailure("type2", s, d, "case2_odd", "2hQ closed form")
                    if Fraction(2 * d * (d + sigma - 1) - 3 * sigma * (sigma - 2), 4) != lower:
                        raise SweepFailure("type2", s, d, "case2_odd", "lower closed form")
                    if lower - rhs < Fraction(sigma, 2):
                        raise SweepFailure("type2", s, d, "case2_odd", "margin")
                    counts["case2_odd"] += 1
                if not lower > rhs:
                    raise SweepFailure("type2", s, d, "case2", "final bound")
    return SweepReport(cases, counts)


def verify_five_generator_bound(s_max: int) -> SweepReport:
    """Check the closed forms behind the five-generator escape bound.

    Covers formats ``(1,5,n+4,n)`` with ``1 <= n <= 4``: the bound to beat
    is ``n h_Q(s-u) <= 4 h_Q(s-u)``, with four shifted copies subtracted in
    case 1 and five in case 2.  The ``d = 2`` branch needs ``s >= 2``; the
    pair ``(s, d) = (1, 2)`` cannot occur for these formats.  At the case-1
    boundary ``2d = s + 3`` the margins drop to ``d/2`` resp. ``1`` (still
    positive); in case 2 with ``s + d`` odd the sharp margin is ``sigma``.
    """
    if s_max < 1:
        raise ValueError("s_max must be positive")
    counts = {"case1_d2": 0, "case1_even": 0, "case1_odd": 0, "case2_even": 0, "case2_odd": 0, "skipped": 0}
    cases = 0
    for s in range(1, s_max + 1):
        for d in range(2, s + 2):
            cases += 1
            if 2 * d <= s + 3:
                # case 1
                if d == 2:
                    if s < 2:
                        counts["skipped"] += 1
                        continue
                    lhs = _hq(s) - _hq(s - 2)
                    if lhs != 2 * s + 1:
                        raise SweepFailure("five-gen", s, d, "case1_d2", "closed form")
                    if not lhs > 4:
                        raise SweepFailure("five-gen", s, d, "case1_d2", "final bound")
                    counts["case1_d2"] += 1
                    continue
                u = s + 2 - (d + 1) // 2
                if u > s:
                    raise SweepFailure("five-gen", s, d, "case1", "u exceeds s")
                rhs = 4 * _hq(s - u)
                lower = _hq(u) - _hq(u - d) - 4 * _hq(u - s - 3 + d)
                boundary = 2 * d == s + 3
                if d % 2 == 0:
                    if Fraction(d * (d - 2), 2) != rhs:
                        raise SweepFailure("five-gen", s, d, "case1_even", "4hQ closed form")
                    if Fraction(d * (2 * s - 3 * d + 5), 2) != lower:
                        raise SweepFailure("five-gen", s, d, "case1_even", "lower closed form")
                    margin = Fraction(d * (2 * (s - 2 * d + 3) + 1), 2)
                    floor = Fraction(d, 2) if boundary else Fraction(3 * d, 2)
                    if lower - rhs != margin or margin < floor:
                        raise SweepFailure("five-gen", s, d, "case1_even", "margin")
                    counts["case1_even"] += 1
                else:
                    if Fraction((d + 1) * (d - 1), 2) != rhs:
                        raise SweepFailure("five-gen", s, d, "case1_odd", "4hQ closed form")
                    if Fraction(d * (2 * s - 3 * d + 6) + 1, 2) != lower:
                        raise SweepFailure("five-gen", s, d, "case1_odd", "lower closed form")
                    margin = d * (s - 2 * d + 3) + 1
                    floor = 1 if boundary else d + 1
                    if lower - rhs != margin or margin < floor:
                        raise SweepFailure("five-gen", s, d, "case1_odd", "margin")
                    counts["case1_odd"] += 1
                if not lower > rhs:
                    raise SweepFailure("five-gen", s, d, "case1", "final bound")
            else:
                # case 2
                u = (s + d) // 2
                sigma = s - d + 3
                if not (2 <= sigma + 1 <= d <= s + 1 and u <= s):
                    raise SweepFailure("five-gen", s, d, "case2", "parameter range")
                rhs = 4 * _hq(s - u)
                lower = _hq(u) - 5 * _hq(u - d)
                if (s + d) % 2 == 0:
                    if Fraction(sigma * sigma - 1, 2) != rhs:
                        raise SweepFailure("five-gen", s, d, "case2_even", "4hQ closed form")
                    if Fraction(d * (d + sigma) - (sigma * sigma - 1), 2) != lower:
                        raise SweepFailure("five-gen", s, d, "case2_even", "lower closed form")
                    if lower - rhs < Fraction(3 * (sigma + 1), 2):
                        raise SweepFailure("five-gen", s, d, "case2_even", "margin")
                    counts["case2_even"] += 1
                else:
                    if Fraction(sigma * (sigma + 2), 2) != rhs:
                        raise SweepFailure("five-gen", s, d, "case2_odd", "4hQ closed form")
                    if Fraction(d * (d + sigma - 1) - sigma * (sigma - 2), 2) != lower:
                        raise SweepFailure("five-gen", s, d, "case2_odd", "lower closed form")
                    if lower - rhs < sigma:
                        raise SweepFailure("five-gen", s, d, "case2_odd", "margin")
                    counts["case2_odd"] += 1
                if not lower > rhs:
                    raise SweepFailure("five-gen", s, d, "case2", "final bound")
    return SweepReport(cases, counts)


def check_dynkin_unobstructed(table: BettiTable) -> bool:
    """Assert an E-type table beats the licci obstruction by a full step.

    Accepts tables of format ``(1,m,m+1,2)`` for ``4 <= m <= 7`` or
    ``(1,5,n+4,n)`` for ``1 <= n <= 4`` with initial degree at least two;
    checks ``d_{3,2} > d_{1,1} + d_{1,2}``.  A violation would contradict a
    theorem, so it aborts loudly.
    """
    ranks = table.format_ranks()
    if len(ranks) != 4 or ranks[0] != 1:
        raise ValueError("need a length-3 table of a cyclic quotient")
    m, n = ranks[1], ranks[3]
    in_two_type = n == 2 and 4 <= m <= 7 and ranks[2] == m + 1
    in_five_gen = m == 5 and 1 <= n <= 4 and ranks[2] == n + 4
    if not (in_two_type or in_five_gen):
        raise ValueError(f"format {ranks} outside the verified families")
    d1 = sorted(table.twists[1])
    d3 = sorted(table.twists[3])
    if d1[0] < 2:
        raise ValueError("initial degree must be at least 2")
    top = d3[1] if len(d3) >= 2 else d3[0]
    if not top > d1[0] + d1[1]:
        raise AssertionError(
            f"table {table.twists} violates the escape bound; "
            "this contradicts a theorem, so the engine has a bug"
        )
    return True
