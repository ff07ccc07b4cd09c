"""Structured families of grade-3 perfect ideals.

Pfaffian (Gorenstein) ideals from random skew-symmetric matrices of linear
forms, 2x2-minor (determinantal) ideals, and a small library of named
example ideals used by the golden tests and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .groebner import Ideal, ideal
from .poly import Polynomial, Ring


class RetryBudgetExceeded(RuntimeError):
    """A randomized construction kept failing its verification."""


@dataclass(frozen=True)
class SkewMatrix:
    """Skew-symmetric matrix; the strict upper triangle is stored."""

    size: int
    upper: tuple  # row-major strict upper triangle, length size*(size-1)/2

    def __post_init__(self):
        expected = self.size * (self.size - 1) // 2
        if len(self.upper) != expected:
            raise ValueError(f"need {expected} upper entries, got {len(self.upper)}")

    def _index(self, i: int, j: int) -> int:
        # strict upper triangle, rows before row i contribute size-1-k entries
        return (2 * self.size - 1 - i) * i // 2 + (j - i - 1)

    def entry(self, i: int, j: int) -> Polynomial:
        if i == j:
            return self.upper[0].ring.zero()
        if i < j:
            return self.upper[self._index(i, j)]
        return -self.upper[self._index(j, i)]

    def delete(self, k: int) -> "SkewMatrix":
        """Submatrix with row and column ``k`` removed."""
        keep = [i for i in range(self.size) if i != k]
        entries = []
        for a in range(len(keep)):
            for b in range(a + 1, len(keep)):
                entries.append(self.entry(keep[a], keep[b]))
        return SkewMatrix(self.size - 1, tuple(entries))


def pfaffian(M: SkewMatrix) -> Polynomial:
    """Pfaffian of an even skew matrix by expansion along the first row.

    Sign convention: ``pf([[0, a], [-a, 0]]) = a``.
    """
    if M.size % 2 != 0:
        raise ValueError("Pfaffian requires an even-sized matrix")
    return _pf(M, tuple(range(M.size)))


def _pf(M: SkewMatrix, rows: tuple) -> Polynomial:
    ring = M.upper[0].ring
    if not rows:
        return ring.one()
    if len(rows) == 2:
        return M.entry(rows[0], rows[1])
    first = rows[0]
    rest = rows[1:]
    total = ring.zero()
    for idx, j in enumerate(rest):
        a = M.entry(first, j)
        if a.is_zero():
            continue
        sub = rest[:idx] + rest[idx + 1 :]
        term = a * _pf(M, sub)
        total = total + term if idx % 2 == 0 else total - term
    return total


def submaximal_pfaffians(M: SkewMatrix):
    """The ``size`` Pfaffians obtained by deleting one row and column."""
    if M.size % 2 != 1:
        raise ValueError("submaximal Pfaffians require an odd-sized matrix")
    return [pfaffian(M.delete(k)) for k in range(M.size)]


def determinant(columns, ring: Ring) -> Polynomial:
    """Determinant of a square polynomial matrix by column expansion."""
    n = len(columns)
    memo = {}

    def minor(row, cols):
        if not cols:
            return ring.one()
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = ring.zero()
        for idx, c in enumerate(cols):
            entry = columns[c][row]
            if not entry.is_zero():
                term = entry * minor(row + 1, cols[:idx] + cols[idx + 1 :])
                total = total + term if idx % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def random_linear_form(ring: Ring, rng) -> Polynomial:
    field = ring.field
    if hasattr(field, "p"):
        coeffs = [rng.randrange(field.p) for _ in range(ring.num_vars)]
    else:
        coeffs = [rng.randint(-9, 9) for _ in range(ring.num_vars)]
    total = ring.zero()
    for i, c in enumerate(coeffs):
        total = total + ring.var(i).scale(field.coerce(c))
    return total


def random_skew_linear(size: int, ring: Ring, rng) -> SkewMatrix:
    count = size * (size - 1) // 2
    return SkewMatrix(size, tuple(random_linear_form(ring, rng) for _ in range(count)))


def gorenstein_ideal(m: int, ring: Ring, rng, budget: int = 64) -> Ideal:
    """A verified grade-3 ideal of format ``(1, m, m, 1)`` for odd ``m``.

    For ``m >= 5`` this draws random skew matrices of linear forms and keeps
    the first whose submaximal Pfaffians resolve with the expected format.
    """
    from .resolution import minimal_free_resolution

    if m < 3 or m % 2 == 0:
        raise ValueError("type-1 formats need an odd number of generators")
    if ring.num_vars < 3:
        raise ValueError("need at least 3 variables")
    if m == 3:
        return Ideal(ring, ring.vars()[:3])
    for _ in range(budget):
        M = random_skew_linear(m, ring, rng)
        gens = submaximal_pfaffians(M)
        if any(g.is_zero() for g in gens):
            continue
        I = Ideal(ring, gens)
        try:
            table = minimal_free_resolution(I)
        except (ValueError, AssertionError):
            continue
        if table.format_ranks() == (1, m, m, 1):
            return I
    raise RetryBudgetExceeded(f"no Gorenstein ideal of format (1,{m},{m},1) found")


def minors_2x2(matrix, ring: Ring) -> Ideal:
    """Ideal of 2x2 minors of a 2x4 matrix or a symmetric 3x3 matrix.

    Entries must be homogeneous linear forms; the symmetric case takes one
    minor per unordered pair of row/column pairs.
    """
    rows = [list(r) for r in matrix]
    for row in rows:
        for entry in row:
            if not entry.is_zero() and not (
                entry.is_homogeneous() and entry.degree() == 1
            ):
                raise ValueError("matrix entries must be linear forms")

    def minor(r1, r2, c1, c2):
        return rows[r1][c1] * rows[r2][c2] - rows[r1][c2] * rows[r2][c1]

    if len(rows) == 2 and len(rows[0]) == 4:
        gens = [minor(0, 1, c1, c2) for c1 in range(4) for c2 in range(c1 + 1, 4)]
    elif len(rows) == 3 and len(rows[0]) == 3:
        if any(rows[i][j] != rows[j][i] for i in range(3) for j in range(3)):
            raise ValueError("3x3 matrix must be symmetric")
        pairs = [(0, 1), (0, 2), (1, 2)]
        gens = []
        seen = set()
        for a, (r1, r2) in enumerate(pairs):
            for b, (c1, c2) in enumerate(pairs):
                if (min(a, b), max(a, b)) in seen:
                    continue
                seen.add((min(a, b), max(a, b)))
                gens.append(minor(r1, r2, c1, c2))
    else:
        raise ValueError("expected a 2x4 matrix or a symmetric 3x3 matrix")
    return Ideal(ring, gens)


def random_minors_ideal(ring: Ring, rng, budget: int = 64) -> Ideal:
    """Random 2x4 linear-minor ideal, verified to have format (1,6,8,3)."""
    from .resolution import minimal_free_resolution

    for _ in range(budget):
        matrix = [
            [random_linear_form(ring, rng) for _ in range(4)] for _ in range(2)
        ]
        I = minors_2x2(matrix, ring)
        try:
            table = minimal_free_resolution(I)
        except (ValueError, AssertionError):
            continue
        if table.format_ranks() == (1, 6, 8, 3):
            return I
    raise RetryBudgetExceeded("no (1,6,8,3) minor ideal found")


# -- named examples -----------------------------------------------------------

EXAMPLE_GENS = {
    "N2": ("X^2", "X*Y", "X*Z", "Y^2", "Y*Z", "Z^2"),
    "I_3_4": ("X^2", "Y^2", "X*Y*Z", "X*Z^2", "Y*Z^2", "Z^3"),
    "J_3_4": (
        "X^3 - Y*Z^2",
        "Y^3 - X*Z^2",
        "Z^3",
        "X^2*Y^2",
        "X^2*Y*Z",
        "X*Y^2*Z",
        "X*Y*Z^2",
    ),
    "I_3_7": (
        "X^3",
        "X^2*Y + Y*Z^2",
        "X^2*Z + X*Y*Z",
        "X*Y^2 + X*Y*Z",
        "X*Z^2",
        "Y^3",
        "Y^2*Z",
        "Z^3",
    ),
    "J_3_7": (
        "X^3",
        "X^2*Y - Y*Z^2",
        "X*Y*Z - X*Z^2 - Y^2*Z",
        "Y^3",
        "Z^3",
    ),
}


def paper_examples(field=QQ) -> dict:
    """The built-in named ideals in ``field[X, Y, Z]``."""
    ring = Ring(("X", "Y", "Z"), field)
    return {name: ideal(ring, *gens) for name, gens in EXAMPLE_GENS.items()}
