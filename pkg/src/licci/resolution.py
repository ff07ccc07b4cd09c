"""Graded minimal free resolutions, Betti tables, socles and perfection.

Syzygies are computed with a module Groebner basis: the columns are tagged
with unit vectors in extra positions, the position-over-term order
eliminates the original block, and basis elements supported entirely on the
tag block are exactly the syzygies.  Iterating and cancelling unit entries
of the differentials (tracking twists) yields the minimal resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import GBEngine, Ideal, hilbert, is_artinian, standard_monomials
from .orders import DEGREVLEX
from .poly import Polynomial, Ring


@dataclass(frozen=True)
class BettiTable:
    """Twist multisets of a graded minimal free resolution of ``Q/I``.

    ``twists[i]`` lists the internal degrees in homological degree ``i``,
    ascending; ``twists[0] == (0,)`` for cyclic quotients.
    """

    twists: tuple

    @property
    def length(self) -> int:
        return len(self.twists) - 1

    def rank(self, i: int) -> int:
        return len(self.twists[i]) if i < len(self.twists) else 0

    def format_ranks(self) -> tuple:
        return tuple(len(t) for t in self.twists)

    def euler_numerator(self) -> tuple:
        """Alternating twist sum as an integer polynomial in ``t``."""
        top = max((max(t) for t in self.twists if t), default=0)
        out = [0] * (top + 1)
        for i, degs in enumerate(self.twists):
            sign = 1 if i % 2 == 0 else -1
            for d in degs:
                out[d] += sign
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "format": list(self.format_ranks()),
            "twists": [list(t) for t in self.twists],
        }

    def pretty(self) -> str:
        """Betti diagram: row ``r`` counts twists with ``d - i == r``."""
        p = self.length
        rows = sorted({d - i for i, degs in enumerate(self.twists) for d in degs})
        header = "      " + "".join(f"{i:>5}" for i in range(p + 1))
        lines = [header]
        for r in rows:
            cells = []
            for i in range(p + 1):
                count = sum(1 for d in self.twists[i] if d - i == r)
                cells.append(f"{count if count else '.':>5}")
            lines.append(f"{r:>4}: " + "".join(cells))
        return "\n".join(lines)


@dataclass(frozen=True)
class SocleData:
    """Socle of an Artinian quotient: degrees, multiplicities, representatives."""

    degree_multiset: dict
    representatives: tuple
    socle_degree: int

    @property
    def type(self) -> int:
        return sum(self.degree_multiset.values())

    def polynomial_str(self) -> str:
        pieces = []
        for d in sorted(self.degree_multiset):
            c = self.degree_multiset[d]
            if d == 0:
                pieces.append(str(c))
            else:
                base = "t" if d == 1 else f"t^{d}"
                pieces.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(pieces) if pieces else "0"


# -- linear algebra helpers ---------------------------------------------------


def left_kernel(rows, field):
    """Basis of ``{a : a * M = 0}`` for the matrix with the given rows."""
    n = len(rows)
    if n == 0:
        return []
    width = len(rows[0])
    # augment [M | I] and row-reduce; zero M-rows give kernel vectors
    aug = [list(r) + [field.one if j == i else field.zero for j in range(n)] for i, r in enumerate(rows)]
    pivot_row = 0
    for col in range(width):
        sel = None
        for r in range(pivot_row, n):
            if not field.is_zero(aug[r][col]):
                sel = r
                break
        if sel is None:
            continue
        aug[pivot_row], aug[sel] = aug[sel], aug[pivot_row]
        inv = field.inv(aug[pivot_row][col])
        aug[pivot_row] = [field.mul(inv, v) for v in aug[pivot_row]]
        for r in range(n):
            if r != pivot_row and not field.is_zero(aug[r][col]):
                factor = aug[r][col]
                aug[r] = [
                    field.sub(v, field.mul(factor, w))
                    for v, w in zip(aug[r], aug[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == n:
            break
    kernel = []
    for r in range(pivot_row, n):
        if all(field.is_zero(v) for v in aug[r][:width]):
            kernel.append(aug[r][width:])
    return kernel


# -- syzygies -----------------------------------------------------------------


def _column_twist(column, row_twists):
    """Internal degree of a homogeneous column; checks homogeneity."""
    twist = None
    for row, entry in enumerate(column):
        if entry.is_zero():
            continue
        if not entry.is_homogeneous():
            raise ValueError("inhomogeneous matrix entry")
        d = entry.degree() + row_twists[row]
        if twist is None:
            twist = d
        elif twist != d:
            raise ValueError("inhomogeneous column")
    if twist is None:
        raise ValueError("zero column has no twist")
    return twist


def syzygies(columns, row_twists, ring: Ring):
    """Generators of the syzygy module of homogeneous columns.

    Returns ``(syzygy_columns, syzygy_twists)`` where each syzygy column is a
    vector of length ``len(columns)``.
    """
    r = len(row_twists)
    s = len(columns)
    col_twists = [_column_twist(col, row_twists) for col in columns]
    engine = GBEngine(
        ring.field, DEGREVLEX, ring.num_vars, tuple(row_twists) + tuple(col_twists)
    )
    zero_exps = (0,) * ring.num_vars
    vectors = []
    for j, col in enumerate(columns):
        terms = []
        for row, entry in enumerate(col):
            terms.extend((row, e, c) for e, c in entry.terms)
        terms.append((r + j, zero_exps, ring.field.one))
        vectors.append(terms)
    basis = engine.buchberger(vectors)
    syz_cols = []
    syz_twists = []
    for v in basis:
        if any(pos < r for _, pos, _, _ in v):
            continue
        col = []
        for j in range(s):
            terms = [(e, c) for _, pos, e, c in v if pos == r + j]
            col.append(ring.from_terms(terms))
        syz_cols.append(tuple(col))
        syz_twists.append(_column_twist(col, col_twists))
    order = sorted(range(len(syz_cols)), key=lambda i: syz_twists[i])
    return [syz_cols[i] for i in order], [syz_twists[i] for i in order]


# -- complexes and minimalization ---------------------------------------------


class FreeComplex:
    """A complex of free modules ``F_0 <- F_1 <- ...`` with twist bookkeeping.

    ``mats[k]`` is the differential ``F_{k+1} -> F_k`` stored column-major:
    ``mats[k][c][r]`` is the entry in row ``r``, column ``c``.
    """

    def __init__(self, ring: Ring, twists, mats):
        self.ring = ring
        self.twists = [list(t) for t in twists]
        self.mats = [[list(col) for col in mat] for mat in mats]

    def entry(self, k, r, c) -> Polynomial:
        return self.mats[k][c][r]

    def check_complex(self):
        """Assert ``d_k . d_{k+1} = 0`` throughout."""
        zero = self.ring.zero()
        for k in range(len(self.mats) - 1):
            A, B = self.mats[k], self.mats[k + 1]
            rows = len(self.twists[k])
            for bc in range(len(B)):
                for r in range(rows):
                    acc = zero
                    for m in range(len(A)):
                        if not B[bc][m].is_zero() and not A[m][r].is_zero():
                            acc = acc + A[m][r] * B[bc][m]
                    if not acc.is_zero():
                        raise AssertionError("differentials do not compose to zero")

    def _find_unit(self):
        for k, mat in enumerate(self.mats):
            for c, col in enumerate(mat):
                for r, entry in enumerate(col):
                    if not entry.is_zero() and entry.is_constant():
                        return k, r, c
        return None

    def minimalize(self):
        """Cancel constant entries, shrinking the complex in place."""
        while True:
            found = self._find_unit()
            if found is None:
                break
            self._cancel(*found)
        # zero columns of the last differential are redundant generators of
        # the top syzygy module; interior zero columns self-heal via units
        if self.mats:
            last = self.mats[-1]
            keep = [
                i for i, col in enumerate(last)
                if any(not e.is_zero() for e in col)
            ]
            if len(keep) != len(last):
                self.mats[-1] = [last[i] for i in keep]
                self.twists[-1] = [self.twists[-1][i] for i in keep]
        # drop trailing zero modules
        while self.mats and not self.mats[-1]:
            self.mats.pop()
            self.twists.pop()

    def _cancel(self, k, r, c):
        ring = self.ring
        A = self.mats[k]
        unit = A[c][r]
        inv = ring.field.inv(unit.terms[0][1])
        # clear row r by column operations; mirror on the rows of B
        lambdas = {}
        for c2 in range(len(A)):
            if c2 == c or A[c2][r].is_zero():
                continue
            lam = A[c2][r].scale(inv)
            lambdas[c2] = lam
            A[c2] = [x - lam * y for x, y in zip(A[c2], A[c])]
        if k + 1 < len(self.mats):
            B = self.mats[k + 1]
            for col in B:
                bump = ring.zero()
                for c2, lam in lambdas.items():
                    if not col[c2].is_zero():
                        bump = bump + lam * col[c2]
                col[c] = col[c] + bump
        # clear column c by row operations; mirror on the columns of C
        if k > 0:
            C = self.mats[k - 1]
            for r2 in range(len(self.twists[k])):
                if r2 == r or A[c][r2].is_zero():
                    continue
                mu = A[c][r2].scale(inv)
                C[r] = [x + mu * y for x, y in zip(C[r], C[r2])]
        # delete row r and column c
        del A[c]
        for col in A:
            del col[r]
        if k + 1 < len(self.mats):
            for col in self.mats[k + 1]:
                del col[c]
        if k > 0:
            del self.mats[k - 1][r]
        del self.twists[k][r]
        del self.twists[k + 1][c]

    def assert_minimal(self):
        for mat in self.mats:
            for col in mat:
                for entry in col:
                    if not entry.is_zero() and entry.is_constant():
                        raise AssertionError("non-minimal differential entry")


def resolve_complex(I: Ideal, max_steps=None) -> FreeComplex:
    """Minimal graded free resolution of ``Q/I`` as an explicit complex."""
    ring = I.ring
    if I.is_zero():
        raise ValueError("cannot resolve the zero ideal's quotient this way")
    if not I.is_homogeneous():
        raise ValueError("resolution requires a homogeneous ideal")
    if I.is_unit():
        raise ValueError("resolution requires a proper ideal")
    if max_steps is None:
        max_steps = ring.num_vars + 2
    d1 = [(g,) for g in I.gens]
    twists = [[0], [g.degree() for g in I.gens]]
    complex_ = FreeComplex(ring, twists, [d1])
    for _ in range(max_steps):
        complex_.minimalize()
        if not complex_.mats:
            raise ValueError("resolution collapsed; ideal was trivial")
        last = complex_.mats[-1]
        if not last:
            break
        cols, col_twists = syzygies(
            [tuple(col) for col in last], complex_.twists[-2], ring
        )
        if not cols:
            break
        complex_.mats.append([list(col) for col in cols])
        complex_.twists.append(list(col_twists))
    else:
        raise RuntimeError("resolution did not terminate; internal error")
    complex_.minimalize()
    complex_.check_complex()
    complex_.assert_minimal()
    return complex_


def minimal_free_resolution(I: Ideal) -> BettiTable:
    """Graded Betti table of ``Q/I``; Euler-checked against Hilbert data."""
    if I._betti is not None:
        return I._betti
    complex_ = resolve_complex(I)
    table = BettiTable(tuple(tuple(sorted(t)) for t in complex_.twists))
    numerator = hilbert(I).series_numerator
    if table.euler_numerator() != numerator:
        raise AssertionError(
            "Betti table disagrees with the Hilbert series numerator"
        )
    I._betti = table
    return table


# -- socle and perfection -----------------------------------------------------


def socle(I: Ideal) -> SocleData:
    """Basis of the socle of an Artinian quotient, degree by degree."""
    if not is_artinian(I):
        raise ValueError("socle computation requires an Artinian quotient")
    ring = I.ring
    field = ring.field
    # standard monomial bases per degree
    bases = []
    d = 0
    while True:
        B = standard_monomials(I, d)
        if not B:
            break
        bases.append(B)
        d += 1
    multiset = {}
    reps = []
    top = len(bases) - 1
    for d, B in enumerate(bases):
        nxt = bases[d + 1] if d + 1 < len(bases) else []
        index_next = {m: i for i, m in enumerate(nxt)}
        width = ring.num_vars * len(nxt)
        rows = []
        for m in B:
            row = [field.zero] * width
            for k in range(ring.num_vars):
                shifted = tuple(
                    e + (1 if i == k else 0) for i, e in enumerate(m)
                )
                nf = I.normal_form(ring.monomial(shifted))
                for e, c in nf.terms:
                    col = k * len(nxt) + index_next[e]
                    row[col] = field.add(row[col], c)
            rows.append(row)
        if width == 0:
            kernel = [
                [field.one if j == i else field.zero for j in range(len(B))]
                for i in range(len(B))
            ]
        else:
            kernel = left_kernel(rows, field)
        if kernel:
            multiset[d] = len(kernel)
            for vec in kernel:
                reps.append(
                    ring.from_terms(
                        [(m, c) for m, c in zip(B, vec) if not field.is_zero(c)]
                    )
                )
    return SocleData(multiset, tuple(reps), top)


def is_level(I: Ideal) -> bool:
    """True iff the socle sits entirely in the top degree."""
    data = socle(I)
    return set(data.degree_multiset) == {data.socle_degree}


def grade_and_perfection(I: Ideal):
    """``(grade, is_perfect)``: codimension, and whether pd equals it."""
    if not I.is_homogeneous():
        raise ValueError("grade computation requires a homogeneous ideal")
    if I.is_zero() or I.is_unit():
        raise ValueError("grade computation requires a proper nonzero ideal")
    table = minimal_free_resolution(I)
    pd = table.length
    codim = I.ring.num_vars - hilbert(I).krull_dim
    return codim, pd == codim
