"""Buchberger engine plus the ideal-theoretic toolkit.

One engine handles both ideals and submodules of free modules: a term is
``(position, exponents)`` and ideals are the rank-1 case.  The module order
is position-over-term (lower position wins) on top of a ring monomial
order, which doubles as the elimination order needed for syzygy extraction.

Ideal-level operations built on the engine: reduced Groebner bases, normal
forms, equality, intersection (one extra variable, eliminate it), colon
ideals, Hilbert data and the Artinian test.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations

from .orders import DEGREVLEX, Elimination
from .poly import Polynomial, Ring


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _bucket(vectors):
    """Group reducers by leading position: pos -> [(lt_exps, lc, terms)]."""
    by_pos = {}
    for v in vectors:
        _, pos, exps, lc = v[0]
        by_pos.setdefault(pos, []).append((exps, lc, v))
    return by_pos


class GBEngine:
    """Buchberger with Gebauer-Moeller pair elimination and degree selection.

    Vectors are lists of ``(key, pos, exps, coeff)`` sorted descending by
    ``key = (-pos, order.key(exps))``; the leading term sits at index 0.
    """

    def __init__(self, field, order, nvars, pos_twists=(0,)):
        self.field = field
        self.order = order
        self.nvars = nvars
        self.pos_twists = tuple(pos_twists)
        self._keys = {}

    def term_key(self, pos, exps):
        cached = self._keys.get((pos, exps))
        if cached is None:
            cached = (-pos, self.order.key(exps))
            self._keys[(pos, exps)] = cached
        return cached

    def vector(self, terms):
        """Normalize (pos, exps, coeff) triples into engine form."""
        field = self.field
        acc = {}
        for pos, exps, coeff in terms:
            prev = acc.get((pos, exps))
            acc[(pos, exps)] = coeff if prev is None else field.add(prev, coeff)
        out = [
            (self.term_key(pos, exps), pos, exps, c)
            for (pos, exps), c in acc.items()
            if not field.is_zero(c)
        ]
        out.sort(reverse=True)
        return out

    def monic(self, v):
        lc = v[0][3]
        if lc == self.field.one:
            return v
        inv = self.field.inv(lc)
        return [(k, p, e, self.field.mul(inv, c)) for k, p, e, c in v]

    def axpy(self, f, c, shift, g):
        """Return ``f + c * x^shift * g`` by merging sorted term lists."""
        field = self.field
        moved = []
        for _, pos, exps, coeff in g:
            e = _exp_add(exps, shift)
            moved.append((self.term_key(pos, e), pos, e, field.mul(c, coeff)))
        moved.sort(reverse=True)
        out = []
        i = j = 0
        nf, ng = len(f), len(moved)
        while i < nf and j < ng:
            tf, tg = f[i], moved[j]
            if tf[0] > tg[0]:
                out.append(tf)
                i += 1
            elif tf[0] < tg[0]:
                out.append(tg)
                j += 1
            else:
                s = field.add(tf[3], tg[3])
                if not field.is_zero(s):
                    out.append((tf[0], tf[1], tf[2], s))
                i += 1
                j += 1
        out.extend(f[i:])
        out.extend(moved[j:])
        return out

    def reduce(self, f, by_pos):
        """Full normal form of ``f`` against reducers bucketed by position."""
        field = self.field
        work = list(f)
        head = []
        idx = 0
        while idx < len(work):
            _, pos, exps, coeff = work[idx]
            reducer = None
            for lt_exps, lc, terms in by_pos.get(pos, ()):
                if _divides(lt_exps, exps):
                    reducer = (lt_exps, lc, terms)
                    break
            if reducer is None:
                head.append(work[idx])
                idx += 1
            else:
                lt_exps, lc, terms = reducer
                factor = field.neg(field.div(coeff, lc))
                work = self.axpy(work[idx:], factor, _exp_sub(exps, lt_exps), terms)
                idx = 0
        return head

    def _sel_degree(self, pos, exps) -> int:
        return sum(exps) + self.pos_twists[pos]

    def buchberger(self, vectors, allow_product_criterion=None):
        """Reduced Groebner basis of the span of ``vectors``."""
        field = self.field
        if allow_product_criterion is None:
            # the coprime-lcm shortcut is only valid in the rank-1 case
            allow_product_criterion = len(self.pos_twists) == 1

        basis = []  # monic term lists
        lt = []  # (pos, exps) of each basis element
        alive = set()
        heap = []
        counter = 0

        def push_pair(i, j):
            nonlocal counter
            pi, ei = lt[i]
            lcm = _exp_lcm(ei, lt[j][1])
            heapq.heappush(
                heap,
                (self._sel_degree(pi, lcm), self.order.key(lcm), counter, i, j),
            )
            counter += 1
            alive.add((i, j))

        def update(candidate):
            """Add a new basis element; prune pairs Gebauer-Moeller style."""
            t = len(basis)
            pc, ec = candidate[0][1], candidate[0][2]
            for (i, j) in list(alive):
                pi, ei = lt[i]
                if pi != pc:
                    continue
                lcm_ij = _exp_lcm(ei, lt[j][1])
                if (
                    _divides(ec, lcm_ij)
                    and _exp_lcm(ei, ec) != lcm_ij
                    and _exp_lcm(lt[j][1], ec) != lcm_ij
                ):
                    alive.discard((i, j))
            new_lcms = {}
            for i in range(t):
                if lt[i][0] != pc:
                    continue
                new_lcms.setdefault(_exp_lcm(lt[i][1], ec), []).append(i)
            basis.append(candidate)
            lt.append((pc, ec))
            for lcm in sorted(new_lcms, key=self.order.key):
                if any(
                    _divides(other, lcm) and other != lcm for other in new_lcms
                ):
                    continue
                members = new_lcms[lcm]
                if allow_product_criterion and any(
                    _exp_add(lt[i][1], ec) == lcm for i in members
                ):
                    continue
                push_pair(min(members), t)

        for raw in vectors:
            v = self.reduce(self.vector(raw), _bucket(basis))
            if v:
                update(self.monic(v))

        while heap:
            _, _, _, i, j = heapq.heappop(heap)
            if (i, j) not in alive:
                continue
            alive.discard((i, j))
            _, ei = lt[i]
            _, ej = lt[j]
            lcm = _exp_lcm(ei, ej)
            s = self.axpy([], field.one, _exp_sub(lcm, ei), basis[i])
            s = self.axpy(s, field.neg(field.one), _exp_sub(lcm, ej), basis[j])
            s = self.reduce(s, _bucket(basis))
            if s:
                update(self.monic(s))

        return self._reduce_basis(basis)

    def _reduce_basis(self, basis):
        """Minimalize by leading-term divisibility, then interreduce."""
        basis = sorted(basis, key=lambda v: v[0][0])
        minimal = []
        for v in basis:
            _, pos, exps, _ = v[0]
            if any(w[0][1] == pos and _divides(w[0][2], exps) for w in minimal):
                continue
            minimal.append(v)
        reduced = []
        for idx, v in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1 :]
            nf = self.reduce(v, _bucket(others))
            if nf:
                reduced.append(self.monic(nf))
        reduced.sort(key=lambda v: v[0][0])
        return reduced


# -- ideals ------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal with cached reduced Groebner bases.

    The cache is populated at most once per order; values are otherwise
    immutable, so instances are safe to share.
    """

    def __init__(self, ring: Ring, generators):
        gens = tuple(g for g in generators if not g.is_zero())
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator in a different ring")
        self.ring = ring
        self.gens = gens
        self._gb = {}
        self._reducers = {}
        self._betti = None  # populated lazily by the resolution layer

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inside})"

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def groebner_basis(self, order=DEGREVLEX):
        """The unique reduced Groebner basis under ``order`` (cached)."""
        cached = self._gb.get(order.name)
        if cached is not None:
            return cached
        engine = GBEngine(self.ring.field, order, self.ring.num_vars)
        vectors = [[(0, e, c) for e, c in g.terms] for g in self.gens]
        gb_vectors = engine.buchberger(vectors)
        gb = tuple(
            self.ring.from_terms([(e, c) for _, _, e, c in v]) for v in gb_vectors
        )
        self._gb[order.name] = gb
        return gb

    def _reducer(self, order=DEGREVLEX):
        cached = self._reducers.get(order.name)
        if cached is None:
            gb = self.groebner_basis(order)
            engine = GBEngine(self.ring.field, order, self.ring.num_vars)
            vectors = [
                engine.vector([(0, e, c) for e, c in g.terms]) for g in gb
            ]
            cached = (engine, _bucket(vectors))
            self._reducers[order.name] = cached
        return cached

    def normal_form(self, f: Polynomial, order=DEGREVLEX) -> Polynomial:
        """Unique remainder of ``f`` modulo the reduced Groebner basis."""
        if f.ring != self.ring:
            raise ValueError("polynomial in a different ring")
        engine, bucket = self._reducer(order)
        nf = engine.reduce(engine.vector([(0, e, c) for e, c in f.terms]), bucket)
        return self.ring.from_terms([(e, c) for _, _, e, c in nf])

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def leading_exponents(self, order=DEGREVLEX):
        """Minimal generating exponents of the initial ideal."""
        return tuple(
            g.leading_term(order)[1].exponents for g in self.groebner_basis(order)
        )

    def min_gen_degree(self) -> int:
        if not self.gens:
            raise ValueError("zero ideal")
        return min(g.degree() for g in self.gens)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "gens": [str(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "Ideal":
        ring = Ring.from_json(data["ring"])
        return cls(ring, [ring.parse(g) for g in data["gens"]])


def ideal(ring: Ring, *gens) -> Ideal:
    """Ideal from polynomials or parseable strings."""
    polys = [g if isinstance(g, Polynomial) else ring.parse(g) for g in gens]
    return Ideal(ring, polys)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Equality via reduced degrevlex Groebner bases."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return I.groebner_basis(DEGREVLEX) == J.groebner_basis(DEGREVLEX)


def _extend_ring(ring: Ring) -> Ring:
    """Prepend a fresh tag variable used for intersections."""
    tag = "t_"
    while tag in ring.var_names:
        tag += "_"
    return Ring((tag,) + ring.var_names, ring.field)


def _lift(poly: Polynomial, ext: Ring) -> Polynomial:
    return ext.from_terms([((0,) + e, c) for e, c in poly.terms])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """Generators of the intersection via tag-variable elimination."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    ring = I.ring
    ext = _extend_ring(ring)
    t = ext.var(0)
    one_minus_t = ext.one() - t
    gens = [t * _lift(g, ext) for g in I.gens]
    gens += [one_minus_t * _lift(g, ext) for g in J.gens]
    mixed = Ideal(ext, gens)
    basis = mixed.groebner_basis(Elimination(1))
    kept = []
    for g in basis:
        if all(e[0] == 0 for e, _ in g.terms):
            kept.append(ring.from_terms([(e[1:], c) for e, c in g.terms]))
    return Ideal(ring, kept)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``f / g`` when ``g`` divides ``f`` exactly."""
    ring = f.ring
    field = ring.field
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quotient_terms = []
    rest = f
    g_lt_exps, g_lc = g.terms[0]
    while not rest.is_zero():
        exps, c = rest.terms[0]
        if not _divides(g_lt_exps, exps):
            raise ArithmeticError("exact division failed; this is an internal error")
        q_exps = _exp_sub(exps, g_lt_exps)
        q_c = field.div(c, g_lc)
        quotient_terms.append((q_exps, q_c))
        rest = rest - ring.from_terms([(q_exps, q_c)]) * g
    return ring.from_terms(quotient_terms)


def quotient_by_element(J: Ideal, g: Polynomial) -> Ideal:
    """The colon ideal ``J : (g)`` computed as ``(J intersect (g)) / g``."""
    meet = intersect(J, Ideal(J.ring, (g,)))
    return Ideal(J.ring, [exact_divide(h, g) for h in meet.gens])


def colon(J: Ideal, I: Ideal) -> Ideal:
    """The colon ideal ``J : I``, intersecting ``J : g`` over generators."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    result = None
    for g in I.gens:
        if J.normal_form(g).is_zero():
            continue  # J : g is the unit ideal
        piece = quotient_by_element(J, g)
        result = piece if result is None else intersect(result, piece)
        if ideal_equal(result, J):
            break  # J is a lower bound, so no later factor can shrink this
    if result is None:
        return Ideal(J.ring, (J.ring.one(),))
    return result


# -- Hilbert data -------------------------------------------------------------


def _binom(n: int, k: int) -> int:
    if n < k or k < 0:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@dataclass
class HilbertData:
    """Hilbert function values, series numerator and Krull dimension."""

    values: dict
    series_numerator: tuple
    krull_dim: int
    artinian: bool
    _nvars: int = dataclass_field(default=0, repr=False)

    def value(self, d: int) -> int:
        """Hilbert function at degree ``d``, from the series numerator."""
        if d < 0:
            return 0
        e = self._nvars
        total = 0
        for j, n in enumerate(self.series_numerator):
            if n and d - j >= 0:
                total += n * _binom(d - j + e - 1, e - 1)
        return total

    @property
    def length(self) -> int:
        """Vector-space dimension of the quotient (Artinian only)."""
        if not self.artinian:
            raise ValueError("length of a non-Artinian quotient is infinite")
        return sum(self.values.values())

    def h_vector(self) -> tuple:
        top = max((d for d, v in self.values.items() if v), default=0)
        return tuple(self.values.get(d, 0) for d in range(top + 1))


def _minimalize_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _numerator(mon_gens, nvars) -> list:
    """Hilbert series numerator of a monomial ideal, by pivot recursion."""
    gens = _minimalize_monomials(mon_gens)
    if not gens:
        return [1]
    supports = [tuple(i for i, e in enumerate(g) if e) for g in gens]
    seen = set()
    disjoint = True
    for s in supports:
        if seen.intersection(s):
            disjoint = False
            break
        seen.update(s)
    if disjoint:
        # pairwise disjoint supports form a regular sequence
        out = [1]
        for g in gens:
            d = sum(g)
            nxt = out + [0] * d
            for i, c in enumerate(out):
                nxt[i + d] -= c
            out = nxt
        return out
    counts = [0] * nvars
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    k = max(range(nvars), key=lambda i: counts[i])
    pivot = tuple(1 if i == k else 0 for i in range(nvars))
    plus = _numerator(gens + [pivot], nvars)
    quot = _numerator(
        [
            tuple(e - 1 if i == k and e > 0 else e for i, e in enumerate(g))
            for g in gens
        ],
        nvars,
    )
    # N(I) = N(I + (x_k)) + t * N(I : x_k)
    out = plus + [0] * (len(quot) + 1 - len(plus) if len(quot) + 1 > len(plus) else 0)
    for i, c in enumerate(quot):
        out[i + 1] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _krull_dim(mon_gens, nvars) -> int:
    """Largest variable subset supporting no generator of the initial ideal."""
    gens = _minimalize_monomials(mon_gens)
    if not gens:
        return nvars
    supports = [set(i for i, e in enumerate(g) if e) for g in gens]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            sset = set(subset)
            if all(not s <= sset for s in supports):
                return size
    return 0


def is_artinian(I: Ideal) -> bool:
    """True iff every variable has a pure power in the initial ideal."""
    if not I.is_homogeneous():
        raise ValueError("Artinian test requires a homogeneous ideal")
    lead = I.leading_exponents()
    for i in range(I.ring.num_vars):
        if not any(
            g[i] > 0 and all(e == 0 for j, e in enumerate(g) if j != i)
            for g in lead
        ):
            return False
    return True


def standard_monomials(I: Ideal, degree: int):
    """Monomials of the given degree outside the initial ideal."""
    lead = I.leading_exponents()
    return [
        m
        for m in I.ring.monomials_of_degree(degree)
        if not any(_divides(g, m) for g in lead)
    ]


def hilbert(I: Ideal) -> HilbertData:
    """Hilbert data of the quotient, from the initial-ideal staircase."""
    if not I.is_homogeneous():
        raise ValueError("Hilbert data requires a homogeneous ideal")
    ring = I.ring
    e = ring.num_vars
    lead = list(I.leading_exponents())
    numerator = _numerator(lead, e)
    dim = _krull_dim(lead, e)
    artinian = dim == 0
    data = HilbertData({}, tuple(numerator), dim, artinian, _nvars=e)
    values = {}
    d = 0
    cap = len(numerator) + e + 2
    while True:
        v = data.value(d)
        if artinian and v == 0:
            break
        values[d] = v
        d += 1
        if not artinian and d >= cap:
            break
    data.values = values
    return data
