"""Direct linkage of grade-3 perfect ideals and format realizability.

A direct link replaces ``I`` by ``J = (x_1, x_2, x_3) : I`` for a regular
sequence inside ``I``.  Every link here is audited: the target is resolved,
its format is compared against the move prediction, and the double-link
identity ``(x) : ((x) : I) = I`` is checked.

Formats move in a controlled way under linkage.  With ``(m, n)`` the
generator count and type, a link whose sequence meets the minimal
generators in two independent classes sends ``(m, n)`` to ``(n+3, m-2)``; a
sequence with three independent classes sends it to ``(n+3, m-3)``,
provided the pairwise products of those classes vanish in the Tor algebra.
Rather than computing Tor products, the chain planner picks sequence
degrees so that the products vanish for internal-degree reasons, simulating
the twist bookkeeping of the dualized mapping cone to schedule safe steps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .formats import ResolutionFormat, realizable
from .groebner import Ideal, colon, hilbert, ideal_equal, is_artinian
from .poly import Ring
from .resolution import BettiTable, minimal_free_resolution


class LinkageError(ValueError):
    """A precondition of a linkage operation failed."""


class RealizeError(RuntimeError):
    """A realization chain failed; carries the partial chain."""

    def __init__(self, message, steps=()):
        super().__init__(message)
        self.steps = tuple(steps)


# -- format moves --------------------------------------------------------------


@dataclass(frozen=True)
class FormatMove:
    """A linkage move on formats: a precondition and a target map."""

    name: str
    min_m: int
    min_n: int
    mapping: object  # (m, n) -> (m, n)

    def applies(self, fmt: ResolutionFormat) -> bool:
        return fmt.m >= self.min_m and fmt.n >= self.min_n

    def target(self, fmt: ResolutionFormat) -> ResolutionFormat:
        if not self.applies(fmt):
            raise LinkageError(f"move {self.name} undefined on {fmt}")
        return ResolutionFormat(*self.mapping(fmt.m, fmt.n))


MOVES = {
    # direct link meeting two resp. three minimal-generator classes
    "link2": FormatMove("link2", 4, 1, lambda m, n: (n + 3, m - 2)),
    "link3": FormatMove("link3", 5, 1, lambda m, n: (n + 3, m - 3)),
    # compositions: two link2 steps; link3 then link2; link2 then link3
    "grow_both": FormatMove("grow_both", 4, 1, lambda m, n: (m + 1, n + 1)),
    "grow_type": FormatMove("grow_type", 5, 1, lambda m, n: (m, n + 1)),
    "grow_gens": FormatMove("grow_gens", 4, 2, lambda m, n: (m + 1, n)),
}


def apply_move(fmt: ResolutionFormat, move) -> ResolutionFormat:
    if isinstance(move, str):
        move = MOVES[move]
    return move.target(fmt)


# -- regular sequences and direct links ----------------------------------------


@dataclass(frozen=True)
class RegularSequence:
    """Three homogeneous elements of an ideal cutting out codimension 3."""

    polys: tuple

    @property
    def degrees(self) -> tuple:
        return tuple(p.degree() for p in self.polys)

    def as_ideal(self) -> Ideal:
        return Ideal(self.polys[0].ring, self.polys)


def regular_sequence(I: Ideal, polys) -> RegularSequence:
    """Validate membership, homogeneity and codimension 3."""
    polys = tuple(polys)
    if len(polys) != 3:
        raise LinkageError("need exactly three sequence elements")
    for p in polys:
        if p.is_zero() or not p.is_homogeneous():
            raise LinkageError("sequence elements must be nonzero homogeneous")
        if not I.normal_form(p).is_zero():
            raise LinkageError(f"sequence element {p} is not in the ideal")
    seq_ideal = Ideal(I.ring, polys)
    codim = I.ring.num_vars - hilbert(seq_ideal).krull_dim
    if codim != 3:
        raise LinkageError(f"sequence has codimension {codim}, not 3")
    return RegularSequence(polys)


@dataclass
class LinkStep:
    """Record of one direct link, with its audit trail."""

    source: Ideal
    source_table: BettiTable
    sequence: RegularSequence
    target: Ideal
    target_table: BettiTable | None
    double_link_verified: bool
    terminal: bool = False

    @property
    def source_format(self) -> ResolutionFormat:
        from .formats import format_of

        return format_of(self.source_table)

    @property
    def target_format(self) -> ResolutionFormat | None:
        from .formats import format_of

        return None if self.target_table is None else format_of(self.target_table)

    def to_json(self) -> dict:
        return {
            "sequence": [str(p) for p in self.sequence.polys],
            "degrees": list(self.sequence.degrees),
            "source_gens": [str(g) for g in self.source.gens],
            "target_gens": [str(g) for g in self.target.gens],
            "source_format": list(self.source_table.format_ranks()),
            "target_format": (
                list(self.target_table.format_ranks())
                if self.target_table is not None
                else None
            ),
            "double_link_verified": self.double_link_verified,
            "terminal": self.terminal,
        }


def _check_grade3_perfect(I: Ideal, table: BettiTable, what: str):
    from .resolution import grade_and_perfection

    grade, perfect = grade_and_perfection(I)
    if not (grade == 3 and perfect):
        raise LinkageError(f"{what} is not grade-3 perfect (grade {grade})")
    if table.length != 3:
        raise LinkageError(f"{what} resolution has length {table.length}")


def direct_link(I: Ideal, seq: RegularSequence, verify_double: bool = True) -> LinkStep:
    """Perform ``J = (x) : I`` with full verification."""
    source_table = minimal_free_resolution(I)
    _check_grade3_perfect(I, source_table, "link source")
    seq_ideal = seq.as_ideal()
    J = colon(seq_ideal, I)
    if J.is_unit():
        # a complete intersection links to the unit ideal
        verified = ideal_equal(colon(seq_ideal, J), I)
        return LinkStep(I, source_table, seq, J, None, verified, terminal=True)
    target_table = minimal_free_resolution(J)
    _check_grade3_perfect(J, target_table, "link target")
    verified = True
    if verify_double:
        verified = ideal_equal(colon(seq_ideal, J), I)
        if not verified:
            raise LinkageError("double-link identity failed; sequence not regular?")
    return LinkStep(I, source_table, seq, J, target_table, verified)


# -- random elements -----------------------------------------------------------


def _random_coeff(field, rng):
    if hasattr(field, "p"):
        return rng.randrange(field.p)
    return field.coerce(rng.randint(-9, 9))


def random_element(I: Ideal, degree: int, rng, proper_multiple: bool = False):
    """Random element of the degree-``degree`` piece of ``I``.

    With ``proper_multiple`` the draw is restricted to multiples of strictly
    lower-degree generators, so its class among minimal generators is zero.
    """
    ring = I.ring
    field = ring.field
    total = ring.zero()
    usable = 0
    for g in I.gens:
        gap = degree - g.degree()
        if gap < 0 or (proper_multiple and gap == 0):
            continue
        usable += 1
        for exps in ring.monomials_of_degree(gap):
            c = _random_coeff(field, rng)
            if field.is_zero(c):
                continue
            total = total + (ring.monomial(exps, c) * g)
    if usable == 0:
        raise LinkageError(
            f"the ideal has no {'proper multiples' if proper_multiple else 'elements'} "
            f"of degree {degree}"
        )
    return total


def _coerce_rng(rng_or_seed):
    if isinstance(rng_or_seed, random.Random):
        return rng_or_seed
    return random.Random(rng_or_seed)


def find_generic_link(
    I: Ideal,
    degrees,
    rng_seed=0,
    modes=("gen", "gen", "gen"),
    budget: int = 64,
    verify_double: bool = True,
) -> LinkStep:
    """Draw random sequences of the given degrees until one is regular.

    ``modes[i]`` is ``"gen"`` for a draw from the full graded piece or
    ``"mult"`` for a draw among proper multiples (zero class).
    """
    rng = _coerce_rng(rng_seed)
    source_table = minimal_free_resolution(I)
    _check_grade3_perfect(I, source_table, "link source")
    degrees = tuple(degrees)
    if len(degrees) != 3:
        raise LinkageError("need three sequence degrees")
    attempts = 0
    for _ in range(budget):
        attempts += 1
        polys = []
        try:
            for d, mode in zip(degrees, modes):
                polys.append(
                    random_element(I, d, rng, proper_multiple=(mode == "mult"))
                )
        except LinkageError:
            raise
        if any(p.is_zero() for p in polys):
            continue
        seq_ideal = Ideal(I.ring, polys)
        if I.ring.num_vars - hilbert(seq_ideal).krull_dim != 3:
            continue
        seq = RegularSequence(tuple(polys))
        return direct_link(I, seq, verify_double=verify_double)
    raise LinkageError(
        f"no regular sequence of degrees {degrees} found in {attempts} attempts"
    )


# -- chain planning ------------------------------------------------------------


def _twists_to_h(twists) -> tuple:
    """Finite Hilbert values of an Artinian quotient from its Betti twists."""
    from .groebner import _binom

    top = max(max(t) for t in twists if t)
    numer = [0] * (top + 1)
    for i, degs in enumerate(twists):
        for d in degs:
            numer[d] += 1 if i % 2 == 0 else -1
    values = []
    v = 0
    while True:
        h = sum(
            numer[j] * _binom(v - j + 2, 2) for j in range(min(v, top) + 1)
        )
        if h <= 0:
            break
        values.append(h)
        v += 1
    return tuple(values)


def _remove_once(items: list, value) -> bool:
    try:
        items.remove(value)
        return True
    except ValueError:
        return False


@dataclass(frozen=True)
class PlannedStep:
    move: str
    degrees: tuple
    modes: tuple
    target_format: tuple  # rank quadruple predicted by the move


def _choose_degrees(twists, move: str):
    """Degrees making the Tor products vanish for degree reasons.

    Returns ``(degrees, modes)`` or ``None``.  Candidates keep the classed
    degrees among minimal-generator degrees, avoid pairwise sums landing on
    middle twists, and cut out strictly more length than the quotient has.
    """
    gen_degrees = sorted(twists[1])
    middle = set(twists[2])
    length = sum(_twists_to_h(twists))
    counts = {}
    for d in gen_degrees:
        counts[d] = counts.get(d, 0) + 1
    values = sorted(counts)
    best = None

    def consider(degs, modes):
        nonlocal best
        key = (sum(degs), tuple(sorted(degs, reverse=True)))
        if best is None or key < best[0]:
            best = (key, (tuple(degs), tuple(modes)))

    if move == "link3":
        for a in values:
            for b in (v for v in values if v >= a):
                for c in (v for v in values if v >= b):
                    need = {}
                    for v in (a, b, c):
                        need[v] = need.get(v, 0) + 1
                    if any(counts.get(v, 0) < k for v, k in need.items()):
                        continue
                    if {a + b, a + c, b + c} & middle:
                        continue
                    if a * b * c <= length:
                        continue
                    consider((a, b, c), ("gen", "gen", "gen"))
    elif move == "link2":
        min_degree = gen_degrees[0]
        for a in values:
            for b in (v for v in values if v >= a):
                if a == b and counts.get(a, 0) < 2:
                    continue
                if a + b in middle:
                    continue
                for c in range(min_degree + 1, min_degree + 9):
                    if a * b * c > length:
                        consider((a, b, c), ("gen", "gen", "mult"))
                        break
    else:
        raise ValueError(f"unknown direct move {move!r}")
    return None if best is None else best[1]


def _simulate_link(twists, degrees, move: str):
    """Predicted target twists of a degree-safe link (dualized mapping cone)."""
    a, b, c = degrees
    sigma = a + b + c
    g1 = sorted([sigma - d for d in twists[3]] + [a, b, c])
    g2 = [sigma - d for d in twists[2]] + [sigma - a, sigma - b, sigma - c]
    g3 = [sigma - d for d in twists[1]]
    cancel = (a, b) if move == "link2" else (a, b, c)
    for d in cancel:
        if not (_remove_once(g2, sigma - d) and _remove_once(g3, sigma - d)):
            return None
    if min(g1) < 1:
        return None
    return ((0,), tuple(g1), tuple(sorted(g2)), tuple(sorted(g3)))


def _gorenstein_twists(g: int):
    if g == 3:
        return ((0,), (1, 1, 1), (2, 2, 2), (3,))
    l = (g - 1) // 2
    return ((0,), (l,) * g, (l + 1,) * g, (2 * l + 1,))


def _routes(m: int, n: int, seen):
    """Backward search over move chains ending at ``(m, n)``."""
    if (m, n) in seen:
        return
    seen = seen | {(m, n)}
    if n == 1:
        if m % 2 == 1:
            yield m, []
        return
    if m == 3:
        return
    predecessors = [("link2", (n + 2, m - 3), 4), ("link3", (n + 3, m - 3), 5)]
    for kind, (sm, sn), min_m in predecessors:
        if sm < min_m or sn < 1:
            continue
        for start, moves in _routes(sm, sn, seen):
            yield start, moves + [kind]


def plan_chain(fmt: ResolutionFormat):
    """A start size and degree-safe move plan realizing the format.

    Prefers routes in which every step's sequence degrees make the Tor
    products vanish for degree reasons; raises if no route simulates safely.
    """
    if not realizable(fmt):
        raise LinkageError(f"format {fmt} is not realizable")
    for start, moves in _routes(fmt.m, fmt.n, frozenset()):
        twists = _gorenstein_twists(start)
        state = ResolutionFormat(start, 1)
        plan = []
        ok = True
        for kind in moves:
            choice = _choose_degrees(twists, kind)
            if choice is None:
                ok = False
                break
            degrees, modes = choice
            nxt = _simulate_link(twists, degrees, kind)
            if nxt is None:
                ok = False
                break
            state = apply_move(state, kind)
            if tuple(len(t) for t in nxt) != state.quadruple():
                ok = False
                break
            plan.append(PlannedStep(kind, degrees, modes, state.quadruple()))
            twists = nxt
        if ok:
            return start, plan
    raise LinkageError(f"no degree-safe chain found for {fmt}")


def realize_format(
    fmt: ResolutionFormat,
    ring: Ring,
    rng_seed=0,
    step_budget: int = 8,
    sequence_budget: int = 64,
):
    """Construct a verified ideal of the given format by a linkage chain.

    Returns ``(ideal, steps)``.  Each step's sequence degrees are re-chosen
    from the actual Betti table, the link is performed generically, and the
    resolved target format must match the move prediction; failures retry
    with fresh randomness up to ``step_budget`` before aborting.
    """
    from .generators import gorenstein_ideal

    if ring.num_vars != 3:
        raise LinkageError("format realization works in three variables")
    rng = _coerce_rng(rng_seed)
    start, plan = plan_chain(fmt)
    current = gorenstein_ideal(start, ring, rng)
    steps = []
    for planned in plan:
        table = minimal_free_resolution(current)
        expected = apply_move(
            ResolutionFormat.from_quadruple(table.format_ranks()), planned.move
        ).quadruple()
        choice = _choose_degrees(table.twists, planned.move)
        if choice is None:
            raise RealizeError(
                f"no safe degrees for {planned.move} at {table.format_ranks()}", steps
            )
        degrees, modes = choice
        done = False
        for _ in range(step_budget):
            try:
                step = find_generic_link(
                    current, degrees, rng, modes=modes, budget=sequence_budget
                )
            except LinkageError:
                continue
            if (
                step.target_table is not None
                and step.target_table.format_ranks() == expected
            ):
                steps.append(step)
                current = step.target
                done = True
                break
        if not done:
            raise RealizeError(
                f"step {planned.move} from {table.format_ranks()} with degrees "
                f"{degrees} did not reach {expected}",
                steps,
            )
    final_table = minimal_free_resolution(current)
    if final_table.format_ranks() != fmt.quadruple():
        raise RealizeError(
            f"chain ended at {final_table.format_ranks()}, wanted {fmt.quadruple()}",
            steps,
        )
    return current, steps
