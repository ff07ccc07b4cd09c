"""Exact multivariate polynomial arithmetic over an exact field.

A :class:`Polynomial` is a tuple of ``(exponents, coefficient)`` terms with
no zero coefficients and no duplicate monomials, kept strictly descending in
the ring's canonical degrevlex order.  Values are immutable after
construction; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .fields import QQ, field_from_name
from .orders import DEGREVLEX

MAX_VARS = 16


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Monomial:
    """Exponent vector with its cached total degree."""

    exponents: tuple
    degree: int

    @classmethod
    def of(cls, exponents) -> "Monomial":
        exps = tuple(exponents)
        return cls(exps, sum(exps))


class Ring:
    """A polynomial ring: variable names plus an exact coefficient field."""

    def __init__(self, var_names, field=QQ):
        names = tuple(var_names)
        if not 1 <= len(names) <= MAX_VARS:
            raise ValueError(f"need between 1 and {MAX_VARS} variables")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for name in names:
            if not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")
        self.var_names = names
        self.field = field
        self._var_index = {name: i for i, name in enumerate(names)}
        self._zero_exps = (0,) * len(names)

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.var_names == other.var_names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.var_names, self.field))

    def __repr__(self):
        return f"{self.field}[{','.join(self.var_names)}]"

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(self.field.one)

    def constant(self, value) -> "Polynomial":
        c = self.field.coerce(value)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((self._zero_exps, c),))

    def var(self, i: int) -> "Polynomial":
        exps = list(self._zero_exps)
        exps[i] = 1
        return self.monomial(tuple(exps))

    def vars(self):
        return tuple(self.var(i) for i in range(self.num_vars))

    def monomial(self, exps, coeff=None) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.num_vars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((exps, c),))

    def from_terms(self, terms) -> "Polynomial":
        """Build a polynomial from (exps, coeff) pairs, normalizing."""
        acc = {}
        field = self.field
        for exps, coeff in terms:
            exps = tuple(exps)
            c = field.coerce(coeff)
            if exps in acc:
                c = field.add(acc[exps], c)
            acc[exps] = c
        cleaned = [(e, c) for e, c in acc.items() if not field.is_zero(c)]
        cleaned.sort(key=lambda t: DEGREVLEX.key(t[0]), reverse=True)
        return Polynomial(self, tuple(cleaned))

    def monomials_of_degree(self, d: int):
        """All exponent vectors of total degree ``d`` (degrevlex descending)."""
        e = self.num_vars
        out = []
        for bars in combinations(range(d + e - 1), e - 1):
            prev = -1
            exps = []
            for b in bars:
                exps.append(b - prev - 1)
                prev = b
            exps.append(d + e - 2 - prev)
            out.append(tuple(exps))
        out.sort(key=DEGREVLEX.key, reverse=True)
        return out

    def parse(self, text: str) -> "Polynomial":
        return _parse(text, self)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"vars": list(self.var_names), "field": self.field.name}

    @classmethod
    def from_json(cls, data: dict) -> "Ring":
        return cls(data["vars"], field_from_name(data["field"]))


class Polynomial:
    """Immutable canonical-form polynomial; supports +, -, * and scaling."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and self.terms[0][0] == self.ring._zero_exps
        )

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e, _ in self.terms}
        return len(degs) == 1

    def leading_term(self, order=None):
        """The maximal (coefficient, Monomial) under ``order`` (degrevlex default)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None or order == DEGREVLEX:
            exps, c = self.terms[0]
        else:
            exps, c = max(self.terms, key=lambda t: order.key(t[0]))
        return c, Monomial.of(exps)

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check_ring(other)
        return self.ring.from_terms(list(self.terms) + list(other.terms))

    def __sub__(self, other):
        self._check_ring(other)
        field = self.ring.field
        neg = [(e, field.neg(c)) for e, c in other.terms]
        return self.ring.from_terms(list(self.terms) + neg)

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, tuple((e, field.neg(c)) for e, c in self.terms))

    def __mul__(self, other):
        self._check_ring(other)
        field = self.ring.field
        acc = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = tuple(x + y for x, y in zip(ea, eb))
                c = field.mul(ca, cb)
                if e in acc:
                    acc[e] = field.add(acc[e], c)
                else:
                    acc[e] = c
        cleaned = [(e, c) for e, c in acc.items() if not field.is_zero(c)]
        cleaned.sort(key=lambda t: DEGREVLEX.key(t[0]), reverse=True)
        return Polynomial(self.ring, tuple(cleaned))

    def scale(self, value) -> "Polynomial":
        field = self.ring.field
        c0 = field.coerce(value)
        if field.is_zero(c0):
            return self.ring.zero()
        return Polynomial(
            self.ring, tuple((e, field.mul(c0, c)) for e, c in self.terms)
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.var_names
        pieces = []
        for i, (exps, coeff) in enumerate(self.terms):
            text = field.to_str(coeff)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps)
                if e > 0
            ]
            if factors:
                body = "*".join(factors)
                mag = body if text == "1" else f"{text}*{body}"
            else:
                mag = text
            if i == 0:
                pieces.append(f"-{mag}" if negative else mag)
            else:
                pieces.append(f" - {mag}" if negative else f" + {mag}")
        return "".join(pieces)

    def __repr__(self):
        return f"<{self} in {self.ring}>"


# -- parser ----------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*^/()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, ring: Ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        result = self.parse_term().scale(sign)
        while self.peek()[0] in "+-":
            op = self.take()[0]
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("int")
            return base ** int(tok[1])
        return base

    def parse_base(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        if kind == "name":
            idx = self.ring._var_index.get(value)
            if idx is None:
                raise ParseError(f"unknown variable {value!r}", pos)
            return self.ring.var(idx)
        if kind == "int":
            num = int(value)
            if self.peek()[0] == "/":
                self.take()
                den = int(self.expect("int")[1])
                if den == 0:
                    raise ParseError("zero denominator", pos)
                return self.ring.constant(self.ring.field.from_fraction(num, den))
            return self.ring.constant(num)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def _parse(text: str, ring: Ring) -> Polynomial:
    parser = _Parser(_tokenize(text), ring)
    result = parser.parse_expr()
    parser.expect("end")
    return result


def parse(text: str, ring: Ring) -> Polynomial:
    """Parse polynomial text in the ring's grammar; inverse of ``str``."""
    return _parse(text, ring)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def scale(c, f: Polynomial) -> Polynomial:
    return f.scale(c)


def leading_term(f: Polynomial, order=None):
    return f.leading_term(order)


def qq_ring(*names) -> Ring:
    """Convenience constructor for a rational polynomial ring."""
    return Ring(names or ("X", "Y", "Z"), QQ)
