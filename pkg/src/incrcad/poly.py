"""Exact sparse multivariate polynomials with rational coefficients.

Polynomials live under a fixed :class:`VarOrder`; ``x1`` is the lowest
variable (the last one projected away) and the last name is the main
variable of the whole system.  Coefficients are :class:`fractions.Fraction`.

The heavy algorithms (resultants, gcds, square-free decomposition) run on
dense integer representations from :mod:`incrcad._dense`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Iterator, Mapping, Sequence

from . import _dense as D
from .errors import InvalidInput, NotDivisible, ParseError, UnknownVariable, ZeroPolynomial

Rational = Fraction

__all__ = [
    "Rational",
    "VarOrder",
    "Polynomial",
    "PolySet",
    "parse_polynomial",
    "parse_rational",
    "format_rational",
    "normalize",
    "degree",
    "leading_coeff",
    "trailing_coeff",
    "content",
    "primitive_part",
    "resultant",
    "discriminant",
    "square_free_basis",
    "gcd_free_basis",
    "lazard_divide",
    "substitute",
]


def _lcm(a: int, b: int) -> int:
    return a // igcd(a, b) * b


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; a zero denominator raises ``InvalidInput``."""
    text = text.strip()
    m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", text)
    if not m:
        raise InvalidInput(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InvalidInput(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class VarOrder:
    """Ordered distinct variable names; position 0 is the lowest variable."""

    __slots__ = ("names", "_pos")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise InvalidInput("variable order must be nonempty")
        if len(set(names)) != len(names):
            raise InvalidInput(f"duplicate variable in order {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise InvalidInput(f"bad variable name {n!r}")
        self.names = names
        self._pos = {n: i for i, n in enumerate(names)}

    def index(self, v: str | int) -> int:
        if isinstance(v, int):
            if 0 <= v < len(self.names):
                return v
            raise UnknownVariable(f"variable index {v} out of range")
        try:
            return self._pos[v]
        except KeyError:
            raise UnknownVariable(f"unknown variable {v!r}") from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __getitem__(self, i):
        return self.names[i]

    def __eq__(self, other):
        return isinstance(other, VarOrder) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarOrder({list(self.names)!r})"


def _lex_key(e):
    # the highest variable is most significant
    return e[::-1]


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("order", "terms", "_hash", "_dense")

    def __init__(self, order: VarOrder, terms: Mapping[tuple, Fraction] | None = None):
        self.order = order
        n = len(order)
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                if len(e) != n:
                    raise InvalidInput("exponent vector length does not match the variable order")
                clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None
        self._dense = {}

    @classmethod
    def _raw(cls, order, terms):
        p = cls.__new__(cls)
        p.order = order
        p.terms = terms
        p._hash = None
        p._dense = {}
        return p

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, order: VarOrder, c) -> "Polynomial":
        c = Fraction(c)
        return cls._raw(order, {(0,) * len(order): c} if c else {})

    @classmethod
    def variable(cls, order: VarOrder, v: str | int) -> "Polynomial":
        i = order.index(v)
        e = [0] * len(order)
        e[i] = 1
        return cls._raw(order, {tuple(e): Fraction(1)})

    @classmethod
    def parse(cls, text: str, order: VarOrder) -> "Polynomial":
        return parse_polynomial(text, order)

    @classmethod
    def from_dense(cls, f, k: int, order: VarOrder, scale=1) -> "Polynomial":
        """Inverse of :meth:`dense`: ``f`` is an integer dense poly in ``x1..xk``."""
        return _from_dense_perm(f, list(range(k)), order, scale)

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int], order: VarOrder, v: str | int = 0) -> "Polynomial":
        return _from_dense_perm(list(coeffs), [order.index(v)], order)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise InvalidInput("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def variables(self) -> tuple[int, ...]:
        """Indices of variables that occur."""
        n = len(self.order)
        used = [False] * n
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(i for i in range(n) if used[i])

    def level(self) -> int:
        """1 + index of the highest variable present (0 for constants)."""
        vs = self.variables()
        return vs[-1] + 1 if vs else 0

    def degree(self, v: str | int) -> int:
        i = self.order.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading_term(self):
        e = max(self.terms, key=_lex_key)
        return e, self.terms[e]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.order == other.order and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.order != self.order:
                raise InvalidInput("polynomials use different variable orders")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Polynomial._raw(self.order, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw(self.order, {})
            return Polynomial._raw(self.order, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return Polynomial._raw(self.order, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidInput("negative exponent")
        r = Polynomial.constant(self.order, 1)
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def diff(self, v: str | int) -> "Polynomial":
        i = self.order.index(v)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return Polynomial._raw(self.order, t)

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a full point (one rational per variable)."""
        if len(point) != len(self.order):
            raise InvalidInput("point dimension does not match the variable order")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        pw: list[dict[int, Fraction]] = [{} for _ in pt]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    cache = pw[i]
                    p = cache.get(k)
                    if p is None:
                        p = cache[k] = pt[i] ** k
                    v *= p
            total += v
        return total

    def sign_at(self, point: Sequence) -> int:
        v = self.evaluate(point)
        return (v > 0) - (v < 0)

    # -- dense views ------------------------------------------------------

    def dense(self, k: int | None = None):
        """Integer dense representation in ``x1..xk`` (``k`` defaults to :meth:`level`).

        Only valid for polynomials with integer coefficients (normalized ones);
        use :func:`_dense_perm` for the general scaled form.
        """
        if k is None:
            k = max(self.level(), 1)
        f = self._dense.get(k)
        if f is None:
            m, f = _dense_perm(self, list(range(k)))
            if m != 1:
                raise InvalidInput("dense() needs integer coefficients; normalize first")
            self._dense[k] = f
        return f


# ---------------------------------------------------------------------------
# sparse <-> dense conversion
# ---------------------------------------------------------------------------


def _dense_perm(p: Polynomial, idx: Sequence[int]):
    """Return ``(m, f)``: ``f`` is the dense integer form of ``m * p``.

    ``idx`` lists variable positions innermost first; the last is the main
    variable.  ``m`` is the positive lcm of coefficient denominators.
    """
    idx = list(idx)
    allowed = set(idx)
    m = 1
    for e, c in p.terms.items():
        for i, k in enumerate(e):
            if k and i not in allowed:
                raise InvalidInput(f"variable {p.order[i]} not allowed here")
        if c.denominator != 1:
            m = _lcm(m, c.denominator)
    items = [(tuple(e[i] for i in idx), int(c * m)) for e, c in p.terms.items()]
    return m, _build(items, len(idx) - 1)


def _build(items, j):
    if not items:
        return []
    deg = max(e[j] for e, _ in items)
    if j == 0:
        out = [0] * (deg + 1)
        for e, c in items:
            out[deg - e[0]] += c
        return D.dup_strip(out)
    buckets: list[list] = [[] for _ in range(deg + 1)]
    for it in items:
        buckets[deg - it[0][j]].append(it)
    return D.dmp_strip([_build(b, j - 1) for b in buckets])


def _from_dense_perm(f, idx: Sequence[int], order: VarOrder, scale=1) -> Polynomial:
    n = len(order)
    terms: dict = {}
    scale = Fraction(scale)
    k = len(idx)
    exp = [0] * n

    def walk(g, j):
        d = len(g) - 1
        pos = idx[j]
        for i, c in enumerate(g):
            if not c:
                continue
            exp[pos] = d - i
            if j == 0:
                terms[tuple(exp)] = c * scale if scale != 1 else Fraction(c)
            else:
                walk(c, j - 1)
        exp[pos] = 0

    if k == 0:
        if f:
            terms[tuple(exp)] = Fraction(f) * scale
    elif f:
        walk(f, k - 1)
    return Polynomial._raw(order, terms)


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse_polynomial(text: str, order: VarOrder) -> Polynomial:
    """Parse the canonical text grammar: rationals, variables, ``+ - * / ^`` and parentheses."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2)))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise ParseError("empty polynomial text")
    parser = _Parser(tokens, order, text)
    p = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return p


class _Parser:
    def __init__(self, tokens, order, text):
        self.t = tokens
        self.i = 0
        self.order = order
        self.text = text

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                p = p * (1 / q.constant_value())
        return p

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(self.order, val)
        if kind == "var":
            return Polynomial.variable(self.order, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"missing ')' in {self.text!r}")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.order.names
    parts = []
    for e in sorted(p.terms, key=_lex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        a = abs(c)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# algebraic operations
# ---------------------------------------------------------------------------


def _nonzero(p: Polynomial, what: str = "polynomial"):
    if p.is_zero():
        raise ZeroPolynomial(f"{what} must be nonzero")


def normalize(p: Polynomial) -> Polynomial:
    """Positive rational multiple with coprime integer coefficients and positive lex-leading coefficient."""
    _nonzero(p)
    m = 1
    for c in p.terms.values():
        if c.denominator != 1:
            m = _lcm(m, c.denominator)
    ints = {e: int(c * m) for e, c in p.terms.items()}
    g = 0
    for v in ints.values():
        g = igcd(g, v)
    lead = max(ints, key=_lex_key)
    if ints[lead] < 0:
        g = -g
    if g == 1 and m == 1 and all(type(c) is Fraction for c in p.terms.values()):
        return p
    return Polynomial._raw(p.order, {e: Fraction(v // g) for e, v in ints.items()})


def degree(p: Polynomial, v: str | int) -> int:
    return p.degree(v)


def _split_by(p: Polynomial, v: str | int):
    """Group terms by the power of ``v``: returns ``{k: coefficient polynomial}``."""
    i = p.order.index(v)
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        groups.setdefault(k, {})[e2] = c
    return {k: Polynomial._raw(p.order, t) for k, t in groups.items()}


def leading_coeff(p: Polynomial, v: str | int) -> Polynomial:
    _nonzero(p)
    g = _split_by(p, v)
    return g[max(g)]


def trailing_coeff(p: Polynomial, v: str | int) -> Polynomial:
    """Coefficient of the lowest power of ``v`` present in ``p``."""
    _nonzero(p)
    g = _split_by(p, v)
    return g[min(g)]


def _perm_for(p: Polynomial, v: str | int, *others: Polynomial):
    """Variable positions innermost first with ``v`` last, covering everything used."""
    i = p.order.index(v)
    used = set(p.variables())
    for q in others:
        used.update(q.variables())
    used.discard(i)
    return sorted(used) + [i]


def content(p: Polynomial, v: str | int) -> Polynomial:
    """Gcd of the coefficients of ``p`` as a polynomial in ``v``; ``p = content * primitive_part``."""
    return _content_primitive(p, v)[0]


def primitive_part(p: Polynomial, v: str | int) -> Polynomial:
    return _content_primitive(p, v)[1]


def _content_primitive(p: Polynomial, v):
    _nonzero(p)
    idx = _perm_for(p, v)
    m, f = _dense_perm(p, idx)
    u = len(idx) - 1
    if u == 0:
        c, pp = D.dup_primitive(f)
        cont = Polynomial.constant(p.order, Fraction(c, m))
        return cont, _from_dense_perm(pp, idx, p.order)
    c, pp = D.dmp_primitive(f, u)
    cont = _from_dense_perm(c, idx[:-1], p.order, Fraction(1, m))
    return cont, _from_dense_perm(pp, idx, p.order)


def resultant(p: Polynomial, q: Polynomial, v: str | int) -> Polynomial:
    """Resultant with respect to ``v`` (Sylvester sign convention), via the subresultant PRS."""
    _nonzero(p)
    _nonzero(q)
    dp, dq = p.degree(v), q.degree(v)
    if dp < 1 or dq < 1:
        raise InvalidInput("resultant needs positive degree in the eliminated variable")
    idx = _perm_for(p, v, q)
    mp, f = _dense_perm(p, idx)
    mq, g = _dense_perm(q, idx)
    u = len(idx) - 1
    r = D.dmp_resultant(f, g, u)
    scale = Fraction(1, mp ** dq * mq ** dp)
    if u == 0:
        return Polynomial.constant(p.order, r * scale)
    return _from_dense_perm(r, idx[:-1], p.order, scale)


def discriminant(p: Polynomial, v: str | int) -> Polynomial:
    """``(-1)^(n(n-1)/2) * resultant(p, dp/dv) / lc(p)`` for ``deg_v p = n >= 2``."""
    _nonzero(p)
    n = p.degree(v)
    if n < 2:
        raise InvalidInput("discriminant needs degree >= 2 in the variable")
    idx = _perm_for(p, v)
    m, f = _dense_perm(p, idx)
    u = len(idx) - 1
    r = D.dmp_discriminant(f, u)
    scale = Fraction(1, m ** (2 * n - 2))
    if u == 0:
        return Polynomial.constant(p.order, r * scale)
    return _from_dense_perm(r, idx[:-1], p.order, scale)


def lazard_divide(f: Polynomial, v: str | int, r) -> Polynomial:
    """Exact quotient ``f / (v - r)``; raises :class:`NotDivisible` otherwise."""
    _nonzero(f)
    r = Fraction(r)
    if not substitute(f, v, r).is_zero():
        raise NotDivisible(f"{f} does not vanish at {f.order[f.order.index(v)]} = {format_rational(r)}")
    i = f.order.index(v)
    groups = _split_by(f, v)
    top = max(groups)
    zero = Polynomial._raw(f.order, {})
    # synthetic division by (v - r), highest power first
    quotient: dict[int, Polynomial] = {}
    carry = zero
    for k in range(top, 0, -1):
        carry = groups.get(k, zero) + carry * r
        quotient[k - 1] = carry
    terms: dict = {}
    for k, c in quotient.items():
        for e, a in c.terms.items():
            e2 = list(e)
            e2[i] = k
            terms[tuple(e2)] = a
    return Polynomial._raw(f.order, terms)


def substitute(f: Polynomial, v: str | int, r) -> Polynomial:
    """Exact evaluation of ``v`` at the rational ``r``."""
    i = f.order.index(v)
    r = Fraction(r)
    t: dict = {}
    for e, c in f.terms.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        val = c * r ** k if k else c
        s = t.get(e2, 0) + val
        if s:
            t[e2] = s
        else:
            t.pop(e2, None)
    return Polynomial._raw(f.order, t)


# ---------------------------------------------------------------------------
# polynomial sets and bases
# ---------------------------------------------------------------------------


class PolySet:
    """Ordered set of normalized, nonconstant polynomials.

    Constant multiples collapse to one element and constants are dropped,
    so ``PolySet([2*x - 2, 1 - x, 3])`` holds the single element ``x - 1``.
    Equality is set equality.
    """

    __slots__ = ("_items", "_set")

    def __init__(self, polys: Iterable[Polynomial] = ()):
        seen: dict[Polynomial, None] = {}
        for p in polys:
            if p.is_zero() or p.is_constant():
                continue
            seen.setdefault(normalize(p), None)
        self._items = tuple(seen)
        self._set = frozenset(self._items)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __contains__(self, p):
        if not isinstance(p, Polynomial) or p.is_zero() or p.is_constant():
            return False
        return normalize(p) in self._set

    def __eq__(self, other):
        if isinstance(other, PolySet):
            return self._set == other._set
        return NotImplemented

    def __hash__(self):
        return hash(self._set)

    def __or__(self, other: "PolySet") -> "PolySet":
        return PolySet((*self._items, *other._items))

    def __sub__(self, other: "PolySet") -> "PolySet":
        return PolySet(p for p in self._items if p not in other._set)

    def __repr__(self):
        return "PolySet([" + ", ".join(str(p) for p in self._items) + "])"

    def sorted(self) -> list[Polynomial]:
        return sorted(self._items, key=str)


def _coprime_hint(f, g, u):
    """True when an integer specialization proves ``gcd(f, g)`` constant in the main variable.

    Both inputs must be primitive in the main variable.
    """
    if not u:
        return False
    for pts in _probe_points(u):
        if not D._eval_all(f[0], pts, u - 1) or not D._eval_all(g[0], pts, u - 1):
            continue
        a = D.dmp_eval_point(f, pts, u)
        b = D.dmp_eval_point(g, pts, u)
        return len(D.dup_gcd(a, b)) == 1
    return False


def _probe_points(u):
    base = (3, -2, 5, 7, -4, 11, -13, 2, -1, 17)
    for k in range(6):
        yield tuple(base[(k + 2 * j) % len(base)] + k * (j + 1) for j in range(u))


def _is_squarefree_hint(f, u):
    """True when a specialization proves ``f`` square-free in its main variable."""
    if not u:
        return len(D.dup_gcd(f, D.dup_diff(f))) == 1
    for pts in _probe_points(u):
        if not D._eval_all(f[0], pts, u - 1):
            continue
        a = D.dmp_eval_point(f, pts, u)
        return len(D.dup_gcd(a, D.dup_diff(a))) == 1
    return False


def dense_gcd(f, g, u):
    if len(f) > 1 and len(g) > 1 and _coprime_hint(f, g, u):
        return D.dmp_one(u)
    return D.dmp_gcd(f, g, u)


def dense_sqf_components(f, u):
    """Yun components of a primitive ``f`` (positive degree in the main variable)."""
    f = D.dmp_ground_primitive(f, u)[1]
    if len(f) <= 2 or _is_squarefree_hint(f, u):
        return [f]
    return [a for a, _ in D.dmp_sqf_list(f, u)]


def gcd_free_merge(basis, candidates, u):
    """Refine a pairwise-coprime basis by square-free candidates.

    ``basis`` and ``candidates`` hold ``(dense poly, tag)`` pairs, where the
    tag is a frozenset (provenance).  Returns the coarsest gcd-free basis of
    everything: each element is the product of the irreducible factors that
    divide exactly the same inputs.  Tags are merged by union.
    """
    B = list(basis)
    for c, tc in candidates:
        rest = c
        out = []
        for b, tb in B:
            if len(rest) <= 1:
                out.append((b, tb))
                continue
            g = dense_gcd(b, rest, u)
            if len(g) <= 1:
                out.append((b, tb))
                continue
            b1 = D.dmp_exquo(b, g, u)
            rest = D.dmp_exquo(rest, g, u)
            if len(b1) > 1:
                out.append((D.dmp_ground_primitive(b1, u)[1], tb))
            out.append((D.dmp_ground_primitive(g, u)[1], tb | tc))
        if len(rest) > 1:
            out.append((D.dmp_ground_primitive(rest, u)[1], tc))
        B = out
    return B


def gcd_free_basis(polys: Iterable[Polynomial], v: str | int) -> PolySet:
    """Alias of :func:`square_free_basis` kept for readability at call sites."""
    return square_free_basis(PolySet(polys), v)


def square_free_basis(s: PolySet | Iterable[Polynomial], v: str | int) -> PolySet:
    """Square-free, pairwise coprime (in ``v``) set with the same roots in ``v``.

    Square-free decomposition of each primitive part, then gcd-free
    refinement; no irreducible factorization is attempted.
    """
    polys = list(s)
    if not polys:
        return PolySet()
    order = polys[0].order
    i = order.index(v)
    for p in polys:
        if p.degree(i) < 1:
            raise InvalidInput(f"{p} has no positive degree in {order[i]}")
    idx = sorted(set().union(*(p.variables() for p in polys)) - {i}) + [i]
    u = len(idx) - 1
    cands = []
    empty = frozenset()
    for p in polys:
        _, f = _dense_perm(p, idx)
        if u:
            f = D.dmp_primitive(f, u)[1]
        else:
            f = D.dup_primitive(f)[1]
        for a in dense_sqf_components(f, u):
            cands.append((a, empty))
    basis = gcd_free_merge([], cands, u)
    return PolySet(_from_dense_perm(b, idx, order) for b, _ in basis)
