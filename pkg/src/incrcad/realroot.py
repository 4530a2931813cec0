"""Exact real root isolation, comparison and sampling for univariate polynomials.

Roots are either exact rationals or pairs (square-free integer defining
polynomial, open isolating interval).  All comparisons are exact: interval
refinement separates distinct roots and a gcd of defining polynomials
decides equality.

Polynomials are handled as dense integer coefficient lists, highest degree
first, as produced by :mod:`incrcad._dense`.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from math import ceil, floor
from typing import Iterable, Sequence

from . import _dense as D
from .errors import InvalidInput
from .poly import Polynomial, VarOrder, format_rational

__all__ = [
    "clear_caches",
    "DEFAULT_WIDTH",
    "IsolatedRoot",
    "RootSet",
    "isolate",
    "isolate_dense",
    "refine",
    "compare_roots",
    "compare_rational",
    "merge_roots",
    "choose_samples",
    "simplest_between",
    "is_new_root",
    "format_root",
]

DEFAULT_WIDTH = Fraction(1, 2 ** 20)

def _sgn(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class IsolatedRoot:
    """A real algebraic number.

    Rational kind has ``poly is None`` and ``lo == hi == value``.  Algebraic
    kind has a primitive square-free ``poly`` (tuple of ints, positive
    leading coefficient) with exactly one root in the open interval
    ``(lo, hi)`` and no root at either endpoint.
    """

    poly: tuple | None
    lo: Fraction
    hi: Fraction
    _slo: int = field(default=0, compare=False, repr=False)

    @classmethod
    def rational(cls, value) -> "IsolatedRoot":
        v = Fraction(value)
        return cls(None, v, v)

    @classmethod
    def algebraic(cls, poly: Sequence[int], lo, hi) -> "IsolatedRoot":
        poly = tuple(poly)
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise InvalidInput("isolating interval must satisfy lo < hi")
        slo = D.dup_sign_at(list(poly), lo)
        shi = D.dup_sign_at(list(poly), hi)
        if slo == 0 or shi == 0 or slo == shi:
            raise InvalidInput("interval does not isolate a simple root")
        return cls(poly, lo, hi, slo)

    @property
    def is_rational(self) -> bool:
        return self.poly is None

    @property
    def value(self) -> Fraction:
        if self.poly is not None:
            raise InvalidInput("algebraic root has no exact rational value")
        return self.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def slo(self) -> int:
        if self._slo:
            return self._slo
        return D.dup_sign_at(list(self.poly), self.lo)

    def __float__(self):
        r = refine(self, Fraction(1, 2 ** 60))
        return float((r.lo + r.hi) / 2)

    def negate(self) -> "IsolatedRoot":
        if self.poly is None:
            return IsolatedRoot.rational(-self.lo)
        f = D.dup_mirror(list(self.poly))
        if f[0] < 0:
            f = D.dup_neg(f)
        return IsolatedRoot.algebraic(f, -self.hi, -self.lo)

    def __str__(self):
        return format_root(self)


def format_root(r: IsolatedRoot, var: str = "x") -> str:
    """``p/q`` for rationals, ``root(<poly>, (a,b))`` otherwise."""
    if r.poly is None:
        return format_rational(r.lo)
    order = VarOrder([var])
    p = Polynomial.from_univariate(r.poly, order)
    return f"root({p}, ({format_rational(r.lo)},{format_rational(r.hi)}))"


# ---------------------------------------------------------------------------
# simplest rationals
# ---------------------------------------------------------------------------


def _simplest_nonneg(an, ad, bn, bd):
    """Simplest rational in ``(an/ad, bn/bd)`` with ``0 <= a < b``; ``bn is None`` means infinity."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        fl = an // ad
        if bn is None or (fl + 1) * bd < bn:
            n = fl + 1
            return n * p1 + p0, n * q1 + q0
        p0, p1 = p1, fl * p1 + p0
        q0, q1 = q1, fl * q1 + q0
        ra = an - fl * ad
        rb = bn - fl * bd
        # x -> 1/(x - fl) maps (a, b) onto (1/(b - fl), 1/(a - fl))
        an, ad, bn, bd = bd, rb, (ad if ra else None), ra


def simplest_between(a: Fraction | None, b: Fraction | None) -> Fraction:
    """Rational of least denominator (then least absolute value) in the open interval ``(a, b)``.

    ``None`` stands for an infinite end.

    >>> simplest_between(Fraction(3, 4), Fraction(1))
    Fraction(4, 5)
    """
    if a is not None and b is not None and not a < b:
        raise InvalidInput("empty interval")
    if a is None and b is None:
        return Fraction(0)
    if a is None:
        return Fraction(0) if b > 0 else Fraction(ceil(b) - 1)
    if b is None:
        return Fraction(0) if a < 0 else Fraction(floor(a) + 1)
    if a < 0 < b:
        return Fraction(0)
    if b <= 0:
        return -simplest_between(-b, -a)
    p, q = _simplest_nonneg(a.numerator, a.denominator, b.numerator, b.denominator)
    return Fraction(p, q)


# ---------------------------------------------------------------------------
# isolation
# ---------------------------------------------------------------------------


def _cauchy_exponent(f) -> int:
    """``k`` with every root of ``f`` strictly inside ``(-2^k, 2^k)``."""
    lc = abs(f[0])
    m = max(abs(c) for c in f[1:])
    bound = -(-m // lc) + 1
    return max(bound.bit_length(), 1)


def _descartes_01(p) -> int:
    """Sign variations bounding the number of roots of ``p`` in ``(0, 1)``."""
    return D.dup_sign_variations(D.dup_shift(D.dup_reverse(p), 1))


def _positive_roots(f):
    """Isolate the roots of ``f`` in ``(0, inf)``; ``f(0) != 0``, ``f`` square-free.

    Returns ``(rationals, intervals)``; intervals are ``(A, B, s)`` meaning
    ``(A / 2^s, B / 2^s)``.
    """
    if len(f) <= 1:
        return [], []
    k = _cauchy_exponent(f)
    n = len(f) - 1
    # g(x) = f(2^k x); roots of interest now in (0, 1)
    g = [c << (k * (n - i)) for i, c in enumerate(f)]
    g = D.dup_primitive(g)[1]
    rats, ivs = [], []
    stack = [(g, 0, 0)]
    while stack:
        p, c, j = stack.pop()
        v = _descartes_01(p)
        if v == 0:
            continue
        if v == 1:
            # (c / 2^j) * 2^k
            if j >= k:
                ivs.append((c, c + 1, j - k))
            else:
                ivs.append((c << (k - j), (c + 1) << (k - j), 0))
            continue
        left = [a << i for i, a in enumerate(p)]
        right = D.dup_shift(left, 1)
        if right[-1] == 0:
            rats.append(Fraction(2 * c + 1, 2 ** (j + 1)) * 2 ** k)
            right = right[:-1]
        stack.append((D.dup_primitive(right)[1], 2 * c + 1, j + 1))
        stack.append((D.dup_primitive(left)[1], 2 * c, j + 1))
    return rats, ivs


def _sgn_at(f, x, s):
    """Sign of ``f(x / 2^s)`` for integers ``x``, ``s``."""
    return _sgn(D.dup_eval_homog(f, x, 1 << s))


class _ExactRoot(Exception):
    def __init__(self, value: Fraction):
        self.value = value


def _bisect_to(f, A, B, s, t, sa):
    """Narrow ``(A/2^s, B/2^s)`` to width ``2^-t`` by integer bisection.

    ``sa`` is the sign of ``f`` at the left end.  Raises :class:`_ExactRoot`
    when a midpoint is a root.
    """
    while s < t or B - A > 1:
        if B - A == 1:
            A, B, s = A << 1, B << 1, s + 1
        m = (A + B) >> 1
        sm = _sgn_at(f, m, s)
        if sm == 0:
            raise _ExactRoot(Fraction(m, 1 << s))
        if sm == sa:
            A = m
        else:
            B = m
    return A, B, s


def _newton_to(f, df, A, s, t, sa):
    """From a width-``2^-s`` bracket at ``A``, reach width ``2^-t`` by verified Newton steps.

    Every step is certified by a sign change, and falls back to bisection
    when the Newton guess fails to bracket the root.
    """
    B = A + 1
    while s < t:
        s2 = min(2 * s, t)
        sh = s2 - s
        lo, hi = A << sh, B << sh
        X = (lo + hi) >> 1
        q = 1 << s2
        fx = D.dup_eval_homog(f, X, q)
        dfx = D.dup_eval_homog(df, X, q, len(f) - 2)
        ok = False
        if dfx:
            # f(x)/f'(x) in units of 2^-s2
            X -= fx // dfx
            if lo <= X - 1 and X + 1 <= hi:
                sl = _sgn_at(f, X - 1, s2)
                sr = _sgn_at(f, X + 1, s2)
                if sl == 0:
                    raise _ExactRoot(Fraction(X - 1, q))
                if sr == 0:
                    raise _ExactRoot(Fraction(X + 1, q))
                if sl != sr:
                    sm = _sgn_at(f, X, s2)
                    if sm == 0:
                        raise _ExactRoot(Fraction(X, q))
                    A = X if sm == sl else X - 1
                    s = s2
                    ok = True
        if not ok:
            A, _, s = _bisect_to(f, A, B, s, min(s + 8, t), sa)
        B = A + 1
    return A, s


def _deflate(f, rats):
    for r in rats:
        if r:
            f = D.dup_exquo(f, [r.denominator, -r.numerator])
    return D.dup_primitive(f)[1]


def _grid_bits(width: Fraction) -> int:
    """Least ``g`` with ``2^-g <= width``."""
    p, q = width.numerator, width.denominator
    g = max((q // p).bit_length() - 1, 0)
    while p << g < q:
        g += 1
    return g


def _resolve(f, df, iv, g):
    """Refine one isolating interval; returns ``Fraction`` for a rational root or ``(lo, hi)``.

    A rational root ``p/q`` of ``f`` has ``q`` dividing the leading
    coefficient.  The simplest rational of a bracket has the least
    denominator there, so once it exceeds the leading coefficient the root
    is irrational.
    """
    A0, B0, s0 = iv
    lc = abs(f[0])
    sa = _sgn_at(f, A0, s0)
    try:
        A, _, s = _bisect_to(f, A0, B0, s0, s0, sa)
        A, s = _newton_to(f, df, A, s, max(g, s), sa)
        while True:
            c = simplest_between(Fraction(A, 1 << s), Fraction(A + 1, 1 << s))
            if D.dup_eval_homog(f, c.numerator, c.denominator) == 0:
                return c
            if c.denominator > lc:
                break
            A, s = _newton_to(f, df, A, s, 2 * s, sa)
    except _ExactRoot as e:
        return e.value
    # canonical grid cell when it stays inside the isolating interval
    m = A >> (s - g)
    lo, hi = Fraction(m, 1 << g), Fraction(m + 1, 1 << g)
    if Fraction(A0, 1 << s0) <= lo and hi <= Fraction(B0, 1 << s0):
        return lo, hi
    return Fraction(A, 1 << s), Fraction(A + 1, 1 << s)


@lru_cache(maxsize=4096)
def _isolate_cached(f: tuple, width: Fraction):
    f = D.dup_sqf_part(list(f))
    if len(f) <= 1:
        return ()
    rats: list[Fraction] = []
    if f[-1] == 0:
        rats.append(Fraction(0))
        while f[-1] == 0:
            f = f[:-1]
    cands = []
    if len(f) > 1:
        pr, pi = _positive_roots(f)
        nr, ni = _positive_roots(D.dup_mirror(f))
        rats.extend(pr)
        rats.extend(-r for r in nr)
        cands.extend((f, iv, 1) for iv in pi)
        cands.extend((f, iv, -1) for iv in ni)
    f = _deflate(f, rats)
    n_early = len(rats)
    g = _grid_bits(width)
    fm = D.dup_mirror(f)
    found = []
    for _, iv, sign in cands:
        h = f if sign > 0 else fm
        res = _resolve(h, D.dup_diff(h), iv, g)
        if isinstance(res, Fraction):
            rats.append(res * sign)
        elif sign > 0:
            found.append(res)
        else:
            found.append((-res[1], -res[0]))
    # late rational roots are divided out of the defining polynomial too
    h = _deflate(f, rats[n_early:]) if found else f
    out = [IsolatedRoot.rational(r) for r in rats]
    ht = tuple(h)
    for lo, hi in found:
        out.append(IsolatedRoot(ht, lo, hi, _sgn(D.dup_eval_homog(h, lo.numerator, lo.denominator))))
    out.sort(key=lambda r: (r.lo, r.hi))
    return tuple(out)


def clear_caches() -> None:
    """Drop memoized isolations and gcds (used to keep benchmark timings independent)."""
    _isolate_cached.cache_clear()
    _poly_gcd.cache_clear()


def isolate_dense(f: Sequence[int], width: Fraction = DEFAULT_WIDTH) -> list[IsolatedRoot]:
    """Distinct real roots of the integer polynomial ``f`` in increasing order.

    Irrational roots get a canonical cell of the ``width`` dyadic grid when
    it fits inside the isolating interval; rational roots are always exact.
    """
    f = D.dup_strip(list(f))
    if not f:
        raise InvalidInput("cannot isolate the roots of the zero polynomial")
    return list(_isolate_cached(tuple(f), Fraction(width)))


def isolate(p: Polynomial, width: Fraction = DEFAULT_WIDTH) -> "RootSet":
    """Real roots of a univariate polynomial (any single variable of its order)."""
    if p.is_zero():
        raise InvalidInput("cannot isolate the roots of the zero polynomial")
    vs = p.variables()
    if len(vs) > 1:
        raise InvalidInput(f"{p} is not univariate")
    if not vs:
        return RootSet(())
    from .poly import _dense_perm

    _, f = _dense_perm(p, [vs[0]])
    return RootSet(tuple(isolate_dense(f, width)))


def refine(r: IsolatedRoot, width) -> IsolatedRoot:
    """Same root with interval width at most ``width``; rationals are returned unchanged."""
    width = Fraction(width)
    if width <= 0:
        raise InvalidInput("width must be positive")
    if r.poly is None or r.hi - r.lo <= width:
        return r
    f = list(r.poly)
    slo = r.slo()
    lo, hi = r.lo, r.hi
    ea, eb = _dyadic_exponent(lo), _dyadic_exponent(hi)
    if ea is not None and eb is not None:
        s = max(ea, eb)
        try:
            A, B, s = _bisect_to(f, int(lo * (1 << s)), int(hi * (1 << s)), s, _grid_bits(width), slo)
        except _ExactRoot as e:
            return IsolatedRoot.rational(e.value)
        return IsolatedRoot(r.poly, Fraction(A, 1 << s), Fraction(B, 1 << s), slo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = D.dup_sign_at(f, mid)
        if sm == 0:
            return IsolatedRoot.rational(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return IsolatedRoot(r.poly, lo, hi, slo)


def _dyadic_exponent(x: Fraction):
    d = x.denominator
    if d & (d - 1):
        return None
    return d.bit_length() - 1


def _halve(r: IsolatedRoot) -> IsolatedRoot:
    return refine(r, (r.hi - r.lo) / 2)


# ---------------------------------------------------------------------------
# exact comparison
# ---------------------------------------------------------------------------


def compare_rational(x, r: IsolatedRoot) -> int:
    """Sign of ``x - r`` for a rational ``x``."""
    x = Fraction(x)
    if r.poly is None:
        return _sgn(x - r.lo)
    if x <= r.lo:
        return -1
    if x >= r.hi:
        return 1
    s = D.dup_sign_at(list(r.poly), x)
    if s == 0:
        return 0
    return -1 if s == r.slo() else 1


@lru_cache(maxsize=8192)
def _poly_gcd(f: tuple, g: tuple) -> tuple:
    return tuple(D.dup_gcd(list(f), list(g)))


def _has_root_in(g, lo, hi) -> bool:
    a = D.dup_sign_at(g, lo)
    b = D.dup_sign_at(g, hi)
    return a * b < 0


def _same_algebraic(a: IsolatedRoot, b: IsolatedRoot) -> bool:
    """Decide equality of two algebraic roots with overlapping intervals."""
    if a.poly == b.poly:
        # one isolating interval per root of the same square-free polynomial
        g = list(a.poly)
    else:
        key = (a.poly, b.poly) if a.poly <= b.poly else (b.poly, a.poly)
        g = list(_poly_gcd(*key))
        if len(g) <= 1:
            return False
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if not _has_root_in(g, a.lo, a.hi) or not _has_root_in(g, b.lo, b.hi):
        return False
    if lo >= hi:
        return False
    sl = D.dup_sign_at(g, lo)
    sh = D.dup_sign_at(g, hi)
    if sl == 0 or sh == 0:
        return False
    return sl != sh


def compare_roots(a: IsolatedRoot, b: IsolatedRoot) -> int:
    """Exact sign of ``a - b``."""
    if a is b:
        return 0
    if a.poly is None:
        return compare_rational(a.lo, b)
    if b.poly is None:
        return -compare_rational(b.lo, a)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    if _same_algebraic(a, b):
        return 0
    while True:
        if a.hi - a.lo >= b.hi - b.lo:
            a = _halve(a)
        else:
            b = _halve(b)
        if a.poly is None or b.poly is None:
            return compare_roots(a, b)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1


_root_key = cmp_to_key(compare_roots)


def _canonical_rank(r: IsolatedRoot):
    if r.poly is None:
        return (0, 0, (), r.lo, r.hi)
    return (1, len(r.poly), r.poly, r.lo, r.hi)


class RootSet:
    """Strictly increasing tuple of distinct roots."""

    __slots__ = ("roots",)

    def __init__(self, roots: Iterable[IsolatedRoot] = ()):
        self.roots = tuple(roots)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def __eq__(self, other):
        if not isinstance(other, RootSet):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(compare_roots(a, b) == 0 for a, b in zip(self.roots, other.roots))

    def __hash__(self):
        return hash(len(self.roots))

    def __repr__(self):
        return "RootSet([" + ", ".join(map(str, self.roots)) + "])"


def merge_roots(sets: Iterable[Iterable[IsolatedRoot]]) -> RootSet:
    """Sorted union; equal roots collapse to one canonical representative."""
    allr = [r for s in sets for r in s]
    allr.sort(key=_root_key)
    out: list[IsolatedRoot] = []
    for r in allr:
        if out and compare_roots(out[-1], r) == 0:
            if _canonical_rank(r) < _canonical_rank(out[-1]):
                out[-1] = r
            continue
        out.append(r)
    return RootSet(out)


def is_new_root(existing: Sequence[IsolatedRoot] | RootSet, candidate: IsolatedRoot) -> bool:
    """True iff ``candidate`` differs from every root of the sorted set ``existing``."""
    rs = existing.roots if isinstance(existing, RootSet) else tuple(existing)
    i = bisect.bisect_left(rs, _root_key(candidate), key=_root_key) if rs else 0
    return not (i < len(rs) and compare_roots(rs[i], candidate) == 0)


def root_floor(r: IsolatedRoot) -> int:
    if r.poly is None:
        return floor(r.lo)
    k = floor(r.lo)
    while compare_rational(k + 1, r) <= 0:
        k += 1
    return k


def root_ceil(r: IsolatedRoot) -> int:
    return -root_floor(r.negate())


_SAMPLE_RETRIES = 64


def sample_between(a: IsolatedRoot, b: IsolatedRoot) -> Fraction:
    """Simplest rational strictly between the roots ``a < b``."""
    for _ in range(_SAMPLE_RETRIES):
        s = simplest_between(a.lo, b.hi)
        if compare_rational(s, a) > 0 and compare_rational(s, b) < 0:
            return s
        a = _halve(a) if a.poly is not None else a
        b = _halve(b) if b.poly is not None else b
    # separated intervals always admit a sample between them
    while not a.hi < b.lo:
        if a.hi - a.lo >= b.hi - b.lo and a.poly is not None:
            a = _halve(a)
        else:
            b = _halve(b)
    return simplest_between(a.hi, b.lo)


def choose_samples(rs: Iterable[IsolatedRoot]) -> list[Fraction]:
    """One rational per open interval of the line cut by the sorted roots ``rs``."""
    roots = list(rs)
    if not roots:
        return [Fraction(0)]
    out = [Fraction(root_floor(roots[0]) - 1)]
    for a, b in zip(roots, roots[1:]):
        out.append(sample_between(a, b))
    out.append(Fraction(root_ceil(roots[-1]) + 1))
    return out
