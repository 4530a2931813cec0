"""Dense recursive polynomial kernels over the integers.

A polynomial in ``u + 1`` variables is a list of coefficients, leading
first, in its main (outermost) variable.  At level ``u == 0`` the
coefficients are Python ints; above that they are level ``u - 1``
polynomials.  The zero polynomial is ``[]`` at every level and no
representation carries a leading zero.

The innermost variable is the lowest one in the variable order, so a
polynomial in ``x1, ..., xk`` has main variable ``xk`` and ``u = k - 1``.
"""

from __future__ import annotations

from math import gcd as igcd
from math import isqrt

HEU_GCD_MAX = 6


class HeuristicGCDFailed(Exception):
    pass


class NotExact(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


# ---------------------------------------------------------------------------
# univariate (level 0)
# ---------------------------------------------------------------------------


def dup_strip(f):
    if not f or f[0]:
        return f
    i = 0
    for c in f:
        if c:
            break
        i += 1
    return f[i:]


def dup_degree(f):
    return len(f) - 1


def dup_add(f, g):
    if not f:
        return g
    if not g:
        return f
    df, dg = len(f), len(g)
    if df == dg:
        return dup_strip([a + b for a, b in zip(f, g)])
    if df < dg:
        f, g, df, dg = g, f, dg, df
    k = df - dg
    return f[:k] + [a + b for a, b in zip(f[k:], g)]


def dup_sub(f, g):
    if not g:
        return f
    if not f:
        return [-c for c in g]
    df, dg = len(f), len(g)
    if df == dg:
        return dup_strip([a - b for a, b in zip(f, g)])
    if df > dg:
        k = df - dg
        return f[:k] + [a - b for a, b in zip(f[k:], g)]
    k = dg - df
    return [-c for c in g[:k]] + [a - b for a, b in zip(f, g[k:])]


def dup_neg(f):
    return [-c for c in f]


def dup_mul(f, g):
    if not f or not g:
        return []
    if len(f) < len(g):
        f, g = g, f
    h = [0] * (len(f) + len(g) - 1)
    for j, b in enumerate(g):
        if b:
            for i, a in enumerate(f):
                h[i + j] += a * b
    return h


def dup_mul_ground(f, c):
    if not c:
        return []
    return [a * c for a in f]


def dup_quo_ground(f, c):
    """Exact division of every coefficient by the integer ``c``."""
    if c == 1:
        return f
    return [a // c for a in f]


def dup_content(f):
    return igcd(*f) if f else 0


def dup_primitive(f):
    """Return ``(c, p)`` with ``f = c * p``, ``p`` primitive, ``lc(p) > 0``."""
    if not f:
        return 0, []
    c = igcd(*f)
    if f[0] < 0:
        c = -c
    if c == 1:
        return 1, f
    return c, [a // c for a in f]


def dup_diff(f):
    d = len(f) - 1
    if d <= 0:
        return []
    return [c * (d - i) for i, c in enumerate(f[:-1])]


def dup_eval(f, a):
    r = 0
    for c in f:
        r = r * a + c
    return r


def dup_eval_homog(f, p, q, d=None):
    """Return ``q**d * f(p/q)`` as an int, ``d`` defaulting to ``deg f``."""
    if not f:
        return 0
    n = len(f) - 1
    if d is None:
        d = n
    r = f[0]
    qq = q
    for c in f[1:]:
        r = r * p + c * qq
        qq *= q
    if d > n:
        r *= q ** (d - n)
    return r


def dup_sign_at(f, x):
    """Sign of ``f`` at the rational ``x``."""
    if isinstance(x, int):
        v = dup_eval(f, x)
    else:
        v = dup_eval_homog(f, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def dup_reverse(f):
    return dup_strip(f[::-1])


def dup_shift(f, a):
    """Return ``f(x + a)``."""
    f = list(f)
    n = len(f) - 1
    for i in range(n, 0, -1):
        for j in range(i):
            f[j + 1] += a * f[j]
    return f


def dup_scale_var(f, p, q=1):
    """Return ``q**deg * f(p*x/q)``: coefficient ``a_i`` becomes ``a_i p^i q^(n-i)``."""
    n = len(f) - 1
    out = [0] * (n + 1)
    pp = 1
    qq = q ** n
    for i in range(n, -1, -1):
        out[i] = f[i] * pp * qq
        pp *= p
        if q != 1:
            qq //= q
    return out


def dup_mirror(f):
    """Return ``f(-x)``."""
    n = len(f) - 1
    return [c if (n - i) % 2 == 0 else -c for i, c in enumerate(f)]


def dup_sign_variations(f):
    prev = 0
    k = 0
    for c in f:
        if c:
            if prev and (c > 0) != (prev > 0):
                k += 1
            prev = c
    return k


def dup_prem(f, g):
    """Pseudo-remainder of ``f`` by ``g``."""
    df, dg = len(f) - 1, len(g) - 1
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = f
    dr = df
    if dr < dg:
        return f
    N = df - dg + 1
    lc = g[0]
    while dr >= dg and r:
        c = r[0]
        N -= 1
        # r = lc * r - c * x^(dr - dg) * g
        r = [lc * a for a in r[1:]]
        for i, b in enumerate(g[1:]):
            r[i] -= c * b
        r = dup_strip(r)
        dr = len(r) - 1
    if N:
        r = [a * lc ** N for a in r]
    return r


def dup_exquo(f, g):
    """Exact quotient ``f / g`` over the integers; raises NotExact."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        raise NotExact
    if dg == 0:
        c = g[0]
        out = []
        for a in f:
            q, r = divmod(a, c)
            if r:
                raise NotExact
            out.append(q)
        return out
    lc = g[0]
    r = list(f)
    q = [0] * (df - dg + 1)
    for k in range(df - dg + 1):
        c = r[k]
        if c:
            qc, rem = divmod(c, lc)
            if rem:
                raise NotExact
            q[k] = qc
            for i in range(1, dg + 1):
                r[k + i] -= qc * g[i]
    for c in r[df - dg + 1:]:
        if c:
            raise NotExact
    return q


def dup_divides(g, f):
    try:
        dup_exquo(f, g)
    except NotExact:
        return False
    return True


def dup_max_norm(f):
    return max(abs(c) for c in f) if f else 0


def _dup_interpolate(h, x):
    f = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        f.append(g)
        h = (h - g) // x
    f.reverse()
    if f and f[0] < 0:
        f = [-c for c in f]
    return f


def dup_heu_gcd(f, g):
    """Heuristic gcd over the integers; returns ``(h, cff, cfg)``."""
    df, dg = len(f) - 1, len(g) - 1
    c = igcd(igcd(*f), igcd(*g))
    if c != 1:
        f = [a // c for a in f]
        g = [a // c for a in g]
    if df == 0 or dg == 0:
        return [c], f, g
    f_norm = dup_max_norm(f)
    g_norm = dup_max_norm(g)
    B = 2 * min(f_norm, g_norm) + 29
    x = max(min(B, 99 * isqrt(B)), 2 * min(f_norm // abs(f[0]), g_norm // abs(g[0])) + 2)
    for _ in range(HEU_GCD_MAX):
        ff = dup_eval(f, x)
        gg = dup_eval(g, x)
        if ff and gg:
            h = igcd(ff, gg)
            cff = ff // h
            cfg = gg // h
            h = dup_primitive(_dup_interpolate(h, x))[1]
            try:
                cff_ = dup_exquo(f, h)
                cfg_ = dup_exquo(g, h)
                return dup_mul_ground(h, c), cff_, cfg_
            except NotExact:
                pass
            cff = _dup_interpolate(cff, x)
            try:
                h = dup_exquo(f, cff)
                cfg_ = dup_exquo(g, h)
                if h[0] < 0:
                    h, cff = dup_neg(h), dup_neg(cff)
                return dup_mul_ground(h, c), cff, cfg_
            except NotExact:
                pass
            cfg = _dup_interpolate(cfg, x)
            try:
                h = dup_exquo(g, cfg)
                cff_ = dup_exquo(f, h)
                if h[0] < 0:
                    h, cfg = dup_neg(h), dup_neg(cfg)
                return dup_mul_ground(h, c), cff_, cfg
            except NotExact:
                pass
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


def dup_prs_gcd(f, g):
    """Primitive-PRS gcd over the integers (fallback path)."""
    cf, f = dup_primitive(f)
    cg, g = dup_primitive(g)
    c = igcd(cf, cg)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = dup_prem(f, g)
        f, g = g, (dup_primitive(r)[1] if r else [])
    f = dup_primitive(f)[1]
    return dup_mul_ground(f, c)


def dup_gcd(f, g):
    """Gcd over the integers with positive leading coefficient."""
    if not f:
        return dup_neg(g) if g and g[0] < 0 else g
    if not g:
        return dup_neg(f) if f[0] < 0 else f
    if len(f) == 1 or len(g) == 1:
        return [igcd(igcd(*f), igcd(*g))]
    try:
        return dup_heu_gcd(f, g)[0]
    except HeuristicGCDFailed:
        return dup_prs_gcd(f, g)


def dup_sqf_part(f):
    """Primitive square-free part of a nonzero univariate polynomial."""
    f = dup_primitive(f)[1]
    if len(f) <= 2:
        return f
    g = dup_gcd(f, dup_diff(f))
    if len(g) == 1:
        return f
    return dup_primitive(dup_exquo(f, g))[1]


# ---------------------------------------------------------------------------
# multivariate (level u)
# ---------------------------------------------------------------------------


def dmp_strip(f):
    if not f or f[0]:
        return f
    i = 0
    for c in f:
        if c:
            break
        i += 1
    return f[i:]


def dmp_ground(c, u):
    if not c:
        return []
    f = [c]
    for _ in range(u):
        f = [f]
    return f


def dmp_one(u):
    return dmp_ground(1, u)


def dmp_degree(f):
    return len(f) - 1


def dmp_ground_LC(f, u):
    while u:
        f = f[0]
        u -= 1
    return f[0]


def dmp_is_ground(f, u):
    """True if ``f`` is a constant (including zero)."""
    while u:
        if len(f) > 1:
            return False
        if not f:
            return True
        f = f[0]
        u -= 1
    return len(f) <= 1


def dmp_ground_value(f, u):
    while u:
        if not f:
            return 0
        f = f[0]
        u -= 1
    return f[0] if f else 0


def dmp_add(f, g, u):
    if not u:
        return dup_add(f, g)
    if not f:
        return g
    if not g:
        return f
    df, dg = len(f), len(g)
    v = u - 1
    if df == dg:
        return dmp_strip([dmp_add(a, b, v) for a, b in zip(f, g)])
    if df < dg:
        f, g, df, dg = g, f, dg, df
    k = df - dg
    return f[:k] + [dmp_add(a, b, v) for a, b in zip(f[k:], g)]


def dmp_neg(f, u):
    if not u:
        return [-c for c in f]
    v = u - 1
    return [dmp_neg(c, v) for c in f]


def dmp_sub(f, g, u):
    if not u:
        return dup_sub(f, g)
    return dmp_add(f, dmp_neg(g, u), u)


def dmp_mul(f, g, u):
    if not u:
        return dup_mul(f, g)
    if not f or not g:
        return []
    v = u - 1
    h = [[] for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if b:
                h[i + j] = dmp_add(h[i + j], dmp_mul(a, b, v), v)
    return dmp_strip(h)


def dmp_pow(f, n, u):
    r = dmp_one(u)
    while n:
        if n & 1:
            r = dmp_mul(r, f, u)
        n >>= 1
        if n:
            f = dmp_mul(f, f, u)
    return r


def dmp_mul_ground(f, c, u):
    if not c:
        return []
    if c == 1:
        return f
    if not u:
        return [a * c for a in f]
    v = u - 1
    return [dmp_mul_ground(a, c, v) for a in f]


def dmp_quo_ground(f, c, u):
    if c == 1:
        return f
    if not u:
        return [a // c for a in f]
    v = u - 1
    return [dmp_quo_ground(a, c, v) for a in f]


def dmp_ground_content(f, u):
    if not u:
        return igcd(*f) if f else 0
    v = u - 1
    c = 0
    for a in f:
        if a:
            c = igcd(c, dmp_ground_content(a, v))
            if c == 1:
                return 1
    return c


def dmp_ground_primitive(f, u):
    """Divide out the integer content and make the ground LC positive."""
    if not f:
        return 0, f
    c = dmp_ground_content(f, u)
    if dmp_ground_LC(f, u) < 0:
        c = -c
    if c == 1:
        return 1, f
    return c, dmp_quo_ground(f, c, u)


def dmp_max_norm(f, u):
    if not u:
        return max(abs(c) for c in f) if f else 0
    v = u - 1
    return max((dmp_max_norm(c, v) for c in f), default=0)


def dmp_diff(f, u):
    """Derivative in the main variable."""
    d = len(f) - 1
    if d <= 0:
        return []
    if not u:
        return dup_diff(f)
    v = u - 1
    return dmp_strip([dmp_mul_ground(c, d - i, v) for i, c in enumerate(f[:-1])])


def dmp_TC(f):
    """Coefficient of the lowest power of the main variable present."""
    for c in reversed(f):
        if c:
            return c
    return []


def dmp_trailing_power(f):
    k = 0
    for c in reversed(f):
        if c:
            return k
        k += 1
    return 0


def dmp_degree_in(f, j, u):
    """Degree of ``f`` in the variable ``j`` levels below the main one."""
    if not f:
        return -1
    if not j:
        return len(f) - 1
    return max(dmp_degree_in(c, j - 1, u - 1) for c in f if c) if f else -1


def dmp_exquo(f, g, u):
    """Exact quotient ``f / g``; raises NotExact when ``g`` does not divide ``f``."""
    if not u:
        return dup_exquo(f, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        raise NotExact
    v = u - 1
    lc = g[0]
    r = list(f)
    q = [[] for _ in range(df - dg + 1)]
    for k in range(df - dg + 1):
        c = r[k]
        if c:
            qc = dmp_exquo(c, lc, v)
            q[k] = qc
            for i in range(1, dg + 1):
                if g[i]:
                    r[k + i] = dmp_sub(r[k + i], dmp_mul(qc, g[i], v), v)
    for c in r[df - dg + 1:]:
        if c:
            raise NotExact
    return q


def dmp_prem(f, g, u):
    """Pseudo-remainder in the main variable."""
    if not u:
        return dup_prem(f, g)
    df, dg = len(f) - 1, len(g) - 1
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    if df < dg:
        return f
    v = u - 1
    N = df - dg + 1
    lc = g[0]
    r = f
    dr = df
    while dr >= dg and r:
        c = r[0]
        N -= 1
        rest = [dmp_mul(lc, a, v) for a in r[1:]]
        for i, b in enumerate(g[1:]):
            if b:
                rest[i] = dmp_sub(rest[i], dmp_mul(c, b, v), v)
        r = dmp_strip(rest)
        dr = len(r) - 1
    if N and r:
        m = dmp_pow(lc, N, v)
        r = [dmp_mul(a, m, v) for a in r]
    return r


def dmp_eval(f, a, u):
    """Evaluate the main variable at the integer ``a``; level ``u - 1``."""
    if not u:
        return dup_eval(f, a)
    v = u - 1
    r = []
    for c in f:
        r = dmp_add(dmp_mul_ground(r, a, v), c, v)
    return r


def dmp_eval_point(f, pts, u):
    """Evaluate every variable below the main one at the integers ``pts``.

    ``pts[i]`` is the value of the ``i``-th innermost variable.  Returns a
    univariate polynomial in the main variable.
    """
    if not u:
        return f
    return dup_strip([_eval_all(c, pts, u - 1) for c in f])


def _eval_all(f, pts, u):
    x = pts[u]
    r = 0
    if not u:
        for c in f:
            r = r * x + c
        return r
    v = u - 1
    for c in f:
        r = r * x + (_eval_all(c, pts, v) if c else 0)
    return r


def dmp_inner_degree(f, u):
    """Degree of ``f`` in its innermost variable."""
    if not u:
        return len(f) - 1
    v = u - 1
    return max((dmp_inner_degree(c, v) for c in f if c), default=-1)


def dmp_eval_inner(f, p, q, u, d=None):
    """Substitute ``p/q`` for the innermost variable, scaled by ``q**d``.

    ``d`` defaults to the degree of ``f`` in that variable so the result
    has integer coefficients.  Returns a level ``u - 1`` polynomial.
    """
    if d is None:
        d = max(dmp_inner_degree(f, u), 0)
    if u == 1:
        return dup_strip([dup_eval_homog(c, p, q, d) if c else 0 for c in f])
    v = u - 1
    return dmp_strip([dmp_eval_inner(c, p, q, v, d) if c else [] for c in f])


def dmp_div_inner_linear(f, p, q, u):
    """Exact quotient of ``f`` by ``q*x - p`` in the innermost variable ``x``."""
    if not u:
        return dup_exquo(f, [q, -p])
    v = u - 1
    return dmp_strip([dmp_div_inner_linear(c, p, q, v) if c else [] for c in f])


def dmp_inject_ground(f, u):
    """View a level ``u`` polynomial as level ``u + 1`` with degree 0 main variable."""
    return [f] if f else []


def dmp_content(f, u):
    """Gcd of the coefficients in the main variable, positive ground LC."""
    if not u:
        c = igcd(*f) if f else 0
        return c
    v = u - 1
    cont = []
    for c in f:
        if not c:
            continue
        cont = dmp_gcd(cont, c, v)
        if dmp_is_ground(cont, v):
            g = dmp_ground_value(cont, v)
            for c2 in f:
                if c2:
                    g = igcd(g, dmp_ground_content(c2, v))
                    if g == 1:
                        break
            return dmp_ground(abs(g), v)
    return cont


def dmp_primitive(f, u):
    """Return ``(content, primitive part)`` in the main variable."""
    if not u:
        return dup_primitive(f)
    v = u - 1
    if not f:
        return [], []
    cont = dmp_content(f, u)
    if dmp_is_ground(cont, v):
        c = dmp_ground_value(cont, v)
        if c == 1:
            pp = f
        else:
            pp = dmp_quo_ground(f, c, u)
    else:
        pp = [dmp_exquo(a, cont, v) if a else [] for a in f]
    if dmp_ground_LC(pp, u) < 0:
        pp = dmp_neg(pp, u)
        cont = dmp_neg(cont, v)
    return cont, pp


def _dmp_trunc_sym(f, x, u):
    half = x // 2
    if not u:
        out = []
        for c in f:
            g = c % x
            if g > half:
                g -= x
            out.append(g)
        return dup_strip(out)
    v = u - 1
    return dmp_strip([_dmp_trunc_sym(c, x, v) for c in f])


def _dmp_interpolate(h, x, v):
    f = []
    while h:
        g = _dmp_trunc_sym(h, x, v)
        f.append(g)
        h = dmp_quo_ground(dmp_sub(h, g, v), x, v)
    f.reverse()
    if f and dmp_ground_LC(f, v + 1) < 0:
        f = dmp_neg(f, v + 1)
    return f


def dmp_heu_gcd(f, g, u):
    """Heuristic gcd of nonzero polynomials; returns ``(h, cff, cfg)``."""
    if not u:
        return dup_heu_gcd(f, g)
    cf = dmp_ground_content(f, u)
    cg = dmp_ground_content(g, u)
    c = igcd(cf, cg)
    if c != 1:
        f = dmp_quo_ground(f, c, u)
        g = dmp_quo_ground(g, c, u)
    f_norm = dmp_max_norm(f, u)
    g_norm = dmp_max_norm(g, u)
    B = 2 * min(f_norm, g_norm) + 29
    x = max(
        min(B, 99 * isqrt(B)),
        2 * min(f_norm // abs(dmp_ground_LC(f, u)), g_norm // abs(dmp_ground_LC(g, u))) + 2,
    )
    v = u - 1
    for _ in range(HEU_GCD_MAX):
        ff = dmp_eval(f, x, u)
        gg = dmp_eval(g, x, u)
        if ff and gg:
            h, cff, cfg = dmp_heu_gcd(ff, gg, v)
            h = _dmp_interpolate(h, x, v)
            h = dmp_ground_primitive(h, u)[1]
            try:
                cff_ = dmp_exquo(f, h, u)
                cfg_ = dmp_exquo(g, h, u)
                return dmp_mul_ground(h, c, u), cff_, cfg_
            except NotExact:
                pass
            cff = _dmp_interpolate(cff, x, v)
            try:
                h = dmp_exquo(f, cff, u)
                cfg_ = dmp_exquo(g, h, u)
                return dmp_mul_ground(h, c, u), cff, cfg_
            except (NotExact, ZeroDivisionError):
                pass
            cfg = _dmp_interpolate(cfg, x, v)
            try:
                h = dmp_exquo(g, cfg, u)
                cff_ = dmp_exquo(f, h, u)
                return dmp_mul_ground(h, c, u), cff_, cfg
            except (NotExact, ZeroDivisionError):
                pass
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


def dmp_prs_gcd(f, g, u):
    """Gcd by primitive parts and the subresultant PRS (fallback path)."""
    if not u:
        return dup_prs_gcd(f, g)
    v = u - 1
    cf, F = dmp_primitive(f, u)
    cg, G = dmp_primitive(g, u)
    c = dmp_gcd(cf, cg, v)
    if len(F) < len(G):
        F, G = G, F
    R, _ = dmp_inner_subresultants(F, G, u)
    h = R[-1]
    h = dmp_primitive(h, u)[1]
    return [dmp_mul(a, c, v) if a else [] for a in h]


def dmp_gcd(f, g, u):
    """Gcd over the integers, normalised to a positive ground LC."""
    if not u:
        return dup_gcd(f, g)
    if not f:
        return dmp_neg(g, u) if g and dmp_ground_LC(g, u) < 0 else g
    if not g:
        return dmp_neg(f, u) if dmp_ground_LC(f, u) < 0 else f
    if dmp_is_ground(f, u) or dmp_is_ground(g, u):
        return dmp_ground(igcd(dmp_ground_content(f, u), dmp_ground_content(g, u)), u)
    try:
        h = dmp_heu_gcd(f, g, u)[0]
    except HeuristicGCDFailed:
        h = dmp_prs_gcd(f, g, u)
    if dmp_ground_LC(h, u) < 0:
        h = dmp_neg(h, u)
    return h


def dmp_inner_subresultants(f, g, u):
    """Subresultant PRS of ``f`` and ``g`` in the main variable.

    Returns ``(R, S)``: the remainder sequence and the scalar
    subresultants, ``deg f >= deg g`` assumed.
    """
    n, m = len(f) - 1, len(g) - 1
    if not u:
        return _dup_inner_subresultants(f, g)
    v = u - 1
    if not f:
        return [], []
    if not g:
        return [f], [dmp_one(v)]
    R = [f, g]
    d = n - m
    h = dmp_prem(f, g, u)
    if (d + 1) % 2:
        h = dmp_neg(h, u)
    lc = g[0]
    c = dmp_pow(lc, d, v)
    S = [dmp_one(v), c]
    c = dmp_neg(c, v)
    while h:
        k = len(h) - 1
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = dmp_mul(dmp_neg(lc, v), dmp_pow(c, d, v), v)
        h = dmp_prem(f, g, u)
        h = dmp_strip([dmp_exquo(ch, b, v) if ch else [] for ch in h])
        lc = g[0]
        if d > 1:
            p = dmp_pow(dmp_neg(lc, v), d, v)
            q = dmp_pow(c, d - 1, v)
            c = dmp_exquo(p, q, v)
        else:
            c = dmp_neg(lc, v)
        S.append(dmp_neg(c, v))
    return R, S


def _dup_inner_subresultants(f, g):
    n, m = len(f) - 1, len(g) - 1
    if not f:
        return [], []
    if not g:
        return [f], [1]
    R = [f, g]
    d = n - m
    b = (-1) ** (d + 1)
    h = dup_prem(f, g)
    h = dup_mul_ground(h, b)
    lc = g[0]
    c = lc ** d
    S = [1, c]
    c = -c
    while h:
        k = len(h) - 1
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = dup_prem(f, g)
        h = [a // b for a in h]
        lc = g[0]
        if d > 1:
            c = (-lc) ** d // c ** (d - 1)
        else:
            c = -lc
        S.append(-c)
    return R, S


def dmp_resultant(f, g, u):
    """Resultant in the main variable, level ``u - 1`` (an int when ``u == 0``).

    Sign follows the Sylvester-determinant convention ``res(f, g)``.
    """
    v = u - 1
    if not f or not g:
        return 0 if not u else []
    n, m = len(f) - 1, len(g) - 1
    flip = False
    if n < m:
        f, g = g, f
        flip = (n * m) % 2 == 1
    R, S = dmp_inner_subresultants(f, g, u)
    if len(R[-1]) > 1:
        return 0 if not u else []
    r = S[-1]
    if flip:
        r = -r if not u else dmp_neg(r, v)
    return r


def dmp_discriminant(f, u):
    """Discriminant in the main variable: ``(-1)^(n(n-1)/2) res(f, f') / lc(f)``."""
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs positive degree")
    r = dmp_resultant(f, dmp_diff(f, u), u)
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    if not u:
        q, rem = divmod(r, f[0])
        if rem:
            raise NotExact
        return s * q
    v = u - 1
    r = dmp_exquo(r, f[0], v)
    return dmp_neg(r, v) if s < 0 else r


def dmp_sqf_list(f, u):
    """Yun square-free decomposition in the main variable.

    ``f`` must be primitive in its main variable.  Returns the nonconstant
    factors ``[(a_i, i)]`` with ``f = const * prod a_i**i``, each ``a_i``
    ground-primitive with positive ground LC.
    """
    if len(f) <= 1:
        return []
    df = dmp_diff(f, u)
    g = dmp_gcd(f, df, u)
    if len(g) <= 1:
        return [(dmp_ground_primitive(f, u)[1], 1)]
    a = dmp_exquo(f, g, u)
    b = dmp_exquo(df, g, u)
    c = dmp_sub(b, dmp_diff(a, u), u)
    out = []
    i = 1
    while len(a) > 1:
        d = dmp_gcd(a, c, u)
        if len(d) > 1:
            out.append((dmp_ground_primitive(d, u)[1], i))
        a = dmp_exquo(a, d, u)
        b = dmp_exquo(c, d, u) if c else []
        c = dmp_sub(b, dmp_diff(a, u), u)
        i += 1
    return out


def dmp_sqf_part(f, u):
    """Primitive square-free part in the main variable of a primitive ``f``."""
    if len(f) <= 2:
        return dmp_ground_primitive(f, u)[1]
    g = dmp_gcd(f, dmp_diff(f, u), u)
    if len(g) <= 1:
        return dmp_ground_primitive(f, u)[1]
    return dmp_ground_primitive(dmp_exquo(f, g, u), u)[1]


# ---------------------------------------------------------------------------
# conversion and helpers
# ---------------------------------------------------------------------------


def freeze(f):
    """Hashable nested-tuple copy of a dense polynomial."""
    return tuple(freeze(c) if isinstance(c, list) else c for c in f)
