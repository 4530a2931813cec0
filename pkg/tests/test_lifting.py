from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from incrcad.errors import InvalidInput
from incrcad.lifting import (
    NEW,
    OPEN,
    SECTION,
    UNCHANGED,
    LiftStats,
    lazard_valuation,
    lift_add,
    lift_base,
    lift_cell,
    lift_full,
    lift_setup_add,
)
from incrcad.poly import Polynomial, VarOrder
from incrcad.projection import new_entries, projection_polys_add
from incrcad.realroot import compare_rational, compare_roots, isolate

from conftest import F1, F2_EXTRA, F3_EXTRA, X2, X3, P, to_sympy

X1 = VarOrder(["x1"])


def table_of(texts, order=X2):
    return projection_polys_add(None, [P(t, order) for t in texts], order)


def n_real_roots(p: Polynomial, var_index: int, sample) -> int:
    """Distinct real roots of ``p`` after substituting the sample, via sympy."""
    expr, syms = to_sympy(p)
    for s, v in zip(syms, sample):
        expr = expr.subs(s, sp.Rational(v.numerator, v.denominator))
    return len(set(sp.Poly(expr, syms[var_index]).real_roots()))


# -- valuation ---------------------------------------------------------------------

def test_valuation_examples():
    g = lazard_valuation(P("x1^2 + x2^2 - 1"), [Fraction(-1, 2)])
    assert g == P("x2^2 - 3/4")
    assert [round(float(r), 4) for r in isolate(g)] == [-0.866, 0.866]
    assert lazard_valuation(P("(x1 - 1)*x2 + (x1 - 1)"), [Fraction(1)]) == P("x2 + 1")
    assert lazard_valuation(P("x1^3 + x2^2"), [Fraction(0)]) == P("x2^2")


def test_valuation_divides_repeatedly():
    f = P("(x1 - 2)^3*(x2 - 5) + (x1 - 2)^3*(x1 - 2)*x2^4")
    assert lazard_valuation(f, [Fraction(2)]) == P("x2 - 5")
    f3 = P("(x1 - 1)*(x2 + 1)*x3 + (x1 - 1)*(x2 + 1)", X3)
    assert lazard_valuation(f3, [Fraction(1), Fraction(-1)]) == P("x3 + 1", X3)


def test_valuation_errors():
    with pytest.raises(InvalidInput):
        lazard_valuation(P("0"), [Fraction(1)])
    with pytest.raises(InvalidInput):
        lazard_valuation(P("x1 + x2"), [])
    with pytest.raises(InvalidInput):
        lazard_valuation(P("x1 + x2"), [Fraction(1), Fraction(2)])


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=5),
       st.integers(0, 3))
def test_valuation_never_zero(coeffs, r, k):
    # (x1 - r)^k * (sum c_i x2^i + 1): substituting r would give zero for k > 0
    base = Polynomial(X2, {(0, i): Fraction(c) for i, c in enumerate(coeffs)})
    base = base + Polynomial(X2, {(0, 0): Fraction(1)})
    if base.is_zero():
        return
    lin = Polynomial(X2, {(1, 0): Fraction(1), (0, 0): -r})
    f = base
    for _ in range(k):
        f = f * lin
    g = lazard_valuation(f, [r])
    assert not g.is_zero()
    assert g == base or g.normalize() == base.normalize()


# -- base phase and open lifting ---------------------------------------------------

def test_lift_base_f1():
    cells = lift_base(table_of(F1))
    assert len(cells) == 9
    assert [c.kind for c in cells] == [OPEN, SECTION] * 4 + [OPEN]
    assert [c.sample[0] for c in cells if c.is_open][:3] == [-2, Fraction(-1, 2), Fraction(1, 2)]
    assert [c.index for c in cells] == [(i,) for i in range(1, 10)]
    # rational sections carry their sample, the irrational one carries none
    assert [c.sample for c in cells if c.kind == SECTION] == [(-1,), (0,), (), (1,)]


def test_lift_base_f3_and_empty():
    cells = lift_base(table_of(F1 + [F3_EXTRA]))
    assert len(cells) == 11 and sum(c.is_open for c in cells) == 6
    one = lift_base(projection_polys_add(None, [P("x2")], X2))
    assert len(one) == 1 and one[0].sample == (0,) and one[0].lower is None and one[0].upper is None


def test_lift_cell_examples():
    t = table_of(F1)
    base = lift_base(t)
    a7 = next(c for c in base if c.is_open and c.contains_coordinate(Fraction(9, 10)))
    probe = a7.__class__(1, a7.index, (Fraction(9, 10),), a7.lower, a7.upper)
    kids = lift_cell(probe, t.polys_in(2))
    assert len(kids) == 5
    bounds = [float(c.upper) for c in kids[:-1]]
    want = sorted([-(0.19 ** 0.5), 0.19 ** 0.5, -(0.729 ** 0.5), 0.729 ** 0.5])
    assert bounds == pytest.approx(want, abs=1e-4)
    assert all(c.is_open for c in kids)
    assert [c.index for c in kids] == [a7.index + (j,) for j in range(1, 6)]
    a1 = base[0]
    assert a1.sample == (-2,)
    assert len(lift_cell(a1, t.polys_in(2))) == 1
    with pytest.raises(InvalidInput):
        lift_cell(base[1], t.polys_in(2))


def test_lift_cell_f3_at_nine_tenths():
    t = table_of(F1 + [F3_EXTRA])
    c = next(c for c in lift_base(t) if c.is_open and c.contains_coordinate(Fraction(9, 10)))
    kids = lift_cell(c, t.polys_in(2))
    # sections plus sectors above the cell
    assert 2 * (len(kids) - 1) + 1 == 9


def test_lift_full_f1_stacks_against_sympy():
    t = table_of(F1)
    tree = lift_full(t)
    assert tree.stack_sizes(2) == [1, 3, 5, 5, 3]
    assert len(tree.open_cells(2)) == 17
    f1, f2 = P(F1[0]), P(F1[1])
    prod = f1 * f2
    for c in tree.open_cells(1):
        roots = n_real_roots(prod, 1, c.sample)
        assert len(tree.stacks(2)[c.index]) == roots + 1
    assert all(c.flag == UNCHANGED for lev in tree.levels for c in lev)


def test_lift_full_single_circle_and_empty():
    tree = lift_full(table_of(["x1^2 + x2^2 - 1"]))
    assert [c.sample[0] for c in tree.cells(1) if c.kind == SECTION] == [-1, 1]
    assert tree.stack_sizes(2) == [1, 3, 1]
    flat = lift_full(projection_polys_add(None, [P("x3", X3)], X3))
    assert [len(lev) for lev in flat.levels] == [1, 1, 2]


def test_children_lie_above_parent_sample():
    tree = lift_full(table_of(F1 + [F2_EXTRA]))
    for parent, kids in tree.stacks(2).items():
        p = tree.by_index()[parent]
        for k in kids:
            assert k.sample[:1] == p.sample
            assert k.contains_coordinate(k.sample[-1])
        for a, b in zip(kids, kids[1:]):
            assert compare_roots(a.upper, b.lower) == 0


# -- incremental lifting -----------------------------------------------------------

def _incremental(old_texts, extra, order=X2):
    old_t = table_of(old_texts, order)
    old = lift_full(old_t)
    full_t = projection_polys_add(old_t, [P(extra, order)])
    return old_t, old, full_t, new_entries(old_t, full_t)


def test_lift_setup_add_f4_splits_one_cell():
    _, old, full_t, ne = _incremental(F1, F3_EXTRA)
    new_cells, unchanged, req = lift_setup_add(ne, old, full_t)
    assert [c.kind for c in new_cells] == [OPEN, SECTION, OPEN]
    assert all(c.flag == NEW for c in new_cells)
    assert new_cells[0].lower.value == -1 and new_cells[2].upper.value == 0
    assert len(unchanged) == 8
    assert old.cells(1)[2] not in unchanged
    # among kept open cells only x1 = -2 gives f4 real roots (x2^2 = 8)
    assert req.indices() == [(1,)]
    assert len(req.entries[0][1]) == 2


def test_lift_setup_add_f3_requests_match_oracle():
    _, old, full_t, ne = _incremental(F1, F2_EXTRA)
    new_cells, unchanged, req = lift_setup_add(ne, old, full_t)
    minus_one = old.cells(1)[1]
    assert minus_one.kind == SECTION and minus_one in unchanged
    assert minus_one.index not in req.indices()
    # +-alpha2 split two open cells into five
    assert len(new_cells) == 6 and sum(c.is_open for c in new_cells) == 4
    f1, f2 = P(F1[0]), P(F1[1])
    want = []
    for c in unchanged:
        if c.is_open:
            s = c.sample[0]
            # x2 - x1 contributes the root x2 = s, new unless an old polynomial vanishes there
            if f1.evaluate([s, s]) != 0 and f2.evaluate([s, s]) != 0:
                want.append(c.index)
    assert req.indices() == want


def test_lift_setup_add_no_entries():
    old_t = table_of(F1)
    old = lift_full(old_t)
    new_cells, unchanged, req = lift_setup_add(None, old, old_t)
    assert new_cells == [] and list(unchanged) == list(old.cells(1)) and req.indices() == []


def test_lift_add_matches_full_for_worked_examples():
    for extra in (F2_EXTRA, F3_EXTRA):
        _, old, full_t, ne = _incremental(F1, extra)
        stats = LiftStats()
        inc = lift_add(ne, old, full_t, stats)
        scratch = lift_full(full_t)
        assert [len(lev) for lev in inc.levels] == [len(lev) for lev in scratch.levels]
        for a, b in zip(inc.levels, scratch.levels):
            for x, y in zip(a, b):
                assert x.index == y.index and x.kind == y.kind
                for u, v in ((x.lower, y.lower), (x.upper, y.upper)):
                    assert (u is None) == (v is None)
                    if u is not None:
                        assert compare_roots(u, v) == 0
        assert stats.kept_cells > 0


def test_lift_add_f4_relifts_stack_over_minus_half():
    _, old, full_t, ne = _incremental(F1, F3_EXTRA)
    stats = LiftStats()
    inc = lift_add(ne, old, full_t, stats)
    st = inc.stacks(2)
    c = next(c for c in inc.open_cells(1) if c.contains_coordinate(Fraction(-1, 2)))
    assert c.flag == NEW
    kids = st[c.index]
    # f1 gives +-sqrt(3)/2, f4 gives +-sqrt(1/8), f2 nothing
    assert len(kids) == 5 and all(k.flag == NEW for k in kids)
    roots = sorted(float(k.upper) for k in kids[:-1])
    lo = c.sample[0]
    assert any(abs(r - float(-lo ** 3) ** 0.5) < 1e-4 for r in roots)
    # the leftmost base cell survives but f4 has roots over -2, so its stack is re-lifted
    assert inc.cells(1)[0].flag == UNCHANGED
    assert [k.flag for k in st[(1,)]] == [NEW] * 3
    # over 2 f4 has no real roots: kept as is
    assert [k.flag for k in st[(11,)]] == [UNCHANGED] * 3
    assert stats.relifted_stacks == 1


def test_lift_add_without_new_entries_returns_old():
    old_t = table_of(F1)
    old = lift_full(old_t)
    assert lift_add(None, old, old_t) is old


@pytest.mark.parametrize("extra", ["x3 - x1*x2", "x3^2 - x2", "x1*x3 + 1"])
def test_lift_add_trivariate(extra):
    texts = ["x1^2 + x2^2 + x3^2 - 4", "x2 - x1^2"]
    _, old, full_t, ne = _incremental(texts, extra, X3)
    inc = lift_add(ne, old, full_t)
    scratch = lift_full(full_t)
    assert [len(l) for l in inc.levels] == [len(l) for l in scratch.levels]
    for a, b in zip(inc.levels, scratch.levels):
        assert [c.index for c in a] == [c.index for c in b]


def test_stack_size_invariant():
    # every open parent has 2r+1 cells above it counting sections; only the r+1 open ones are kept
    t = table_of(F1 + [F2_EXTRA, F3_EXTRA])
    tree = lift_full(t)
    prod = P(F1[0]) * P(F1[1]) * P(F2_EXTRA) * P(F3_EXTRA)
    for c in tree.open_cells(1):
        kids = tree.stacks(2)[c.index]
        assert len(kids) == n_real_roots(prod, 1, c.sample) + 1
        for k in kids:
            assert compare_rational(k.sample[1], k.upper) < 0 if k.upper else True
