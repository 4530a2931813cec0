from fractions import Fraction

import pytest

from incrcad.bench import random_pairs
from incrcad.errors import EmptyInput, InvalidInput
from incrcad.poly import PolySet, VarOrder, gcd_free_basis
from incrcad.projection import (
    full_projection_count,
    lazard_coeffs,
    new_entries,
    projection_add,
    projection_polys_add,
)
from incrcad.realroot import compare_roots, isolate, merge_roots

from conftest import F1, F2_EXTRA, F3_EXTRA, X2, P


def base_roots(table):
    return merge_roots([isolate(p) for p in table.univariate()])


def approx(rs):
    return [float(r) for r in rs]


@pytest.fixture(scope="module")
def f1_table():
    return projection_polys_add(None, [P(t) for t in F1], X2)


def test_lazard_coeffs_examples():
    assert lazard_coeffs(P("x1^2 + x2^2 - 1"), "x2") == PolySet([P("x1^2 - 1")])
    assert lazard_coeffs(P("x1^3 - x2^2"), "x2") == PolySet([P("x1^3")])
    assert lazard_coeffs(P("x2 - x1"), "x2") == PolySet([P("x1")])
    with pytest.raises(InvalidInput):
        lazard_coeffs(P("x1"), "x2")


def test_projection_add_cross_block():
    f1, f2, f3 = P(F1[0]), P(F1[1]), P(F2_EXTRA)
    out = projection_add([f3], [f1, f2], "x2")
    assert P("x1") in out
    assert P("2*x1^2 - 1") in out
    assert P("x1^3 - x1^2") in out
    old_roots = base_roots(projection_polys_add(None, [f1, f2], X2))
    fresh = merge_roots([isolate(p) for p in out])
    new = [r for r in fresh if all(compare_roots(r, s) != 0 for s in old_roots)]
    assert len(new) == 2
    assert all(Fraction("0.70710") < abs(Fraction(float(r))) < Fraction("0.70711") for r in new)


def test_projection_add_from_scratch_and_empty():
    f1, f2 = P(F1[0]), P(F1[1])
    out = projection_add([f1, f2], [], "x2")
    assert P("(x1^3 + x1^2 - 1)^2") in out
    rs = merge_roots([isolate(p) for p in out])
    assert len(rs) == 4
    assert projection_add([], [f1], "x2") == PolySet()


def test_scratch_operator_matches_table(f1_table):
    raw = projection_add([P(t) for t in F1], [], "x2")
    assert gcd_free_basis(raw, "x1") == f1_table.level(1)


def test_f1_table(f1_table):
    assert f1_table.level(0) == PolySet([P(t) for t in F1])
    assert f1_table.level(1) == PolySet([P("x1^2 - 1"), P("x1^3 + x1^2 - 1"), P("x1")])
    rs = base_roots(f1_table)
    assert [r.value for r in rs if r.is_rational] == [-1, 0, 1]
    alpha = [r for r in rs if not r.is_rational]
    assert len(alpha) == 1 and 0.75487 < float(alpha[0]) < 0.75488
    assert all(prov for lev in f1_table.levels for prov in lev.provenance)


def test_add_f3_equals_scratch_f2(f1_table):
    inc = projection_polys_add(f1_table, [P(F2_EXTRA)])
    scratch = projection_polys_add(None, [P(t) for t in F1 + [F2_EXTRA]], X2)
    assert inc.same_sets(scratch)
    assert inc.input_ids == ("f1", "f2", "f3")
    # only projections of the new material were computed
    assert inc.ops - f1_table.ops < scratch.ops
    new = new_entries(f1_table, inc)
    assert P(F2_EXTRA) in new[0]
    assert P("2*x1^2 - 1") in new[1]
    added = [r for r in base_roots(inc) if all(compare_roots(r, s) for s in base_roots(f1_table))]
    assert approx(added) == pytest.approx([-0.7071068, 0.7071068])


def test_add_f4_gains_minus_alpha1(f1_table):
    inc = projection_polys_add(f1_table, [P(F3_EXTRA)])
    old = base_roots(f1_table)
    added = [r for r in base_roots(inc) if all(compare_roots(r, s) for s in old)]
    assert len(added) == 1
    assert compare_roots(added[0], old[2].negate()) == 0


def test_errors():
    with pytest.raises(EmptyInput):
        projection_polys_add(None, [], X2)
    with pytest.raises(InvalidInput):
        projection_polys_add(None, [P("x1", VarOrder(["x1"]))], X2)


def _levels_clean(table):
    n = table.n
    for i, lev in enumerate(table.levels):
        for p in lev.polys:
            assert p.level() <= n - i
            assert not p.is_constant()


@pytest.mark.parametrize("dims,count", [(2, 100), (3, 50)])
def test_incremental_equals_scratch_on_random_pairs(dims, count):
    order, pairs = random_pairs(dims, count, seed=1)
    for p, q in pairs:
        base = projection_polys_add(None, [p], order)
        inc = projection_polys_add(base, [q])
        scratch = projection_polys_add(None, [p, q], order)
        assert inc.same_sets(scratch), (str(p), str(q))
        _levels_clean(inc)
        # root-set monotonicity on the univariate level
        before, after = base_roots(base), base_roots(inc)
        for r in before:
            assert any(compare_roots(r, s) == 0 for s in after)
        assert inc.ops - base.ops <= full_projection_count(inc)


def test_order_of_additions_does_not_matter():
    polys = [P(F1[0]), P(F1[1]), P(F2_EXTRA), P(F3_EXTRA)]
    a = projection_polys_add(None, polys[:1], X2)
    for p in polys[1:]:
        a = projection_polys_add(a, [p])
    b = projection_polys_add(None, polys[2:], X2)
    b = projection_polys_add(b, polys[:2])
    assert a.same_sets(b)
