import io
import json
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from incrcad import engine
from incrcad.engine import Boundary, add, build, dumps, load, loads, locate, save, sign_vector
from incrcad.errors import (
    DimensionMismatch,
    DuplicateInput,
    EmptyInput,
    SchemaError,
    StaleCell,
    UnknownVariable,
    ZeroPolynomial,
)
from incrcad.lifting import SECTION
from incrcad.realroot import IsolatedRoot

from conftest import F1, F2_EXTRA, F3_EXTRA, P


@pytest.fixture(scope="module")
def s1():
    return build(F1, ["x1", "x2"])


def base_points(state):
    return [float(c.lower) for c in state.tree.cells(1) if c.kind == SECTION]


def test_build_f1(s1):
    assert len(base_points(s1)) == 4
    assert len(s1.tree.open_cells(2)) == 17
    assert [pid for pid, _ in s1.inputs] == ["f1", "f2"]
    assert s1.meta["incremental_projection_ops"] <= s1.meta["full_projection_ops"]


def test_build_small_cases():
    s = build(["x1 - 1"], ["x1"])
    assert len(s.tree.cells(1)) == 3 and len(s.tree.open_cells(1)) == 2
    s2 = build(F1 + [F2_EXTRA], ["x1", "x2"])
    assert base_points(s2) == pytest.approx([-1, -0.7071068, 0, 0.7071068, 0.7548777, 1])


def test_build_errors():
    with pytest.raises(EmptyInput):
        build([], ["x1"])
    with pytest.raises(ZeroPolynomial):
        build(["x1 - x1"], ["x1"])
    with pytest.raises(UnknownVariable):
        build(["x1 + x3"], ["x1", "x2"])
    with pytest.raises(DuplicateInput):
        build(["x1 + x2", "2*x1 + 2*x2"], ["x1", "x2"])


def test_build_is_deterministic(s1):
    assert dumps(build(F1, ["x1", "x2"])) == dumps(s1)


@pytest.mark.parametrize("extra", [F2_EXTRA, F3_EXTRA])
def test_add_equals_build(s1, extra):
    inc = add(s1, extra)
    scratch = build(F1 + [extra], ["x1", "x2"])
    assert inc.table.same_sets(scratch.table)
    assert engine.compare_trees(inc.tree, scratch.tree, inc.table, scratch.table).empty
    assert engine.recompute_oracle(inc).empty
    assert inc.meta["incremental_projection_ops"] <= inc.meta["full_projection_ops"]


def test_add_f4_meta(s1):
    inc = add(s1, F3_EXTRA)
    assert inc.meta["new_base_points"] == 1
    assert len(inc.tree.cells(1)) == 11
    assert inc.meta["kept_cells"] > 0


def test_add_duplicate_and_errors(s1):
    assert add(s1, F1[0]) is s1
    assert add(s1, "-3*x1^2 - 3*x2^2 + 3") is s1
    with pytest.raises(DuplicateInput):
        add(s1, F1[0], strict=True)
    with pytest.raises(ZeroPolynomial):
        add(s1, "0")
    with pytest.raises(UnknownVariable):
        add(s1, "x3 - 1")


def test_add_does_not_mutate(s1):
    before = dumps(s1)
    add(s1, F3_EXTRA)
    assert dumps(s1) == before


def test_locate_examples(s1):
    assert isinstance(locate(s1, [0, 0]), Boundary)
    c = locate(s1, [-2, 0])
    assert c.index[0] == 1 and len(s1.tree.stacks(2)[(1,)]) == 1
    c = locate(s1, [Fraction(1, 2), 0])
    stack = s1.tree.stacks(2)[c.index[:1]]
    assert len(stack) == 5 and c == stack[2]
    # on the circle above x1 = 1/2
    hit = locate(s1, [Fraction(3, 5), Fraction(4, 5)])
    assert isinstance(hit, Boundary) and hit.level == 2
    with pytest.raises(DimensionMismatch):
        locate(s1, [0])


def test_sign_vector_examples(s1):
    c = locate(s1, [-2, 0])
    assert sign_vector(s1, c) == (1, -1)
    mid = locate(s1, [Fraction(1, 2), 0])
    assert sign_vector(s1, mid) == (-1, 1)
    for c in s1.tree.open_cells(2):
        assert all(s in (1, -1) for s in sign_vector(s1, c))
    stale = replace(c, sample=(Fraction(99), Fraction(0)))
    with pytest.raises(StaleCell):
        sign_vector(s1, stale)


def test_sign_vector_agrees_with_point_evaluation(s1):
    rng = random.Random(3)
    polys = [p for _, p in s1.inputs]
    for _ in range(200):
        pt = [Fraction(rng.randint(-300, 300), 97), Fraction(rng.randint(-300, 300), 89)]
        hit = locate(s1, pt)
        vals = [p.evaluate(pt) for p in polys]
        if isinstance(hit, Boundary):
            continue
        assert all(v != 0 for v in vals)
        assert sign_vector(s1, hit) == tuple((v > 0) - (v < 0) for v in vals)


# -- persistence -----------------------------------------------------------------

def test_round_trip(s1, tmp_path):
    path = tmp_path / "s.json"
    save(s1, str(path))
    back = load(str(path))
    assert back == s1
    assert dumps(back) == dumps(s1)
    buf = io.StringIO()
    save(add(s1, F3_EXTRA), buf)
    buf.seek(0)
    assert dumps(load(buf)) == buf.getvalue()


def test_truncated_document(s1):
    doc = json.loads(dumps(s1))
    del doc["table"]
    with pytest.raises(SchemaError, match="table"):
        loads(json.dumps(doc))
    with pytest.raises(SchemaError):
        loads(dumps(s1)[:200])


def test_zero_denominator(s1):
    doc = json.loads(dumps(s1))
    doc["tree"]["levels"][0][0]["sample"] = ["1/0"]
    with pytest.raises(SchemaError, match="sample"):
        loads(json.dumps(doc))


def test_bad_version_and_kind(s1):
    doc = json.loads(dumps(s1))
    doc["format_version"] = 99
    with pytest.raises(SchemaError, match="format_version"):
        loads(json.dumps(doc))
    doc = json.loads(dumps(s1))
    doc["tree"]["levels"][1][0]["kind"] = "section"
    with pytest.raises(SchemaError, match="kind"):
        loads(json.dumps(doc))


# -- oracles ---------------------------------------------------------------------

def test_fresh_state_oracle_is_empty(s1):
    assert engine.recompute_oracle(s1).empty
    assert engine.check_cylindricity(s1.tree) == []
    assert engine.check_sign_invariance(s1) == []


def test_tampered_tree_is_detected(s1):
    levels = [list(lev) for lev in s1.tree.levels]
    victim = levels[1][4]
    other = s1.tree.cells(2)[0]
    levels[1][4] = replace(victim, upper=IsolatedRoot.rational(Fraction(7)))
    bad = replace(s1, tree=type(s1.tree)(tuple(tuple(l) for l in levels)))
    diff = engine.recompute_oracle(bad)
    assert not diff.empty
    assert any(str(victim.index) in e for e in diff.entries)
    assert not any(str(other.index) in e for e in diff.entries)


def test_corrupted_sample_fails_sign_check(s1):
    levels = [list(lev) for lev in s1.tree.levels]
    j, victim = next((j, c) for j, c in enumerate(levels[1]) if c.lower is not None and c.upper is not None)
    # push the sample of a bounded cell far above its stack
    levels[1][j] = replace(victim, sample=(victim.sample[0], Fraction(10)))
    bad = replace(s1, tree=type(s1.tree)(tuple(tuple(l) for l in levels)))
    problems = engine.check_sign_invariance(bad)
    assert problems and any(str(victim.index) in p for p in problems)


def test_bound_interleaving_is_checked(s1):
    levels = [list(lev) for lev in s1.tree.levels]
    a, b = levels[0][0], levels[0][2]
    levels[0][0], levels[0][2] = replace(b, index=a.index), replace(a, index=b.index)
    bad = type(s1.tree)(tuple(tuple(l) for l in levels))
    assert engine.check_cylindricity(bad)


def test_path_independence():
    base = ["x1^2 + x2^2 - 1"]
    extras = [F1[1], F2_EXTRA, F3_EXTRA]
    ref = build(base + extras, ["x1", "x2"])
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        s = build(base, ["x1", "x2"])
        for i in order:
            s = add(s, extras[i])
        assert s.table.same_sets(ref.table)
        assert engine.compare_trees(s.tree, ref.tree, s.table, ref.table).empty


_small = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-5, 5)), min_size=1, max_size=4)


def _poly_text(terms):
    return " + ".join(f"({c})*x1^{a}*x2^{b}" for a, b, c in terms)


@settings(max_examples=25)
@given(_small, _small)
def test_add_equals_build_property(t1, t2):
    p, q = P(_poly_text(t1)), P(_poly_text(t2))
    if p.is_zero() or q.is_zero() or p.is_constant() or q.is_constant():
        return
    s = build([p], ["x1", "x2"])
    if engine.is_duplicate(s, q):
        return
    inc = add(s, q)
    assert engine.recompute_oracle(inc).empty
    assert engine.check_sign_invariance(inc, probes=3) == []
    assert inc.meta["incremental_projection_ops"] <= inc.meta["full_projection_ops"]
