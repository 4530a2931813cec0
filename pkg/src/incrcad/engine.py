"""Build and incrementally refine Open CAD states; persistence and checks.

A :class:`CadState` bundles the variable order, the named input
polynomials, their projection table and the lifted tree.  States are
immutable; :func:`add` returns a new state.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateInput,
    EmptyInput,
    InvalidInput,
    SchemaError,
    StaleCell,
    UnknownVariable,
    ZeroPolynomial,
)
from .lifting import (
    NEW,
    OPEN,
    SECTION,
    UNCHANGED,
    CadTree,
    Cell,
    LiftStats,
    lift_add,
    lift_full,
    stack_roots,
)
from .poly import Polynomial, VarOrder, _dense_perm, format_rational, normalize, parse_polynomial, parse_rational
from .projection import LevelEntry, ProjectionTable, full_projection_count, new_entries, projection_polys_add
from .realroot import (
    IsolatedRoot,
    compare_rational,
    compare_roots,
    refine,
    simplest_between,
)

__all__ = [
    "FORMAT_VERSION",
    "CadState",
    "Boundary",
    "CellSetDiff",
    "build",
    "add",
    "locate",
    "sign_vector",
    "save",
    "load",
    "dumps",
    "loads",
    "recompute_oracle",
    "compare_trees",
    "check_cylindricity",
    "check_sign_invariance",
]

FORMAT_VERSION = 1


@dataclass(frozen=True)
class CadState:
    order: VarOrder
    inputs: tuple[tuple[str, Polynomial], ...]
    table: ProjectionTable
    tree: CadTree
    meta: dict = field(default_factory=dict, compare=False)
    # wall-clock phase timings of the operation that produced this state; never persisted
    timings: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def polys(self) -> tuple[Polynomial, ...]:
        return tuple(p for _, p in self.inputs)


@dataclass(frozen=True)
class Boundary:
    """A point on a cell wall: ``level`` is the coordinate at which it hits a root."""

    level: int
    index: tuple[int, ...]
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class CellSetDiff:
    entries: tuple[str, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def __str__(self):
        return "\n".join(self.entries) if self.entries else "no differences"


# ---------------------------------------------------------------------------
# build / add
# ---------------------------------------------------------------------------


def _coerce_order(order) -> VarOrder:
    return order if isinstance(order, VarOrder) else VarOrder(order)


def _coerce_poly(p, order: VarOrder) -> Polynomial:
    if isinstance(p, str):
        p = parse_polynomial(p, order)
    if not isinstance(p, Polynomial):
        raise InvalidInput(f"not a polynomial: {p!r}")
    if p.order != order:
        if not set(p.order.names[i] for i in p.variables()) <= set(order.names):
            raise UnknownVariable(f"{p} uses variables outside {list(order.names)}")
        p = parse_polynomial(str(p), order)
    if p.is_zero():
        raise ZeroPolynomial("input polynomial is zero")
    return p


def _tree_counts(tree: CadTree) -> list[dict]:
    return [
        {"cells": len(lev), "open": sum(1 for c in lev if c.is_open),
         "new": sum(1 for c in lev if c.flag == NEW)}
        for lev in tree.levels
    ]


def build(polys: Iterable, order) -> CadState:
    """Full projection and lift of ``polys`` under ``order``."""
    order = _coerce_order(order)
    polys = [_coerce_poly(p, order) for p in polys]
    if not polys:
        raise EmptyInput("no input polynomials")
    seen = set()
    for p in polys:
        key = normalize(p)
        if key in seen:
            raise DuplicateInput(f"duplicate input {p}")
        seen.add(key)
    t0 = time.perf_counter()
    table = projection_polys_add(None, polys, order)
    t1 = time.perf_counter()
    stats = LiftStats()
    tree = lift_full(table, UNCHANGED, stats)
    t2 = time.perf_counter()
    inputs = tuple(zip(table.input_ids, polys))
    meta = {
        "operation": "build",
        "projection_ops": table.ops,
        "full_projection_ops": full_projection_count(table),
        "incremental_projection_ops": table.ops,
        "lifted_cells": stats.lifted_cells,
        "kept_cells": 0,
        "relifted_stacks": 0,
        "levels": _tree_counts(tree),
    }
    return CadState(order, inputs, table, tree, meta,
                    {"projection": t1 - t0, "lifting": t2 - t1, "total": t2 - t0})


def is_duplicate(state: CadState, g: Polynomial) -> bool:
    key = normalize(g)
    return any(normalize(p) == key for _, p in state.inputs)


def add(state: CadState, g, strict: bool = False) -> CadState:
    """Incrementally add ``g``.

    A polynomial already present (up to a constant factor) leaves the state
    unchanged, or raises :class:`DuplicateInput` when ``strict``.
    """
    g = _coerce_poly(g, state.order)
    if is_duplicate(state, g):
        if strict:
            raise DuplicateInput(f"{g} is already an input")
        return state
    t0 = time.perf_counter()
    table = projection_polys_add(state.table, [g])
    t1 = time.perf_counter()
    entries = new_entries(state.table, table)
    stats = LiftStats()
    tree = lift_add(entries, state.tree, table, stats)
    t2 = time.perf_counter()
    base_old = sum(1 for c in state.tree.levels[0] if c.kind == SECTION)
    base_new = sum(1 for c in tree.levels[0] if c.kind == SECTION)
    meta = {
        "operation": "add",
        "projection_ops": table.ops,
        "full_projection_ops": full_projection_count(table),
        "incremental_projection_ops": table.ops - state.table.ops,
        "lifted_cells": stats.lifted_cells,
        "kept_cells": stats.kept_cells,
        "relifted_stacks": stats.relifted_stacks,
        "new_base_points": base_new - base_old,
        "levels": _tree_counts(tree),
    }
    inputs = state.inputs + ((table.input_ids[-1], g),)
    return CadState(state.order, inputs, table, tree, meta,
                    {"projection": t1 - t0, "lifting": t2 - t1, "total": t2 - t0})


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def _locate_prefix(tree: CadTree, table: ProjectionTable, point: Sequence[Fraction]):
    """Cell of level ``len(point)`` containing ``point``, or a :class:`Boundary`."""
    point = tuple(Fraction(x) for x in point)
    base = tree.levels[0]
    x = point[0]
    cell = None
    for c in base:
        if c.kind == SECTION:
            if compare_rational(x, c.lower) == 0:
                return Boundary(1, c.index, point)
        elif c.contains_coordinate(x):
            cell = c
    if cell is None:
        raise StaleCell("point not covered by the base decomposition")
    for k in range(2, len(point) + 1):
        stacks = tree.stacks(k)
        children = stacks.get(cell.index, [])
        prefix = point[: k - 1]
        xk = point[k - 1]
        if prefix == cell.sample:
            roots = [c.upper for c in children[:-1]]
        else:
            roots = list(stack_roots(table.dense_in(k), prefix))
            if len(roots) != len(children) - 1:
                raise StaleCell(f"stack above {cell.index} does not match the projection table")
        j = 0
        for r in roots:
            s = compare_rational(xk, r)
            if s == 0:
                return Boundary(k, cell.index, point)
            if s > 0:
                j += 1
            else:
                break
        cell = children[j]
    return cell


def locate(state: CadState, point: Sequence) -> Cell | Boundary:
    """The open cell containing ``point``, or a :class:`Boundary` when it lies on a wall."""
    if len(point) != len(state.order):
        raise DimensionMismatch(f"point has {len(point)} coordinates, expected {len(state.order)}")
    return _locate_prefix(state.tree, state.table, point)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def sign_vector(state: CadState, cell: Cell) -> tuple[int, ...]:
    """Signs of the inputs, in input order, at the sample of a full-dimensional cell."""
    live = state.tree.by_index().get(cell.index)
    if live is None or live != cell:
        raise StaleCell(f"cell {cell.index} is not part of this state")
    if cell.level != len(state.order):
        raise InvalidInput("sign vectors are defined for full-dimensional cells")
    return tuple(p.sign_at(cell.sample) for _, p in state.inputs)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _bounds_equal(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return compare_roots(a, b) == 0


def compare_trees(a: CadTree, b: CadTree, table_a: ProjectionTable | None = None,
                  table_b: ProjectionTable | None = None) -> CellSetDiff:
    """Cell-set differences between two trees.

    Cells are matched by index path.  With equal samples the bounds must be
    identical roots; with different samples each sample must lie in the
    partner cell (located through the projection tables).
    """
    out = []
    if a.n != b.n:
        return CellSetDiff((f"dimension {a.n} != {b.n}",))
    for k in range(1, a.n + 1):
        ia = {c.index: c for c in a.levels[k - 1]}
        ib = {c.index: c for c in b.levels[k - 1]}
        for idx in sorted(set(ia) - set(ib)):
            out.append(f"level {k}: cell {idx} only in first tree")
        for idx in sorted(set(ib) - set(ia)):
            out.append(f"level {k}: cell {idx} only in second tree")
        for idx in sorted(set(ia) & set(ib)):
            ca, cb = ia[idx], ib[idx]
            if ca.kind != cb.kind:
                out.append(f"level {k}: cell {idx} kind {ca.kind} != {cb.kind}")
                continue
            if ca.sample[:-1] == cb.sample[:-1] or k == 1:
                if not (_bounds_equal(ca.lower, cb.lower) and _bounds_equal(ca.upper, cb.upper)):
                    out.append(f"level {k}: cell {idx} bounds differ")
                    continue
                if ca.sample != cb.sample and ca.kind == OPEN:
                    if not (cb.contains_coordinate(ca.sample[-1]) and ca.contains_coordinate(cb.sample[-1])):
                        out.append(f"level {k}: cell {idx} samples fall outside the partner cell")
                continue
            if table_a is None or table_b is None:
                out.append(f"level {k}: cell {idx} has different parent samples and no table to compare")
                continue
            for tree, table, s, name in ((b, table_b, ca.sample, "second"), (a, table_a, cb.sample, "first")):
                try:
                    hit = _locate_prefix(tree, table, s)
                except StaleCell as e:
                    out.append(f"level {k}: cell {idx}: {e}")
                    continue
                if isinstance(hit, Boundary) or hit.index != idx:
                    where = hit.index if isinstance(hit, Cell) else "a boundary"
                    out.append(f"level {k}: sample of cell {idx} lies in {where} of the {name} tree")
    return CellSetDiff(tuple(out))


def recompute_oracle(state: CadState) -> CellSetDiff:
    """Rebuild from the inputs and compare projection sets and cell sets."""
    fresh = build([p for _, p in state.inputs], state.order)
    out = []
    for i, (la, lb) in enumerate(zip(state.table.levels, fresh.table.levels)):
        if la.polyset() != lb.polyset():
            out.append(f"projection level {i} ({la.variable}) differs from recomputation")
    out.extend(compare_trees(state.tree, fresh.tree, state.table, fresh.table).entries)
    return CellSetDiff(tuple(out))


def check_cylindricity(tree: CadTree) -> list[str]:
    """Structural cylindricity and stack-order violations."""
    bad = []
    base = tree.levels[0]
    for j, c in enumerate(base):
        if c.index != (j + 1,):
            bad.append(f"base cell {c.index} out of sequence")
        want = OPEN if j % 2 == 0 else SECTION
        if c.kind != want:
            bad.append(f"base cell {c.index} should be {want}")
    if base and (base[0].lower is not None or base[-1].upper is not None):
        bad.append("base decomposition does not cover the line")
    for a, b in zip(base, base[1:]):
        if a.upper is None or b.lower is None or compare_roots(a.upper, b.lower) != 0:
            bad.append(f"base cells {a.index} and {b.index} are not adjacent")
    prev = {c.index: c for c in base}
    bad.extend(_check_samples(base))
    for k in range(2, tree.n + 1):
        stacks = tree.stacks(k)
        for pidx, ch in stacks.items():
            p = prev.get(pidx)
            if p is None:
                bad.append(f"level {k}: parent {pidx} missing")
                continue
            if not p.is_open:
                bad.append(f"level {k}: parent {pidx} is not open")
            for j, c in enumerate(ch):
                if c.index != pidx + (j + 1,):
                    bad.append(f"level {k}: cell {c.index} out of sequence")
                if c.sample[:-1] != p.sample:
                    bad.append(f"level {k}: cell {c.index} sample does not extend its parent's")
            if ch[0].lower is not None or ch[-1].upper is not None:
                bad.append(f"level {k}: stack over {pidx} does not cover the fibre")
            for a, b in zip(ch, ch[1:]):
                if a.upper is None or b.lower is None or compare_roots(a.upper, b.lower) != 0:
                    bad.append(f"level {k}: cells {a.index}, {b.index} not adjacent")
                if a.lower is not None and compare_roots(a.lower, a.upper) >= 0:
                    bad.append(f"level {k}: cell {a.index} is empty")
            bad.extend(_check_samples(ch))
        for c in tree.levels[k - 2]:
            if c.is_open and c.index not in stacks:
                bad.append(f"level {k - 1}: open cell {c.index} has no stack")
        prev = {c.index: c for c in tree.levels[k - 1]}
    return bad


def _check_samples(cells) -> list[str]:
    bad = []
    for c in cells:
        if c.is_open and not c.contains_coordinate(c.sample[-1]):
            bad.append(f"cell {c.index}: sample outside its bounds")
    return bad


def _rational_in(rng: random.Random, lo: IsolatedRoot | None, hi: IsolatedRoot | None, anchor: Fraction):
    """Pseudo-random rational strictly between two roots (``None`` = infinite).

    A random subinterval is drawn and its simplest rational taken, which
    keeps denominators small for the stack computations at the probe.
    """
    if lo is not None and hi is not None:
        while True:
            a = lo.hi
            b = hi.lo
            if a < b:
                break
            lo = refine(lo, lo.width / 64) if not lo.is_rational else lo
            hi = refine(hi, hi.width / 64) if not hi.is_rational else hi
    elif lo is None and hi is None:
        a, b = anchor - 5, anchor + 5
    elif lo is None:
        b = hi.lo
        a = b - 5
    else:
        a = lo.hi
        b = a + 5
    t1, t2 = sorted(rng.sample(range(1, 1000), 2))
    return simplest_between(a + (b - a) * Fraction(t1, 1000), a + (b - a) * Fraction(t2, 1000))


def probe_points(tree: CadTree, table: ProjectionTable, cell: Cell, count: int = 10, seed: int = 0,
                 cache: dict | None = None):
    """Deterministic pseudo-random rational points inside an open cell.

    The ``j``-th probe of a cell extends the ``j``-th probe of its parent, so
    siblings share the stack computation at each parent probe; ``cache``
    carries those stacks and probes across calls.
    """
    if cache is None:
        cache = {}
    key = ("probes", cell.index, count, seed)
    if key in cache:
        return cache[key]
    rng = random.Random(f"{seed}:{cell.index}")
    if cell.level == 1:
        pts = [(_rational_in(rng, cell.lower, cell.upper, cell.sample[0]),) for _ in range(count)]
        cache[key] = pts
        return pts
    k = cell.level
    parent = tree.by_index()[cell.parent_index]
    nroots = len(tree.stacks(k)[cell.parent_index]) - 1
    j = cell.index[-1] - 1
    pts = []
    for prefix in probe_points(tree, table, parent, count, seed, cache):
        rkey = ("roots", prefix)
        if rkey not in cache:
            cache[rkey] = list(stack_roots(table.dense_in(k), prefix))
        roots = cache[rkey]
        if len(roots) != nroots:
            raise AssertionError(
                f"root count changes inside cell {cell.parent_index}: {nroots} at sample, {len(roots)} at {prefix}")
        lo = roots[j - 1] if j > 0 else None
        hi = roots[j] if j < len(roots) else None
        pts.append(prefix + (_rational_in(rng, lo, hi, cell.sample[-1]),))
    cache[key] = pts
    return pts


def check_sign_invariance(state: CadState, probes: int = 10, seed: int = 0) -> list[str]:
    """Sign violations of the inputs over the full-dimensional cells."""
    bad = []
    n = len(state.order)
    cache: dict = {}
    for c in state.tree.levels[n - 1]:
        if not c.is_open:
            continue
        ref = [p.sign_at(c.sample) for _, p in state.inputs]
        for (pid, _), s in zip(state.inputs, ref):
            if s == 0:
                bad.append(f"cell {c.index}: {pid} vanishes at the sample")
        try:
            pts = probe_points(state.tree, state.table, c, probes, seed, cache)
        except AssertionError as e:
            bad.append(f"cell {c.index}: {e}")
            continue
        for pt in pts:
            for (pid, p), s in zip(state.inputs, ref):
                if p.sign_at(pt) != s:
                    bad.append(f"cell {c.index}: {pid} changes sign at {tuple(map(format_rational, pt))}")
    return bad


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def _root_doc(r: IsolatedRoot | None, var: str):
    if r is None:
        return None
    if r.is_rational:
        return {"rational": format_rational(r.lo)}
    p = Polynomial.from_univariate(r.poly, VarOrder([var]))
    return {"poly": str(p), "interval": [format_rational(r.lo), format_rational(r.hi)]}


def _cell_doc(c: Cell, var: str):
    return {
        "index": list(c.index),
        "kind": c.kind,
        "flag": c.flag,
        "sample": [format_rational(x) for x in c.sample],
        "lower": _root_doc(c.lower, var),
        "upper": _root_doc(c.upper, var),
    }


def to_document(state: CadState) -> dict:
    order = state.order
    return {
        "format_version": FORMAT_VERSION,
        "order": list(order.names),
        "inputs": [{"id": i, "poly": str(p)} for i, p in state.inputs],
        "table": {
            "input_ids": list(state.table.input_ids),
            "ops": state.table.ops,
            "levels": [
                {
                    "variable": lev.variable,
                    "polys": [{"poly": str(p), "provenance": sorted(t)} for p, t in zip(lev.polys, lev.provenance)],
                }
                for lev in state.table.levels
            ],
        },
        "tree": {"levels": [[_cell_doc(c, order[k]) for c in lev] for k, lev in enumerate(state.tree.levels)]},
        "meta": state.meta,
    }


def dumps(state: CadState) -> str:
    return json.dumps(to_document(state), indent=1, ensure_ascii=True) + "\n"


def save(state: CadState, sink) -> None:
    """Write the canonical document to a path or a text stream."""
    text = dumps(state)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


class _Reader:
    """Typed field access with path-located schema errors."""

    def __init__(self, path: str):
        self.path = path

    def at(self, key) -> "_Reader":
        sep = "" if isinstance(key, int) else "."
        return _Reader(f"{self.path}[{key}]" if isinstance(key, int) else f"{self.path}{sep}{key}")

    def fail(self, msg: str):
        raise SchemaError(f"{self.path}: {msg}")

    def get(self, obj, key, typ):
        if not isinstance(obj, dict):
            self.fail("expected an object")
        if key not in obj:
            self.at(key).fail("missing field")
        v = obj[key]
        if typ is int and isinstance(v, bool):
            self.at(key).fail("expected an integer")
        if typ is not None and not isinstance(v, typ):
            self.at(key).fail(f"expected {getattr(typ, '__name__', typ)}")
        return v

    def rational(self, v):
        if not isinstance(v, str):
            self.fail("expected a rational string")
        try:
            return parse_rational(v)
        except InvalidInput as e:
            self.fail(str(e))

    def poly(self, v, order: VarOrder):
        if not isinstance(v, str):
            self.fail("expected a polynomial string")
        try:
            return parse_polynomial(v, order)
        except InvalidInput as e:
            self.fail(str(e))


def _load_root(rd: _Reader, doc, var: str):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        rd.fail("expected an object or null")
    if "rational" in doc:
        return IsolatedRoot.rational(rd.at("rational").rational(doc["rational"]))
    p = rd.at("poly").poly(rd.get(doc, "poly", str), VarOrder([var]))
    iv = rd.get(doc, "interval", list)
    if len(iv) != 2:
        rd.at("interval").fail("expected two endpoints")
    lo = rd.at("interval").at(0).rational(iv[0])
    hi = rd.at("interval").at(1).rational(iv[1])
    _, f = _dense_perm(p, [0])
    try:
        return IsolatedRoot.algebraic(f, lo, hi)
    except InvalidInput as e:
        rd.fail(str(e))


def from_document(doc: Any) -> CadState:
    rd = _Reader("$")
    if not isinstance(doc, dict):
        rd.fail("expected an object")
    ver = rd.get(doc, "format_version", int)
    if ver != FORMAT_VERSION:
        rd.at("format_version").fail(f"unsupported version {ver}")
    names = rd.get(doc, "order", list)
    try:
        order = VarOrder(names)
    except InvalidInput as e:
        rd.at("order").fail(str(e))
    n = len(order)
    inputs = []
    r_in = rd.at("inputs")
    for i, item in enumerate(rd.get(doc, "inputs", list)):
        ri = r_in.at(i)
        pid = ri.get(item, "id", str)
        p = ri.at("poly").poly(ri.get(item, "poly", str), order)
        if p.is_zero():
            ri.at("poly").fail("zero polynomial")
        inputs.append((pid, p))
    tdoc = rd.get(doc, "table", dict)
    rt = rd.at("table")
    input_ids = tuple(rt.get(tdoc, "input_ids", list))
    if not all(isinstance(x, str) for x in input_ids):
        rt.at("input_ids").fail("expected strings")
    ops = rt.get(tdoc, "ops", int)
    ldocs = rt.get(tdoc, "levels", list)
    if len(ldocs) != n:
        rt.at("levels").fail(f"expected {n} levels")
    levels = []
    for i, ld in enumerate(ldocs):
        rl = rt.at("levels").at(i)
        var = rl.get(ld, "variable", str)
        if var != order[n - 1 - i]:
            rl.at("variable").fail(f"expected {order[n - 1 - i]}")
        polys, provs = [], []
        for j, pd in enumerate(rl.get(ld, "polys", list)):
            rp = rl.at("polys").at(j)
            p = rp.at("poly").poly(rp.get(pd, "poly", str), order)
            if p.level() > n - i or p.is_constant():
                rp.at("poly").fail("polynomial does not belong to this level")
            prov = rp.get(pd, "provenance", list)
            if not prov or not all(isinstance(x, str) for x in prov):
                rp.at("provenance").fail("expected a nonempty list of input ids")
            polys.append(p)
            provs.append(frozenset(prov))
        levels.append(LevelEntry(var, tuple(polys), tuple(provs)))
    table = ProjectionTable(order, tuple(levels), input_ids, ops)
    table = replace(table, dense=tuple(table.dense_level(i) for i in range(n)))
    trd = rd.at("tree")
    tlevels = trd.get(rd.get(doc, "tree", dict), "levels", list)
    if len(tlevels) != n:
        trd.at("levels").fail(f"expected {n} levels")
    cells = []
    for k, lev in enumerate(tlevels):
        rk = trd.at("levels").at(k)
        if not isinstance(lev, list):
            rk.fail("expected a list")
        out = []
        for j, cd in enumerate(lev):
            rc = rk.at(j)
            idx = rc.get(cd, "index", list)
            if len(idx) != k + 1 or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in idx):
                rc.at("index").fail("bad index path")
            kind = rc.get(cd, "kind", str)
            if kind not in (OPEN, SECTION) or (kind == SECTION and k > 0):
                rc.at("kind").fail(f"bad kind {kind!r}")
            flag = rc.get(cd, "flag", str)
            if flag not in (NEW, UNCHANGED):
                rc.at("flag").fail(f"bad flag {flag!r}")
            sample = tuple(rc.at("sample").at(m).rational(x) for m, x in enumerate(rc.get(cd, "sample", list)))
            want = k + 1 if kind == OPEN else None
            if want is not None and len(sample) != want:
                rc.at("sample").fail(f"expected {want} coordinates")
            lower = _load_root(rc.at("lower"), rc.get(cd, "lower", None), order[k])
            upper = _load_root(rc.at("upper"), rc.get(cd, "upper", None), order[k])
            out.append(Cell(k + 1, tuple(idx), sample, lower, upper, kind, flag))
        cells.append(tuple(out))
    meta = rd.get(doc, "meta", dict)
    return CadState(order, tuple(inputs), table, CadTree(tuple(cells)), meta)


def loads(text: str) -> CadState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"$: not valid JSON ({e.msg} at line {e.lineno})") from None
    return from_document(doc)


def load(source) -> CadState:
    """Read a state from a path or a text stream."""
    if hasattr(source, "read"):
        return loads(source.read())
    with open(source, encoding="utf-8") as fh:
        return loads(fh.read())
