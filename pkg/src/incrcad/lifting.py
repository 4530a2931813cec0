"""Open CAD lifting over rational sample points, from scratch and incrementally.

Only open cells are lifted.  The base level keeps its section cells as
markers so base indices count every cell of the line; above the base,
stacks contain open cells only, numbered ``1 .. #roots + 1``.

Samples are canonical (the simplest rational between neighbouring roots),
so a cell whose bounds survive an incremental update keeps its sample and a
merged tree coincides with a from-scratch lift cell by cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import _dense as D
from .errors import InvalidInput
from .poly import Polynomial, _dense_perm, lazard_divide, substitute
from .projection import ProjectionTable
from .realroot import (
    IsolatedRoot,
    RootSet,
    choose_samples,
    compare_rational,
    compare_roots,
    isolate_dense,
    is_new_root,
    merge_roots,
)

__all__ = [
    "OPEN",
    "SECTION",
    "NEW",
    "UNCHANGED",
    "Cell",
    "CadTree",
    "StackRequest",
    "LiftStats",
    "lazard_valuation",
    "valuate_dense",
    "stack_roots",
    "lift_base",
    "lift_cell",
    "lift_full",
    "lift_setup_add",
    "lift_add",
]

OPEN = "open"
SECTION = "section"
NEW = "new"
UNCHANGED = "unchanged"


@dataclass(frozen=True)
class Cell:
    """A cell of the tree; ``lower``/``upper`` of ``None`` mean minus/plus infinity.

    Bounds are roots in the cell's own coordinate above the parent sample.
    """

    level: int
    index: tuple[int, ...]
    sample: tuple[Fraction, ...]
    lower: IsolatedRoot | None
    upper: IsolatedRoot | None
    kind: str = OPEN
    flag: str = UNCHANGED

    @property
    def is_open(self) -> bool:
        return self.kind == OPEN

    @property
    def parent_index(self) -> tuple[int, ...]:
        return self.index[:-1]

    def contains_coordinate(self, x) -> bool:
        """Whether the rational ``x`` lies strictly between the bounds (or on the section)."""
        if self.kind == SECTION:
            return compare_rational(x, self.lower) == 0
        if self.lower is not None and compare_rational(x, self.lower) <= 0:
            return False
        if self.upper is not None and compare_rational(x, self.upper) >= 0:
            return False
        return True


@dataclass(frozen=True)
class CadTree:
    """Cells per level, level 1 first, each level sorted by index."""

    levels: tuple[tuple[Cell, ...], ...]
    # memoized lookups; treat the returned mappings as read-only
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.levels)

    def cells(self, level: int) -> tuple[Cell, ...]:
        return self.levels[level - 1]

    def open_cells(self, level: int) -> list[Cell]:
        return [c for c in self.levels[level - 1] if c.is_open]

    def by_index(self) -> dict:
        if "index" not in self._memo:
            self._memo["index"] = {c.index: c for lev in self.levels for c in lev}
        return self._memo["index"]

    def children(self, cell: Cell) -> list[Cell]:
        if cell.level >= self.n:
            return []
        k = len(cell.index)
        return [c for c in self.levels[cell.level] if c.index[:k] == cell.index]

    def stacks(self, level: int) -> dict:
        """Map parent index -> ordered children at ``level`` (``level >= 2``)."""
        key = ("stacks", level)
        if key not in self._memo:
            out: dict = {}
            for c in self.levels[level - 1]:
                out.setdefault(c.parent_index, []).append(c)
            self._memo[key] = out
        return self._memo[key]

    def stack_sizes(self, level: int) -> list[int]:
        """Number of children above each open cell of ``level - 1``, in order."""
        st = self.stacks(level)
        return [len(st.get(c.index, ())) for c in self.levels[level - 2] if c.is_open]


@dataclass(frozen=True)
class StackRequest:
    """Cells scheduled for re-decomposition, with the new roots that forced it."""

    entries: tuple[tuple[tuple[int, ...], RootSet], ...] = ()

    def indices(self) -> list[tuple[int, ...]]:
        return [i for i, _ in self.entries]


@dataclass
class LiftStats:
    valuations: int = 0
    lifted_cells: int = 0
    kept_cells: int = 0
    relifted_stacks: int = 0


# ---------------------------------------------------------------------------
# valuation
# ---------------------------------------------------------------------------


def lazard_valuation(f: Polynomial, sp: Sequence) -> Polynomial:
    """Substitute ``x1 = sp[0], x2 = sp[1], ...`` dividing out vanishing factors first."""
    if f.is_zero():
        raise InvalidInput("valuation of the zero polynomial")
    if not 1 <= len(sp) < len(f.order):
        raise InvalidInput("sample length must be between 1 and n - 1")
    for j, r in enumerate(sp):
        r = Fraction(r)
        g = substitute(f, j, r)
        while g.is_zero():
            f = lazard_divide(f, j, r)
            g = substitute(f, j, r)
        f = g
    return f


def valuate_dense(f, u: int, sample: Sequence[Fraction]):
    """Dense analogue of :func:`lazard_valuation` up to a positive constant factor.

    ``f`` is a level-``u`` integer polynomial in ``x1 .. x_{u+1}``; the
    first ``len(sample)`` variables are substituted.
    """
    for r in sample:
        p, q = r.numerator, r.denominator
        g = D.dmp_eval_inner(f, p, q, u)
        while not g:
            f = D.dmp_div_inner_linear(f, p, q, u)
            g = D.dmp_eval_inner(f, p, q, u)
        f = g
        u -= 1
    return f


def stack_roots(polys: Iterable, sample: Sequence[Fraction], stats: LiftStats | None = None) -> RootSet:
    """Distinct real roots in ``x_{k+1}`` of the valuations of level ``k + 1`` dense polys at ``sample``."""
    k = len(sample)
    sets = []
    for f in polys:
        g = valuate_dense(f, k, sample)
        if stats is not None:
            stats.valuations += 1
        if len(g) > 1:
            sets.append(isolate_dense(g))
    return merge_roots(sets)


# ---------------------------------------------------------------------------
# full lifting
# ---------------------------------------------------------------------------


def _open_stack(parent: Cell | None, roots: RootSet, flag: str) -> list[Cell]:
    """Open children above ``parent`` (``None`` for the base line, which also gets sections)."""
    samples = choose_samples(roots)
    bounds = [None, *roots, None]
    prefix_idx = parent.index if parent is not None else ()
    prefix_s = parent.sample if parent is not None else ()
    level = len(prefix_idx) + 1
    out = []
    if parent is None:
        pos = 1
        for j, s in enumerate(samples):
            out.append(Cell(level, (pos,), (s,), bounds[j], bounds[j + 1], OPEN, flag))
            pos += 1
            if j < len(roots):
                r = roots[j]
                out.append(Cell(level, (pos,), (r.lo,) if r.is_rational else (), r, r, SECTION, flag))
                pos += 1
        return out
    for j, s in enumerate(samples):
        out.append(Cell(level, prefix_idx + (j + 1,), prefix_s + (s,), bounds[j], bounds[j + 1], OPEN, flag))
    return out


def _base_roots(table: ProjectionTable) -> RootSet:
    return merge_roots(isolate_dense(f) for f in table.dense_level(table.n - 1))


def lift_base(table: ProjectionTable, flag: str = UNCHANGED) -> list[Cell]:
    """Base decomposition of the line: alternating open and section cells."""
    return _open_stack(None, _base_roots(table), flag)


def lift_cell(c: Cell, polys, flag: str = UNCHANGED, stats: LiftStats | None = None) -> list[Cell]:
    """Open children of ``c`` for the next-level polynomials ``polys``.

    ``polys`` holds Polynomials or dense integer polynomials in ``x1 .. x_{level+1}``.
    """
    if not c.is_open:
        raise InvalidInput("only open cells are lifted")
    k = c.level
    dense = [(_dense_perm(p, range(k + 1))[1] if isinstance(p, Polynomial) else p) for p in polys]
    roots = stack_roots(dense, c.sample, stats)
    if stats is not None:
        stats.lifted_cells += len(roots) + 1
    return _open_stack(c, roots, flag)


def _lift_subtree(c: Cell, table: ProjectionTable, flag: str, stats: LiftStats | None, out: list[list[Cell]]):
    """Lift ``c`` down to level ``n``, appending cells per level into ``out``."""
    frontier = [c]
    for k in range(c.level, table.n):
        polys = table.dense_in(k + 1)
        nxt = []
        for p in frontier:
            nxt.extend(lift_cell(p, polys, flag, stats))
        out[k].extend(nxt)
        frontier = nxt


def lift_full(table: ProjectionTable, flag: str = UNCHANGED, stats: LiftStats | None = None) -> CadTree:
    """Lift over every open cell of every level."""
    n = table.n
    levels: list[list[Cell]] = [[] for _ in range(n)]
    levels[0] = lift_base(table, flag)
    if stats is not None:
        stats.lifted_cells += len(levels[0])
    for c in levels[0]:
        if c.is_open:
            _lift_subtree(c, table, flag, stats, levels)
    return _assemble(levels)


def _assemble(levels: list[list[Cell]]) -> CadTree:
    return CadTree(tuple(tuple(sorted(lev, key=lambda c: c.index)) for lev in levels))


# ---------------------------------------------------------------------------
# incremental lifting
# ---------------------------------------------------------------------------


def _dense_entries(table: ProjectionTable, new_entries) -> list[list]:
    """Dense forms of the new per-level entries, indexed like table levels."""
    out = []
    for i in range(table.n):
        k = table.n - i
        out.append([_dense_perm(p, range(k))[1] for p in (new_entries[i] if new_entries else ())])
    return out


def _same_bound(a: IsolatedRoot | None, b: IsolatedRoot | None) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return compare_roots(a, b) == 0


def _base_merge(dense_new, old: CadTree):
    """Base cells after adding roots of the new univariate polynomials.

    Returns ``[(cell, old_cell_or_None)]`` in line order, with cells already
    carrying their new base index.
    """
    old_base = list(old.levels[0])
    old_roots = [c.lower for c in old_base if c.kind == SECTION]
    fresh = merge_roots(isolate_dense(f) for f in dense_new)
    added = [r for r in fresh if is_new_root(old_roots, r)]
    if not added:
        return [(c, c) for c in old_base]
    roots = merge_roots([old_roots, added])
    # position of each merged root in the old root list, None for added ones
    old_pos = []
    p = 0
    for r in roots:
        if p < len(old_roots) and compare_roots(old_roots[p], r) == 0:
            old_pos.append(p)
            p += 1
        else:
            old_pos.append(None)
    out = []
    for c in _open_stack(None, roots, NEW):
        j = (c.index[0] - 1) // 2
        if c.is_open:
            lo_ok = j == 0 or old_pos[j - 1] is not None
            hi_ok = j == len(roots) or old_pos[j] is not None
            if lo_ok and hi_ok:
                oj = old_pos[j - 1] + 1 if j > 0 else 0
                out.append((c, old_base[2 * oj]))
            else:
                out.append((c, None))
        else:
            oj = old_pos[j]
            out.append((c, old_base[2 * oj + 1] if oj is not None else None))
    return out


def lift_setup_add(new_table_entries, old: CadTree, full_table: ProjectionTable,
                   stats: LiftStats | None = None):
    """Base phase of an incremental lift.

    Returns ``(new_cells, unchanged_cells, request)``: base cells created or
    split by new univariate roots (flagged new), surviving base cells with
    their old indices, and the surviving open cells whose stacks gain roots
    from the new level-2 polynomials.
    """
    n = full_table.n
    dense_new = _dense_entries(full_table, new_table_entries)
    merged = _base_merge(dense_new[n - 1], old)
    new_cells = [c for c, o in merged if o is None]
    unchanged = [o for c, o in merged if o is not None]
    request = []
    if n > 1 and dense_new[n - 2]:
        stacks = old.stacks(2)
        for c in unchanged:
            if not c.is_open:
                continue
            existing = _stack_roots_of(stacks.get(c.index, ()))
            extra = stack_roots(dense_new[n - 2], c.sample, stats)
            hit = [r for r in extra if is_new_root(existing, r)]
            if hit:
                request.append((c.index, RootSet(hit)))
    return new_cells, unchanged, StackRequest(tuple(request))


def _stack_roots_of(children: Sequence[Cell]) -> list[IsolatedRoot]:
    return [c.upper for c in children[:-1]]


def lift_add(new_table_entries, old: CadTree, full_table: ProjectionTable,
             stats: LiftStats | None = None) -> CadTree:
    """Merge an old tree with the decomposition forced by new projection polynomials.

    Unchanged subtrees are kept (and re-indexed); cells split at the base
    and stacks that gain roots are lifted afresh against every polynomial.
    """
    n = full_table.n
    if stats is None:
        stats = LiftStats()
    dense_new = _dense_entries(full_table, new_table_entries)
    if not any(dense_new):
        return old
    merged = _base_merge(dense_new[n - 1], old)
    old_stacks = [None] + [old.stacks(k) for k in range(2, n + 1)]
    levels: list[list[Cell]] = [[] for _ in range(n)]
    for c, o in merged:
        if o is None:
            stats.lifted_cells += 1
            levels[0].append(c)
            if c.is_open:
                _lift_subtree(c, full_table, NEW, stats, levels)
            continue
        stats.kept_cells += 1
        c2 = replace(o, index=c.index, flag=UNCHANGED)
        levels[0].append(c2)
        if c2.is_open:
            _descend(c2, o.index, old_stacks, dense_new, full_table, stats, levels)
    return _assemble(levels)


def _descend(cell: Cell, old_index, old_stacks, dense_new, table: ProjectionTable, stats: LiftStats, levels):
    """CASE 2 walk: keep children of an unchanged open cell, re-lift where new roots appear."""
    k = cell.level
    n = table.n
    if k >= n:
        return
    children = old_stacks[k].get(old_index, [])
    polys = dense_new[n - (k + 1)]
    if polys:
        extra = stack_roots(polys, cell.sample, stats)
        existing = _stack_roots_of(children)
        if any(is_new_root(existing, r) for r in extra):
            # CASE 1: prune and lift the whole subtree against all polynomials
            stats.relifted_stacks += 1
            _lift_subtree(cell, table, NEW, stats, levels)
            return
    for ch in children:
        stats.kept_cells += 1
        ch2 = replace(ch, index=cell.index + ch.index[-1:], flag=UNCHANGED)
        levels[k].append(ch2)
        _descend(ch2, ch.index, old_stacks, dense_new, table, stats, levels)
