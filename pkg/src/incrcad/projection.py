"""Lazard projection, from scratch and incrementally.

Level ``i`` of a :class:`ProjectionTable` holds a gcd-free basis of
polynomials whose main variable is ``x_{n-i}``; level 0 is the processed
input set and level ``n-1`` the univariate set in ``x1``.  Each element
carries its provenance, the identifiers of the inputs it derives from.

Because each level is the coarsest gcd-free basis of everything fed to it,
the incremental path and a from-scratch run arrive at the same level sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import _dense as D
from .errors import EmptyInput, InvalidInput
from .poly import (
    Polynomial,
    PolySet,
    VarOrder,
    _dense_perm,
    _from_dense_perm,
    dense_sqf_components,
    gcd_free_merge,
    leading_coeff,
    trailing_coeff,
    normalize,
    square_free_basis,
    resultant,
    discriminant,
    content,
    primitive_part,
)

__all__ = [
    "ProjectionTable",
    "LevelEntry",
    "lazard_coeffs",
    "projection_add",
    "projection_polys_add",
    "full_projection_count",
]


def lazard_coeffs(p: Polynomial, v) -> PolySet:
    """Leading and trailing coefficients of ``p`` in ``v``, constants dropped."""
    if p.degree(v) < 1:
        raise InvalidInput(f"{p} has no positive degree in the projection variable")
    return PolySet([leading_coeff(p, v), trailing_coeff(p, v)])


def projection_add(new: PolySet | Iterable[Polynomial], old: PolySet | Iterable[Polynomial], v) -> PolySet:
    """Projection polynomials contributed by ``new`` on top of an already projected ``old``.

    Contents of ``new`` plus, over the square-free basis of the primitive
    parts of ``new``: Lazard coefficients, discriminants, resultants within
    the basis and resultants against every element of ``old``.  With
    ``old`` empty this is the ordinary Lazard projection of ``new``.
    """
    out: list[Polynomial] = []
    prim = []
    for p in new:
        if p.is_zero() or p.is_constant():
            continue
        if p.degree(v) < 1:
            out.append(p)
            continue
        out.append(content(p, v))
        prim.append(primitive_part(p, v))
    basis = list(square_free_basis(prim, v)) if prim else []
    olds = [q for q in old if q.degree(v) >= 1]
    for i, b in enumerate(basis):
        out.extend(lazard_coeffs(b, v))
        if b.degree(v) >= 2:
            out.append(discriminant(b, v))
        for c in basis[i + 1:]:
            out.append(resultant(b, c, v))
        for c in olds:
            out.append(resultant(b, c, v))
    return PolySet(out)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelEntry:
    """One level: the basis polynomials (main variable first in ``variable``) and their provenance."""

    variable: str
    polys: tuple[Polynomial, ...]
    provenance: tuple[frozenset, ...]

    def polyset(self) -> PolySet:
        return PolySet(self.polys)


@dataclass(frozen=True)
class ProjectionTable:
    """Per-level projection sets for a fixed variable order.

    ``dense[i]`` caches the integer dense forms (in ``x1..x_{n-i}``) that
    the algorithms work on; it is derived data and excluded from equality.
    """

    order: VarOrder
    levels: tuple[LevelEntry, ...]
    input_ids: tuple[str, ...] = ()
    ops: int = 0
    dense: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def empty(cls, order: VarOrder) -> "ProjectionTable":
        n = len(order)
        levels = tuple(LevelEntry(order[n - 1 - i], (), ()) for i in range(n))
        return cls(order, levels, (), 0, tuple(() for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.order)

    def level(self, i: int) -> PolySet:
        return self.levels[i].polyset()

    def univariate(self) -> tuple[Polynomial, ...]:
        return self.levels[-1].polys

    def polys_in(self, k: int) -> tuple[Polynomial, ...]:
        """Polynomials whose main variable is ``x_k`` (1-based)."""
        return self.levels[self.n - k].polys

    def dense_in(self, k: int) -> tuple:
        return self.dense_level(self.n - k)

    def dense_level(self, i: int) -> tuple:
        if self.dense and len(self.dense[i]) == len(self.levels[i].polys):
            return self.dense[i]
        k = self.n - i
        return tuple(_dense_perm(p, range(k))[1] for p in self.levels[i].polys)

    def provenance_of(self, p: Polynomial):
        q = normalize(p)
        for lev in self.levels:
            for a, t in zip(lev.polys, lev.provenance):
                if a == q:
                    return t
        raise KeyError(str(p))

    def same_sets(self, other: "ProjectionTable") -> bool:
        return self.order == other.order and all(
            a.polyset() == b.polyset() for a, b in zip(self.levels, other.levels)
        )

    def total_size(self) -> int:
        return sum(len(lev.polys) for lev in self.levels)


def full_projection_count(table: ProjectionTable) -> int:
    """Projection operations a from-scratch run performs on ``table``'s level sets.

    One coefficient extraction per element, one discriminant per element of
    degree at least 2, one resultant per unordered pair; the univariate
    level is not projected.
    """
    total = 0
    for i in range(table.n - 1):
        dl = table.dense_level(i)
        m = len(dl)
        total += m + sum(1 for f in dl if len(f) >= 3) + m * (m - 1) // 2
    return total


def _norm_key(f, u):
    """Dense normal form: ground-primitive, positive ground LC."""
    return D.dmp_ground_primitive(f, u)[1]


class _RawSet:
    """Insertion-ordered dense polynomials with merged provenance tags."""

    def __init__(self):
        self.items: dict = {}

    def add(self, f, u, tag):
        if D.dmp_is_ground(f, u):
            return
        f = _norm_key(f, u)
        k = D.freeze(f)
        if k in self.items:
            g, t = self.items[k]
            self.items[k] = (g, t | tag)
        else:
            self.items[k] = (f, tag)

    def __iter__(self):
        return iter(self.items.values())


def _lower(f, u):
    """Drop a degree-0 main variable: ``[c] -> c``."""
    return f[0] if f else ([] if u > 0 else 0)


def _project(new, old, u, ops_counter):
    """Lazard projection of basis elements ``new`` against ``new + old`` at level ``u``."""
    out = []
    for i, (b, tb) in enumerate(new):
        ops_counter[0] += 1
        out.append((b[0], tb))
        out.append((D.dmp_TC(b), tb))
        if len(b) >= 3:
            ops_counter[0] += 1
            out.append((D.dmp_discriminant(b, u), tb))
        for c, tc in new[i + 1:]:
            ops_counter[0] += 1
            out.append((D.dmp_resultant(b, c, u), tb | tc))
        for c, tc in old:
            ops_counter[0] += 1
            out.append((D.dmp_resultant(b, c, u), tb | tc))
    return out


def _candidates(raw, u, carry):
    """Split raw level-``u`` polynomials into square-free candidates and lower-level carry."""
    cands = []
    for f, tag in raw:
        if len(f) <= 1:
            if u > 0:
                carry.add(_lower(f, u), u - 1, tag)
            continue
        if u > 0:
            cont, pp = D.dmp_primitive(f, u)
            if not D.dmp_is_ground(cont, u - 1):
                carry.add(cont, u - 1, tag)
        else:
            pp = D.dup_primitive(f)[1]
        for a in dense_sqf_components(pp, u):
            cands.append((a, tag))
    return cands


def projection_polys_add(prev: ProjectionTable | None, new_inputs, order: VarOrder | None = None,
                         ids: Sequence[str] | None = None) -> ProjectionTable:
    """Extend ``prev`` (or an empty table) by ``new_inputs``.

    Only elements that are new at a level (fresh, or pieces of a split old
    element) are projected, against each other and the surviving old
    elements.  ``ids`` names the new inputs for provenance; defaults
    continue the ``f1, f2, ...`` sequence.
    """
    new_inputs = list(new_inputs)
    if prev is None:
        if order is None:
            if not new_inputs:
                raise EmptyInput("no input polynomials")
            order = new_inputs[0].order
        prev = ProjectionTable.empty(order)
    order = prev.order
    if not new_inputs:
        if not prev.input_ids:
            raise EmptyInput("no input polynomials")
        return prev
    n = len(order)
    if ids is None:
        start = len(prev.input_ids)
        ids = [f"f{start + j + 1}" for j in range(len(new_inputs))]
    ids = list(ids)
    if len(ids) != len(new_inputs):
        raise InvalidInput("one identifier per new input is required")
    ops = [0]

    raw = _RawSet()
    for p, pid in zip(new_inputs, ids):
        if p.order != order:
            raise InvalidInput("input uses a different variable order")
        if p.is_zero():
            from .errors import ZeroPolynomial

            raise ZeroPolynomial("input polynomial is zero")
        if p.is_constant():
            continue
        _, f = _dense_perm(p, range(n))
        raw.add(f, n - 1, frozenset([pid]))

    levels = []
    dense_levels = []
    for i in range(n):
        u = n - 1 - i
        carry = _RawSet()
        cands = _candidates(raw, u, carry)
        old_dense = prev.dense_level(i)
        old_tags = prev.levels[i].provenance
        old = list(zip(old_dense, old_tags))
        merged = gcd_free_merge(old, cands, u)
        old_keys = {D.freeze(f) for f in old_dense}
        kept, fresh = [], []
        for f, t in merged:
            (kept if D.freeze(f) in old_keys else fresh).append((f, t))
        if u > 0 and fresh:
            for g, t in _project(fresh, kept, u, ops):
                carry.add(g, u - 1, t)
        # table order: surviving old elements first, then fresh ones
        final = kept + fresh
        dense_levels.append(tuple(f for f, _ in final))
        var = order[u]
        idx = list(range(u + 1))
        levels.append(LevelEntry(
            var,
            tuple(_from_dense_perm(f, idx, order) for f, _ in final),
            tuple(frozenset(t) for _, t in final),
        ))
        raw = carry
    return ProjectionTable(order, tuple(levels), tuple(prev.input_ids) + tuple(ids),
                           prev.ops + ops[0], tuple(dense_levels))


def new_entries(old: ProjectionTable, new: ProjectionTable) -> tuple[PolySet, ...]:
    """Per-level polynomials of ``new`` absent from ``old``."""
    return tuple(b.polyset() - a.polyset() for a, b in zip(old.levels, new.levels))
