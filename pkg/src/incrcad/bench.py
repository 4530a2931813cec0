"""Random polynomial pairs and the classical-vs-incremental benchmark."""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .engine import compare_trees
from .lifting import LiftStats, lift_add, lift_full
from .poly import Polynomial, VarOrder
from .projection import new_entries, projection_polys_add
from .realroot import clear_caches

__all__ = ["DEFAULTS", "random_poly", "random_pairs", "BenchReport", "run_bench", "summarize"]

# (terms, total degree) per dimension
DEFAULTS = {2: (4, 3), 3: (4, 3)}

COEFF_RANGE = (-99, 99)


def _monomials(n: int, degree: int):
    return [e for e in product(range(degree + 1), repeat=n) if sum(e) <= degree]


def random_poly(rng: random.Random, order: VarOrder, terms: int, degree: int) -> Polynomial:
    """Sparse polynomial with at most ``terms`` terms of total degree at most ``degree``.

    The main variable always occurs, so every polynomial takes part in the
    top-level projection.
    """
    n = len(order)
    monos = _monomials(n, degree)
    top = [e for e in monos if e[-1] > 0]
    while True:
        picked = rng.sample(monos, min(terms, len(monos)))
        if not any(e[-1] for e in picked):
            picked[0] = rng.choice(top)
        coeffs = {}
        for e in picked:
            c = 0
            while c == 0:
                c = rng.randint(*COEFF_RANGE)
            coeffs[e] = Fraction(c)
        p = Polynomial(order, coeffs)
        if not p.is_constant():
            return p


def random_pairs(dims: int, count: int, terms: int | None = None, degree: int | None = None, seed: int = 0):
    """``count`` seeded pairs of distinct random polynomials in ``x1 .. x_dims``."""
    t0, d0 = DEFAULTS.get(dims, (4, 3))
    terms = t0 if terms is None else terms
    degree = d0 if degree is None else degree
    order = VarOrder([f"x{i + 1}" for i in range(dims)])
    rng = random.Random(f"bench:{dims}:{terms}:{degree}:{seed}")
    out = []
    while len(out) < count:
        p = random_poly(rng, order, terms, degree)
        q = random_poly(rng, order, terms, degree)
        if p != q:
            out.append((p, q))
    return order, out


STAT_ROWS = ("Variance", "Mean", "Lower Quartile", "Median", "Upper Quartile")


def summarize(xs) -> dict:
    xs = list(xs)
    if len(xs) >= 2:
        q1, med, q3 = statistics.quantiles(xs, n=4, method="inclusive")
        var = statistics.variance(xs)
    else:
        q1 = med = q3 = xs[0] if xs else 0.0
        var = 0.0
    return {
        "Variance": var,
        "Mean": statistics.fmean(xs) if xs else 0.0,
        "Lower Quartile": q1,
        "Median": med,
        "Upper Quartile": q3,
    }


@dataclass
class BenchReport:
    dims: int
    count: int
    terms: int
    degree: int
    seed: int
    times: dict = field(default_factory=dict)
    equivalence_passes: int = 0
    equivalence_failures: list = field(default_factory=list)

    def summary(self) -> dict:
        return {phase: {mode: summarize(v) for mode, v in modes.items()} for phase, modes in self.times.items()}

    def to_json(self) -> dict:
        return {
            "dims": self.dims,
            "count": self.count,
            "terms": self.terms,
            "degree": self.degree,
            "seed": self.seed,
            "equivalence_passes": self.equivalence_passes,
            "equivalence_failures": list(self.equivalence_failures),
            "summary": self.summary(),
            "raw": self.times,
        }

    def to_table(self) -> str:
        lines = [f"dims={self.dims} pairs={self.count} terms={self.terms} degree={self.degree} seed={self.seed}"]
        summ = self.summary()
        for phase in ("projection", "lifting", "combined"):
            s = summ[phase]
            lines.append("")
            lines.append(f"{phase.capitalize():<16}{'Classical':>14}{'Incremental':>14}  Change")
            for row in STAT_ROWS:
                a, b = s["classical"][row], s["incremental"][row]
                if row == "Variance":
                    cells = f"{a:>12.3e}s2{b:>12.3e}s2"
                else:
                    cells = f"{a:>13.6f}s{b:>13.6f}s"
                lines.append(f"{row:<16}{cells}  {_change(row, a, b)}")
        lines.append("")
        lines.append(f"equivalence: {self.equivalence_passes} passed, {len(self.equivalence_failures)} failed")
        return "\n".join(lines)


def _change(row: str, a: float, b: float) -> str:
    if a == 0:
        return "n/a"
    pct = abs(a - b) / a * 100
    if row == "Variance":
        return f"{pct:.2f}% {'Smaller' if b <= a else 'Larger'}"
    return f"{pct:.2f}% {'Faster' if b <= a else 'Slower'}"


def run_bench(dims: int, count: int, terms: int | None = None, degree: int | None = None,
              seed: int = 0, progress=None) -> BenchReport:
    """Time classical against incremental projection and lifting on random pairs.

    Classical: project and lift ``{p, q}`` from scratch.  Incremental: starting
    from the projection table and tree of ``{p}``, add ``q``.  Every pair is
    checked for cell-set equivalence.
    """
    order, pairs = random_pairs(dims, count, terms, degree, seed)
    t0, d0 = DEFAULTS.get(dims, (4, 3))
    rep = BenchReport(dims, count, t0 if terms is None else terms, d0 if degree is None else degree, seed)
    phases = {ph: {"classical": [], "incremental": []} for ph in ("projection", "lifting", "combined")}
    clock = time.perf_counter
    for i, (p, q) in enumerate(pairs):
        # memoized root isolations would let one mode profit from the other
        clear_caches()
        a = clock()
        full_table = projection_polys_add(None, [p, q], order)
        b = clock()
        full_tree = lift_full(full_table)
        c = clock()

        base_table = projection_polys_add(None, [p], order)
        base_tree = lift_full(base_table)

        clear_caches()
        d = clock()
        inc_table = projection_polys_add(base_table, [q])
        e = clock()
        inc_tree = lift_add(new_entries(base_table, inc_table), base_tree, inc_table, LiftStats())
        f = clock()

        phases["projection"]["classical"].append(b - a)
        phases["lifting"]["classical"].append(c - b)
        phases["combined"]["classical"].append(c - a)
        phases["projection"]["incremental"].append(e - d)
        phases["lifting"]["incremental"].append(f - e)
        phases["combined"]["incremental"].append(f - d)

        diff = compare_trees(inc_tree, full_tree, inc_table, full_table)
        same_sets = inc_table.same_sets(full_table)
        if diff.empty and same_sets:
            rep.equivalence_passes += 1
        else:
            why = "projection sets differ" if not same_sets else str(diff).splitlines()[0]
            rep.equivalence_failures.append(f"pair {i + 1}: {p} | {q}: {why}")
        if progress is not None:
            progress(i + 1, count)
    rep.times = phases
    return rep
