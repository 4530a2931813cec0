"""Shared fixtures and the sympy bridge used by oracle tests."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import settings

from incrcad.poly import Polynomial, VarOrder, parse_polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

X2 = VarOrder(["x1", "x2"])
X3 = VarOrder(["x1", "x2", "x3"])

F1 = ["x1^2 + x2^2 - 1", "x1^3 - x2^2"]
F3_EXTRA = "x1^3 + x2^2"
F2_EXTRA = "x2 - x1"


def P(text, order=X2) -> Polynomial:
    return parse_polynomial(text, order)


def to_sympy(p: Polynomial):
    syms = sp.symbols(list(p.order.names))
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr, syms


def from_sympy(expr, order) -> Polynomial:
    syms = sp.symbols(list(order.names))
    poly = sp.Poly(sp.expand(expr), *syms)
    return Polynomial(order, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def same_up_to_constant(p: Polynomial, q: Polynomial) -> bool:
    """``p = c q`` for a nonzero rational ``c``."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    e = next(iter(p.terms))
    if e not in q.terms:
        return False
    c = p.terms[e] / q.terms[e]
    return p == q * Polynomial.constant(q.order, c)


@pytest.fixture
def x2():
    return X2


# one line per acceptance criterion, shown at the end of the run
ACCEPTANCE: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
