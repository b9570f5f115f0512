"""Shared strategies and independent oracles (sympy, naive elimination)."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from roabp_lab.field import Q, make_field
from roabp_lab.poly import Polynomial


def random_poly(rng: random.Random, n: int, max_deg: int = 4, sparsity: int = 30, field=Q, coeffs=(-5, 5)):
    """Random sparse polynomial with total degree <= max_deg."""
    F = make_field(field)
    terms = {}
    for _ in range(rng.randint(1, sparsity)):
        total = rng.randint(0, max_deg)
        m = [0] * n
        for _ in range(total):
            m[rng.randrange(n)] += 1
        c = rng.randint(*coeffs)
        if F.kind == "q" and rng.random() < 0.2:
            c = Fraction(c, rng.randint(1, 4))
        terms[tuple(m)] = c
    f = Polynomial(F, n, terms)
    return f if f else Polynomial.one(F, n)


@st.composite
def polys(draw, n=3, max_deg=3, max_terms=6, field=Q):
    F = make_field(field)
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        m = tuple(draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n)))
        terms[m] = draw(st.integers(-4, 4))
    return Polynomial(F, n, terms)


def to_sympy(f: Polynomial):
    xs = sympy.symbols(f"x1:{f.nvars + 1}") if f.nvars else ()
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for x, e in zip(xs, m):
            term *= x**e
        expr += term
    return expr, xs


def from_sympy(expr, nvars: int, field=Q) -> Polynomial:
    xs = sympy.symbols(f"x1:{nvars + 1}")
    P = sympy.Poly(sympy.expand(expr), *xs)
    terms = {}
    for m, c in P.terms():
        c = sympy.Rational(c)
        terms[tuple(m)] = Fraction(int(c.p), int(c.q))
    return Polynomial(make_field(field), nvars, terms)


def naive_rank(rows, p=None) -> int:
    """Gaussian elimination with Fractions (p=None) or mod p."""
    a = [[Fraction(x) if p is None else x % p for x in r] for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c] if p is None else pow(a[rank][c], -1, p)
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y if p is None else (x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def coefficient_matrix_rank(f: Polynomial, Y) -> int:
    """Nisan rank straight from the definition, via sympy's exact rank."""
    Y = set(Y)
    rows, cols, entries = {}, {}, {}
    for m, c in f.terms.items():
        my = tuple(e if i in Y else 0 for i, e in enumerate(m))
        mz = tuple(0 if i in Y else e for i, e in enumerate(m))
        r = rows.setdefault(my, len(rows))
        k = cols.setdefault(mz, len(cols))
        entries[(r, k)] = c
    if not entries:
        return 0
    if f.field.kind == "fp":
        dense = [[entries.get((r, k), 0) for k in range(len(cols))] for r in range(len(rows))]
        return naive_rank(dense, f.field.modulus)
    M = sympy.zeros(len(rows), len(cols))
    for (r, k), c in entries.items():
        M[r, k] = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
    return M.rank()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    key = lambda c: (int("".join(ch for ch in c if ch.isdigit())), c)  # noqa: E731
    for cid in sorted(RESULTS, key=key):
        ok, detail = RESULTS[cid]
        terminalreporter.write_line(f"criterion {cid:>3}: {'PASS' if ok else 'FAIL'}  {detail}")
