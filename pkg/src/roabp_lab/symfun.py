"""Elementary symmetric polynomials and the constructions built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .field import Field, Q, make_field, primitive_root_of_unity, primitive_roots_of_unity, is_prime
from .linalg import Echelon, determinant
from .poly import Check, Polynomial, product, symmetry_violation, total
from .roabp import ROABP


class NotSymmetricError(ValueError):
    def __init__(self, transposition):
        i, j = transposition
        self.transposition = transposition
        super().__init__(f"polynomial is not symmetric: swapping x{i + 1} and x{j + 1} changes it")


def esym_on(field: Field, nvars: int, variables: Sequence[int], d: int) -> Polynomial:
    """ESym of degree ``d`` on the given subset of an ``nvars``-variable ring."""
    variables = list(variables)
    if d < 0 or d > len(variables):
        return Polynomial.zero(field, nvars)
    terms = {}
    for S in itertools.combinations(variables, d):
        m = [0] * nvars
        for i in S:
            m[i] = 1
        terms[tuple(m)] = 1
    return Polynomial(field, nvars, terms, _trusted=True)


def esym(n: int, d: int, field: Field | str = Q) -> Polynomial:
    """Sum of all squarefree degree-``d`` monomials in ``n`` variables."""
    if n < 0 or d < 0:
        raise ValueError("n and d must be non-negative")
    return esym_on(make_field(field), n, range(n), d)


def esym_partition_check(n: int, d: int, m: int, field: Field | str = Q) -> Check:
    """ESym_n^d versus sum_i ESym^i(first m vars) * ESym^(d-i)(the rest)."""
    if not 0 <= m <= n:
        raise ValueError("split point must lie in [0, n]")
    F = make_field(field)
    Y, Z = range(m), range(m, n)
    rhs = total((esym_on(F, n, Y, i) * esym_on(F, n, Z, d - i) for i in range(d + 1)), F, n)
    return Check(f"esym partition n={n} d={d} m={m}", esym(n, d, F), rhs)


def generating_function_check(n: int, field: Field | str = Q) -> Check:
    """prod_i (1 + x_i t) versus sum_d ESym_n^d t^d, with ``t`` as variable ``n``."""
    F = make_field(field)
    N = n + 1
    t = Polynomial.var(F, N, n)
    lhs = product((1 + Polynomial.var(F, N, i) * t for i in range(n)), F, N)
    rhs = total((esym_on(F, N, range(n), d) * t**d for d in range(n + 1)), F, N)
    return Check(f"generating function n={n}", lhs, rhs)


def esym_roabp(n: int, d: int, order: Sequence[int] | None = None, field: Field | str = Q) -> ROABP:
    """Counting roABP for ESym_n^d of width ``min(d+1, n-d+1)``.

    A state after ``i`` variables is the number ``c`` of variables taken so
    far, restricted to the values that can still reach ``d``. Edges keep
    the count (label 1) or take the variable (label x).
    """
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    if n == 0:
        raise ValueError("a roABP needs at least one variable")
    F = make_field(field)
    order = tuple(range(n)) if order is None else tuple(order)

    def states(i):
        return list(range(max(0, d - (n - i)), min(i, d) + 1))

    layers = []
    for i in range(1, n + 1):
        src, dst = states(i - 1), states(i)
        rows = []
        for c in src:
            row = []
            for c2 in dst:
                if c2 == c:
                    row.append({0: F(1)})
                elif c2 == c + 1:
                    row.append({1: F(1)})
                else:
                    row.append({})
            rows.append(tuple(row))
        layers.append(tuple(rows))
    return ROABP(F, order, tuple(layers))


def esym_width(n: int, d: int) -> int:
    return min(d + 1, n - d + 1)


@dataclass(frozen=True)
class BenOr:
    omega: object
    betas: tuple
    check: Check


def ben_or_identity(n: int, d: int, field: Field | str) -> BenOr:
    """``beta_j = omega**(-j*d) / n`` and the expanded identity for ESym_n^d.

    From prod_i (1 + w^j x_i) = sum_t ESym^t w^(jt), the inverse DFT over
    the n nodes picks out every degree t = d (mod n). For 1 <= d <= n-1 that
    is exactly ESym_n^d; for d in {0, n} the degrees 0 and n alias and the
    returned check reports the failure.
    """
    F = make_field(field)
    if n < 1 or not 0 <= d <= n:
        raise ValueError("need n >= 1 and 0 <= d <= n")
    if F.kind == "fp" and n % F.modulus == 0:
        raise ValueError(f"{n} is not invertible in {F.spec}")
    w = primitive_root_of_unity(F, n)
    ninv = F.inv(F(n))
    betas = tuple(F.mul(F.power(w, -j * d), ninv) for j in range(n))
    xs = [Polynomial.var(F, n, i) for i in range(n)]
    lhs = Polynomial.zero(F, n)
    for j, b in enumerate(betas):
        wj = F.power(w, j)
        lhs = lhs + product((1 + x.scale(wj) for x in xs), F, n).scale(b)
    return BenOr(w, betas, Check(f"ben-or n={n} d={d} over {F.spec}", lhs, esym(n, d, F)))


def ben_or_solve(n: int, d: int, field: Field | str):
    """Any ``beta`` with ``sum_j beta_j prod_i (1 + w^j x_i) = ESym_n^d``, or None.

    Expanding the products, the condition is ``sum_j beta_j w^(j t) = [t = d]``
    for every degree ``0 <= t <= n``: ``n + 1`` equations in ``n`` unknowns.
    """
    F = make_field(field)
    w = primitive_root_of_unity(F, n)
    ech = Echelon(F)
    for j in range(n):
        ech.insert({t: F.power(w, j * t) for t in range(n + 1)})
    try:
        coords = ech.coordinates({d: F(1)})
    except ValueError:
        return None
    return tuple(coords.get(j, F(0)) for j in range(n))


@lru_cache(maxsize=64)
def _esyms(field: Field, n: int) -> tuple:
    return tuple(esym(n, d, field) for d in range(n + 1))


def symmetrize(f: Polynomial) -> Polynomial:
    """``f(ESym_n^1, ..., ESym_n^n)`` for ``f`` in ``n`` variables."""
    n = f.nvars
    e = _esyms(f.field, n)
    return f.substitute({i: e[i + 1] for i in range(n)}, nvars=n)


@dataclass(frozen=True)
class SymDecomposition:
    f: Polynomial  # in y_1..y_n, y_d standing for ESym_n^d
    n: int

    def recompose(self) -> Polynomial:
        return symmetrize(self.f)


def decompose(g: Polynomial) -> SymDecomposition:
    """The unique ``f`` with ``symmetrize(f) == g``.

    Repeatedly strip the lex-leading term ``c * x^a`` (exponents
    non-increasing for symmetric ``g``) by subtracting
    ``c * e_1^(a1-a2) * ... * e_n^an``; the leading monomial strictly
    decreases, so this terminates.
    """
    bad = symmetry_violation(g)
    if bad is not None:
        raise NotSymmetricError(bad)
    n, F = g.nvars, g.field
    e = _esyms(F, n)
    powers: dict = {}

    def epow(d, k):
        if (d, k) not in powers:
            powers[(d, k)] = Polynomial.one(F, n) if k == 0 else epow(d, k - 1) * e[d]
        return powers[(d, k)]

    rest = g
    out = {}
    while rest:
        a, c = rest.leading_term_lex()
        y = tuple(a[i] - (a[i + 1] if i + 1 < n else 0) for i in range(n))
        if any(k < 0 for k in y):
            raise AssertionError(f"leading exponent {a} not non-increasing")
        out[y] = c
        term = Polynomial.constant(F, n, c)
        for i, k in enumerate(y):
            if k:
                term = term * epow(i + 1, k)
        rest = rest - term
    return SymDecomposition(Polynomial(F, n, out), n)


def circulant_poly(n: int, k: int, field: Field | str, omega=None) -> Polynomial:
    """``prod_{j<k} (1 + sum_i y_i w^(j*i))`` with ``i`` running over 1..n."""
    F = make_field(field)
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    w = primitive_root_of_unity(F, k) if omega is None else F(omega)
    result = Polynomial.one(F, n)
    for j in range(k):
        lin = {(0,) * n: 1}
        for i in range(n):
            m = [0] * n
            m[i] = 1
            lin[tuple(m)] = F.power(w, j * (i + 1))
        result = result * Polynomial(F, n, lin)
    return result


def circulant_root_independent(n: int, k: int, field: Field | str) -> bool:
    """True when every primitive k-th root gives the same expansion."""
    F = make_field(field)
    polys = {circulant_poly(n, k, F, w) for w in primitive_roots_of_unity(F, k)}
    return len(polys) == 1


def power_sum_product(n: int, k: int, field: Field | str) -> Polynomial:
    """``prod_i (1 + x_i^k)``, equal to sum_d ESym_n^d(x_1^k, ..., x_n^k)."""
    F = make_field(field)
    return product((1 + Polynomial.var(F, n, i) ** k for i in range(n)), F, n)


def circulant_lemma_check(n: int, k: int, field: Field | str) -> Check:
    """``symmetrize(circulant_poly)`` against ``prod (1 + x_i^k)``.

    Since ``prod_j (1 + w^j t) = 1 - (-t)^k``, the two sides agree only for
    odd ``k``; for even ``k`` the left side is ``prod (1 - x_i^k)``.
    """
    F = make_field(field)
    return Check(
        f"circulant lemma n={n} k={k} over {F.spec}",
        symmetrize(circulant_poly(n, k, F)),
        power_sum_product(n, k, F),
    )


def dft_matrix(k: int, field: Field | str, omega=None) -> list[list]:
    F = make_field(field)
    w = primitive_root_of_unity(F, k) if omega is None else F(omega)
    return [[F.power(w, j * i) for i in range(k)] for j in range(k)]


@dataclass
class MinorReport:
    k: int
    field: str
    omega: object
    total: int
    zero_minors: list  # (rows, cols) index tuples, 0-based

    @property
    def all_nonsingular(self) -> bool:
        return not self.zero_minors

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "field": self.field,
            "omega": self.omega if isinstance(self.omega, int) else str(self.omega),
            "minors": self.total,
            "zero_minors": [{"rows": list(r), "cols": list(c)} for r, c in self.zero_minors],
            "all_nonsingular": self.all_nonsingular,
        }


def dft_minor_check(k: int, field: Field | str) -> MinorReport:
    """Determinant of every square submatrix of the k x k DFT matrix.

    The empty minor is counted, so the total is C(2k, k). Zero minors are
    reported, not raised: over GF(p) they can genuinely occur.
    """
    if not is_prime(k):
        raise ValueError(f"{k} is not prime")
    F = make_field(field)
    w = primitive_root_of_unity(F, k)
    M = dft_matrix(k, F, w)
    zeros = []
    count = 0
    for s in range(k + 1):
        for R in itertools.combinations(range(k), s):
            for C in itertools.combinations(range(k), s):
                count += 1
                if determinant([[M[r][c] for c in C] for r in R], F) == 0:
                    zeros.append((R, C))
    assert count == comb(2 * k, k)
    return MinorReport(k, F.spec, w, count, zeros)
