"""Sylvester matrices, resultants and discriminants over a polynomial ring."""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field, Q, make_field
from .poly import Check, Polynomial, product


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """``a / b`` when ``b`` divides ``a``; raises ``ValueError`` otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = a.field
    lm, lc = b.leading_term_lex()
    inv = F.inv(lc)
    quotient = {}
    rest = a
    while rest:
        m, c = rest.leading_term_lex()
        shift = tuple(x - y for x, y in zip(m, lm))
        if any(s < 0 for s in shift):
            raise ValueError("polynomial division is not exact")
        coeff = F.mul(c, inv)
        quotient[shift] = coeff
        rest = rest - b.mul_monomial(shift, coeff)
    return Polynomial(F, a.nvars, quotient, _trusted=True)


def bareiss_det(matrix: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free determinant; every division is exact by construction."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in matrix]
    F, nv = M[0][0].field, M[0][0].nvars
    sign = 1
    prev = Polynomial.one(F, nv)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(F, nv)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            lead = M[i][k]
            for j in range(k + 1, n):
                num = pivot * M[i][j]
                if lead and M[k][j]:
                    num = num - lead * M[k][j]
                M[i][j] = exact_div(num, prev) if num else num
            M[i][k] = Polynomial.zero(F, nv)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


@dataclass(frozen=True)
class SylvesterMatrix:
    entries: tuple  # rows of Polynomials free of y
    d1: int
    d2: int

    @property
    def size(self) -> int:
        return self.d1 + self.d2

    def det(self) -> Polynomial:
        return bareiss_det([list(r) for r in self.entries])


def y_coefficients(f: Polynomial, y: int) -> list[Polynomial]:
    """``[f_0, ..., f_d]`` with ``f = sum f_i y^i``."""
    parts = f.coeffs_in(y)
    d = max(parts)
    zero = Polynomial.zero(f.field, f.nvars)
    return [parts.get(i, zero) for i in range(d + 1)]


def sylvester_matrix(f: Polynomial, g: Polynomial, y: int) -> SylvesterMatrix:
    """Banded ``(d1+d2)``-square matrix: ``d2`` shifted columns of ``f``'s
    coefficients followed by ``d1`` shifted columns of ``g``'s, leading
    coefficients on top. Degrees are the actual ``y``-degrees."""
    if f.field != g.field or f.nvars != g.nvars:
        raise ValueError("f and g must share field and arity")
    if f.is_zero() or g.is_zero():
        raise ValueError("Sylvester matrix of the zero polynomial")
    d1, d2 = f.degree_in(y), g.degree_in(y)
    if d1 < 1 or d2 < 1:
        raise ValueError(f"both inputs need positive degree in x{y + 1} (got {d1}, {d2})")
    fc, gc = y_coefficients(f, y), y_coefficients(g, y)
    N = d1 + d2
    zero = Polynomial.zero(f.field, f.nvars)
    rows = [[zero] * N for _ in range(N)]
    for c in range(d2):
        for t in range(d1 + 1):
            rows[c + t][c] = fc[d1 - t]
    for c in range(d1):
        for t in range(d2 + 1):
            rows[c + t][d2 + c] = gc[d2 - t]
    return SylvesterMatrix(tuple(tuple(r) for r in rows), d1, d2)


def resultant(f: Polynomial, g: Polynomial, y: int) -> Polynomial:
    return sylvester_matrix(f, g, y).det()


def discriminant(f: Polynomial, y: int) -> Polynomial:
    """``Res_y(f, df/dy)`` with no leading-coefficient normalisation."""
    df = f.partial(y)
    if df.is_zero():
        p = f.field.characteristic
        raise ValueError(
            f"derivative in x{y + 1} vanishes" + (f" (characteristic {p} degeneracy)" if p else "")
        )
    return resultant(f, df, y)


@dataclass(frozen=True)
class DiscInstance:
    f: Polynomial  # y^d - g*y, with y the last variable
    expected: Polynomial  # -(d-1)^(d-1) * g^d
    y: int


def disc_hardness_instance(g: Polynomial, d: int) -> DiscInstance:
    """``f = y^d - g y`` over ``g``'s variables plus a new last variable ``y``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if g.is_zero():
        raise ValueError("g must be nonzero")
    n = g.nvars + 1
    G = g.extend(n)
    y = Polynomial.var(g.field, n, n - 1)
    f = y**d - G * y
    expected = (G**d).scale(-((d - 1) ** (d - 1)))
    return DiscInstance(f, expected, n - 1)


def split_form_check(r: int, s: int, field: Field | str = Q) -> Check:
    """Res_y of ``prod (y - a_i)`` and ``prod (y - b_j)`` against ``prod_i g(a_i)``.

    Variable 0 is ``y``, then ``a_1..a_r``, then ``b_1..b_s``.
    """
    F = make_field(field)
    n = 1 + r + s
    y = Polynomial.var(F, n, 0)
    a = [Polynomial.var(F, n, 1 + i) for i in range(r)]
    b = [Polynomial.var(F, n, 1 + r + j) for j in range(s)]
    f = product((y - ai for ai in a), F, n)
    g = product((y - bj for bj in b), F, n)
    rhs = product((g.substitute({0: ai}) for ai in a), F, n)
    return Check(f"split-form resultant r={r} s={s}", resultant(f, g, 0), rhs)
