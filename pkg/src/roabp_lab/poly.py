"""Sparse multivariate polynomials with exact coefficients.

Monomials are dense exponent tuples of a fixed arity. Variables are
0-based internally; the text form names them ``x1, x2, ...``.

A :class:`Polynomial` never stores a zero coefficient, so two polynomials
are equal exactly when their term dictionaries are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import Field, Q, Scalar, make_field

Monomial = tuple


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        self.pos = pos
        super().__init__(msg if pos is None else f"{msg} at position {pos}")


def graded_lex_key(m: Monomial):
    return (sum(m), m)


class Polynomial:
    """An immutable sparse polynomial over ``field`` in ``nvars`` variables."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms: Mapping | None = None, *, _trusted: bool = False):
        self.field = field
        self.nvars = nvars
        if terms is None:
            terms = {}
        elif not _trusted:
            clean = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nvars or any(e < 0 for e in m):
                    raise ValueError(f"monomial {m} does not fit arity {nvars}")
                c = field(c)
                if c != 0:
                    clean[m] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Polynomial":
        return cls(field, nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> "Polynomial":
        c = field(c)
        return cls(field, nvars, {(0,) * nvars: c} if c != 0 else {}, _trusted=True)

    @classmethod
    def one(cls, field: Field, nvars: int) -> "Polynomial":
        return cls.constant(field, nvars, 1)

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise IndexError(f"variable {i} out of range for arity {nvars}")
        m = [0] * nvars
        m[i] = 1
        return cls(field, nvars, {tuple(m): 1}, _trusted=True)

    @classmethod
    def monomial(cls, field: Field, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(field, len(exps), {tuple(exps): c})

    def _new(self, terms: dict) -> "Polynomial":
        return Polynomial(self.field, self.nvars, terms, _trusted=True)

    # -- basic queries -----------------------------------------------------

    @property
    def sparsity(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def variables(self) -> list[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def coefficient(self, m: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(m), 0)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def sorted_terms(self, reverse: bool = True) -> list:
        """Terms in graded lex order, highest first by default."""
        return sorted(self.terms.items(), key=lambda t: graded_lex_key(t[0]), reverse=reverse)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.field.spec}, {self.nvars}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field.spec} vs {other.field.spec}")
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.field, self.nvars, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        norm = self.field.norm
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        norm = self.field.norm
        return self._new({m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if c == 0:
            return self._new({})
        norm = self.field.norm
        return self._new({m: norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = get(m, 0) + ca * cb
        norm = self.field.norm
        clean = {}
        for m, c in out.items():
            c = norm(c)
            if c:
                clean[m] = c
        return self._new(clean)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.field, self.nvars)
        for _ in range(e):
            result = result * self
        return result

    def mul_monomial(self, m: Sequence[int], c=1) -> "Polynomial":
        c = self.field(c)
        if c == 0:
            return self._new({})
        norm = self.field.norm
        return self._new({tuple(x + y for x, y in zip(k, m)): norm(v * c) for k, v in self.terms.items()})

    # -- structural operations --------------------------------------------

    def partial(self, i: int) -> "Polynomial":
        """Formal derivative with respect to variable ``i``."""
        norm = self.field.norm
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                v = norm(c * m[i])
                if v:
                    k = list(m)
                    k[i] -= 1
                    out[tuple(k)] = v
        return self._new(out)

    def coeffs_in(self, i: int) -> dict[int, "Polynomial"]:
        """Write ``self = sum_e x_i**e * h_e``; returns ``{e: h_e}`` with ``h_e`` free of ``x_i``."""
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[i]
            k = list(m)
            k[i] = 0
            parts.setdefault(e, {})[tuple(k)] = c
        return {e: self._new(t) for e, t in parts.items()}

    def split(self, Y: Iterable[int]) -> dict[Monomial, dict[Monomial, Scalar]]:
        """Group terms by their ``Y``-part: ``{m_Y: {m_Z: coeff}}``.

        Both keys are full-arity tuples, zero outside ``Y`` (resp. outside ``Z``).
        """
        ymask = [False] * self.nvars
        for i in Y:
            ymask[i] = True
        out: dict = {}
        for m, c in self.terms.items():
            my = tuple(e if y else 0 for e, y in zip(m, ymask))
            mz = tuple(0 if y else e for e, y in zip(m, ymask))
            out.setdefault(my, {})[mz] = c
        return out

    def coef_extract(self, Y: Iterable[int], m_Y) -> "Polynomial":
        """The polynomial ``h`` over ``X \\ Y`` multiplying ``m_Y`` in ``self``.

        ``m_Y`` is either a full-arity exponent tuple supported on ``Y`` or a
        mapping ``{var: exponent}``. The result keeps the ambient arity.
        """
        Y = set(Y)
        if isinstance(m_Y, Mapping):
            key = [0] * self.nvars
            for i, e in m_Y.items():
                key[i] = e
            key = tuple(key)
        else:
            key = tuple(m_Y)
        if len(key) != self.nvars:
            raise ValueError("monomial arity mismatch")
        if any(e and i not in Y for i, e in enumerate(key)):
            raise ValueError("m_Y is not supported on Y")
        out = {}
        for m, c in self.terms.items():
            if all(m[i] == key[i] for i in Y):
                out[tuple(0 if i in Y else e for i, e in enumerate(m))] = c
        return self._new(out)

    def substitute(self, mapping: Mapping[int, "Polynomial | Scalar"], nvars: int | None = None) -> "Polynomial":
        """Replace variable ``i`` by ``mapping[i]``; unmapped variables stay put.

        Polynomial images fix the arity of the result; with only scalar
        images the arity is kept (or taken from ``nvars``).
        """
        images = {}
        target = nvars
        for i, img in mapping.items():
            if isinstance(img, Polynomial):
                if img.field != self.field:
                    raise ValueError(f"field mismatch: {self.field.spec} vs {img.field.spec}")
                if target is None:
                    target = img.nvars
                elif img.nvars != target:
                    raise ValueError("substituted images disagree on arity")
            images[i] = img
        if target is None:
            target = self.nvars
        F = self.field
        for i in range(self.nvars):
            if i not in images:
                if i >= target:
                    if self.degree_in(i) <= 0:
                        continue
                    raise ValueError(f"unmapped variable x{i + 1} does not exist in the target ring")
                images[i] = Polynomial.var(F, target, i)
        for i, img in list(images.items()):
            if not isinstance(img, Polynomial):
                images[i] = Polynomial.constant(F, target, img)
        cache: dict = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return cache[key]

        result = Polynomial.zero(F, target)
        for m, c in self.terms.items():
            term = Polynomial.constant(F, target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
                    if not term:
                        break
            result = result + term
        return result

    def restrict(self, assignment: Mapping[int, Scalar]) -> "Polynomial":
        """Set the given variables to constants, keeping the arity."""
        F = self.field
        norm = F.norm
        pw = {i: F(a) for i, a in assignment.items()}
        out: dict = {}
        for m, c in self.terms.items():
            k = list(m)
            for i, a in pw.items():
                if m[i]:
                    c = c * F.power(a, m[i])
                    k[i] = 0
            k = tuple(k)
            out[k] = out.get(k, 0) + c
        clean = {}
        for m, c in out.items():
            c = norm(c)
            if c:
                clean[m] = c
        return self._new(clean)

    def evaluate(self, point) -> Scalar:
        """Value at a full assignment (sequence, or mapping var -> value)."""
        F = self.field
        if isinstance(point, Mapping):
            missing = [i for i in self.variables() if i not in point]
            if missing:
                raise ValueError(f"missing value for x{missing[0] + 1}")
            vals = [F(point.get(i, 0)) for i in range(self.nvars)]
        else:
            if len(point) != self.nvars:
                raise ValueError(f"expected {self.nvars} values, got {len(point)}")
            vals = [F(a) for a in point]
        total = 0
        for m, c in self.terms.items():
            t = c
            for a, e in zip(vals, m):
                if e:
                    t = t * F.power(a, e)
            total = total + t
        return F.norm(total)

    def rename(self, perm: Sequence[int], nvars: int | None = None) -> "Polynomial":
        """Move variable ``i`` to position ``perm[i]``."""
        nvars = self.nvars if nvars is None else nvars
        out = {}
        for m, c in self.terms.items():
            k = [0] * nvars
            for i, e in enumerate(m):
                if e:
                    k[perm[i]] = e
            out[tuple(k)] = c
        return Polynomial(self.field, nvars, out, _trusted=True)

    def extend(self, nvars: int) -> "Polynomial":
        """Embed into a ring with more variables (appended at the end)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink arity with extend")
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(self.field, nvars, {m + pad: c for m, c in self.terms.items()}, _trusted=True)

    def swap(self, i: int, j: int) -> "Polynomial":
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.rename(perm)

    def leading_term_lex(self):
        """``(monomial, coeff)`` of the lex-largest monomial (x1 > x2 > ...)."""
        m = max(self.terms)
        return m, self.terms[m]

    def is_symmetric(self) -> bool:
        return symmetry_violation(self) is None


@dataclass(frozen=True)
class Check:
    """Both sides of an identity, expanded to canonical form."""

    name: str
    lhs: Polynomial
    rhs: Polynomial

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self) -> bool:
        return self.holds



def symmetry_violation(f: Polynomial) -> tuple[int, int] | None:
    """First adjacent transposition ``(i, i+1)`` that changes ``f``, if any."""
    for i in range(f.nvars - 1):
        if f.swap(i, i + 1) != f:
            return (i, i + 1)
    return None


def variables(field: Field, nvars: int) -> list[Polynomial]:
    return [Polynomial.var(field, nvars, i) for i in range(nvars)]


def product(factors: Iterable[Polynomial], field: Field, nvars: int) -> Polynomial:
    result = Polynomial.one(field, nvars)
    for g in factors:
        result = result * g
    return result


def total(terms: Iterable[Polynomial], field: Field, nvars: int) -> Polynomial:
    result = Polynomial.zero(field, nvars)
    for g in terms:
        result = result + g
    return result


def reconstruct(parts: Mapping[Monomial, Polynomial], field: Field, nvars: int) -> Polynomial:
    """``sum(m_Y * h)`` over a ``{m_Y: h}`` mapping."""
    return total((h.mul_monomial(m) for m, h in parts.items()), field, nvars)


# -- text format -------------------------------------------------------------

def _format_coeff(field: Field, c) -> str:
    return str(c)


def format_poly(f: Polynomial) -> str:
    """Canonical text, terms in descending graded lex order."""
    if not f.terms:
        return "0"
    pieces = []
    for m, c in f.sorted_terms():
        neg = f.field.kind == "q" and c < 0
        a = -c if neg else c
        mono = "*".join(
            f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e
        )
        if not mono:
            body = _format_coeff(f.field, a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(f.field, a)}*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|x(\d+)|([+\-*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("var", int(m.group(2)), start))
        else:
            out.append((m.group(3), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_poly(text: str, field: Field | str = Q, nvars: int | None = None) -> Polynomial:
    """Parse the ``3*x1^2*x2 - 1/2`` text form.

    The arity defaults to the largest variable index that occurs.
    """
    field = make_field(field)
    toks = _tokenize(text)
    k = 0
    terms: list[tuple[int, dict, object]] = []  # (sign, {var: exp}, coeff)

    def peek():
        return toks[k]

    def take(kind=None):
        nonlocal k
        tok = toks[k]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}", tok[2])
        k += 1
        return tok

    def factor(exps, coeff):
        tok = take()
        if tok[0] == "num":
            c = tok[1]
            if peek()[0] == "/":
                slash = take()
                if field.kind != "q":
                    raise ParseError(f"fraction is not a coefficient of {field.spec}", slash[2])
                den = take("num")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                c = Fraction(c, den[1])
            return coeff * c
        if tok[0] == "var":
            if tok[1] < 1:
                raise ParseError("variables are 1-indexed (x1, x2, ...)", tok[2])
            e = 1
            if peek()[0] == "^":
                take()
                e = take("num")[1]
            exps[tok[1] - 1] = exps.get(tok[1] - 1, 0) + e
            return coeff
        raise ParseError(f"unexpected {tok[0]}", tok[2])

    first = True
    while True:
        tok = peek()
        sign = 1
        if tok[0] in ("+", "-"):
            take()
            sign = -1 if tok[0] == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-'", tok[2])
        exps: dict = {}
        coeff = factor(exps, Fraction(1))
        while peek()[0] == "*":
            take()
            coeff = factor(exps, coeff)
        terms.append((sign, exps, coeff))
        first = False
        if peek()[0] == "end":
            break
    top = max((i + 1 for _, e, _ in terms for i in e), default=0)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise ParseError(f"variable x{top} exceeds arity {nvars}")
    result: dict = {}
    for sign, exps, coeff in terms:
        m = [0] * nvars
        for i, e in exps.items():
            m[i] = e
        m = tuple(m)
        result[m] = result.get(m, 0) + sign * coeff
    return Polynomial(field, nvars, result)
