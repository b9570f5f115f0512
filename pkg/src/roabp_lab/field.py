"""Exact coefficient fields: the rationals and prime fields GF(p).

Field elements are plain Python values rather than wrapper objects, which
keeps polynomial arithmetic cheap:

* over ``q`` an element is an ``int`` or a ``fractions.Fraction`` whose
  denominator is not 1 (``Fraction`` keeps itself reduced with a positive
  denominator);
* over ``fp:<p>`` an element is an ``int`` in ``[0, p)``.

A :class:`Field` knows how to normalise, combine and invert such values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]

_SPEC_RE = re.compile(r"^\s*(?:(q)|fp:(\d+))\s*$", re.IGNORECASE)


class FieldError(ValueError):
    """Malformed field spec or non-prime modulus."""


class NoRootError(ValueError):
    """The field has no primitive root of unity of the requested order."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class Field:
    kind: str  # "q" or "fp"
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "q":
            if self.modulus is not None:
                raise FieldError("the rationals take no modulus")
        elif self.kind == "fp":
            if self.modulus is None or not is_prime(self.modulus):
                raise FieldError(f"modulus {self.modulus} is not prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    # -- descriptors -------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "q" else self.modulus

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "fp"

    @property
    def spec(self) -> str:
        return "q" if self.kind == "q" else f"fp:{self.modulus}"

    def __str__(self) -> str:
        return self.spec

    # -- element arithmetic ------------------------------------------------

    def __call__(self, value) -> Scalar:
        """Coerce an int or Fraction into canonical form for this field."""
        if self.kind == "q":
            if isinstance(value, int):
                return int(value)
            value = Fraction(value)
            return value.numerator if value.denominator == 1 else value
        p = self.modulus
        if isinstance(value, int):
            return value % p
        value = Fraction(value)
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"{value} has no image in {self.spec}")
        return value.numerator * pow(den, -1, p) % p

    def norm(self, value: Scalar) -> Scalar:
        """Canonicalise the result of raw ``+ - *`` on canonical elements."""
        if self.kind == "q":
            if type(value) is Fraction and value.denominator == 1:
                return value.numerator
            return value
        return value % self.modulus

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.norm(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "q":
            return self.norm(1 / Fraction(a))
        return pow(a, -1, self.modulus)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def power(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.power(self.inv(a), -e)
        if self.kind == "q":
            return self.norm(Fraction(a) ** e) if type(a) is Fraction else a**e
        return pow(a, e, self.modulus)

    def format(self, a: Scalar) -> str:
        return str(a)

    def elements(self):
        """All elements of a prime field, in increasing order."""
        if self.kind != "fp":
            raise FieldError("the rationals are infinite")
        return range(self.modulus)


Q = Field("q")


def make_field(spec) -> Field:
    """Parse ``"q"`` or ``"fp:<p>"``; a :class:`Field` passes through."""
    if isinstance(spec, Field):
        return spec
    m = _SPEC_RE.match(str(spec))
    if not m:
        raise FieldError(f"malformed field spec {spec!r}; expected 'q' or 'fp:<p>'")
    if m.group(1):
        return Q
    p = int(m.group(2))
    if not is_prime(p):
        raise FieldError(f"modulus {p} is not prime")
    return Field("fp", p)


def multiplicative_order(a: int, p: int) -> int:
    if a % p == 0:
        raise ValueError("zero has no multiplicative order")
    x, k = a % p, 1
    while x != 1:
        x = x * a % p
        k += 1
    return k


def primitive_root_of_unity(field: Field, k: int) -> Scalar:
    """The smallest element of exact multiplicative order ``k``.

    Over GF(p) such an element exists iff ``k | p - 1``; the search walks
    the residues in increasing order and tests orders exhaustively. Over
    the rationals only ``k`` in ``{1, 2}`` works.
    """
    if k < 1:
        raise ValueError("k must be positive")
    field = make_field(field)
    if field.kind == "q":
        if k == 1:
            return 1
        if k == 2:
            return -1
        raise NoRootError(f"no primitive {k}-th root of unity in {field.spec}")
    p = field.modulus
    if (p - 1) % k:
        raise NoRootError(
            f"no primitive {k}-th root of unity in {field.spec} ({k} does not divide {p - 1})"
        )
    for a in range(1, p):
        if pow(a, k, p) == 1 and multiplicative_order(a, p) == k:
            return a
    raise AssertionError("unreachable: GF(p)* is cyclic")


def primitive_roots_of_unity(field: Field, k: int) -> list[Scalar]:
    """Every primitive ``k``-th root: the powers ``w**j`` with gcd(j, k) = 1."""
    from math import gcd

    w = primitive_root_of_unity(field, k)
    return [field.power(w, j) for j in range(1, k + 1) if gcd(j, k) == 1]


def smallest_prime_with_root(k: int, start: int = 2) -> int:
    """Smallest prime ``p >= start`` with ``k | p - 1``."""
    p = max(start, 2)
    while not (is_prime(p) and (p - 1) % k == 0):
        p += 1
    return p
