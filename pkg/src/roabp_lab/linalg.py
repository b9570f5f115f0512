"""Exact linear algebra over a :class:`~roabp_lab.field.Field`.

Rank goes through the elimination kernels: plain elimination over GF(p),
Bareiss over the integers after clearing row denominators over the
rationals. :class:`Echelon` is the incremental solver used for basis
selection and coordinate solves.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from . import kernels
from .field import Field, is_prime

# Primes for the optional modular shortcut stay below the compiled kernel's limit.
_MODULAR_LO, _MODULAR_HI = 2**29, 2**31 - 1


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            if type(x) is Fraction:
                den = lcm(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


def random_primes(count: int, seed: int = 0) -> list[int]:
    rng = random.Random(seed)
    found: list[int] = []
    while len(found) < count:
        p = rng.randrange(_MODULAR_LO, _MODULAR_HI) | 1
        if is_prime(p) and p not in found:
            found.append(p)
    return found


def matrix_rank(rows, field: Field, *, method: str = "exact", primes: int = 3, seed: int = 0) -> int:
    """Rank of a dense matrix given as a list of equal-length rows.

    ``method="modular"`` (rationals only) reports the maximum rank modulo
    a few random primes. That is a lower bound which is exact with high
    probability, never a certificate.
    """
    if not rows or not rows[0]:
        return 0
    if field.kind == "fp":
        return kernels.rank_mod_p(rows, field.modulus)
    ints = _integer_rows(rows)
    if method == "exact":
        return kernels.rank_integer(ints)
    if method == "modular":
        return max(kernels.rank_mod_p(ints, p) for p in random_primes(primes, seed))
    raise ValueError(f"unknown rank method {method!r}")


def determinant(matrix, field: Field):
    """Determinant of a square scalar matrix by elimination over the field."""
    n = len(matrix)
    if n == 0:
        return field(1)
    a = [[field(x) for x in row] for row in matrix]
    det = field(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return field(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = field.neg(det)
        pc = a[c][c]
        det = field.mul(det, pc)
        inv = field.inv(pc)
        for i in range(c + 1, n):
            f = a[i][c]
            if f != 0:
                f = field.mul(f, inv)
                ai, ac = a[i], a[c]
                for j in range(c, n):
                    ai[j] = field.sub(ai[j], field.mul(f, ac[j]))
    return det


class Echelon:
    """Incremental echelon form over sparse vectors ``{column: value}``.

    Vectors are inserted one at a time; each independent insertion becomes
    a basis element. Any vector in the span can then be written in that
    basis with :meth:`coordinates`, so a single elimination serves many
    right-hand sides.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: dict = {}  # pivot column -> (echelon row, combination over basis)
        self.size = 0

    def __len__(self) -> int:
        return self.size

    def _reduce(self, vec: dict):
        F = self.field
        v = {c: x for c, x in vec.items() if x != 0}
        combo: dict[int, object] = {}
        while True:
            hit = [c for c in v if c in self.pivots]
            if not hit:
                return v, combo
            c = min(hit)
            row, rcombo = self.pivots[c]
            f = v[c]
            for k, x in row.items():
                y = F.sub(v.get(k, 0), F.mul(f, x))
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            for t, x in rcombo.items():
                y = F.add(combo.get(t, 0), F.mul(f, x))
                if y:
                    combo[t] = y
                else:
                    combo.pop(t, None)

    def insert(self, vec: dict) -> bool:
        """Add ``vec``; True when it was independent of what came before."""
        F = self.field
        residue, combo = self._reduce(vec)
        if not residue:
            return False
        c = min(residue)
        inv = F.inv(residue[c])
        row = {k: F.mul(x, inv) for k, x in residue.items()}
        # residue = vec - sum(combo[t] * basis[t]), a combination over the basis
        rcombo = {t: F.neg(F.mul(x, inv)) for t, x in combo.items()}
        rcombo[self.size] = inv
        self.pivots[c] = (row, rcombo)
        self.size += 1
        return True

    def coordinates(self, vec: dict) -> dict[int, object]:
        """``{basis index: coefficient}`` with ``vec == sum(coef * basis)``."""
        residue, combo = self._reduce(vec)
        if residue:
            raise ValueError("vector is not in the span of the basis")
        return combo
