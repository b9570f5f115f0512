"""Read-once oblivious algebraic branching programs.

An roABP in the order ``pi`` is a chain of matrices ``L_1 ... L_n``; layer
``i`` has shape ``w_{i-1} x w_i`` with ``w_0 = w_n = 1`` and its entries are
univariate polynomials in the variable ``pi[i-1]``. The computed
polynomial is the single entry of the product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .field import Field, make_field
from .linalg import Echelon
from .poly import Polynomial, graded_lex_key

# A layer entry is a sparse univariate polynomial {exponent: coefficient}.
Entry = dict


@dataclass(frozen=True)
class ROABP:
    field: Field
    order: tuple
    layers: tuple  # each a tuple of rows, each row a tuple of Entry

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ValueError("order is not a permutation")
        if len(self.layers) != n:
            raise ValueError(f"expected {n} layers, got {len(self.layers)}")
        prev = 1
        for i, L in enumerate(self.layers):
            if len(L) != prev:
                raise ValueError(f"layer {i + 1} has {len(L)} rows, expected {prev}")
            cols = len(L[0]) if L else 0
            if any(len(row) != cols for row in L):
                raise ValueError(f"layer {i + 1} is ragged")
            prev = cols
        if n and prev != 1:
            raise ValueError("last layer must have a single column")

    @property
    def nvars(self) -> int:
        return len(self.order)

    @property
    def widths(self) -> list[int]:
        """``w_1, ..., w_n`` (``w_0 = 1`` is implicit)."""
        return [len(L[0]) for L in self.layers]

    @property
    def width(self) -> int:
        return max(self.widths, default=1)

    @property
    def size(self) -> int:
        return sum(self.widths)

    def coefficients(self):
        for L in self.layers:
            for row in L:
                for entry in row:
                    yield from entry.values()

    def evaluate(self, point) -> object:
        F = self.field
        if isinstance(point, Mapping):
            missing = [v for v in self.order if v not in point]
            if missing:
                raise ValueError(f"missing value for x{missing[0] + 1}")
            vals = {v: F(point[v]) for v in self.order}
        else:
            if len(point) != self.nvars:
                raise ValueError(f"expected {self.nvars} values, got {len(point)}")
            vals = {v: F(a) for v, a in enumerate(point)}
        vec = [F(1)]
        for v, L in zip(self.order, self.layers):
            a = vals[v]
            labels = [[_eval_entry(F, e, a) for e in row] for row in L]
            vec = [
                F.norm(sum(vec[s] * labels[s][t] for s in range(len(vec))))
                for t in range(len(L[0]))
            ]
        return vec[0]

    def expand(self) -> Polynomial:
        F, n = self.field, self.nvars
        vec = [Polynomial.one(F, n)]
        for v, L in zip(self.order, self.layers):
            out = []
            for t in range(len(L[0])):
                acc = Polynomial.zero(F, n)
                for s in range(len(vec)):
                    e = L[s][t]
                    if e and vec[s]:
                        acc = acc + vec[s] * _entry_poly(F, n, v, e)
                out.append(acc)
            vec = out
        return vec[0]

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "field": self.field.spec,
            "order": [v + 1 for v in self.order],
            "layers": [
                [[[[_coeff_out(c), e] for e, c in sorted(entry.items())] for entry in row] for row in L]
                for L in self.layers
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "ROABP":
        F = make_field(data.get("field", "q"))
        order = tuple(v - 1 for v in data["order"])
        layers = []
        for L in data["layers"]:
            rows = []
            for row in L:
                entries = []
                for entry in row:
                    d = {}
                    for c, e in entry:
                        c = F(Fraction(c) if isinstance(c, str) else c)
                        if c:
                            d[int(e)] = F.norm(d.get(int(e), 0) + c)
                    entries.append({e: c for e, c in d.items() if c})
                rows.append(tuple(entries))
            layers.append(tuple(rows))
        return cls(F, order, tuple(layers))

    @classmethod
    def from_json(cls, text: str) -> "ROABP":
        return cls.from_dict(json.loads(text))


def _coeff_out(c):
    return c if isinstance(c, int) else str(c)


def _eval_entry(F: Field, entry: Entry, a):
    return F.norm(sum(c * F.power(a, e) for e, c in entry.items()))


def _entry_poly(F: Field, n: int, v: int, entry: Entry) -> Polynomial:
    terms = {}
    for e, c in entry.items():
        m = [0] * n
        m[v] = e
        terms[tuple(m)] = c
    return Polynomial(F, n, terms, _trusted=True)


def from_layers(field: Field, order: Sequence[int], layers) -> ROABP:
    """Build from nested lists; entries may be ``{exp: coeff}`` or scalars."""
    fixed = []
    for L in layers:
        rows = []
        for row in L:
            entries = []
            for e in row:
                if not isinstance(e, dict):
                    e = {0: e}
                entries.append({k: field(c) for k, c in e.items() if field(c) != 0})
            rows.append(tuple(entries))
        fixed.append(tuple(rows))
    return ROABP(field, tuple(order), tuple(fixed))


def synthesize(f: Polynomial, order: Sequence[int]) -> ROABP:
    """A roABP for ``f`` in ``order`` whose layer widths are the Nisan ranks.

    For each prefix ``Y_i`` a basis ``G_i`` of the span of the
    coefficient polynomials ``coef_extract(f, Y_i, m)`` is picked greedily
    over ``m`` in graded lex order. Splitting each element of ``G_{i-1}``
    by powers of the next variable gives pieces in ``span(G_i)``; their
    coordinates become the entries of layer ``i``. The constant spanning
    ``G_n`` is folded into the last layer.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no roABP (width 0 by convention)")
    n = f.nvars
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of the {n} variables")
    if n == 0:
        raise ValueError("a roABP needs at least one variable")
    F = f.field
    prev_basis = [f.terms]
    layers = []
    for i in range(1, n + 1):
        v = order[i - 1]
        parts = f.split(order[:i])
        ech = Echelon(F)
        basis = []
        for my in sorted(parts, key=graded_lex_key):
            if ech.insert(parts[my]):
                basis.append(parts[my])
        layer = []
        for g in prev_basis:
            pieces: dict[int, dict] = {}
            for m, c in g.items():
                k = list(m)
                k[v] = 0
                pieces.setdefault(m[v], {})[tuple(k)] = c
            row = [dict() for _ in basis]
            for e, h in pieces.items():
                for t, c in ech.coordinates(h).items():
                    row[t][e] = c
            layer.append(row)
        layers.append(layer)
        prev_basis = basis
    # G_n spans the constants: a single nonzero scalar.
    (const,) = prev_basis
    scale = next(iter(const.values()))
    last = layers[-1]
    for row in last:
        row[0] = {e: F.mul(c, scale) for e, c in row[0].items()}
    return ROABP(F, order, tuple(tuple(tuple(row) for row in L) for L in layers))
