"""Nisan coefficient matrices, their exact ranks, and order searches.

For a cut ``Y | Z`` of the variables, the Nisan matrix of ``f`` has an
entry ``coef(m_Y * m_Z)`` at row ``m_Y`` and column ``m_Z``. In the order
``pi`` the smallest roABP for ``f`` has layer ``i`` of width exactly the
rank at the prefix cut ``Y_i = {pi[0], ..., pi[i-1]}``.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import factorial
from typing import Iterable, Sequence

from .linalg import matrix_rank
from .poly import Polynomial, graded_lex_key

EXHAUSTIVE_CAP = 8


class OrderCapError(ValueError):
    """Exhaustive order enumeration requested beyond the configured cap."""


@dataclass(frozen=True)
class NisanMatrix:
    field: object
    Y: tuple
    rows: list  # Y-monomials (full-arity tuples) occurring in f
    cols: list  # Z-monomials occurring in f
    entries: dict  # (row index, col index) -> nonzero coefficient

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def dense(self) -> list[list]:
        out = [[0] * len(self.cols) for _ in self.rows]
        for (i, j), c in self.entries.items():
            out[i][j] = c
        return out

    def transpose(self) -> "NisanMatrix":
        n = len(self.rows[0]) if self.rows else 0
        Z = tuple(i for i in range(n) if i not in self.Y)
        return NisanMatrix(
            self.field, Z, list(self.cols), list(self.rows), {(j, i): c for (i, j), c in self.entries.items()}
        )

    def rank(self, method: str = "exact") -> int:
        return rank(self, method=method)


def nisan_matrix(f: Polynomial, Y: Iterable[int]) -> NisanMatrix:
    Y = tuple(sorted(set(Y)))
    if any(not 0 <= i < f.nvars for i in Y):
        raise ValueError(f"cut {Y} is outside the {f.nvars} variables")
    parts = f.split(Y)
    rows = sorted(parts, key=graded_lex_key)
    cols = sorted({mz for zs in parts.values() for mz in zs}, key=graded_lex_key)
    col_index = {m: j for j, m in enumerate(cols)}
    entries = {}
    for i, my in enumerate(rows):
        for mz, c in parts[my].items():
            entries[(i, col_index[mz])] = c
    return NisanMatrix(f.field, Y, rows, cols, entries)


def rank(M: NisanMatrix, method: str = "exact") -> int:
    """Exact rank; ``method="modular"`` is the unchecked shortcut over the rationals."""
    if not M.entries:
        return 0
    dense = M.dense()
    if len(dense) > len(dense[0]):
        dense = [list(col) for col in zip(*dense)]
    return matrix_rank(dense, M.field, method=method)


def cut_rank(f: Polynomial, Y: Iterable[int], method: str = "exact") -> int:
    return rank(nisan_matrix(f, Y), method=method)


@dataclass(frozen=True)
class CutProfile:
    order: tuple
    ranks: tuple
    width: int
    size: int

    def to_dict(self) -> dict:
        """JSON record; variables are reported 1-indexed."""
        return {"order": [i + 1 for i in self.order], "ranks": list(self.ranks), "width": self.width, "size": self.size}


def _check_order(order: Sequence[int], n: int) -> tuple:
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation of the {n} variables")
    return order


def profile_from_ranks(order: Sequence[int], ranks: Sequence[int]) -> CutProfile:
    ranks = tuple(ranks)
    return CutProfile(tuple(order), ranks, max(ranks, default=0), sum(ranks))


def width_profile(f: Polynomial, order: Sequence[int], method: str = "exact", cache: dict | None = None) -> CutProfile:
    """Ranks at every prefix cut of ``order``.

    The zero polynomial has all ranks 0 and so width and size 0.
    """
    order = _check_order(order, f.nvars)
    if cache is None:
        cache = {}
    ranks = []
    for i in range(1, f.nvars + 1):
        key = frozenset(order[:i])
        if key not in cache:
            cache[key] = cut_rank(f, key, method)
        ranks.append(cache[key])
    return profile_from_ranks(order, ranks)


@dataclass
class OrderSearch:
    order: tuple
    width: int
    examined: int
    exhaustive: bool
    profiles: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "best_order": [i + 1 for i in self.order],
            "min_width": self.width,
            "orders_examined": self.examined,
            "exhaustive": self.exhaustive,
            "bound": "exact minimum" if self.exhaustive else "upper bound on the minimum (sampled orders)",
        }


def parse_strategy(strategy) -> tuple[str, int]:
    """``"all"`` or ``"random:N"`` (also ``("random", N)``)."""
    if isinstance(strategy, tuple):
        return strategy[0], int(strategy[1])
    if strategy == "all":
        return "all", 0
    if isinstance(strategy, str) and strategy.startswith("random:"):
        return "random", int(strategy.split(":", 1)[1])
    raise ValueError(f"unknown order strategy {strategy!r}")


def candidate_orders(n: int, strategy="all", seed: int = 0, cap: int = EXHAUSTIVE_CAP) -> list[tuple]:
    kind, count = parse_strategy(strategy)
    if kind == "all":
        if n > cap:
            raise OrderCapError(f"{n}! = {factorial(n)} orders exceeds the exhaustive cap n <= {cap}")
        return list(itertools.permutations(range(n)))
    rng = random.Random(seed)
    orders = []
    base = list(range(n))
    for _ in range(count):
        rng.shuffle(base)
        orders.append(tuple(base))
    return orders


def _rank_task(args):
    f, Y, method = args
    return cut_rank(f, Y, method)


def subset_ranks(f: Polynomial, subsets: Iterable[frozenset], method: str = "exact", jobs: int = 1) -> dict:
    """Rank at each cut, computed once per distinct variable subset.

    A cut and its complement share a rank (transposed matrices), so only
    one of each pair is eliminated. Results never depend on ``jobs``.
    """
    full = frozenset(range(f.nvars))
    todo = []
    seen = set()
    for S in subsets:
        key = min(S, full - S, key=lambda s: (len(s), sorted(s)))
        if key not in seen:
            seen.add(key)
            todo.append(key)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_rank_task, [(f, tuple(S), method) for S in todo], chunksize=8))
    else:
        values = [cut_rank(f, S, method) for S in todo]
    out = {}
    for S, r in zip(todo, values):
        out[S] = r
        out[full - S] = r
    return out


def profiles_over_orders(f: Polynomial, orders: Sequence[tuple], method: str = "exact", jobs: int = 1) -> list[CutProfile]:
    subsets = {frozenset(o[:i]) for o in orders for i in range(1, f.nvars + 1)}
    ranks = subset_ranks(f, sorted(subsets, key=lambda s: (len(s), sorted(s))), method, jobs)
    return [profile_from_ranks(o, [ranks[frozenset(o[:i])] for i in range(1, f.nvars + 1)]) for o in orders]


def min_width_over_orders(
    f: Polynomial,
    strategy="all",
    seed: int = 0,
    cap: int = EXHAUSTIVE_CAP,
    method: str = "exact",
    jobs: int = 1,
    keep_profiles: bool = False,
) -> OrderSearch:
    """Order of least width among the examined ones (first found on ties)."""
    orders = candidate_orders(f.nvars, strategy, seed, cap)
    profiles = profiles_over_orders(f, orders, method, jobs)
    best = min(range(len(profiles)), key=lambda k: profiles[k].width) if profiles else None
    kind, _ = parse_strategy(strategy)
    if best is None:
        return OrderSearch((), 0, 0, kind == "all", profiles if keep_profiles else [])
    return OrderSearch(
        profiles[best].order, profiles[best].width, len(orders), kind == "all", profiles if keep_profiles else []
    )


def eval_dim_lower_bound(
    f: Polynomial, Y: Iterable[int], samples: int, seed: int = 0, spread: int = 10_000
) -> int:
    """Rank of the coefficient vectors of ``f(Y, a)`` over random points ``a``.

    Each row records the coefficients of one partial evaluation over the
    ``Y``-monomials of ``f``; its rank never exceeds the Nisan rank.
    Points are drawn from ``[-spread, spread]`` over the rationals and
    uniformly over a prime field.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    Y = tuple(sorted(set(Y)))
    Z = [i for i in range(f.nvars) if i not in Y]
    F = f.field
    if F.kind == "fp":
        top = max((f.degree_in(i) for i in Z), default=0)
        if Z and F.modulus <= top:
            raise ValueError(
                f"degenerate sampling domain: {F.spec} cannot separate degree {top} in the evaluated variables"
            )
    if f.is_zero():
        return 0
    parts = f.split(Y)
    rows = sorted(parts, key=graded_lex_key)
    rng = random.Random(seed)
    matrix = []
    for _ in range(samples):
        if F.kind == "fp":
            a = {i: rng.randrange(F.modulus) for i in Z}
        else:
            a = {i: rng.randint(-spread, spread) for i in Z}
        vec = []
        for my in rows:
            acc = 0
            for mz, c in parts[my].items():
                t = c
                for i in Z:
                    if mz[i]:
                        t = t * a[i] ** mz[i]
                acc += t
            vec.append(F(acc) if F.kind == "fp" else F.norm(acc))
        matrix.append(vec)
    return matrix_rank(matrix, F)
