"""Graphs, induced matchings and the graph-gadget polynomial families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .field import Field, Q, make_field
from .poly import Polynomial, product, total

EXACT_MATCHING_MAX_VERTICES = 16


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset  # of sorted pairs (i, j), i < j

    def __post_init__(self):
        for e in self.edges:
            i, j = e
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge {e} for a simple graph on {self.n} vertices")

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        edges = set()
        for i, j in pairs:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            e = (min(i, j), max(i, j))
            if e in edges:
                raise ValueError(f"repeated edge {e}")
            edges.add(e)
        if n is None:
            n = max((j for _, j in edges), default=-1) + 1
        return cls(n, frozenset(edges))

    @property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def neighbours(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}


def read_graph(path: str | Path) -> Graph:
    """1-indexed edge list, one ``i j`` per line; ``#`` starts a comment."""
    pairs = []
    n = None
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'i j'")
        i, j = int(parts[0]), int(parts[1])
        if i < 1 or j < 1:
            raise ValueError(f"{path}:{lineno}: vertices are 1-indexed")
        pairs.append((i - 1, j - 1))
    return Graph.from_edges(pairs, n)


def format_graph(G: Graph) -> str:
    return "".join(f"{i + 1} {j + 1}\n" for i, j in G.sorted_edges)


@dataclass(frozen=True)
class InducedMatching:
    pairs: tuple  # edges (s, t) with s in S and t in T
    S: frozenset
    T: frozenset

    @property
    def size(self) -> int:
        return len(self.pairs)


def is_induced_matching(G: Graph, pairs: Iterable[tuple[int, int]]) -> bool:
    pairs = list(pairs)
    used = [v for e in pairs for v in e]
    if len(used) != len(set(used)):
        return False
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            for u in pairs[a]:
                for v in pairs[b]:
                    if (min(u, v), max(u, v)) in G.edges:
                        return False
    return all(tuple(sorted(e)) in G.edges for e in pairs)


def _conflicts(G: Graph, e, f) -> bool:
    if set(e) & set(f):
        return True
    return any((min(u, v), max(u, v)) in G.edges for u in e for v in f)


def induced_matching(G: Graph, S: Iterable[int]) -> InducedMatching:
    """A largest induced matching among the edges crossing ``(S, V \\ S)``.

    Exact branch and bound up to 16 vertices, greedy (smallest conflict
    degree first) beyond. The result is always checked before it is
    returned.
    """
    S = frozenset(S)
    T = frozenset(range(G.n)) - S
    crossing = [e for e in G.sorted_edges if (e[0] in S) != (e[1] in S)]
    conflict = {e: {f for f in crossing if f != e and _conflicts(G, e, f)} for e in crossing}
    if G.n <= EXACT_MATCHING_MAX_VERTICES:
        best: list = []

        def search(i, chosen, banned):
            nonlocal best
            if len(chosen) + sum(1 for e in crossing[i:] if e not in banned) <= len(best):
                return
            if i == len(crossing):
                best = list(chosen)
                return
            e = crossing[i]
            if e not in banned:
                chosen.append(e)
                search(i + 1, chosen, banned | conflict[e])
                chosen.pop()
            search(i + 1, chosen, banned)

        search(0, [], frozenset())
        picked = best
    else:
        picked = []
        banned: set = set()
        for e in sorted(crossing, key=lambda e: (len(conflict[e]), e)):
            if e not in banned:
                picked.append(e)
                banned |= conflict[e] | {e}
    pairs = tuple(sorted((i, j) if i in S else (j, i) for i, j in picked))
    if not is_induced_matching(G, pairs):
        raise AssertionError("matching search produced a non-induced matching")
    return InducedMatching(pairs, S, T)


def random_regular_graph(n: int, k: int, seed: int = 0, max_tries: int = 100_000) -> Graph:
    """Uniform pairing model, resampled until the result is simple."""
    if n < 1 or k < 0 or k >= n or (n * k) % 2:
        raise ValueError(f"no simple {k}-regular graph on {n} vertices (need n*k even, k < n)")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(k)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for a, b in zip(points[::2], points[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, frozenset(edges))
    raise RuntimeError(f"pairing model did not produce a simple graph in {max_tries} tries")


# -- polynomial families -------------------------------------------------------


def _edge_monomial(F: Field, nvars: int, e, power: int = 1) -> Polynomial:
    m = [0] * nvars
    m[e[0]] += power
    m[e[1]] += power
    return Polynomial(F, nvars, {tuple(m): 1}, _trusted=True)


def p_g(G: Graph, d: int, field: Field | str = Q, nvars: int | None = None) -> Polynomial:
    """``prod_{ij in E} ((x_i x_j)^d - 1)``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    F = make_field(field)
    n = G.n if nvars is None else nvars
    return product((_edge_monomial(F, n, e, d) - 1 for e in G.sorted_edges), F, n)


def q_g_factor(G: Graph, d: int, field: Field | str = Q, nvars: int | None = None) -> Polynomial:
    """``prod_{ij in E} (1 + x_i x_j + ... + (x_i x_j)^(d-1))``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    F = make_field(field)
    n = G.n if nvars is None else nvars
    return product(
        (total((_edge_monomial(F, n, e, a) for a in range(d)), F, n) for e in G.sorted_edges), F, n
    )


def edge_linear_factor(G: Graph, field: Field | str = Q, nvars: int | None = None) -> Polynomial:
    """``prod_{ij in E} (x_i x_j - 1)``."""
    F = make_field(field)
    n = G.n if nvars is None else nvars
    return product((_edge_monomial(F, n, e) - 1 for e in G.sorted_edges), F, n)


def quadratic(G: Graph, field: Field | str = Q, nvars: int | None = None) -> Polynomial:
    """``sum_{ij in E} x_i x_j``."""
    F = make_field(field)
    n = G.n if nvars is None else nvars
    return total((_edge_monomial(F, n, e) for e in G.sorted_edges), F, n)


def factorization_holds(G: Graph, d: int, field: Field | str = Q) -> bool:
    """``P_G == Q_G * prod (x_i x_j - 1)``, checked by multiplying out."""
    return p_g(G, d, field) == q_g_factor(G, d, field) * edge_linear_factor(G, field)


@dataclass(frozen=True)
class FactorInstance:
    f: Polynomial
    g: Polynomial
    identity_holds: bool  # f == P_G + z * prod(x_i x_j - 1)

    @property
    def z(self) -> int:
        return self.f.nvars - 1


def factor_nonclosure_instance(G: Graph, d: int, field: Field | str = Q) -> FactorInstance:
    """``g = Q_G + z`` and ``f = g * prod (x_i x_j - 1)``; ``z`` is the last variable."""
    if d < 2:
        raise ValueError("d must be at least 2")
    F = make_field(field)
    n = G.n + 1
    z = Polynomial.var(F, n, G.n)
    lin = edge_linear_factor(G, F, n)
    g = q_g_factor(G, d, F, n) + z
    f = g * lin
    return FactorInstance(f, g, f == p_g(G, d, F, n) + z * lin)


def restrict_to_matching(f: Polynomial, matching: InducedMatching) -> Polynomial:
    """Zero every variable not covered by the matching."""
    keep = {v for e in matching.pairs for v in e}
    return f.restrict({i: 0 for i in range(f.nvars) if i not in keep})
