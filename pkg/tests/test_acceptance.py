"""Acceptance criteria, each checked exactly (no tolerance).

Every test records a one-line verdict; the summary hook in ``conftest``
prints them all at the end of the run. Several criteria are split into
sub-claims so that each claim passes or fails on its own. Run this file
directly to print the lines without pytest.
"""

from __future__ import annotations

import itertools
import random
from math import comb

import pytest
import sympy

from conftest import coefficient_matrix_rank, random_poly
from roabp_lab.field import make_field, smallest_prime_with_root
from roabp_lab.experiments import restrict_leading
from roabp_lab.gadgets import Graph, factor_nonclosure_instance, factorization_holds, p_g, quadratic
from roabp_lab.nisan import (
    candidate_orders,
    cut_rank,
    eval_dim_lower_bound,
    nisan_matrix,
    profiles_over_orders,
    width_profile,
)
from roabp_lab.poly import Polynomial, product
from roabp_lab.roabp import synthesize
from roabp_lab.symfun import (
    NotSymmetricError,
    ben_or_identity,
    ben_or_solve,
    circulant_lemma_check,
    circulant_poly,
    decompose,
    dft_matrix,
    dft_minor_check,
    esym,
    esym_partition_check,
    esym_roabp,
    generating_function_check,
    power_sum_product,
    symmetrize,
)
from roabp_lab.sylvester import disc_hardness_instance, discriminant, split_form_check

RESULTS: dict[str, tuple[bool, str]] = {}


def record(cid: str, ok: bool, detail: str) -> None:
    RESULTS[cid] = (ok, detail)
    print(f"criterion {cid}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


# 1 -----------------------------------------------------------------------------


def test_c01_synthesis_matches_rank_profile():
    rng = random.Random(2024)
    bad = []
    for t in range(50):
        n = rng.randint(1, 6)
        f = random_poly(rng, n, max_deg=4, sparsity=30)
        order = list(range(n))
        rng.shuffle(order)
        oracle = tuple(coefficient_matrix_rank(f, order[:i]) for i in range(1, n + 1))
        A = synthesize(f, order)
        if tuple(A.widths) != oracle or width_profile(f, order).ranks != oracle or A.expand() != f:
            bad.append(t)
    record("1", not bad, f"50 random polynomials, widths = sympy rank profile and expand = f; failures {bad}")


# 2 -----------------------------------------------------------------------------


def _gadget_product(n: int, d: int, F) -> Polynomial:
    N = 2 * n
    facs = []
    for i in range(n):
        yz = Polynomial.var(F, N, i) * Polynomial.var(F, N, n + i)
        facs.append(sum((yz**a for a in range(1, d)), Polynomial.one(F, N)))
    return product(facs, F, N)


def test_c02_gadget_product_rank():
    F = make_field("q")
    got = {}
    for n in (1, 2, 3):
        for d in (2, 3, 4):
            got[(n, d)] = cut_rank(_gadget_product(n, d, F), range(n))
    ok = all(r == d**n for (n, d), r in got.items())
    record("2", ok, "rank d^n for n in 1..3, d in 2..4: " + ", ".join(f"{k}->{v}" for k, v in got.items()))


# 3 -----------------------------------------------------------------------------


def test_c03_esym_width_every_order():
    bad = []
    checked = 0
    for n in range(1, 9):
        orders = candidate_orders(n, "all") if n <= 6 else candidate_orders(n, "random:200", seed=n)
        for d in range(n + 1):
            f = esym(n, d)
            want = min(d + 1, n - d + 1)
            for prof in profiles_over_orders(f, orders):
                checked += 1
                A = esym_roabp(n, d, prof.order)
                if prof.width != want or A.width != want or A.expand() != f:
                    bad.append((n, d, prof.order))
    record("3", not bad, f"{checked} (n, d, order) cases, width = min(d+1, n-d+1) and roABP expands; failures {bad[:3]}")


# 4 -----------------------------------------------------------------------------


def _sympy_symmetric(f: Polynomial) -> bool:
    from conftest import to_sympy

    expr, xs = to_sympy(f)
    return all(sympy.expand(expr.subs(dict(zip(xs, p)), simultaneous=True) - expr) == 0
               for p in itertools.permutations(xs))


def test_c04_fundamental_theorem_roundtrip():
    rng = random.Random(7)
    bad = []
    for t in range(50):
        n = rng.randint(1, 5)
        f = random_poly(rng, n, max_deg=3, sparsity=6)
        if decompose(symmetrize(f)).f != f:
            bad.append(t)
    rejected = 0
    tries = 0
    while rejected < 20:
        tries += 1
        n = rng.randint(2, 5)
        g = random_poly(rng, n, max_deg=3, sparsity=5)
        if _sympy_symmetric(g):
            continue
        try:
            decompose(g)
        except NotSymmetricError:
            rejected += 1
        else:
            bad.append(("accepted", tries))
            break
    record("4", not bad, f"50 roundtrips, {rejected} non-symmetric inputs rejected; failures {bad}")


# 5 -----------------------------------------------------------------------------


def test_c05_partition_and_generating_function():
    bad = [(n, d, m) for n in range(7) for d in range(n + 1) for m in range(n + 1)
           if not esym_partition_check(n, d, m).holds]
    bad += [("gf", n) for n in range(7) if not generating_function_check(n).holds]
    record("5", not bad, f"partition identity for all n <= 6, d, m and generating function; failures {bad}")


# 6 -----------------------------------------------------------------------------


def _ben_or_fields():
    yield 2, "q"
    for n in range(1, 7):
        yield n, f"fp:{smallest_prime_with_root(n)}"


def test_c06a_ben_or_interior_degrees():
    bad = []
    cases = 0
    for n, spec in _ben_or_fields():
        for d in range(1, n):
            cases += 1
            if not ben_or_identity(n, d, spec).check.holds:
                bad.append((n, d, spec))
    record("6a", not bad, f"{cases} cases with 1 <= d <= n-1 verified by expansion; failures {bad}")


def test_c06b_ben_or_endpoint_degrees():
    # For d in {0, n} the constant and top coefficients both equal sum_j beta_j.
    missing = []
    for n, spec in _ben_or_fields():
        for d in sorted({0, n}):
            if ben_or_solve(n, d, spec) is None:
                missing.append((n, d, spec))
    record("6b", not missing, f"beta exists for d in {{0, n}}; no solution for {missing}")


# 7 -----------------------------------------------------------------------------


def test_c07_esym_powering():
    got = {}
    for n, k, d in [(4, 2, 2), (4, 2, 3), (6, 3, 2)]:
        f = esym(n, k) ** d
        got[(n, k, d)] = (cut_rank(f, range(k)), coefficient_matrix_rank(f, range(k)), comb(k + d, k))
    ok = all(a == b == c for a, b, c in got.values())
    min_width = min(p.width for p in profiles_over_orders(esym(4, 2) ** 2, candidate_orders(4)))
    ok = ok and min_width >= 6
    record("7", ok, f"(rank, sympy rank, C(k+d,k)) {got}; min width of (ESym_4^2)^2 over 24 orders {min_width}")


# 8 -----------------------------------------------------------------------------

CIRCULANT = [(3, 3, 7), (5, 5, 11)]


def test_c08a_circulant_identity():
    ok = all(circulant_lemma_check(n, k, f"fp:{p}").holds for n, k, p in CIRCULANT)
    record("8a", ok, "symmetrised circulant = prod (1 + x_i^k) for (3,3,7), (5,5,11)")


def test_c08b_fsym_width_two_at_every_cut():
    seen = {}
    for n, k, p in CIRCULANT:
        f = power_sum_product(n, k, f"fp:{p}")
        seen[(n, k, p)] = sorted({r for prof in profiles_over_orders(f, candidate_orders(n)) for r in prof.ranks})
    ok = all(v == [2] for v in seen.values())
    record("8b", ok, f"Nisan ranks of prod (1 + x_i^k) over all cuts of all orders: {seen} (claimed 2)")


def test_c08c_fprime_min_width():
    got = {}
    for n, k, p in CIRCULANT:
        fprime = restrict_leading(circulant_poly(n, k, f"fp:{p}"), k)
        got[(n, k, p)] = (min(q.width for q in profiles_over_orders(fprime, candidate_orders(k))), 2 ** ((k - 1) // 2))
    ok = all(w >= b for w, b in got.values())
    record("8c", ok, f"(min width of f', 2^((k-1)/2)) {got}")


# 9 -----------------------------------------------------------------------------

MATCHING = Graph.from_edges([(0, 2), (1, 3)])


def test_c09a_factorization_identity():
    ok = all(factorization_holds(MATCHING, d) and factor_nonclosure_instance(MATCHING, d).identity_holds
             for d in (2, 3))
    record("9a", ok, "P_G = Q_G * prod (x_i x_j - 1) and f = P_G + z prod (x_i x_j - 1) for d = 2, 3")


def test_c09b_pg_sparsity():
    got = {d: p_g(MATCHING, d).sparsity for d in (2, 3)}
    record("9b", all(s == 4 for s in got.values()), f"sparsity(P_G) by d: {got}")


def test_c09c_g_min_width_at_least_d_squared():
    got = {}
    for d in (2, 3):
        g = factor_nonclosure_instance(MATCHING, d).g
        profs = profiles_over_orders(g, candidate_orders(5))
        best = min(profs, key=lambda q: q.width)
        got[d] = (len(profs), best.width, d * d, [v + 1 for v in best.order])
    ok = all(w >= b for _, w, b, _ in got.values())
    record("9c", ok, "d -> (orders, min width of g, d^2, argmin order): " + str(got))


def test_c09d_f_width_below_sparsity():
    worst = {}
    for d in (2, 3):
        f = factor_nonclosure_instance(MATCHING, d).f
        worst[d] = (max(max(q.ranks) for q in profiles_over_orders(f, candidate_orders(5))), f.sparsity)
    record("9d", all(w <= s for w, s in worst.values()), f"d -> (max rank of f over all cuts, sparsity) {worst}")


# 10 ----------------------------------------------------------------------------


def test_c10_quadratic_powering():
    G = Graph.from_edges([(0, 1), (2, 3)])
    got = {}
    for d in (2, 3):
        f = quadratic(G) ** d
        ranks = {Y: cut_rank(f, Y) for Y in itertools.combinations(range(4), 2)}
        got[d] = (ranks[(0, 2)], coefficient_matrix_rank(f, (0, 2)), comb(d + 1, 1), sorted(set(ranks.values())))
    ok = all(a == b == c and s == [c] for a, b, c, s in got.values())
    record("10", ok, f"d -> (rank at {{x1,x3}}, sympy rank, C(d+1,1), ranks at all midpoint cuts) {got}")


# 11 ----------------------------------------------------------------------------


def test_c11_discriminant():
    from conftest import from_sympy, to_sympy

    F = make_field("q")
    x = lambda i, n: Polynomial.var(F, n, i)  # noqa: E731
    cases = [(x(0, 1), 3), (x(0, 1), 5), (x(0, 4) * x(1, 4) + x(2, 4) * x(3, 4), 4), (Polynomial.one(F, 0), 2)]
    bad = []
    for g, d in cases:
        inst = disc_hardness_instance(g, d)
        disc = discriminant(inst.f, inst.y)
        expr, xs = to_sympy(inst.f)
        y = xs[inst.y]
        oracle = from_sympy(sympy.resultant(expr, sympy.diff(expr, y), y), inst.f.nvars)
        if disc != inst.expected or oracle != disc:
            bad.append((str(g), d))
    bad += [("split", r, s) for r in range(1, 4) for s in range(1, 4) if not split_form_check(r, s).holds]
    record("11", not bad, f"closed form for 4 instances (sympy cross-check) and split forms r, s <= 3; failures {bad}")


# 12 ----------------------------------------------------------------------------


def test_c12_chebotarev():
    bad = []
    detail = []
    for k in (2, 3, 5):
        p = smallest_prime_with_root(k)
        report = dft_minor_check(k, f"fp:{p}")
        M = sympy.Matrix(dft_matrix(k, f"fp:{p}"))
        zero_oracle = sum(
            1
            for s in range(1, k + 1)
            for R in itertools.combinations(range(k), s)
            for C in itertools.combinations(range(k), s)
            if M.extract(list(R), list(C)).det() % p == 0
        )
        detail.append(f"k={k} fp:{p} minors={report.total}")
        if report.total != comb(2 * k, k) or not report.all_nonsingular or zero_oracle:
            bad.append({"k": k, "p": p, "zero_minors": report.to_dict()["zero_minors"], "oracle_zeros": zero_oracle})
    record("12", not bad, f"{'; '.join(detail)}; zero minors {bad}")


# 13 ----------------------------------------------------------------------------


def test_c13_eval_dim_consistency():
    rng = random.Random(13)
    bad = []
    equal_cases = 0
    for t in range(30):
        F = make_field("q") if t % 3 else make_field("fp:10007")
        n = rng.randint(2, 6)
        f = random_poly(rng, n, max_deg=4, sparsity=25, field=F)
        Y = rng.sample(range(n), rng.randint(1, n - 1))
        r = coefficient_matrix_rank(f, Y)
        rows = nisan_matrix(f, Y).shape[0]
        low = eval_dim_lower_bound(f, Y, samples=max(1, rows // 2), seed=t)
        full = eval_dim_lower_bound(f, Y, samples=rows + 4, seed=t)
        if low > r or full > r:
            bad.append(("exceeds", t))
        if F.kind == "q":
            equal_cases += 1
            if full != r:
                bad.append(("not equal", t))
    record("13", not bad, f"30 instances, eval dim <= rank, equality in {equal_cases} cases over q; failures {bad}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
