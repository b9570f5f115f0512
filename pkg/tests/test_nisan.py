import random

import pytest
from hypothesis import given, settings

from conftest import coefficient_matrix_rank, polys, random_poly
from roabp_lab.field import Q, make_field
from roabp_lab.gadgets import Graph, q_g_factor
from roabp_lab.nisan import (
    OrderCapError,
    candidate_orders,
    cut_rank,
    eval_dim_lower_bound,
    min_width_over_orders,
    nisan_matrix,
    profiles_over_orders,
    rank,
    subset_ranks,
    width_profile,
)
from roabp_lab.poly import Polynomial, parse_poly, product
from roabp_lab.symfun import esym


def obs_product(n, d, field=Q):
    """prod_i (1 + y_i z_i + ... + (y_i z_i)^(d-1)) with y_i = var i, z_i = var n+i."""
    N = 2 * n
    facs = []
    for i in range(n):
        yz = Polynomial.var(field, N, i) * Polynomial.var(field, N, n + i)
        facs.append(sum((yz**a for a in range(1, d)), Polynomial.one(field, N)))
    return product(facs, field, N)


def test_identity_matrix_example():
    M = nisan_matrix(parse_poly("x1*x2 + 1"), [0])
    assert M.shape == (2, 2)
    assert M.dense() == [[1, 0], [0, 1]]


def test_permutation_matrix_example():
    M = nisan_matrix(obs_product(2, 2), [0, 1])
    D = M.dense()
    assert M.shape == (4, 4)
    assert all(sorted(row) == [0, 0, 0, 1] for row in D)
    assert all(sorted(col) == [0, 0, 0, 1] for col in zip(*D))
    assert rank(M) == 4


def test_zero_polynomial():
    M = nisan_matrix(Polynomial.zero(Q, 2), [0])
    assert M.shape == (0, 0) and rank(M) == 0
    prof = width_profile(Polynomial.zero(Q, 2), [0, 1])
    assert prof.width == 0 and prof.size == 0


def test_obs_rank_nine():
    assert cut_rank(obs_product(2, 3), [0, 1]) == 9


def test_square_of_quadratic():
    assert cut_rank(parse_poly("x1*x2 + x3*x4") ** 2, [0, 2]) == 3


def test_esym_profiles():
    f = esym(4, 2)
    for order in candidate_orders(4):
        assert width_profile(f, order).width == 3


def test_monomial_has_width_one():
    f = parse_poly("x1*x2*x3*x4")
    assert all(r == 1 for r in width_profile(f, [2, 0, 3, 1]).ranks)


def test_esym_square_rank_at_two():
    assert width_profile(esym(4, 2) ** 2, range(4)).ranks[1] == 6


def test_min_width_symmetric():
    res = min_width_over_orders(esym(5, 3))
    assert res.width == 3 and res.examined == 120 and res.exhaustive


def test_min_width_two_orders():
    res = min_width_over_orders(parse_poly("x1*x2 + 1"), keep_profiles=True)
    assert [p.width for p in res.profiles] == [2, 2]


def test_qg_min_width_over_orders():
    # The cut {1,3} | {2,4} has no crossing edge, so some order beats d^2.
    G = Graph.from_edges([(0, 2), (1, 3)])
    res = min_width_over_orders(q_g_factor(G, 2))
    assert res.width == 2
    assert width_profile(q_g_factor(G, 2), (0, 2, 1, 3)).ranks == (2, 1, 2, 1)


def test_qg_rank_at_balanced_crossing_cut():
    G = Graph.from_edges([(0, 2), (1, 3)])
    assert cut_rank(q_g_factor(G, 3), [0, 1]) == 9


def test_order_cap():
    with pytest.raises(OrderCapError):
        candidate_orders(9)
    assert len(candidate_orders(9, "random:5", seed=1)) == 5
    assert candidate_orders(9, "random:5", seed=1) == candidate_orders(9, "random:5", seed=1)


def test_profile_size_and_width():
    prof = width_profile(parse_poly("x1*x2 + 1"), [0, 1])
    assert prof.ranks == (2, 1) and prof.width == 2 and prof.size == 3
    assert prof.to_dict() == {"order": [1, 2], "ranks": [2, 1], "width": 2, "size": 3}


def test_cut_and_complement_share_rank():
    rng = random.Random(5)
    f = random_poly(rng, 5, 4, 20)
    ranks = subset_ranks(f, [frozenset({0, 1}), frozenset({2, 3, 4})])
    assert ranks[frozenset({0, 1})] == ranks[frozenset({2, 3, 4})] == cut_rank(f, [0, 1])


def test_parallel_ranks_match_serial():
    f = esym(6, 3) ** 2
    orders = candidate_orders(6, "random:6", seed=2)
    assert profiles_over_orders(f, orders, jobs=2) == profiles_over_orders(f, orders, jobs=1)


@settings(max_examples=40, deadline=None)
@given(polys(n=4, max_terms=8))
def test_rank_matches_sympy_and_transpose(f):
    M = nisan_matrix(f, [0, 3])
    assert rank(M) == rank(M.transpose()) == coefficient_matrix_rank(f, [0, 3])


def test_fp_rank_matches_oracle():
    F = make_field("fp:5")
    rng = random.Random(7)
    for _ in range(15):
        f = random_poly(rng, 4, 4, 20, field=F)
        assert cut_rank(f, [1, 2]) == coefficient_matrix_rank(f, [1, 2])


def test_modular_method_is_consistent():
    f = esym(6, 3) ** 2
    assert cut_rank(f, range(3), method="modular") == cut_rank(f, range(3)) == 10


def test_eval_dim_examples():
    f = parse_poly("x1*x2 + 1")
    assert eval_dim_lower_bound(f, [0], 4) == 2
    assert eval_dim_lower_bound(f, [], 3) == 1
    with pytest.raises(ValueError):
        eval_dim_lower_bound(f, [0], 0)


def test_eval_dim_refuses_tiny_field():
    f = parse_poly("x1*x2^3 + 1", make_field("fp:3"))
    with pytest.raises(ValueError, match="degenerate"):
        eval_dim_lower_bound(f, [0], 5)


@settings(max_examples=30, deadline=None)
@given(polys(n=4, max_terms=8))
def test_eval_dim_never_exceeds_rank(f):
    assert eval_dim_lower_bound(f, [1, 2], 6, seed=1) <= cut_rank(f, [1, 2])
