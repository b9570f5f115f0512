import os
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_rank
from roabp_lab import kernels
from roabp_lab.field import Q, make_field
from roabp_lab.linalg import Echelon, determinant, matrix_rank

BACKENDS = kernels.backends()
matrices = st.integers(0, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), max_size=6)
)


@pytest.mark.skipif(bool(os.environ.get("ROABP_LAB_PURE")), reason="pure fallback forced")
def test_compiled_backend_is_active():
    # The build ships the Cython kernels; the pure fallback is for platforms without a compiler.
    assert "compiled" in BACKENDS
    assert kernels.BACKEND == "compiled"


@pytest.mark.parametrize("name", sorted(BACKENDS))
@settings(max_examples=80, deadline=None)
@given(rows=matrices)
def test_integer_rank_matches_fraction_oracle(name, rows):
    assert BACKENDS[name].rank_integer([list(r) for r in rows]) == naive_rank(rows)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("p", [2, 3, 101, 2**31 - 1, 2**61 - 1])
def test_mod_p_rank_matches_oracle(name, p):
    rng = random.Random(p)
    for _ in range(40):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
        assert BACKENDS[name].rank_mod_p([list(x) for x in rows], p) == naive_rank(rows, p)


def test_backends_agree_on_large_matrix():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = random.Random(0)
    rows = [[rng.randint(-2, 2) for _ in range(30)] for _ in range(25)]
    rows += [[a + b for a, b in zip(rows[0], rows[1])]]
    ranks = {n: m.rank_integer([list(r) for r in rows]) for n, m in BACKENDS.items()}
    assert len(set(ranks.values())) == 1 and ranks["python"] == 25


def test_rational_rank():
    from fractions import Fraction

    rows = [[Fraction(1, 2), 1], [1, 2]]
    assert matrix_rank(rows, Q) == 1
    assert matrix_rank(rows, Q, method="modular") == 1
    assert matrix_rank([], Q) == 0


def test_determinant():
    assert determinant([[1, 2], [3, 4]], Q) == -2
    assert determinant([[1, 2], [3, 4]], make_field("fp:5")) == 3
    assert determinant([], Q) == 1


def test_echelon_coordinates():
    E = Echelon(Q)
    assert E.insert({0: 1, 1: 1})
    assert E.insert({1: 1})
    assert not E.insert({0: 2, 1: 5})
    assert E.coordinates({0: 2, 1: 5}) == {0: 2, 1: 3}
    with pytest.raises(ValueError):
        E.coordinates({2: 1})
