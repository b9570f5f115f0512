import json
import random

import pytest
from hypothesis import given, settings

from conftest import polys, random_poly
from roabp_lab.field import Q, make_field
from roabp_lab.nisan import width_profile
from roabp_lab.poly import Polynomial, parse_poly
from roabp_lab.roabp import ROABP, from_layers, synthesize
from roabp_lab.symfun import esym


def test_width_one_evaluate():
    A = from_layers(Q, [0, 1], [[[{1: 1}]], [[{1: 1}]]])
    assert A.evaluate([2, 3]) == 6
    assert A.width == 1


def test_chain_expands():
    A = from_layers(Q, [0, 1], [[[1, {1: 1}]], [[1], [{1: 1}]]])
    assert A.expand() == parse_poly("1 + x1*x2")
    assert A.widths == [2, 1] and A.size == 3


def test_shape_validation():
    with pytest.raises(ValueError):
        from_layers(Q, [0, 1], [[[1, 1]], [[1]]])
    with pytest.raises(ValueError):
        from_layers(Q, [0, 0], [[[1]], [[1]]])


def test_synth_small():
    f = parse_poly("x1*x2 + 1")
    A = synthesize(f, [0, 1])
    assert A.widths == [2, 1]
    assert A.expand() == f


def test_synth_esym():
    f = esym(4, 2)
    for order in [(0, 1, 2, 3), (3, 1, 0, 2)]:
        A = synthesize(f, order)
        assert A.width == 3 and A.expand() == f


def test_synth_product_of_univariates():
    f = parse_poly("1 + x1 + x1^2", nvars=2) * parse_poly("1 + x2 + x2^2")
    assert synthesize(f, [0, 1]).widths == [1, 1]


def test_synth_esym_evaluates():
    assert synthesize(esym(3, 1), [0, 1, 2]).evaluate([1, 1, 1]) == 3


def test_synth_rejects_zero_and_bad_order():
    with pytest.raises(ValueError):
        synthesize(Polynomial.zero(Q, 2), [0, 1])
    with pytest.raises(ValueError):
        synthesize(parse_poly("x1*x2"), [0, 0])


def test_json_roundtrip_rational():
    f = parse_poly("1/2*x1*x2 - 3*x2 + 2/3")
    A = synthesize(f, [1, 0])
    data = json.loads(A.to_json())
    assert data["order"] == [2, 1]
    B = ROABP.from_json(A.to_json())
    assert B == A and B.expand() == f


def test_json_roundtrip_fp():
    F = make_field("fp:7")
    f = parse_poly("3*x1^2*x2 + 5*x2 + 1", F)
    B = ROABP.from_dict(synthesize(f, [0, 1]).to_dict())
    assert B.field == F and B.expand() == f


@settings(max_examples=40, deadline=None)
@given(polys(n=3, max_terms=7))
def test_synth_widths_are_ranks(f):
    if f.is_zero():
        return
    order = (2, 0, 1)
    A = synthesize(f, order)
    assert tuple(A.widths) == width_profile(f, order).ranks
    assert A.expand() == f


def test_evaluate_agrees_with_polynomial():
    rng = random.Random(11)
    f = random_poly(rng, 4, 4, 15)
    A = synthesize(f, [3, 1, 0, 2])
    for _ in range(5):
        pt = [rng.randint(-3, 3) for _ in range(4)]
        assert A.evaluate(pt) == f.evaluate(pt)
