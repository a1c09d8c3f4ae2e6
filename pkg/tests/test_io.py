import pytest

from chowforge.chow import ChowRing
from chowforge.io import (dump_json, element_from_json, element_to_json, flat_from_text,
                          load_matroid, parse_polynomial, save_matroid)
from chowforge.matroid import uniform
from chowforge.quotient import InhomogeneousGenerator


def test_matroid_round_trip(tmp_path):
    path = tmp_path / "m.json"
    save_matroid(uniform(3, 5), path)
    assert load_matroid(path).same_rank_function(uniform(3, 5))


def test_dump_is_deterministic():
    a = dump_json({"b": 1, "a": {2, 1}})
    assert a == dump_json({"a": {1, 2}, "b": 1})


def test_parse_polynomial_and_elements():
    R = ChowRing(uniform(3, 4))
    poly = parse_polynomial(R, "x_12*x_1234 - 2*x_1234^2 + 1/2*x_1234*x_1234")
    nf = R.normal_form(poly)
    data = element_to_json(R, nf)
    assert element_from_json(R, data) == nf
    assert data["terms"][0]["coeff"] == "-3/2"
    with pytest.raises(InhomogeneousGenerator):
        parse_polynomial(R, "x_12 + x_12*x_13")


def test_flat_from_text():
    assert flat_from_text("125") == frozenset({1, 2, 5})
    assert flat_from_text("{10,11}") == frozenset({10, 11})
    assert flat_from_text("") == frozenset()
