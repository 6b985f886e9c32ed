import dataclasses
import json
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from orbigenus import fixture_path
from orbigenus.errors import DegenerateAction, ParseError, SchemaError
from orbigenus.model import (
    genuine_levels,
    load_model,
    model_from_dict,
    model_io,
    model_to_dict,
    save_model,
    suggested_levels,
    validate_model,
    weighted_projective_model,
)


def codes(m):
    return {d.code for d in validate_model(m)}


def test_cp1_chart_data():
    m = weighted_projective_model([1, 1], [0, 1])
    assert m.n == 1 and len(m.fixed_points) == 2
    assert [p.weights[0].m_s1 for p in m.fixed_points] == [1, -1]
    assert all(p.order == 1 for p in m.fixed_points)
    assert validate_model(m) == []


def test_p113_chart_data():
    m = weighted_projective_model([1, 1, 3], [0, 1, 5])
    p2 = m.fixed_points[2]
    assert p2.order == 3
    assert [w.m_s1 for w in p2.weights] == [Fraction(-5, 3), Fraction(-2, 3)]
    third = Fraction(1, 3)
    assert all(w.chi == (0, third, 2 * third) for w in p2.weights)
    assert m.bundle.N == 5 and m.bundle.l == 6 and not m.bundle.genuine
    assert validate_model(m) == []


def test_degenerate_action():
    with pytest.raises(DegenerateAction):
        weighted_projective_model([1, 1], [1, 1])
    with pytest.raises(DegenerateAction):
        weighted_projective_model([1, 2], [1, 2])


def test_levels():
    assert suggested_levels([1, 1, 3]) == [5]
    assert genuine_levels([1, 1, 2]) == [2]
    assert suggested_levels([1, 1, 1]) == [3]
    m = weighted_projective_model([1, 1, 2], [0, 1, 4])
    assert m.bundle.N == 2 and m.bundle.genuine and m.bundle.l == 5


def test_non_isolated_diagnostic():
    m = weighted_projective_model([1, 1], [0, 1])
    p = m.fixed_points[0]
    w = dataclasses.replace(p.weights[0], m_s1=Fraction(0))
    bad = dataclasses.replace(m, fixed_points=(dataclasses.replace(p, weights=(w,)), m.fixed_points[1]))
    diags = validate_model(bad)
    assert any("non-isolated fixed point" in d.message for d in diags)


def test_equilib_diagnostic():
    m = weighted_projective_model([1, 1], [0, 1])
    p = m.fixed_points[1]
    L = dataclasses.replace(p.line_bundle, m_s1=p.line_bundle.m_s1 + 1)
    bad = dataclasses.replace(m, fixed_points=(m.fixed_points[0], dataclasses.replace(p, line_bundle=L)))
    diags = validate_model(bad)
    assert any(d.code == "equilib" and "equilib violated" in d.message for d in diags)


def test_corrupted_fixture_is_flagged():
    m = load_model(fixture_path("p113_corrupted"))
    assert "weightsum" in codes(m)


def test_round_trip_examples():
    m = weighted_projective_model([1, 1], [0, 1])
    assert model_io("load", model_io("save", m)) == m
    text = save_model(m)
    assert save_model(load_model(text)) == text


@pytest.mark.parametrize("name", ["cp1", "cp2", "p112", "p113", "p113_corrupted"])
def test_fixture_round_trip(name):
    with open(fixture_path(name)) as fh:
        text = fh.read()
    m = load_model(text)
    assert load_model(save_model(m)) == m
    assert json.loads(save_model(m)) == json.loads(text)


def test_missing_weights():
    d = model_to_dict(weighted_projective_model([1, 1], [0, 1]))
    del d["fixedPoints"][0]["weights"]
    with pytest.raises(SchemaError) as err:
        model_from_dict(d)
    assert err.value.invariant == "weights"


def test_bad_character_denominator():
    d = model_to_dict(weighted_projective_model([1, 1, 3], [0, 1, 5]))
    d["fixedPoints"][2]["weights"][0]["chi"]["1"] = "1/2"
    with pytest.raises(SchemaError) as err:
        model_from_dict(d)
    assert err.value.invariant == "character"


def test_parse_error_has_line():
    with pytest.raises(ParseError) as err:
        load_model('{\n  "name": "x",\n  "n": 1,\n  oops\n}')
    assert err.value.line == 4


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(1, 4), min_size=2, max_size=4),
    st.lists(st.integers(-6, 6), min_size=4, max_size=4),
)
def test_generated_models_validate_and_round_trip(a, c):
    c = c[: len(a)]
    assume(all(c[i] * a[j] != c[j] * a[i] for i in range(len(a)) for j in range(i + 1, len(a))))
    # reduced weights; otherwise a common factor acts trivially everywhere
    assume(math.gcd(*a) == 1)
    m = weighted_projective_model(a, c)
    assert validate_model(m) == []
    assert load_model(save_model(m)) == m
    # projective space: every isotropy group trivial
    if set(a) == {1}:
        assert m.is_manifold
