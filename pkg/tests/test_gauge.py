import numpy as np
import pytest
from hypothesis import given, strategies as st

from fdradius.errors import NegativeArgument
from fdradius.gauge import custom, identity, parse_gauge, power, validate, with_validation

GAUGES = [identity(), power(2), power(3), power(1.5)]


def test_eval_examples():
    assert power(2)(3.0) == 9.0
    assert identity()(0.7) == 0.7
    assert power(3)(2.0) == 8.0


def test_inverse_examples():
    assert power(2).inverse(9.0) == pytest.approx(3.0)
    assert power(3).inverse(8.0) == pytest.approx(2.0)
    for f in GAUGES:
        assert f.inverse(0.0) == 0.0


def test_negative_arguments_rejected():
    with pytest.raises(NegativeArgument):
        power(2)(-1.0)
    with pytest.raises(NegativeArgument):
        identity().inverse(-0.5)


def test_validate_power_and_identity():
    for f in (power(2), identity()):
        r = validate(f, 10_000)
        assert r.monotone and r.zero_at_zero and r.multiplicative and r.geometrically_convex


def test_validate_exponential_not_multiplicative():
    f = custom("expm1", np.expm1, np.log1p)
    r = validate(f, 10_000)
    assert not r.multiplicative
    assert r.monotone and r.zero_at_zero


def test_custom_gauge_flags_need_validation():
    f = custom("quad", lambda t: t * t + t, lambda s: 0.5 * (np.sqrt(1.0 + 4.0 * s) - 1.0))
    assert not f.has("geometrically_convex")
    g = with_validation(f, validate(f, 2000))
    assert g.has("geometrically_convex") and g.has("convex")
    assert not g.has("multiplicative")


def test_parse_gauge():
    assert parse_gauge("identity") == identity()
    assert parse_gauge("power:2") == power(2)
    assert str(parse_gauge("power:3")) == "power:3"
    with pytest.raises(ValueError):
        parse_gauge("cosh")
    with pytest.raises(ValueError):
        power(0.5)


def test_round_trip_1e4_points():
    rng = np.random.default_rng(0)
    t = rng.uniform(0, 100, 10_000)
    for f in GAUGES:
        assert np.allclose(f.inverse(f(t)), t, rtol=1e-10, atol=0)


pos = st.floats(0.0, 1e3, allow_nan=False)


@given(pos, pos, st.sampled_from(GAUGES))
def test_power_multiplicative(x, y, f):
    assert f(x * y) == pytest.approx(f(x) * f(y), rel=1e-10, abs=1e-300)


@given(pos, pos, st.sampled_from(GAUGES))
def test_monotone(x, y, f):
    if x < y:
        assert f(x) < f(y)


@given(pos, st.floats(0.0, 1.0), st.sampled_from(GAUGES))
def test_convexity_consequence(x, a, f):
    assert f(a * x) <= a * f(x) + 1e-10


@given(st.lists(st.floats(0, 50), min_size=1, max_size=5), st.sampled_from(GAUGES))
def test_aggregate_bounds(vals, f):
    agg = f.aggregate(vals)
    assert max(vals) - 1e-9 <= agg <= sum(vals) + 1e-9
