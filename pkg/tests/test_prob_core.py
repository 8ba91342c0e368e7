import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from betinfo.prob_core import (
    Alphabet,
    CondTable,
    DomainError,
    JointPmf,
    OddsTable,
    Pmf,
    compose,
    condition,
    escort,
    eta_r,
    eta_r_inv,
    exp_q,
    ln_r,
    log_power_mean,
    marginalize,
    parse_order,
    pseudo_add,
    pseudo_sub,
    sgn,
)
from strategies import deformations, pmfs

positive = st.floats(min_value=0.05, max_value=20.0)


def test_sgn_examples():
    assert sgn(3.2) == 1
    assert sgn(0) == 1
    assert sgn(-math.inf) == -1
    assert sgn(-0.0) == -1
    with pytest.raises(ValueError):
        sgn(float("nan"))


def test_parse_order():
    assert parse_order("inf") == math.inf
    assert parse_order("-inf") == -math.inf
    assert parse_order("0.5") == 0.5
    with pytest.raises(ValueError):
        parse_order("nan")
    with pytest.raises(ValueError):
        parse_order("abc")


def test_ln_r_examples():
    assert ln_r(1.0, 0.3) == 0.0
    assert ln_r(math.e, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert ln_r(4.0, 2.0) == pytest.approx(0.75, abs=1e-15)
    with pytest.raises(DomainError):
        ln_r(0.0, 2.0)


def test_exp_q_examples():
    assert exp_q(0.0, 0.4) == 1.0
    assert exp_q(0.3, 1.0) == pytest.approx(math.exp(0.3))
    assert exp_q(ln_r(2.5, 0.7), 0.7) == pytest.approx(2.5, abs=1e-12)
    with pytest.raises(DomainError):
        exp_q(-2.0, 0.0)


def test_eta_examples():
    assert eta_r(0.0, 0.4) == 0.0
    assert eta_r(math.log(3.0), 0.5) == pytest.approx(ln_r(3.0, 0.5), abs=1e-14)
    assert eta_r_inv(eta_r(1.7, 2.3), 2.3) == pytest.approx(1.7, abs=1e-12)
    with pytest.raises(DomainError):
        eta_r_inv(2.0, 2.0)


def test_pseudo_ops_examples():
    assert pseudo_add(0.7, 0.0, 1.8) == 0.7
    assert pseudo_sub(0.7, 0.0, 1.8) == 0.7
    assert pseudo_add(2.0, 3.0, 1.0) == 5.0
    assert pseudo_sub(2.0, 3.0, 1.0) == -1.0
    assert pseudo_sub(pseudo_add(0.4, 0.9, 1.8), 0.9, 1.8) == pytest.approx(0.4, abs=1e-14)
    with pytest.raises(ZeroDivisionError):
        pseudo_sub(1.0, 1.0, 2.0)


@given(positive, positive, deformations)
def test_ln_r_pseudo_additivity(x, y, r):
    lhs = ln_r(x * y, r)
    rhs = ln_r(x, r) + ln_r(y, r) + (1 - r) * ln_r(x, r) * ln_r(y, r)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


@given(positive, positive, deformations)
def test_ln_r_quotient(x, y, r):
    # the factor that makes the identity exact is y**(r-1)
    assert ln_r(x / y, r) == pytest.approx((ln_r(x, r) - ln_r(y, r)) * y ** (r - 1), rel=1e-10, abs=1e-10)


@given(st.floats(-3.0, 3.0), deformations)
def test_eta_round_trip(x, r):
    assert eta_r_inv(eta_r(x, r), r) == pytest.approx(x, abs=1e-10)


@given(positive, positive, deformations)
def test_ln_r_increasing(x, y, r):
    if x < y:
        assert ln_r(x, r) < ln_r(y, r)


@given(st.floats(-2, 2), st.floats(-0.4, 0.4), deformations)
def test_pseudo_round_trip(x, y, r):
    assert pseudo_sub(pseudo_add(x, y, r), y, r) == pytest.approx(x, abs=1e-10)


def test_escort_examples():
    np.testing.assert_allclose(escort([0.25, 0.75], 2.0).weights, [0.1, 0.9], atol=1e-15)
    p = np.array([0.2, 0.3, 0.5])
    np.testing.assert_allclose(escort(p, 1.0).weights, p, atol=1e-15)
    with pytest.raises(DomainError):
        escort([0.0, 1.0], -1.0)
    np.testing.assert_allclose(escort([0.0, 0.5, 0.5], 3.0).weights, [0.0, 0.5, 0.5])


@given(pmfs(), st.floats(-3, 3))
def test_escort_uniform_fixed(p, s):
    k = p.size
    np.testing.assert_allclose(escort(np.full(k, 1 / k), s).weights, np.full(k, 1 / k), atol=1e-14)
    np.testing.assert_allclose(escort(p, 1.0).weights, p, atol=1e-14)


def test_pmf_validation_and_renormalization():
    p = Pmf.from_weights([0.5, 0.5 + 5e-10])
    assert abs(p.weights.sum() - 1) < 1e-15
    with pytest.raises(ValueError):
        Pmf.from_weights([0.5, 0.6])
    with pytest.raises(ValueError):
        Pmf.from_weights([-0.1, 1.1])
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))


def test_pmf_json_round_trip():
    p = Pmf.from_weights([0.25, 0.75], ["a", "b"])
    back = Pmf.from_dict(p.to_dict())
    assert back.alphabet == p.alphabet
    np.testing.assert_array_equal(back.weights, p.weights)
    assert p.to_dict() == {"alphabet": ["a", "b"], "weights": [0.25, 0.75]}


def test_odds_table():
    o = OddsTable([-2.0, -3.0])
    assert o.sign == -1
    np.testing.assert_allclose(o.magnitude, [2.0, 3.0])
    assert OddsTable.from_dict(o.to_dict()).sign == -1
    with pytest.raises(ValueError):
        OddsTable([1.0, -1.0])
    with pytest.raises(ValueError):
        OddsTable([1.0, 0.0])


def test_condition_independence():
    px, pg = np.array([0.2, 0.8]), np.array([0.1, 0.3, 0.6])
    j = JointPmf.from_array(np.outer(px, pg))
    c = condition(j, "X", ["G"])
    for col in c.weights.T:
        np.testing.assert_allclose(col, px, atol=1e-15)


def test_compose_marginalize_round_trip():
    rng = np.random.default_rng(11)
    w = rng.dirichlet(np.ones(12)).reshape(3, 4)
    j = JointPmf.from_array(w)
    c = condition(j, "X", ["G"])
    back = compose(c, marginalize(j, ["G"]))
    assert np.abs(back.weights - w).max() <= 1e-12
    np.testing.assert_allclose(marginalize(back, ["G"]).weights, w.sum(axis=0), atol=1e-15)


def test_zero_mass_column_flagged():
    j = JointPmf.from_array(np.array([[0.5, 0.0], [0.5, 0.0]]))
    c = condition(j, "X", ["G"])
    assert list(c.defined) == [True, False]
    assert isinstance(c, CondTable)


def test_log_power_mean_special_orders():
    v = np.log([1.0, 2.0, 4.0])
    w = np.array([0.2, 0.3, 0.5])
    assert log_power_mean(v, w, math.inf) == pytest.approx(math.log(4.0))
    assert log_power_mean(v, w, -math.inf) == pytest.approx(0.0)
    assert log_power_mean(v, w, 0.0) == pytest.approx(float(w @ v))
    assert log_power_mean(v, w, 2.0) == pytest.approx(0.5 * math.log(w @ np.exp(2 * v)))
