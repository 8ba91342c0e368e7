import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from betinfo.betting import BettingGame, ice, log_ice, optimal_bet_bookmaker
from betinfo.entropies import id_mutual_information
from betinfo.optimizer import SimplexSearchConfig
from betinfo.prob_core import DomainError
from betinfo.wealth_ratio import (
    advantage_side_information,
    advantage_strategies,
    arimoto_prob_via_betting,
    id_mi_operational,
    renyi_prob_via_betting,
)
from strategies import joints, pmfs

FAST = SimplexSearchConfig(resolution=12, iterations=200, restarts=2)
orders = st.sampled_from([-2.0, -0.5, 0.5, 1.0, 2.0, 3.0, math.inf])


def test_advantage_of_a_strategy_over_itself():
    g = BettingGame.none([3.0, 3.0, 3.0], [0.2, 0.3, 0.5])
    assert advantage_strategies(g, [0.3, 0.3, 0.4], [0.3, 0.3, 0.4], 2.0).value == pytest.approx(1.0)


def test_kelly_bet_has_advantage_over_uniform():
    p = [0.1, 0.2, 0.7]
    g = BettingGame.none([3.0, 3.0, 3.0], p)
    h = optimal_bet_bookmaker(g, 1.0)
    adv = advantage_strategies(g, [1 / 3] * 3, h, 1.0)
    assert adv.value >= 1.0 and adv.numerator == "b2"
    assert math.log(adv.value) == pytest.approx(log_ice(g, h, 1.0) - log_ice(g, [1 / 3] * 3, 1.0), abs=1e-12)


def test_advantage_rejects_zero_ice():
    g = BettingGame.none([2.0, 2.0], [0.5, 0.5])
    with pytest.raises(DomainError):
        advantage_strategies(g, [0.5, 0.5], [1.0, 0.0], 1.0)


def test_side_information_examples():
    assert advantage_side_information([2.0, 2.0], np.outer([0.3, 0.7], [0.5, 0.5]), 2.0) == pytest.approx(1.0)
    perfect = np.diag([0.5, 0.5])
    assert advantage_side_information([2.0, 2.0], perfect, 1.0) == pytest.approx(2.0)
    assert advantage_side_information([2.0, 2.0], perfect, 1.0, FAST) == pytest.approx(2.0, abs=1e-6)


@given(joints(3, 3), st.sampled_from([0.5, 1.0, 2.0, math.inf]))
def test_side_information_never_hurts(j, R):
    assert advantage_side_information(np.full(j.shape[0], 1.5), j, R) >= 1.0 - 1e-10


def test_side_information_matches_oracle():
    rng = np.random.default_rng(3)
    j = rng.dirichlet(np.ones(6)).reshape(3, 2)
    for R in (0.5, 2.0):
        closed = advantage_side_information(np.ones(3), j, R)
        assert advantage_side_information(np.ones(3), j, R, FAST) == pytest.approx(closed, abs=1e-6)


# Renyi and Arimoto probabilities as best ICEs


def test_renyi_probability_examples():
    rep = renyi_prob_via_betting(np.full(4, 0.25), 2.0, C=3.0)
    assert rep.information == pytest.approx(0.75) and rep.agrees
    assert renyi_prob_via_betting([1.0, 0.0, 0.0], 0.5, C=2.0).betting == pytest.approx(2.0)


@given(pmfs(size=3), orders, st.sampled_from([0.5, 1.0, 10.0]))
def test_renyi_probability_identity(p, q, C):
    assert renyi_prob_via_betting(p, q, C).agrees


@pytest.mark.parametrize("q", [-1.0, 0.5, 3.0])
def test_renyi_probability_oracle(q):
    p = np.random.default_rng(1).dirichlet(np.ones(3))
    rep = renyi_prob_via_betting(p, q, oracle=FAST)
    assert rep.oracle_residual <= 1e-6


def test_arimoto_probability_examples():
    px, pg = np.array([0.2, 0.8]), np.array([0.4, 0.6])
    prod = arimoto_prob_via_betting(np.outer(px, pg), 2.0)
    assert prod.information == pytest.approx(renyi_prob_via_betting(px, 2.0).information)
    assert arimoto_prob_via_betting(np.diag([0.3, 0.7]), 2.0, C=1.5).information == pytest.approx(1.5)


@given(joints(3, 3), orders)
def test_arimoto_probability_identity(j, q):
    assert arimoto_prob_via_betting(j, q).agrees


def test_arimoto_probability_oracle():
    j = np.random.default_rng(2).dirichlet(np.ones(9)).reshape(3, 3)
    assert arimoto_prob_via_betting(j, 3.0, oracle=FAST).oracle_residual <= 1e-6


# ID mutual information as a utility of the advantage


def test_id_mi_independent_is_zero():
    rep = id_mi_operational(np.outer([0.2, 0.8], [0.4, 0.6]), 2.0, 0.5)
    assert rep.lhs_id_mi == pytest.approx(0.0, abs=1e-12)
    assert rep.rhs_utility_of_ratio == pytest.approx(0.0, abs=1e-12)


def test_id_mi_shannon_case():
    j = np.array([[0.3, 0.1], [0.1, 0.5]])
    shannon = float(np.sum(j * np.log(j / np.outer(j.sum(axis=1), j.sum(axis=0)))))
    rep = id_mi_operational(j, 1.0, 1.0)
    assert rep.lhs_id_mi == pytest.approx(shannon, abs=1e-12)
    assert rep.agree


@given(joints(3, 3), st.sampled_from([0.5, 1.0, 2.0, math.inf]), st.sampled_from([-1.0, 0.5, 1.0, 2.0]))
def test_id_mi_identity_for_nonnegative_q(j, q, r):
    assert id_mi_operational(j, q, r).agree


@given(joints(3, 3), st.sampled_from([-2.0, -0.5]), st.sampled_from([-1.0, 0.5, 2.0]))
def test_sign_symmetric_form_matches_betting_for_negative_q(j, q, r):
    rep = id_mi_operational(j, q, r)
    assert rep.residual_sign_symmetric <= 1e-8


@given(joints(3, 3), st.sampled_from([-2.0, -0.5]))
def test_negative_q_identity_at_r_one(j, q):
    assert id_mi_operational(j, q, 1.0).agree


@given(joints(3, 3), st.sampled_from([-0.5, 0.5, 2.0]), st.sampled_from([-1.0, 0.5, 2.0]))
def test_id_mi_is_invariant_to_odds_scale(j, q, r):
    vals = [id_mi_operational(j, q, r, C=C).rhs_utility_of_ratio for C in (0.5, 1.0, 10.0)]
    assert max(vals) - min(vals) <= 1e-10


def test_id_mi_oracle_maximizations():
    j = np.random.default_rng(4).dirichlet(np.ones(9)).reshape(3, 3)
    rep = id_mi_operational(j, 2.0, 0.5, oracle=FAST)
    assert rep.lhs_id_mi == pytest.approx(id_mutual_information(j, 2.0, 0.5))
    assert rep.residual <= 1e-6


def test_uninformed_ice_equals_renyi_probability():
    p = np.array([0.1, 0.3, 0.6])
    g = BettingGame.none(np.full(3, 2.0), p)
    h = optimal_bet_bookmaker(g, 0.5)
    assert ice(g, h, 0.5) == pytest.approx(renyi_prob_via_betting(p, 2.0, C=2.0).information)
