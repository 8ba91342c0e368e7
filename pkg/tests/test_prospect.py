import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from betinfo.betting import BettingGame, decompose_bookmaker, decompose_double, ice, isoelastic_utility, random_strategy
from betinfo.entropies import arimoto_mutual_information
from betinfo.optimizer import SimplexSearchConfig, oracle_max_log_pt_ce
from betinfo.prob_core import DomainError
from betinfo.prospect import (
    PtAgent,
    decompose_pt_gambler,
    decompose_pt_nosi,
    escort_joint,
    log_pt_ce,
    optimal_pt_bet,
    pt_advantage,
    pt_ce,
    pt_value,
    weight_power,
)
from strategies import joints, pmfs

FAST = SimplexSearchConfig(resolution=12, iterations=200, restarts=2)
risks = st.sampled_from([-2.0, -0.5, 0.5, 2.0, 4.0])
sensitivities = st.sampled_from([0.3, 0.7, 1.0, 1.5, 2.0])


def game_for(rng, R, k=3, ng=None):
    o = math.copysign(1, R) / rng.dirichlet(np.ones(k)) * rng.uniform(0.5, 2.0)
    if ng is None:
        return BettingGame.none(o, rng.dirichlet(np.ones(k)))
    return BettingGame.gambler(o, rng.dirichlet(np.ones(k * ng)).reshape(k, ng))


def test_weight_examples():
    assert weight_power(0.3, 1.0) == pytest.approx(0.3)
    assert weight_power(1.0, 2.7) == 1.0
    assert weight_power(0.25, 0.5) == pytest.approx(0.5)
    assert weight_power(0.0, 2.0) == 0.0
    with pytest.raises(DomainError):
        weight_power(0.0, -1.0)
    with pytest.raises(DomainError):
        weight_power(1.5, 1.0)


def test_escort_sums_to_one():
    p = np.array([0.1, 0.0, 0.9])
    q = escort_joint(p, 2.0)
    assert q.sum() == pytest.approx(1.0) and q[1] == 0.0
    assert q[2] / q[0] == pytest.approx(81.0)


def test_pt_value_direct_sum():
    p = np.array([0.2, 0.3, 0.5])
    o = np.array([4.0, 3.0, 2.5])
    b = np.array([0.3, 0.3, 0.4])
    g = BettingGame.none(o, p)
    agent = PtAgent(0.0, 2.0)
    direct = sum(p[i] ** 2 * (b[i] * o[i] - 1.0) for i in range(3))
    assert pt_value(g, b, agent) == pytest.approx(direct, abs=1e-12)


@given(pmfs(size=3), pmfs(size=3), st.sampled_from([-1.0, 0.0, 0.5, 1.0, 2.0]))
def test_rational_agent_value_is_expected_utility(p, b, R):
    o = np.array([2.5, 4.0, 3.0])
    g = BettingGame.none(o, p)
    eu = sum(p[i] * isoelastic_utility(b[i] * o[i], R) for i in range(3))
    assert pt_value(g, b, PtAgent(R, 1.0)) == pytest.approx(eu, abs=1e-12)


def test_point_mass_value_is_utility_of_wealth():
    g = BettingGame.none([3.0, 1.5], [1.0, 0.0])
    assert pt_value(g, [0.5, 0.5], PtAgent(2.0, 0.6)) == pytest.approx(isoelastic_utility(1.5, 2.0))


@given(st.integers(0, 10_000), st.sampled_from([-2.0, 0.0, 0.5, 1.0, 3.0, math.inf]))
def test_rational_agent_ce_is_ice(seed, R):
    rng = np.random.default_rng(seed)
    g = game_for(rng, R if R != 0 else 1.0, ng=2)
    b = random_strategy(rng, 3, 2)
    assert pt_ce(g, b, PtAgent(R, 1.0)) == pytest.approx(ice(g, b, R), rel=1e-10)


def test_constant_wealth_ce_carries_the_distortion():
    # sum pi(p) != 1, so a sure wealth of 1 does not have CE 1 unless S = 1
    g = BettingGame.none([2.0, 2.0], [0.5, 0.5])
    agent = PtAgent(2.0, 0.5)
    # (1 - S) / (1 - R) times the order-S Renyi entropy of the uniform law
    expected = (1.0 - 0.5) / (1.0 - 2.0) * math.log(2.0)
    assert log_pt_ce(g, [0.5, 0.5], agent) == pytest.approx(expected, abs=1e-12)
    assert log_pt_ce(g, [0.5, 0.5], PtAgent(2.0, 1.0)) == pytest.approx(0.0, abs=1e-12)


@given(st.integers(0, 10_000), risks, sensitivities)
def test_no_side_information_decomposition(seed, R, S):
    rng = np.random.default_rng(seed)
    g = game_for(rng, R)
    d = decompose_pt_nosi(g, rng.dirichlet(np.ones(3)), PtAgent(R, S))
    assert d.holds, d


@given(st.integers(0, 10_000), risks, sensitivities)
def test_gambler_decomposition(seed, R, S):
    rng = np.random.default_rng(seed)
    g = game_for(rng, R, ng=2)
    d = decompose_pt_gambler(g, random_strategy(rng, 3, 2), PtAgent(R, S))
    assert d.holds, d


@given(st.integers(0, 10_000), risks)
def test_rational_decompositions_reduce_to_expected_utility(seed, R):
    rng = np.random.default_rng(seed)
    g = game_for(rng, R)
    b = rng.dirichlet(np.ones(3))
    d = decompose_pt_nosi(g, b, PtAgent(R, 1.0))
    assert d.entropy_term == 0.0
    c = 1.0 / (1.0 / np.abs(g.odds.values)).sum()
    fair = BettingGame.none(g.odds.values / c, g.joint)
    assert d.lhs - d.fairness_term == pytest.approx(decompose_bookmaker(fair, b, R).log_ice, abs=1e-10)


@pytest.mark.parametrize("R,S", [(2.0, 0.5), (-1.0, 1.5), (0.5, 0.7)])
def test_optimal_pt_bet_has_zero_penalty_and_beats_random_bets(R, S):
    rng = np.random.default_rng(1)
    agent = PtAgent(R, S)
    g = game_for(rng, R)
    h = optimal_pt_bet(g, agent)
    assert decompose_pt_nosi(g, h, agent).penalty_term == pytest.approx(0.0, abs=1e-12)
    best = log_pt_ce(g, h, agent)
    for b in rng.dirichlet(np.ones(3), size=10_000):
        assert log_pt_ce(g, b, agent) <= best + 1e-9
    gg = game_for(rng, R, ng=2)
    hh = optimal_pt_bet(gg, agent)
    assert decompose_pt_gambler(gg, hh, agent).penalty_term == pytest.approx(0.0, abs=1e-12)


def test_single_g_gambler_matches_no_side_information():
    rng = np.random.default_rng(4)
    agent = PtAgent(2.0, 0.6)
    g = game_for(rng, 2.0)
    b = rng.dirichlet(np.ones(3))
    one = BettingGame.gambler(g.odds.values, g.joint[:, None])
    a = decompose_pt_nosi(g, b, agent)
    c = decompose_pt_gambler(one, b[:, None], agent)
    assert c.lhs == pytest.approx(a.lhs) and c.div_term == pytest.approx(a.div_term)


def test_gambler_decomposition_reduces_to_expected_utility():
    rng = np.random.default_rng(5)
    g = game_for(rng, 2.0, ng=2)
    b = random_strategy(rng, 3, 2)
    d = decompose_pt_gambler(g, b, PtAgent(2.0, 1.0))
    c = 1.0 / (1.0 / np.abs(g.odds.values)).sum()
    fair = BettingGame.gambler(g.odds.values / c, g.joint)
    assert d.lhs - d.fairness_term == pytest.approx(decompose_double(fair, b, 2.0).log_ice, abs=1e-10)


def test_r_equals_one_with_distortion_is_rejected():
    rng = np.random.default_rng(2)
    g = game_for(rng, 1.0)
    with pytest.raises(DomainError):
        decompose_pt_nosi(g, rng.dirichlet(np.ones(3)), PtAgent(1.0, 0.5))


# advantage of gambler side information


def test_rational_advantage_is_arimoto_information():
    j = np.array([[0.3, 0.1], [0.1, 0.5]])
    rep = pt_advantage(j, 2.0, PtAgent(2.0, 1.0))
    assert rep.h2_term == 0.0
    assert rep.agrees
    assert rep.log_ratio == pytest.approx(arimoto_mutual_information(j, 0.5), abs=1e-10)


def test_independent_rational_advantage_is_zero():
    j = np.outer([0.2, 0.8], [0.4, 0.6])
    rep = pt_advantage(j, 1.0, PtAgent(2.0, 1.0))
    assert rep.log_ratio == pytest.approx(0.0, abs=1e-12)


@given(joints(3, 3), st.sampled_from([-1.0, 0.5, 2.0, math.inf]))
def test_rational_advantage_identity(j, R):
    assert pt_advantage(j, 1.5, PtAgent(R, 1.0)).agrees


def test_distorted_advantage_maximizations_match_oracle():
    rng = np.random.default_rng(7)
    j = rng.dirichlet(np.ones(9)).reshape(3, 3)
    agent = PtAgent(2.0, 0.7)
    rep = pt_advantage(j, 1.0, agent)
    informed = BettingGame.gambler(np.ones(3), j)
    blind = BettingGame.none(np.ones(3), j.sum(axis=1))
    num = oracle_max_log_pt_ce(informed, agent, FAST).value
    den = oracle_max_log_pt_ce(blind, agent, FAST).value
    assert num - den == pytest.approx(rep.log_ratio, abs=1e-6)
