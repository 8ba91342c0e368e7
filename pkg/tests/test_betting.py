import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from betinfo.betting import (
    BettingGame,
    Strategy,
    decompose_bookmaker,
    decompose_double,
    divergence_order,
    fairness,
    ice,
    isoelastic_utility,
    log_ice,
    max_log_ice,
    optimal_bet_bookmaker,
    optimal_bet_double,
    random_strategy,
    ratio_bookmaker_vs_gambler,
    ratio_bookmaker_vs_none,
    rra,
)
from betinfo.optimizer import SimplexSearchConfig, oracle_max_log_ice
from betinfo.prob_core import DomainError, ln_r
from strategies import joints, pmfs

risks = st.sampled_from([-math.inf, -2.0, -0.5, -0.0, 0.0, 0.5, 1.0, 2.0, 7.0, math.inf])
positive_risks = st.sampled_from([0.0, 0.5, 1.0, 2.0, 7.0, math.inf])
FAST = SimplexSearchConfig(resolution=12, iterations=200, restarts=2)


def fair_odds(rng, k, n=None):
    shape = (k,) if n is None else (k, n)
    r = rng.dirichlet(np.ones(k), size=1 if n is None else n).T
    return (1.0 / r).reshape(shape)


def ice_oracle(p, b, o, R):
    w = (b * np.abs(o)).ravel()
    p = p.ravel()
    if R == 1:
        return math.exp(np.sum(p * np.log(w)))
    if math.isinf(R):
        return w[p > 0].min() if R > 0 else w[p > 0].max()
    return np.sum(p * w ** (1 - R)) ** (1 / (1 - R))


# utilities


def test_isoelastic_examples():
    assert isoelastic_utility(1.0, 3.0) == 0.0
    assert isoelastic_utility(math.e, 1.0) == pytest.approx(1.0)
    assert isoelastic_utility(-2.0, 0.0) == pytest.approx(-1.0)
    assert isoelastic_utility(-2.0, 2.0) == pytest.approx(-ln_r(2.0, 2.0))


def test_isoelastic_rejects_zero_wealth_for_log_branch():
    with pytest.raises(DomainError):
        isoelastic_utility(0.0, 1.0)


@pytest.mark.parametrize("R,w", [(0.7, 2.0), (1.0, 3.0), (2.5, 0.4)])
def test_rra_recovers_constant_relative_risk_aversion(R, w):
    assert rra(lambda x: isoelastic_utility(x, R), w) == pytest.approx(R, abs=1e-4)


def test_rra_of_linear_utility_is_zero():
    assert rra(lambda x: 3.0 * x + 1.0, 2.0) == pytest.approx(0.0, abs=1e-4)


def test_divergence_order_signed_limits():
    assert divergence_order(0.0) == math.inf
    assert divergence_order(-0.0) == -math.inf
    assert math.copysign(1.0, divergence_order(math.inf)) == 1.0
    assert math.copysign(1.0, divergence_order(-math.inf)) == -1.0
    assert divergence_order(4.0) == 0.25


# ICE


def test_ice_examples():
    g = BettingGame.none([2.0, 2.0], [0.5, 0.5])
    assert ice(g, [0.5, 0.5], 0.0) == pytest.approx(1.0)
    for R in (-3.0, 0.0, 1.0, 2.0, math.inf):
        assert ice(g, [0.5, 0.5], R) == pytest.approx(1.0)
    point = BettingGame.none([3.0, 1.5], [1.0, 0.0])
    for R in (-1.0, 0.0, 0.5, 1.0, 4.0, math.inf):
        assert ice(point, [1.0, 0.0], R) == pytest.approx(3.0)


def test_ice_zero_bet_with_mass_is_zero_at_log_branch():
    g = BettingGame.none([2.0, 2.0], [0.5, 0.5])
    assert ice(g, [1.0, 0.0], 1.0) == 0.0
    assert log_ice(g, [1.0, 0.0], 2.0) == -math.inf


@given(pmfs(size=3), pmfs(size=3), st.sampled_from([-2.0, 0.0, 0.5, 1.0, 3.0, math.inf]))
def test_ice_matches_direct_oracle(p, b, R):
    o = np.array([2.5, 4.0, 3.0])
    g = BettingGame.none(o, p)
    assert ice(g, b, R) == pytest.approx(ice_oracle(p, b, o, R), rel=1e-10)
    assert log_ice(g, b, R) == pytest.approx(math.log(ice(g, b, R)), abs=1e-12)


@given(pmfs(size=3), pmfs(size=3), st.floats(0.1, 10.0), risks)
def test_ice_is_homogeneous_in_odds_scale(p, b, lam, R):
    o = np.array([2.5, 4.0, 3.0])
    a = ice(BettingGame.none(o, p), b, R)
    assert ice(BettingGame.none(lam * o, p), b, R) == pytest.approx(lam * a, rel=1e-10)


def test_negative_odds_flip_the_sign():
    p = np.array([0.3, 0.7])
    b = np.array([0.4, 0.6])
    pos = BettingGame.none([2.0, 2.0], p)
    neg = BettingGame.none([-2.0, -2.0], p)
    assert ice(neg, b, -1.0) == pytest.approx(-ice(pos, b, -1.0))
    assert log_ice(neg, b, -1.0) == pytest.approx(-log_ice(pos, b, -1.0))


@given(risks)
def test_fair_constant_wealth_anchor(R):
    rng = np.random.default_rng(3)
    o = fair_odds(rng, 3, 2)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    # betting r(x|y) is only possible when it does not depend on y
    o[:, 1] = o[:, 0]
    g = BettingGame.bookmaker(o, p)
    assert ice(g, 1.0 / o[:, 0], R) == pytest.approx(1.0, abs=1e-12)


# fairness


def test_fairness_classes():
    assert fairness([2.0, 2.0]).kind == "fair"
    rep = fairness([3.0, 3.0])
    assert rep.kind == "superfair" and rep.c == pytest.approx([1.5])
    assert fairness([1.5, 1.5]).kind == "subfair"
    assert fairness(np.array([[2.0, 3.0], [2.0, 3.0]])).kind == "mixed"
    assert fairness([-2.0, -2.0]).kind == "fair"


def test_decomposition_rejects_unfair_odds():
    g = BettingGame.bookmaker(np.array([[3.0, 2.0], [3.0, 2.0]]), np.full((2, 2), 0.25))
    with pytest.raises(DomainError):
        decompose_bookmaker(g, [0.5, 0.5], 2.0)


# optima


def test_kelly_bet_at_log_utility():
    p = np.array([0.2, 0.5, 0.3])
    h = optimal_bet_bookmaker(BettingGame.none([3.0, 3.0, 3.0], p), 1.0)
    assert h.bet == pytest.approx(p, abs=1e-12)


def test_y_independent_bookmaker_reduces_to_no_side_information():
    rng = np.random.default_rng(5)
    o = fair_odds(rng, 3)
    px = rng.dirichlet(np.ones(3))
    py = rng.dirichlet(np.ones(2))
    cond = BettingGame.bookmaker(np.stack([o, o], axis=1), np.outer(px, py))
    plain = BettingGame.none(o, px)
    for R in (-1.0, 0.5, 2.0, math.inf):
        assert optimal_bet_bookmaker(cond, R).bet == pytest.approx(optimal_bet_bookmaker(plain, R).bet, abs=1e-12)


@pytest.mark.parametrize("seed", range(3))
def test_bookmaker_optimum_beats_random_bets_and_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    o = fair_odds(rng, 3, 2)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    g = BettingGame.bookmaker(o, p)
    best = max_log_ice(g, 2.0)
    bets = rng.dirichlet(np.ones(3), size=10_000)
    assert max(log_ice(g, b, 2.0) for b in bets[:2000]) <= best + 1e-9
    assert oracle_max_log_ice(g, 2.0, FAST).value == pytest.approx(best, abs=1e-6)


@pytest.mark.parametrize("seed", range(2))
def test_double_optimum_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    o = fair_odds(rng, 2, 2)
    p = rng.dirichlet(np.ones(8)).reshape(2, 2, 2)
    g = BettingGame.double(o, p)
    best = max_log_ice(g, 0.5)
    assert oracle_max_log_ice(g, 0.5, FAST).value == pytest.approx(best, abs=1e-6)
    for _ in range(200):
        assert log_ice(g, random_strategy(rng, 2, 2), 0.5) <= best + 1e-9


def test_double_with_single_g_matches_bookmaker():
    rng = np.random.default_rng(11)
    o = fair_odds(rng, 3, 2)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    for R in (-2.0, 0.5, 1.0, 3.0):
        dbl = optimal_bet_double(BettingGame.double(o, p[:, None, :]), R).strategy.bet[:, 0]
        bk = optimal_bet_bookmaker(BettingGame.bookmaker(o, p), R).bet
        assert dbl == pytest.approx(bk, abs=1e-12)


def test_gambler_optimum_is_an_escort_bet():
    # under constant fair odds the per-column optimum is the escort of order 1/R
    rng = np.random.default_rng(2)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    R = 2.0
    opt = optimal_bet_double(BettingGame.double(np.full((3, 1), 3.0), p[:, :, None]), R).strategy.bet
    cond = p / p.sum(axis=0)
    esc = cond ** (1 / R) / (cond ** (1 / R)).sum(axis=0)
    assert opt == pytest.approx(esc, abs=1e-12)


# decompositions


@given(st.integers(0, 10_000), risks)
def test_bookmaker_decomposition_holds_for_any_bet(seed, R):
    rng = np.random.default_rng(seed)
    sign = 1 if (R > 0 or (R == 0 and math.copysign(1, R) > 0)) else -1
    o = sign * fair_odds(rng, 3, 2)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    g = BettingGame.bookmaker(o, p)
    d = decompose_bookmaker(g, rng.dirichlet(np.ones(3)), R)
    assert d.holds, d


@given(st.integers(0, 10_000), risks)
def test_double_decomposition_holds_for_any_bet(seed, R):
    rng = np.random.default_rng(seed)
    sign = 1 if math.copysign(1, R) > 0 else -1
    o = sign * fair_odds(rng, 3, 2)
    p = rng.dirichlet(np.ones(12)).reshape(3, 2, 2)
    g = BettingGame.double(o, p)
    d = decompose_double(g, random_strategy(rng, 3, 2), R)
    assert d.holds, d


@pytest.mark.parametrize("R", [-1.0, 0.5, 2.0])
def test_optimal_bet_has_zero_penalty(R):
    rng = np.random.default_rng(4)
    o = math.copysign(1, R) * fair_odds(rng, 3, 2)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    g = BettingGame.bookmaker(o, p)
    d = decompose_bookmaker(g, optimal_bet_bookmaker(g, R), R)
    assert d.penalty_term == pytest.approx(0.0, abs=1e-12)
    gd = BettingGame.double(o, rng.dirichlet(np.ones(12)).reshape(3, 2, 2))
    dd = decompose_double(gd, optimal_bet_double(gd, R).strategy, R)
    assert dd.penalty_term == pytest.approx(0.0, abs=1e-12)


def test_gambler_game_decomposes_like_double_with_single_y():
    rng = np.random.default_rng(8)
    o = fair_odds(rng, 3)
    p = rng.dirichlet(np.ones(6)).reshape(3, 2)
    b = random_strategy(rng, 3, 2)
    a = decompose_double(BettingGame.gambler(o, p), b, 2.0)
    c = decompose_double(BettingGame.double(o[:, None], p[:, :, None]), b, 2.0)
    assert a.log_ice == pytest.approx(c.log_ice) and a.div_term == pytest.approx(c.div_term)


def test_negative_risk_aversion_needs_support():
    g = BettingGame.bookmaker(np.full((2, 2), -2.0), np.array([[0.5, 0.0], [0.25, 0.25]]))
    with pytest.raises(DomainError):
        optimal_bet_bookmaker(g, -1.0)


# configuration comparisons


@given(st.integers(0, 10_000), st.sampled_from([1.0, 2.0, 5.0, math.inf]))
def test_bookmaker_vs_none_identity(seed, R):
    rng = np.random.default_rng(seed)
    rep = ratio_bookmaker_vs_none(fair_odds(rng, 3, 2), rng.dirichlet(np.ones(6)).reshape(3, 2), R)
    assert rep.agrees, rep


def test_bookmaker_vs_none_independent_is_zero():
    rng = np.random.default_rng(1)
    o = fair_odds(rng, 3)
    j = np.outer(rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(2)))
    rep = ratio_bookmaker_vs_none(np.stack([o, o], axis=1), j, 2.0)
    assert rep.log_ratio == pytest.approx(0.0, abs=1e-12)


def test_bookmaker_vs_none_rejects_small_risk_aversion():
    with pytest.raises(DomainError):
        ratio_bookmaker_vs_none(np.full((2, 2), 2.0), np.full((2, 2), 0.25), 0.5)


@given(joints(3, 3), st.sampled_from([-math.inf, -1.0, -0.5, 0.5, 1.0, 2.0, math.inf]))
def test_bookmaker_vs_gambler_identity_and_sign(j, R):
    rng = np.random.default_rng(0)
    o = math.copysign(1, R) * fair_odds(rng, j.shape[0], j.shape[1])
    rep = ratio_bookmaker_vs_gambler(o, j, R)
    assert rep.agrees, rep
    assert rep.holds_nonneg


def test_bookmaker_vs_gambler_trivial_cases():
    rng = np.random.default_rng(6)
    o = fair_odds(rng, 3, 1)
    single = ratio_bookmaker_vs_gambler(o, rng.dirichlet(np.ones(3))[:, None], 2.0)
    assert single.log_ratio == pytest.approx(0.0, abs=1e-12)
    o2 = fair_odds(rng, 3, 2)
    indep = np.outer(rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(2)))
    rep = ratio_bookmaker_vs_gambler(o2, indep, 0.5)
    assert rep.agrees


# serialization


def test_game_and_strategy_json_round_trip():
    rng = np.random.default_rng(9)
    g = BettingGame.double(fair_odds(rng, 3, 2), rng.dirichlet(np.ones(12)).reshape(3, 2, 2))
    back = BettingGame.from_dict(json.loads(json.dumps(g.to_dict())))
    assert back.config == g.config
    assert np.array_equal(back.joint, g.joint)
    assert np.array_equal(back.odds.values, g.odds.values)
    s = random_strategy(rng, 3, 2)
    assert np.array_equal(Strategy(json.loads(json.dumps(s.to_dict()))["bet"]).bet, s.bet)


def test_game_validation():
    with pytest.raises(ValueError):
        BettingGame.bookmaker([2.0, 2.0], np.full((2, 2), 0.25))
    with pytest.raises(ValueError):
        BettingGame.none([2.0, -2.0], [0.5, 0.5])
    with pytest.raises(ValueError):
        Strategy([0.5, 0.6])
    with pytest.raises(KeyError):
        BettingGame.from_dict({"odds": [2.0, 2.0]})
