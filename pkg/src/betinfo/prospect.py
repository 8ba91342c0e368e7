"""Original prospect theory with power probability weighting ``pi(p) = p**S``.

The certainty equivalent of an isoelastic agent ``(R, S)`` is taken in power
form, ``CE = [sum_x p(x)**S |w(x)|**(1-R)]**(1/(1-R))`` (signed by the odds),
which factors into the escort ``q = p**S / sum p**S`` and the expected-utility
CE under ``q``.  That factorization is what the decompositions below rely on.
At ``R = 1`` the power form degenerates unless ``S = 1``; there ``pt_ce`` falls
back to ``exp(sum pi(p) ln|w|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from betinfo.betting import (
    BettingGame,
    Strategy,
    _bet_table,
    _risk,
    decompose_bookmaker,
    decompose_double,
    divergence_order,
    isoelastic_utility,
    optimal_bet_bookmaker,
    optimal_bet_double,
)
from betinfo.divergences import blp_crd, renyi_divergence
from betinfo.entropies import arimoto_mutual_information, renyi_entropy
from betinfo.prob_core import DomainError, OddsTable, as_array, log_power_mean, sgn

IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class PtAgent:
    R: float
    S: float

    def __post_init__(self):
        object.__setattr__(self, "R", _risk(self.R))
        s = float(self.S)
        if not math.isfinite(s):
            raise DomainError("the sensitivity S must be finite")
        object.__setattr__(self, "S", s)


def weight_power(p, S) -> float:
    """``pi(p) = p**S`` with ``0**S = 0`` for ``S > 0``."""
    p = float(p)
    S = float(S)
    if not 0.0 <= p <= 1.0:
        raise DomainError("probabilities must lie in [0, 1]")
    if p == 0.0:
        if S <= 0:
            raise DomainError("p = 0 needs S > 0")
        return 0.0
    return p**S


def _game(game: BettingGame) -> BettingGame:
    if game.config not in ("none", "gambler"):
        raise ValueError("prospect-theory games use o(x) with optional gambler side information")
    return game


def _check_support(p: np.ndarray, agent: PtAgent) -> None:
    if (agent.S <= 0 or agent.R < 0) and np.any(p <= 0):
        raise DomainError("S <= 0 or R < 0 needs a full-support joint")


def _log_z(p: np.ndarray, S: float) -> float:
    """``ln sum p**S`` over the support."""
    pos = p[p > 0]
    return float(logsumexp(S * np.log(pos)))


def escort_joint(p: np.ndarray, S: float) -> np.ndarray:
    """``q = p**S / sum p**S`` of any shape (zero stays zero for ``S > 0``)."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = np.exp(S * np.log(p[pos]) - _log_z(p, S))
    return out


def _wealth(game: BettingGame, b: np.ndarray):
    """Joint ``p[x, g]`` and wealth magnitudes ``|b(x|g) o(x)|``."""
    p = game.p3[:, :, 0]
    return p, b * game.magnitude[:, :1]


def pt_value(game: BettingGame, s, agent: PtAgent) -> float:
    """``sum pi(p(x,g)) u_R(b(x|g) o(x))`` with the isoelastic utility."""
    game = _game(game)
    p, w = _wealth(game, _bet_table(game, s))
    total = 0.0
    for idx in zip(*np.nonzero(p > 0)):
        total += weight_power(p[idx], agent.S) * isoelastic_utility(game.sign * w[idx], agent.R)
    return total


def log_pt_ce(game: BettingGame, s, agent: PtAgent) -> float:
    """``sgn(o) ln`` of the PT certainty equivalent computed with ``|o|``."""
    game = _game(game)
    p, w = _wealth(game, _bet_table(game, s))
    _check_support(p, agent)
    R, S = agent.R, agent.S
    q = escort_joint(p, S)
    with np.errstate(divide="ignore"):
        logw = np.log(w)
    if R == 1.0:
        if S == 1.0:
            out = log_power_mean(logw.ravel(), q.ravel(), 0.0)
        else:
            mask = p > 0
            out = float(np.sum(p[mask] ** S * logw[mask]))
    else:
        lead = 0.0 if math.isinf(R) else _log_z(p, S) / (1.0 - R)
        out = lead + log_power_mean(logw.ravel(), q.ravel(), 1.0 - R)
    return game.sign * out


def pt_ce(game: BettingGame, s, agent: PtAgent) -> float:
    out = log_pt_ce(game, s, agent)
    return game.sign * math.exp(game.sign * out)


def _fair_parts(game: BettingGame):
    """``c = (sum 1/o)**-1`` and the PMF ``r = c / o``."""
    inv = 1.0 / game.magnitude[:, 0]
    c = 1.0 / inv.sum()
    return c, c * inv


def _entropy_term(p: np.ndarray, agent: PtAgent) -> float:
    R, S = agent.R, agent.S
    if S == 1.0:
        return 0.0
    if R == 1.0:
        raise DomainError("R = 1 with S != 1: the (1-S)/(1-R) prefactor diverges")
    if math.isinf(R):
        return 0.0
    return sgn(S) * (1.0 - S) / (1.0 - R) * renyi_entropy(p.ravel(), S)


@dataclass(frozen=True)
class PtDecomposition:
    lhs: float
    entropy_term: float
    fairness_term: float
    div_term: float
    penalty_term: float
    residual: float
    holds: bool
    extra: dict

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _pt_report(lhs, ent, fair, div, pen, tol, extra=None) -> PtDecomposition:
    res = abs(lhs - (ent + fair + div - pen))
    return PtDecomposition(lhs, ent, fair, div, pen, res, bool(res <= tol), extra or {})


def decompose_pt_nosi(game: BettingGame, s, agent: PtAgent, tol: float = IDENTITY_TOL) -> PtDecomposition:
    """Entropy, odds-fairness, divergence and penalty terms of the PT log-CE."""
    if game.config != "none":
        raise ValueError("decompose_pt_nosi needs a game without side information")
    b = _bet_table(game, s)[:, 0]
    p = game.joint
    _check_support(p, agent)
    R = agent.R
    so = game.sign
    c, r = _fair_parts(game)
    q = escort_joint(p, agent.S)
    ent = so * _entropy_term(p, agent)
    eut = BettingGame.none(OddsTable(so / r), q)
    pen = decompose_bookmaker(eut, b, R).penalty_term
    div = so * sgn(R) * renyi_divergence(q, r, divergence_order(R))
    return _pt_report(log_pt_ce(game, b, agent), ent, so * math.log(c), div, pen, tol)


def decompose_pt_gambler(game: BettingGame, s, agent: PtAgent, tol: float = IDENTITY_TOL) -> PtDecomposition:
    """PT log-CE with gambler side information.

    The bet weights ``h_G`` are those of the expected-utility optimum under
    the escort joint, i.e. built on ``q(g) = sum_x q(x, g)``.  ``extra``
    carries the residual obtained when ``p(g)`` is used instead.
    """
    if game.config != "gambler":
        raise ValueError("decompose_pt_gambler needs a gambler game")
    b = _bet_table(game, s)
    p = game.joint
    _check_support(p, agent)
    R = agent.R
    so = game.sign
    c, r = _fair_parts(game)
    q = escort_joint(p, agent.S)
    qg = q.sum(axis=0)
    ent = so * _entropy_term(p, agent)
    eut = BettingGame.double((so / r)[:, None], q[:, :, None])
    pen = decompose_double(eut, b, R).penalty_term
    safe = np.where(qg > 0, qg, 1.0)
    qc = np.where(qg[None, :] > 0, q / safe[None, :], 1.0 / q.shape[0])
    div = so * sgn(R) * blp_crd(qc, np.broadcast_to(r[:, None], qc.shape), qg, divergence_order(R))
    lhs = log_pt_ce(game, b, agent)
    extra = {}
    if math.isfinite(R) and R != 0.0:
        opt = optimal_bet_double(eut, R)
        hg = np.exp(np.log(p.sum(axis=0)) + (1.0 - R) * opt.log_means)
        hg = hg / hg.sum()
        h = opt.strategy.bet
        pen_p = so * sgn(R) * renyi_divergence(h * hg, b * hg, R)
        extra["residual_with_p_g"] = abs(lhs - (ent + so * math.log(c) + div - pen_p))
    return _pt_report(lhs, ent, so * math.log(c), div, pen, tol, extra)


def optimal_pt_bet(game: BettingGame, agent: PtAgent) -> Strategy:
    """PT optimum: the expected-utility optimum under the escort joint."""
    game = _game(game)
    _check_support(game.p3[:, :, 0], agent)
    _, r = _fair_parts(game)
    q = escort_joint(game.joint, agent.S)
    odds = game.sign / r
    if game.config == "none":
        return optimal_bet_bookmaker(BettingGame.none(odds, q), agent.R)
    return optimal_bet_double(BettingGame.double(odds[:, None], q[:, :, None]), agent.R).strategy


@dataclass(frozen=True)
class PtAdvantage:
    log_ratio: float
    arimoto_mi: float
    h2_term: float
    rhs: float
    residual: float
    agrees: bool
    #: ``I^A`` replaced by ``H_{1/R}(escort(p_X)) - H^A_{1/R}(X|G)`` under ``q_{XG}``
    rhs_escort_marginal: float
    residual_escort_marginal: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def pt_advantage(j, C: float, agent: PtAgent, tol: float = 1e-9) -> PtAdvantage:
    """Gain from gambler side information for a PT agent facing odds ``sgn(R) C``."""
    j = as_array(j, ndim=2, what="p(x,g)")
    if not C > 0:
        raise DomainError("C must be positive")
    R, S = agent.R, agent.S
    k = j.shape[0]
    odds = np.full(k, sgn(R) * float(C))
    informed = BettingGame.gambler(odds, j)
    blind = BettingGame.none(odds, j.sum(axis=1))
    u_num = log_pt_ce(informed, optimal_pt_bet(informed, agent), agent)
    u_den = log_pt_ce(blind, optimal_pt_bet(blind, agent), agent)
    # u = sgn(o) ln|CE| and sgn(o) = sgn(R), so sgn(R) ln(CE ratio) = u_num - u_den
    log_ratio = u_num - u_den
    alpha = divergence_order(R)
    q = escort_joint(j, S)
    mi = arimoto_mutual_information(q, alpha)
    if S == 1.0 or math.isinf(R):
        h2 = 0.0
    elif R == 1.0:
        raise DomainError("R = 1 with S != 1: the (1-S)/(1-R) prefactor diverges")
    else:
        h2 = sgn(R * S) * (1.0 - S) / (1.0 - R) * (renyi_entropy(j.ravel(), S) - renyi_entropy(j.sum(axis=1), S))
    rhs = mi + h2
    shift = renyi_entropy(escort_joint(j.sum(axis=1), S), alpha) - renyi_entropy(q.sum(axis=1), alpha)
    rhs_em = rhs + shift
    res = abs(log_ratio - rhs)
    return PtAdvantage(
        log_ratio, mi, h2, rhs, res, bool(res <= tol), rhs_em, abs(log_ratio - rhs_em)
    )
