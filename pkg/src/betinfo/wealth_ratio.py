"""Utility theory of wealth ratios.

Advantage functionals compare certainty equivalents of two strategies, or of
a gambler with and without side information.  With constant odds ``sgn(q) C``
a ``1/q`` gambler's best ICE is ``sgn(q) C p_q`` (Renyi probability), and an
``r``-agent valuing the side-information advantage recovers the
Ilic-Djordjevic mutual information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from betinfo.betting import (
    BettingGame,
    _risk,
    divergence_order,
    ice,
    isoelastic_utility,
    max_log_ice,
)
from betinfo.entropies import (
    _order,
    id_cond_entropy,
    id_mutual_information,
    log_renyi_cond_probability,
    log_renyi_probability,
    sharma_mittal_entropy,
)
from betinfo.optimizer import SimplexSearchConfig, oracle_max_log_ice
from betinfo.prob_core import DomainError, as_array, pseudo_sub, sgn


@dataclass(frozen=True)
class Advantage:
    value: float
    numerator: str

    def to_dict(self) -> dict:
        return {"value": self.value, "numerator": self.numerator}


def advantage_strategies(game: BettingGame, b1, b2, R) -> Advantage:
    """``ICE(b1) / ICE(b2)`` oriented so that the ratio is at least one."""
    w1, w2 = ice(game, b1, R), ice(game, b2, R)
    if w2 == 0.0 or w1 == 0.0:
        raise DomainError("advantage undefined for a zero ICE")
    ratio = w1 / w2
    if ratio >= 1.0:
        return Advantage(ratio, "b1")
    return Advantage(1.0 / ratio, "b2")


def _constant_odds(k: int, sign: int, C: float) -> np.ndarray:
    if not C > 0:
        raise DomainError("C must be positive")
    return np.full(k, sign * float(C))


def _max_log_ice(game: BettingGame, R: float, oracle: SimplexSearchConfig | None) -> float:
    if oracle is not None or game.sign != sgn(R):
        return oracle_max_log_ice(game, R, oracle).value
    return max_log_ice(game, R)


def advantage_side_information(odds, j, R, oracle: SimplexSearchConfig | None = None) -> float:
    """Best ICE with gambler side information over best ICE without it.

    Closed-form optima are used when ``sgn(o) = sgn(R)``; otherwise (or when
    ``oracle`` is given) both maxima come from the simplex oracle.
    """
    R = _risk(R)
    j = as_array(j, ndim=2, what="p(x,g)")
    odds = np.asarray(odds, dtype=float)
    informed = BettingGame.gambler(odds, j)
    blind = BettingGame.none(odds, j.sum(axis=1))
    u = _max_log_ice(informed, R, oracle) - _max_log_ice(blind, R, oracle)
    # u = sgn(o) ln|ICE| differences; the ICE ratio itself is positive
    return math.exp(informed.sign * u)


@dataclass(frozen=True)
class BettingIdentity:
    """Information quantity against its betting expression."""

    information: float
    betting: float
    residual: float
    agrees: bool
    oracle: float | None = None
    oracle_residual: float | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _identity(info: float, bet: float, tol: float, oracle: float | None = None) -> BettingIdentity:
    res = abs(info - bet)
    ores = None if oracle is None else abs(info - oracle)
    return BettingIdentity(info, bet, res, bool(res <= tol), oracle, ores)


def renyi_prob_via_betting(p, q, C: float = 1.0, tol: float = 1e-8, oracle: SimplexSearchConfig | None = None):
    """``sgn(q) C p_q(X)`` against the best ICE of a ``1/q`` gambler at odds ``sgn(q) C``."""
    p = as_array(p, ndim=1, what="p(x)")
    q = _order(q)
    R = divergence_order(q)
    game = BettingGame.none(_constant_odds(p.size, sgn(q), C), p)
    info = sgn(q) * C * math.exp(log_renyi_probability(p, q))
    best = sgn(q) * math.exp(sgn(q) * max_log_ice(game, R))
    orc = None
    if oracle is not None:
        orc = sgn(q) * math.exp(sgn(q) * oracle_max_log_ice(game, R, oracle).value)
    return _identity(info, best, tol, orc)


def arimoto_prob_via_betting(j, q, C: float = 1.0, tol: float = 1e-8, oracle: SimplexSearchConfig | None = None):
    """``sgn(q) C p_q(X|G)`` against the best ICE with gambler side information."""
    j = as_array(j, ndim=2, what="p(x,g)")
    q = _order(q)
    R = divergence_order(q)
    game = BettingGame.gambler(_constant_odds(j.shape[0], sgn(q), C), j)
    info = sgn(q) * C * math.exp(log_renyi_cond_probability(j, q))
    best = sgn(q) * math.exp(sgn(q) * max_log_ice(game, R))
    orc = None
    if oracle is not None:
        orc = sgn(q) * math.exp(sgn(q) * oracle_max_log_ice(game, R, oracle).value)
    return _identity(info, best, tol, orc)


@dataclass(frozen=True)
class IdMiReport:
    lhs_id_mi: float
    rhs_utility_of_ratio: float
    residual: float
    agree: bool
    #: ``sgn(q) [(sgn(q) H^SM) (-)_r (sgn(q) H^ID)]``; coincides with ``lhs_id_mi`` for q >= 0 or r = 1
    lhs_sign_symmetric: float
    residual_sign_symmetric: float
    ratio: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def id_mi_operational(
    j, q, r, C: float = 1.0, tol: float = 1e-8, oracle: SimplexSearchConfig | None = None
) -> IdMiReport:
    """ID mutual information against ``sgn(q) u_r`` of the side-information advantage."""
    j = as_array(j, ndim=2, what="p(x,g)")
    q = _order(q)
    r = float(r)
    R = divergence_order(q)
    odds = _constant_odds(j.shape[0], sgn(q), C)
    ratio = advantage_side_information(odds, j, R, oracle)
    rhs = sgn(q) * isoelastic_utility(ratio, r)
    lhs = id_mutual_information(j, q, r)
    s = sgn(q)
    sym = s * float(pseudo_sub(s * sharma_mittal_entropy(j.sum(axis=1), q, r), s * id_cond_entropy(j, q, r), r))
    res = abs(lhs - rhs)
    return IdMiReport(lhs, rhs, res, bool(res <= tol), sym, abs(sym - rhs), ratio)
