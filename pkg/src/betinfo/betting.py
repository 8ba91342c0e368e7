"""Horse-race betting with isoelastic (CRRA) gamblers.

A game is stored in one canonical layout whatever its side-information
configuration: the joint ``p[x, g, y]`` (``g`` is what the gambler sees,
``y`` what the bookmaker sees), the signed odds ``o[x, y]`` and bets
``b[x, g]``.  Missing variables are singleton axes.

The log-ICE and all closed-form optima are written with weighted power means,
so risk aversions ``R in {0, 1, +-inf}`` are the exact limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from betinfo.divergences import (
    blp_crd,
    n1_crd,
    n2_crd,
    renyi_divergence,
)
from betinfo.entropies import INEQ_SLACK, _order
from betinfo.prob_core import (
    NORM_TOL,
    DomainError,
    OddsTable,
    as_array,
    ln_r,
    log_power_mean,
    parse_order,
    sgn,
    tilted_weights,
)

CONFIGS = ("none", "gambler", "bookmaker", "double")
FAIR_TOL = 1e-9
IDENTITY_TOL = 1e-10


def _risk(R) -> float:
    R = parse_order(R)
    return _order(R)


def divergence_order(R: float) -> float:
    """``1/R`` with ``1/(+-0) = +-inf`` and ``1/(+-inf) = +-0.0`` (signed zero)."""
    if R == 0.0:
        return math.copysign(math.inf, R)
    if math.isinf(R):
        return math.copysign(0.0, R)
    return 1.0 / R


# ---------------------------------------------------------------------------
# utilities
# ---------------------------------------------------------------------------


def isoelastic_utility(w, R) -> float:
    """``sgn(w) ln_R |w|``, the CRRA utility extended to negative wealth."""
    R = _risk(R)
    if math.isinf(R):
        raise DomainError("isoelastic utility needs a finite risk aversion")
    w = float(w)
    if w == 0.0:
        if R >= 1.0:
            raise DomainError("u_R(0) diverges for R >= 1")
        return -1.0 / (1.0 - R)
    return sgn(w) * float(ln_r(abs(w), R))


def rra(u: Callable[[float], float], w: float) -> float:
    """Relative risk aversion ``-w u''(w) / u'(w)`` by central differences."""
    w = float(w)
    h = max(1e-5, 1e-5 * abs(w))
    up, mid, dn = u(w + h), u(w), u(w - h)
    d1 = (up - dn) / (2 * h)
    if not math.isfinite(d1) or abs(d1) < 1e-300:
        raise DomainError("u'(w) vanishes; relative risk aversion undefined")
    d2 = (up - 2 * mid + dn) / (h * h)
    return -w * d2 / d1


# ---------------------------------------------------------------------------
# games and strategies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Strategy:
    """Bet ``b(x)`` (vector) or ``b(x|g)`` (columns are PMFs)."""

    bet: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bet, dtype=float)
        if b.ndim not in (1, 2):
            raise ValueError("a bet is a vector b(x) or a table b(x|g)")
        if np.any(b < 0) or not np.all(np.isfinite(b)):
            raise ValueError("bets must be finite and nonnegative")
        sums = b.sum(axis=0)
        if np.any(np.abs(sums - 1.0) > NORM_TOL):
            raise ValueError("each bet column must sum to one")
        b = b / sums
        b.setflags(write=False)
        object.__setattr__(self, "bet", b)

    @classmethod
    def coerce(cls, s) -> "Strategy":
        return s if isinstance(s, Strategy) else cls(s)

    def table(self) -> np.ndarray:
        return self.bet if self.bet.ndim == 2 else self.bet[:, None]

    def to_dict(self) -> dict:
        return {"bet": self.bet.tolist()}


@dataclass(frozen=True)
class BettingGame:
    """Odds plus joint law under one of the four side-information configurations."""

    odds: OddsTable
    joint: np.ndarray
    config: str

    def __post_init__(self):
        if self.config not in CONFIGS:
            raise ValueError(f"config must be one of {CONFIGS}")
        odds = self.odds if isinstance(self.odds, OddsTable) else OddsTable(np.asarray(self.odds))
        p = np.asarray(self.joint, dtype=float)
        expected = {"none": 1, "gambler": 2, "bookmaker": 2, "double": 3}[self.config]
        if p.ndim != expected:
            raise ValueError(f"{self.config} games need a {expected}-d joint, got {p.ndim}-d")
        if np.any(p < 0) or abs(p.sum() - 1.0) > NORM_TOL:
            raise ValueError("joint must be a PMF")
        conditional_odds = self.config in ("bookmaker", "double")
        if odds.is_conditional != conditional_odds:
            raise ValueError(f"{self.config} games need {'o(x|y)' if conditional_odds else 'o(x)'} odds")
        k = odds.as_table().shape[0]
        if p.shape[0] != k:
            raise ValueError("joint and odds disagree on |X|")
        if conditional_odds and p.shape[-1] != odds.values.shape[1]:
            raise ValueError("joint and odds disagree on |Y|")
        p = p / p.sum()
        p.setflags(write=False)
        object.__setattr__(self, "odds", odds)
        object.__setattr__(self, "joint", p)

    @classmethod
    def none(cls, odds, p) -> "BettingGame":
        return cls(_odds(odds), as_array(p, ndim=1, what="p(x)"), "none")

    @classmethod
    def gambler(cls, odds, p_xg) -> "BettingGame":
        return cls(_odds(odds), as_array(p_xg, ndim=2, what="p(x,g)"), "gambler")

    @classmethod
    def bookmaker(cls, odds, p_xy) -> "BettingGame":
        return cls(_odds(odds), as_array(p_xy, ndim=2, what="p(x,y)"), "bookmaker")

    @classmethod
    def double(cls, odds, p_xgy) -> "BettingGame":
        return cls(_odds(odds), as_array(p_xgy, ndim=3, what="p(x,g,y)"), "double")

    @property
    def p3(self) -> np.ndarray:
        """Joint in the canonical ``[x, g, y]`` layout."""
        p = self.joint
        if self.config == "none":
            return p[:, None, None]
        if self.config == "gambler":
            return p[:, :, None]
        if self.config == "bookmaker":
            return p[:, None, :]
        return p

    @property
    def sign(self) -> int:
        return self.odds.sign

    @property
    def magnitude(self) -> np.ndarray:
        """``|o|`` as ``(K, |Y|)``."""
        return np.abs(self.odds.as_table())

    @property
    def size(self) -> int:
        return self.joint.shape[0]

    @property
    def n_side(self) -> int:
        return self.p3.shape[1]

    def to_dict(self) -> dict:
        return {"odds": self.odds.to_dict(), "joint": self.joint.tolist(), "config": self.config}

    @classmethod
    def from_dict(cls, data: dict) -> "BettingGame":
        for key in ("odds", "joint", "config"):
            if key not in data:
                raise KeyError(key)
        odds = data["odds"]
        odds = OddsTable.from_dict(odds) if isinstance(odds, dict) else OddsTable(np.asarray(odds, float))
        return cls(odds, np.asarray(data["joint"], dtype=float), data["config"])


def _odds(o) -> OddsTable:
    return o if isinstance(o, OddsTable) else OddsTable(np.asarray(o, dtype=float))


def _bet_table(game: BettingGame, s) -> np.ndarray:
    b = Strategy.coerce(s).table()
    if b.shape != (game.size, game.n_side):
        raise ValueError(f"bet shape {b.shape} does not match game {(game.size, game.n_side)}")
    return b


# ---------------------------------------------------------------------------
# figures of merit
# ---------------------------------------------------------------------------


def _log_abs_ice(game: BettingGame, b: np.ndarray, R: float) -> float:
    p = game.p3
    with np.errstate(divide="ignore"):
        logw = np.log(b)[:, :, None] + np.log(game.magnitude)[:, None, :]
    return log_power_mean(logw.ravel(), p.ravel(), 1.0 - R)


def ice(game: BettingGame, s, R) -> float:
    """Isoelastic certainty equivalent ``sgn(o) M_{1-R}(|b o|; p)``."""
    R = _risk(R)
    return game.sign * math.exp(_log_abs_ice(game, _bet_table(game, s), R))


def log_ice(game: BettingGame, s, R) -> float:
    """``sgn(o) ln`` of the ICE computed with ``|o|``."""
    R = _risk(R)
    return game.sign * _log_abs_ice(game, _bet_table(game, s), R)


@dataclass(frozen=True)
class FairnessReport:
    kind: str
    c: list

    def to_dict(self) -> dict:
        return {"kind": self.kind, "c": self.c}


def fairness(odds, tol: float = FAIR_TOL) -> FairnessReport:
    """Per-column ``c(y) = (sum_x 1/|o(x|y)|)**-1`` and the overall class."""
    o = _odds(odds)
    c = 1.0 / o.reciprocal().sum(axis=0)
    kinds = {"fair" if abs(ci - 1.0) <= tol else "superfair" if ci > 1.0 else "subfair" for ci in c}
    kind = kinds.pop() if len(kinds) == 1 else "mixed"
    return FairnessReport(kind, c.tolist())


def _require_fair(game: BettingGame) -> None:
    rep = fairness(game.odds)
    if rep.kind != "fair":
        raise DomainError(f"closed forms need fair odds per column, got {rep.kind} (c={rep.c})")


def _require_common_c(game: BettingGame) -> None:
    # optimal bets are invariant under a common rescaling of the odds
    c = np.asarray(fairness(game.odds).c)
    if np.max(np.abs(c / c[0] - 1.0)) > FAIR_TOL:
        raise DomainError(f"closed-form optima need the same c(y) in every column (c={c.tolist()})")


# ---------------------------------------------------------------------------
# closed-form optima
# ---------------------------------------------------------------------------


def _bet_column(joint_xy: np.ndarray, log_o: np.ndarray, R: float):
    """Optimal bet against ``p(x, y)`` and ``ln|o(x|y)|``, plus ``ln M`` of the column.

    ``h(x) ~ (sum_y p(x,y) |o(x|y)|**(1-R))**(1/R)`` is the tilt of the outer
    power mean of the n1 divergence at order ``1/R``; the second return value
    is the log of that power mean.
    """
    px = joint_xy.sum(axis=1)
    rows = np.flatnonzero(px > 0)
    logv = np.full(px.size, -np.inf)
    for x in rows:
        logv[x] = math.log(px[x]) + log_power_mean(log_o[x], joint_xy[x] / px[x], 1.0 - R)
    alpha = divergence_order(R)
    h = tilted_weights(np.where(px > 0, logv, 0.0), px, alpha - 1.0)
    return h, log_power_mean(logv[rows], px[rows], alpha - 1.0)


def _require_support(game: BettingGame, R: float) -> None:
    if R >= 0:
        return
    p = game.p3
    active = p.sum(axis=0) > 0
    if np.any(p[:, active] <= 0):
        raise DomainError("negative risk aversion needs full support within every (g, y) column")


def optimal_bet_bookmaker(game: BettingGame, R) -> Strategy:
    """Closed-form optimum ``h_X`` for a game where only the bookmaker sees ``Y``."""
    if game.config not in ("none", "bookmaker"):
        raise ValueError("optimal_bet_bookmaker needs a none/bookmaker game")
    R = _risk(R)
    _require_common_c(game)
    _require_support(game, R)
    h, _ = _bet_column(game.p3[:, 0, :], np.log(game.magnitude), R)
    return Strategy(h)


@dataclass(frozen=True)
class DoubleOptimum:
    strategy: Strategy
    h_g: np.ndarray
    log_means: np.ndarray

    def to_dict(self) -> dict:
        return {"bet": self.strategy.bet.tolist(), "h_g": self.h_g.tolist()}


def optimal_bet_double(game: BettingGame, R) -> DoubleOptimum:
    """Closed-form optimum ``h_{X|G}`` with the weights ``h_G``."""
    R = _risk(R)
    _require_common_c(game)
    _require_support(game, R)
    p = game.p3
    log_o = np.log(game.magnitude)
    pg = p.sum(axis=(0, 2))
    k, ng = game.size, game.n_side
    bets = np.full((k, ng), 1.0 / k)
    logm = np.zeros(ng)
    for g in np.flatnonzero(pg > 0):
        bets[:, g], logm[g] = _bet_column(p[:, g, :] / pg[g], log_o, R)
    # h(g) ~ p(g) exp((1-R) L_g): the tilt of the outer power mean of n2
    t = -math.inf if R == math.inf else math.inf if R == -math.inf else 1.0 - R
    h_g = tilted_weights(logm, pg, t)
    return DoubleOptimum(Strategy(bets), h_g, logm)


def max_log_ice(game: BettingGame, R) -> float:
    """Log-ICE achieved by the closed-form optimum (evaluated, not assumed)."""
    R = _risk(R)
    if game.config in ("none", "bookmaker"):
        return log_ice(game, optimal_bet_bookmaker(game, R), R)
    if game.config == "gambler":
        lifted = BettingGame.double(game.odds.values[:, None], game.joint[:, :, None])
        return log_ice(lifted, optimal_bet_double(lifted, R).strategy, R)
    return log_ice(game, optimal_bet_double(game, R).strategy, R)


# ---------------------------------------------------------------------------
# decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """``log_ice`` against ``div_term - penalty_term`` (both carry ``sgn(o) sgn(R)``)."""

    log_ice: float
    div_term: float
    penalty_term: float
    residual: float
    holds: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _decomposition(u: float, div: float, pen: float, tol: float) -> Decomposition:
    if math.isinf(div) and math.isinf(pen) and div == pen:
        res = 0.0 if u == -math.inf else math.inf
    else:
        res = abs(u - (div - pen))
    return Decomposition(u, div, pen, res, bool(res <= tol))


def decompose_bookmaker(game: BettingGame, s, R, tol: float = IDENTITY_TOL) -> Decomposition:
    """Log-ICE as an n1 divergence minus a Renyi-divergence penalty.

    At ``R = 0`` the penalty is the limit of ``D_R(h_R || b)``, namely
    ``ln max_x a(x) - ln sum_x a(x) b(x)`` with ``a(x) = sum_y p(x,y)|o(x|y)|``
    (``min`` and the opposite sign for the left limit ``R = -0.0``).
    """
    if game.config not in ("none", "bookmaker"):
        raise ValueError("decompose_bookmaker needs a none/bookmaker game")
    R = _risk(R)
    _require_fair(game)
    _require_support(game, R)
    b = _bet_table(game, s)[:, 0]
    pxy = game.p3[:, 0, :]
    r = 1.0 / game.magnitude
    ss = game.sign * sgn(R)
    alpha = divergence_order(R)
    div = ss * n1_crd(_cond(pxy), r, pxy.sum(axis=0), alpha)
    h = optimal_bet_bookmaker(game, R).bet
    if R == 0.0:
        a = (pxy * game.magnitude).sum(axis=1)
        ext = a.max() if sgn(R) > 0 else a[a > 0].min()
        with np.errstate(divide="ignore"):
            pen = sgn(R) * (math.log(ext) - math.log(float(np.dot(a, b))))
    else:
        pen = renyi_divergence(h, b, R)
    return _decomposition(log_ice(game, b, R), div, ss * pen, tol)


def _cond(pxy: np.ndarray) -> np.ndarray:
    """Columns of ``p(x, y)`` normalized to ``p(x|y)`` (uniform where ``p(y) = 0``)."""
    py = pxy.sum(axis=0)
    safe = np.where(py > 0, py, 1.0)
    return np.where(py[None, :] > 0, pxy / safe[None, :], 1.0 / pxy.shape[0])


def decompose_double(game: BettingGame, s, R, tol: float = IDENTITY_TOL) -> Decomposition:
    """Log-ICE as an n2 divergence minus ``D_R(h_{X|G} h_G || b_{X|G} h_G)``.

    At ``R in {0, +-inf}`` the penalty is the ``R``-limit of that divergence
    (``h`` moves with ``R``), which is what keeps the identity exact there.
    """
    if game.config not in ("gambler", "double"):
        raise ValueError("decompose_double needs a gambler/double game")
    if game.config == "gambler":
        game = BettingGame.double(game.odds.values[:, None], game.joint[:, :, None])
    R = _risk(R)
    _require_fair(game)
    _require_support(game, R)
    b = _bet_table(game, s)
    p = game.p3
    pg = p.sum(axis=(0, 2))
    r = 1.0 / game.magnitude
    ss = game.sign * sgn(R)
    alpha = divergence_order(R)
    div = ss * n2_crd(_cond_xgy(p), r, pg, _cond(p.sum(axis=0).T), alpha)
    opt = optimal_bet_double(game, R)
    h = opt.strategy.bet
    u = log_ice(game, b, R)
    cols = np.flatnonzero(pg > 0)
    if R == 0.0:
        a = np.einsum("xgy,xy->xg", p, game.magnitude)
        ext = a.max(axis=0) if sgn(R) > 0 else np.where(a > 0, a, np.inf).min(axis=0)
        with np.errstate(divide="ignore"):
            pen = sgn(R) * (math.log(ext[cols].sum()) - math.log(float((a * b).sum())))
    elif math.isinf(R):
        logm = opt.log_means[cols]
        ref = logm.min() if R > 0 else logm.max()
        with np.errstate(divide="ignore"):
            lr = np.log(h[:, cols]) - np.log(b[:, cols])
        if R > 0:
            per_g = np.where(h[:, cols] > 0, lr, -np.inf).max(axis=0) + ref - logm
        else:
            per_g = (-lr).max(axis=0) + logm - ref
        pen = float(per_g.max())
    else:
        pen = renyi_divergence(h * opt.h_g[None, :], b * opt.h_g[None, :], R)
    return _decomposition(u, div, ss * pen, tol)


def _cond_xgy(p: np.ndarray) -> np.ndarray:
    """``p(x|g,y)`` from ``p[x, g, y]`` (uniform on zero-mass columns)."""
    pgy = p.sum(axis=0)
    safe = np.where(pgy > 0, pgy, 1.0)
    return np.where(pgy[None] > 0, p / safe[None], 1.0 / p.shape[0])


# ---------------------------------------------------------------------------
# comparisons between configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioReport:
    log_ratio: float
    rhs: float
    residual: float
    agrees: bool
    holds_nonneg: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _ratio(lhs: float, rhs: float, tol: float) -> RatioReport:
    res = abs(lhs - rhs)
    return RatioReport(lhs, rhs, res, bool(res <= tol), bool(lhs >= -INEQ_SLACK))


def averaged_odds(odds, p_y) -> OddsTable:
    """``o(x) = sgn(o) / sum_y r(x|y) p(y)``: harmonic averaging keeps fair odds fair."""
    o = _odds(odds)
    p_y = as_array(p_y, ndim=1, what="p(y)")
    return OddsTable(o.sign / (o.reciprocal() @ p_y))


def ratio_bookmaker_vs_none(odds, j_xy, R, tol: float = 1e-9) -> RatioReport:
    """Maximal log-ICE with bookmaker side information minus that without any."""
    R = _risk(R)
    if not R >= 1.0:
        raise DomainError("the bookmaker-vs-none comparison is stated for R in [1, inf]")
    o = _odds(odds)
    j = as_array(j_xy, ndim=2, what="p(x,y)")
    if o.sign != 1:
        raise DomainError("R >= 1 needs positive odds")
    with_si = BettingGame.bookmaker(o, j)
    without = BettingGame.none(averaged_odds(o, j.sum(axis=0)), j.sum(axis=1))
    lhs = max_log_ice(with_si, R) - max_log_ice(without, R)
    alpha = divergence_order(R)
    r = o.reciprocal()
    py = j.sum(axis=0)
    rhs = n1_crd(_cond(j), r, py, alpha) - renyi_divergence(j.sum(axis=1), r @ py, alpha)
    return _ratio(lhs, rhs, tol)


def ratio_bookmaker_vs_gambler(odds, j_xg, R, tol: float = 1e-9) -> RatioReport:
    """Maximal log-ICE when the gambler sees ``G`` minus when only the bookmaker does.

    Both games use the same conditional odds ``o(x|g)``; ``sgn(R)`` times the
    log-ratio equals ``BLP - n1`` at order ``1/R``.
    """
    R = _risk(R)
    o = _odds(odds)
    j = as_array(j_xg, ndim=2, what="p(x,g)")
    if not o.is_conditional:
        raise ValueError("odds must be conditional o(x|g)")
    if o.sign != sgn(R):
        raise DomainError("closed-form optima need sgn(o) = sgn(R)")
    k, ng = j.shape
    p3 = np.zeros((k, ng, ng))
    p3[:, np.arange(ng), np.arange(ng)] = j
    informed = BettingGame.double(o, p3)
    uninformed = BettingGame.bookmaker(o, j)
    lhs = sgn(R) * o.sign * (max_log_ice(informed, R) - max_log_ice(uninformed, R))
    alpha = divergence_order(R)
    r = o.reciprocal()
    pg = j.sum(axis=0)
    rhs = blp_crd(_cond(j), r, pg, alpha) - n1_crd(_cond(j), r, pg, alpha)
    return _ratio(lhs, rhs, tol)


def random_strategy(rng: np.random.Generator, k: int, n_side: int | None = None) -> Strategy:
    """Dirichlet(1, ..., 1) bet, one column per side-information symbol."""
    if n_side is None:
        return Strategy(rng.dirichlet(np.ones(k)))
    return Strategy(rng.dirichlet(np.ones(k), size=n_side).T)
