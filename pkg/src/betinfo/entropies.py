"""Entropy family: Renyi, Tsallis, Sharma-Mittal and conditional variants.

All values are in nats.  Orders are extended reals; ``q = 0`` uses the right
limit ``q -> 0+`` (consistent with ``sgn(0) = +1``).  Every quantity is routed
through a Renyi probability ``p_q`` computed as a weighted power mean in the
log domain, which gives the ``q in {0, 1, +-inf}`` extensions for free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from betinfo.prob_core import (
    SPECIAL_TOL,
    DomainError,
    as_array,
    eta_r,
    ln_r,
    log_power_mean,
    parse_order,
    pseudo_sub,
    require_full_support,
    sgn,
)

#: Slack allowed when reporting that an inequality holds.
INEQ_SLACK = 1e-10


def _order(q) -> float:
    q = parse_order(q)
    if abs(q) < SPECIAL_TOL:
        # keep the side of the limit: sgn(-0.0) = -1 selects 0-
        return math.copysign(0.0, q)
    if abs(q - 1.0) < SPECIAL_TOL:
        return 1.0
    return q


def _deformation(r) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise DomainError("the deformation r must be finite")
    return r


def _pmf(p) -> np.ndarray:
    return as_array(p, what="pmf").ravel()


def _joint2(j) -> np.ndarray:
    return as_array(j, ndim=2, what="joint p(x,g)")


@dataclass(frozen=True)
class RenyiProbability:
    value: float
    conditional: bool = False


def log_renyi_probability(p, q) -> float:
    """``ln p_q(X)`` with ``p_q(X) = (sum p**q)**(1/(q-1))``."""
    w = _pmf(p)
    q = _order(q)
    if q < 0:
        require_full_support([w], "Renyi probability")
    with np.errstate(divide="ignore"):
        logw = np.log(w)
    return log_power_mean(logw, w, q - 1.0)


def log_renyi_cond_probability(j, q) -> float:
    """``ln p_q(X|G)`` for a joint ``p(x, g)`` laid out as ``[x, g]``."""
    w = _joint2(j)
    q = _order(q)
    if q < 0:
        require_full_support([w], "conditional Renyi probability")
    pg = w.sum(axis=0)
    cols = np.flatnonzero(pg > 0)
    inner = np.empty(cols.size)
    with np.errstate(divide="ignore"):
        for k, g in enumerate(cols):
            pc = w[:, g] / pg[g]
            inner[k] = log_power_mean(np.log(pc), pc, q - 1.0)
    if math.isinf(q):
        t = 1.0
    elif q == 0.0:
        t = math.inf if sgn(q) < 0 else -math.inf
    else:
        t = (q - 1.0) / q
    return log_power_mean(inner, pg[cols], t)


def renyi_probability(p, q) -> RenyiProbability:
    return RenyiProbability(math.exp(log_renyi_probability(p, q)))


def renyi_cond_probability(j, q) -> RenyiProbability:
    return RenyiProbability(math.exp(log_renyi_cond_probability(j, q)), conditional=True)


def renyi_entropy(p, q) -> float:
    """``sgn(q) ln(1/p_q(X))``; Shannon at ``q = 1``, Hartley at ``q = 0``."""
    q = _order(q)
    return sgn(q) * -log_renyi_probability(p, q)


def sharma_mittal_entropy(p, q, r) -> float:
    q = _order(q)
    r = _deformation(r)
    return sgn(q) * eta_r(-log_renyi_probability(p, q), r)


def tsallis_entropy(p, q) -> float:
    q = _order(q)
    if math.isinf(q):
        raise DomainError("Tsallis entropy needs a finite order")
    return sharma_mittal_entropy(p, q, q)


def shannon_entropy(p) -> float:
    return sharma_mittal_entropy(p, 1.0, 1.0)


def arimoto_cond_entropy(j, q) -> float:
    q = _order(q)
    return sgn(q) * -log_renyi_cond_probability(j, q)


def shannon_cond_entropy(j) -> float:
    return arimoto_cond_entropy(j, 1.0)


def cond_entropy_h1(j, alpha) -> float:
    """Average of the per-column Renyi entropies, weighted by ``p(g)``."""
    w = _joint2(j)
    alpha = _order(alpha)
    pg = w.sum(axis=0)
    total = 0.0
    for g in np.flatnonzero(pg > 0):
        total += pg[g] * renyi_entropy(w[:, g] / pg[g], alpha)
    return total


def cond_entropy_h2(j, alpha) -> float:
    """``H_alpha(X, G) - H_alpha(G)``."""
    w = _joint2(j)
    return renyi_entropy(w.ravel(), alpha) - renyi_entropy(w.sum(axis=0), alpha)


def cond_entropy_h4(j, alpha) -> float:
    w = _joint2(j)
    alpha = _order(alpha)
    if alpha < 0:
        require_full_support([w], "H^4 conditional entropy")
    pg = w.sum(axis=0)
    safe = np.where(pg > 0, pg, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        logc = np.log(w / safe[None, :])
    return -sgn(alpha) * log_power_mean(logc.ravel(), w.ravel(), alpha - 1.0)


def id_cond_entropy(j, q, r) -> float:
    """Ilic-Djordjevic conditional entropy, ``sgn(q) eta_r(sgn(q) H^A_q)``."""
    q = _order(q)
    r = _deformation(r)
    return sgn(q) * eta_r(-log_renyi_cond_probability(j, q), r)


def id_mutual_information(j, q, r) -> float:
    """``H^SM_{q,r}(X) (-)_r H^ID_{q,r}(X|G)``.

    Raises :class:`~betinfo.prob_core.DegenerateOrderError` on the pole of the
    pseudo-subtraction.
    """
    w = _joint2(j)
    h = sharma_mittal_entropy(w.sum(axis=1), q, r)
    hc = id_cond_entropy(w, q, r)
    return float(pseudo_sub(h, hc, _deformation(r)))


def arimoto_mutual_information(j, q) -> float:
    w = _joint2(j)
    return renyi_entropy(w.sum(axis=1), q) - arimoto_cond_entropy(w, q)


def shannon_mutual_information(j) -> float:
    return arimoto_mutual_information(j, 1.0)


@dataclass(frozen=True)
class ChainRuleReport:
    lhs: float
    rhs: float
    holds: bool
    size: int
    #: ``H^ID >= sgn(q) [ (sgn(q) H^SM(XG)) (-)_r ln_r K ]``; equals ``holds`` for q >= 0
    lhs_signed: float
    rhs_signed: float
    holds_signed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def check_chain_rule(j, q, r, size: int | None = None) -> ChainRuleReport:
    """Evaluate ``sgn(q) H^ID(X|G) >= sgn(q) [H^SM(XG) (-)_r ln_r K]``.

    ``size`` is ``K``; it defaults to the number of conditioning symbols
    ``|G|``, the value for which ``K p_q(XG) >= p_q(X|G)`` holds when
    ``q >= 0``.  The report also carries the sign-symmetric form, which is
    the one implied by ``K p_q(XG) <= p_q(X|G)`` when ``q < 0``.
    """
    w = _joint2(j)
    q = _order(q)
    r = _deformation(r)
    k = w.shape[1] if size is None else int(size)
    s = sgn(q)
    hid = id_cond_entropy(w, q, r)
    hsm = sharma_mittal_entropy(w.ravel(), q, r)
    lnk = ln_r(float(k), r)
    lhs = s * hid
    rhs = s * float(pseudo_sub(hsm, lnk, r))
    rhs_signed = s * float(pseudo_sub(s * hsm, lnk, r))
    return ChainRuleReport(
        lhs=lhs,
        rhs=rhs,
        holds=bool(lhs >= rhs - INEQ_SLACK),
        size=k,
        lhs_signed=hid,
        rhs_signed=rhs_signed,
        holds_signed=bool(hid >= rhs_signed - INEQ_SLACK),
    )
