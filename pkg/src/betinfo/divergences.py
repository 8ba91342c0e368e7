"""Renyi divergence and conditional Renyi divergences.

Conditional tables are arrays laid out ``[row, conditioning...]`` (column
stochastic), e.g. ``p(x|y)`` has shape ``(|X|, |Y|)`` and ``p(x|g,y)`` has
shape ``(|X|, |G|, |Y|)``.  Columns whose conditioning weight is zero do not
contribute.

Every divergence is written as a nest of weighted power means evaluated in the
log domain, so the orders ``alpha in {0, 1, +-inf}`` are the exact limits of
the nested means rather than separate formulas.  ``alpha = 0`` means the right
limit ``0+``; a signed ``-0.0`` selects the left limit ``0-`` (which differs
for the n1/n2 divergences and is reached by betting games with ``R = -inf``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from betinfo.entropies import (
    INEQ_SLACK,
    _order,
    arimoto_cond_entropy,
    cond_entropy_h1,
    cond_entropy_h4,
    renyi_entropy,
)
from betinfo.prob_core import DomainError, as_array, log_power_mean, sgn

IDENTITY_TOL = 1e-10


def _check_pair(p: np.ndarray, q: np.ndarray, what: str) -> None:
    if p.shape != q.shape:
        raise ValueError(f"{what}: alphabet mismatch {p.shape} vs {q.shape}")


def _log(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(x)


def _log_ratio(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(p) - np.log(q)
    # p = 0 entries carry zero weight downstream; keep them finite
    return np.where(p > 0, out, 0.0)


def _inner_order(alpha: float) -> float:
    """``(alpha - 1) / alpha`` with the right-limit convention at zero."""
    if math.isinf(alpha):
        return 1.0
    if alpha == 0.0:
        return math.inf if sgn(alpha) < 0 else -math.inf
    return (alpha - 1.0) / alpha


def _full_support(what: str, *arrays) -> None:
    for a in arrays:
        if np.any(a <= 0):
            raise DomainError(f"{what}: negative orders need full support")


def renyi_divergence(p, q, alpha) -> float:
    """``sgn(a)/(a-1) ln sum p**a q**(1-a)``; KL divergence at ``a = 1``."""
    p = as_array(p, what="p").ravel()
    q = as_array(q, what="q").ravel()
    _check_pair(p, q, "renyi_divergence")
    alpha = _order(alpha)
    if alpha < 0:
        _full_support("renyi_divergence", p, q)
    return sgn(alpha) * log_power_mean(_log_ratio(p, q), p, alpha - 1.0)


def kl_divergence(p, q) -> float:
    return renyi_divergence(p, q, 1.0)


def _cond_args(pc, qc, weights, what: str):
    pc = as_array(pc, what=f"{what} p")
    qc = as_array(qc, what=f"{what} q")
    if qc.shape != pc.shape:
        qc = np.broadcast_to(qc, pc.shape) if qc.ndim == pc.ndim else qc
    _check_pair(pc, qc, what)
    w = as_array(weights, what=f"{what} weights").ravel()
    if pc.ndim != 2 or w.shape[0] != pc.shape[1]:
        raise ValueError(f"{what}: conditioning weights do not match the tables")
    return pc, qc, w


def _column_log_means(pc, qc, w, alpha):
    cols = np.flatnonzero(w > 0)
    vals = np.array(
        [log_power_mean(_log_ratio(pc[:, c], qc[:, c]), pc[:, c], alpha - 1.0) for c in cols]
    )
    return cols, vals


def sibson_crd(pc, qc, pcond, alpha) -> float:
    """Sibson conditional Renyi divergence ``D^S(p_{A|B} || q_{A|B} | p_B)``."""
    pc, qc, w = _cond_args(pc, qc, pcond, "sibson_crd")
    alpha = _order(alpha)
    if alpha < 0:
        _full_support("sibson_crd", pc[:, w > 0], qc[:, w > 0])
    cols, vals = _column_log_means(pc, qc, w, alpha)
    # sum_b p(b) exp((a-1) m_b) is again a power mean with the same order
    return sgn(alpha) * log_power_mean(vals, w[cols], alpha - 1.0)


def csiszar_crd(pc, qc, pcond, alpha) -> float:
    """Csiszar conditional Renyi divergence, the ``p_B``-average of ``D_alpha``."""
    pc, qc, w = _cond_args(pc, qc, pcond, "csiszar_crd")
    alpha = _order(alpha)
    if alpha < 0:
        _full_support("csiszar_crd", pc[:, w > 0], qc[:, w > 0])
    cols, vals = _column_log_means(pc, qc, w, alpha)
    return sgn(alpha) * float(np.dot(w[cols], vals))


def blp_crd(pc, qc, pcond, alpha) -> float:
    """Bleuler-Lapidoth-Pfister conditional Renyi divergence."""
    pc, qc, w = _cond_args(pc, qc, pcond, "blp_crd")
    alpha = _order(alpha)
    if alpha < 0:
        _full_support("blp_crd", pc[:, w > 0], qc[:, w > 0])
    cols, vals = _column_log_means(pc, qc, w, alpha)
    return sgn(alpha) * log_power_mean(vals, w[cols], _inner_order(alpha))


def _n1_log_mean(joint: np.ndarray, qc: np.ndarray, alpha: float) -> float:
    """``ln`` of the outer power mean inside the n1 divergence.

    ``joint`` is ``p(x, y)`` and ``qc`` is ``q(x|y)``, both ``[x, y]``.
    """
    px = joint.sum(axis=1)
    s = _inner_order(alpha)
    rows = np.flatnonzero(px > 0)
    logv = np.empty(rows.size)
    neg_log_q = -_log(qc)
    for k, x in enumerate(rows):
        pyx = joint[x] / px[x]
        logv[k] = math.log(px[x]) + log_power_mean(neg_log_q[x], pyx, s)
    return log_power_mean(logv, px[rows], alpha - 1.0)


def n1_crd(pc, qc, py, alpha) -> float:
    """First new conditional Renyi divergence ``D^n1(p_{X|Y} || q_{X|Y} | p_Y)``."""
    pc, qc, w = _cond_args(pc, qc, py, "n1_crd")
    alpha = _order(alpha)
    if alpha < 0:
        _full_support("n1_crd", pc[:, w > 0], qc[:, w > 0])
    joint = pc * w[None, :]
    return sgn(alpha) * _n1_log_mean(joint, qc, alpha)


def n2_crd(pc, qc, pg, pyg, alpha) -> float:
    """Second new conditional Renyi divergence.

    ``pc`` and ``qc`` are ``p(x|g,y)`` and ``q(x|g,y)`` with shape
    ``(|X|, |G|, |Y|)`` (``qc`` may also be ``q(x|y)`` of shape ``(|X|, |Y|)``,
    broadcast over ``g``); ``pyg`` is ``p(y|g)`` of shape ``(|Y|, |G|)``.
    """
    pc = as_array(pc, ndim=3, what="n2_crd p(x|g,y)")
    qc = as_array(qc, what="n2_crd q")
    if qc.ndim == 2:
        qc = np.broadcast_to(qc[:, None, :], pc.shape)
    _check_pair(pc, qc, "n2_crd")
    pg = as_array(pg, ndim=1, what="n2_crd p(g)")
    pyg = as_array(pyg, ndim=2, what="n2_crd p(y|g)")
    if pg.shape[0] != pc.shape[1] or pyg.shape != (pc.shape[2], pc.shape[1]):
        raise ValueError("n2_crd: p(g) / p(y|g) shapes do not match p(x|g,y)")
    alpha = _order(alpha)
    cols = np.flatnonzero(pg > 0)
    if alpha < 0:
        active = pyg[:, cols].T > 0
        for k, g in enumerate(cols):
            _full_support("n2_crd", pc[:, g, active[k]], qc[:, g, active[k]])
    vals = np.array([_n1_log_mean(pc[:, g, :] * pyg[None, :, g], qc[:, g, :], alpha) for g in cols])
    return sgn(alpha) * log_power_mean(vals, pg[cols], _inner_order(alpha))


# ---------------------------------------------------------------------------
# inequality and identity checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InequalityReport:
    """``lower <= upper`` evaluated with slack; ``gap = upper - lower``."""

    lower: float
    upper: float
    gap: float
    holds: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _ineq(lower: float, upper: float) -> InequalityReport:
    gap = upper - lower
    return InequalityReport(lower, upper, gap, bool(gap >= -INEQ_SLACK))


def averaged_marginals(pc, qc, py):
    """``p(x) = sum_y p(x|y) p(y)`` and ``q(x) = sum_y q(x|y) p(y)``."""
    pc = as_array(pc, ndim=2)
    qc = as_array(qc, ndim=2)
    py = as_array(py, ndim=1)
    return pc @ py, qc @ py


def check_dpi_n1(pc, qc, py, alpha) -> InequalityReport:
    """Compare ``D_alpha(p_X || q_X)`` (lower) with ``D^n1_alpha`` (upper)."""
    alpha = _order(alpha)
    if not 0 < alpha < 1:
        raise DomainError("the n1 data-processing check is stated for 0 < alpha < 1")
    return dpi_n1_gap(pc, qc, py, alpha)


def dpi_n1_gap(pc, qc, py, alpha) -> InequalityReport:
    """Same comparison as :func:`check_dpi_n1` without the order restriction."""
    px, qx = averaged_marginals(pc, qc, py)
    return _ineq(renyi_divergence(px, qx, alpha), n1_crd(pc, qc, py, alpha))


def check_n1_le_blp(pc, qc, py, alpha) -> InequalityReport:
    alpha = _order(alpha)
    if alpha in (0.0, 1.0) or math.isinf(alpha):
        raise DomainError("the n1 <= BLP check is stated for alpha outside {0, 1, +-inf}")
    return _ineq(n1_crd(pc, qc, py, alpha), blp_crd(pc, qc, py, alpha))


@dataclass(frozen=True)
class IdentityReport:
    residuals: dict
    max_residual: float
    holds: bool

    def to_dict(self) -> dict:
        return {"residuals": self.residuals, "max_residual": self.max_residual, "holds": self.holds}


def crd_entropy_identities(j, alpha, tol: float = IDENTITY_TOL) -> IdentityReport:
    """Conditional divergences to the uniform reference versus conditional entropies."""
    w = as_array(j, ndim=2, what="joint p(x,g)")
    alpha = _order(alpha)
    k = w.shape[0]
    pg = w.sum(axis=0)
    safe = np.where(pg > 0, pg, 1.0)
    pc = np.where(pg[None, :] > 0, w / safe[None, :], 1.0 / k)
    u = np.full_like(pc, 1.0 / k)
    lnk = sgn(alpha) * math.log(k)
    pairs = {
        "sibson_vs_h4": (sibson_crd(pc, u, pg, alpha), lnk - cond_entropy_h4(w, alpha)),
        "csiszar_vs_h1": (csiszar_crd(pc, u, pg, alpha), lnk - cond_entropy_h1(w, alpha)),
        "blp_vs_arimoto": (blp_crd(pc, u, pg, alpha), lnk - arimoto_cond_entropy(w, alpha)),
        "renyi_vs_entropy": (
            renyi_divergence(w.sum(axis=1), u[:, 0], alpha),
            lnk - renyi_entropy(w.sum(axis=1), alpha),
        ),
    }
    residuals = {name: abs(a - b) for name, (a, b) in pairs.items()}
    worst = max(residuals.values())
    return IdentityReport(residuals, worst, bool(worst <= tol))
