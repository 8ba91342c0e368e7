"""Seeded randomized verification suites.

Each suite draws random instances, evaluates one identity or inequality per
check and reports the number of failures and the worst violation.  A failure
is counted exactly as the check states it; nothing is relaxed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from betinfo import betting, divergences, entropies, prospect, quantum, wealth_ratio
from betinfo.optimizer import SimplexSearchConfig, oracle_max_log_ice, oracle_max_log_pt_ce

RISKS = (-math.inf, -2.0, -0.5, -0.0, 0.0, 0.5, 1.0, 2.0, 7.0, math.inf)
LEMMA2_ORDERS = (-2.0, -0.5, 0.3, 0.7, 2.0, 5.0)
REDUCTION_ORDERS = (-2.0, -0.5, 0.3, 0.7, 1.0, 2.0, 5.0, math.inf)
Q_GRID = (-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, math.inf)
R_GRID = (-1.0, 0.5, 1.0, 2.0)


@dataclass
class SuiteReport:
    name: str
    trials: int
    checks: int = 0
    failures: int = 0
    max_violation: float = 0.0
    tol: float = 0.0
    #: failures per check label
    breakdown: dict = field(default_factory=dict)

    def record(self, violation: float, tol: float | None = None, label: str = "check") -> None:
        """Count one check; ``violation`` is how far past zero it lands (NaN fails)."""
        tol = self.tol if tol is None else tol
        self.checks += 1
        v = math.inf if math.isnan(violation) else max(0.0, float(violation))
        self.max_violation = max(self.max_violation, v)
        self.breakdown.setdefault(label, 0)
        if v > tol:
            self.failures += 1
            self.breakdown[label] += 1

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "checks": self.checks,
            "failures": self.failures,
            "max_violation": self.max_violation,
            "tol": self.tol,
            "passed": self.passed,
            "breakdown": dict(sorted(self.breakdown.items())),
        }


def _dims(rng: np.random.Generator, n: int, low: int = 2, high: int = 5) -> list[int]:
    return [int(v) for v in rng.integers(low, high + 1, size=n)]


def _pmf(rng, *shape) -> np.ndarray:
    size = int(np.prod(shape))
    return rng.dirichlet(np.ones(size)).reshape(shape)


def _cond(rng, k: int, n: int) -> np.ndarray:
    return rng.dirichlet(np.ones(k), size=n).T


def _fair_odds(rng, k: int, ny: int | None, sign: int) -> np.ndarray:
    if ny is None:
        return sign / rng.dirichlet(np.ones(k))
    return sign / _cond(rng, k, ny)


def _sign(rng) -> int:
    return 1 if rng.random() < 0.5 else -1


def suite_reduction(trials: int, rng, tol: float = 1e-12, **_) -> SuiteReport:
    rep = SuiteReport("reduction", trials, tol=tol)
    for _ in range(trials):
        k, ng, ny = _dims(rng, 3, 2, 4)
        alpha = REDUCTION_ORDERS[rng.integers(len(REDUCTION_ORDERS))]
        pc, qc, py = _cond(rng, k, ny), _cond(rng, k, ny), _pmf(rng, ny)
        n1 = divergences.n1_crd(pc, qc, py, alpha)
        n2 = divergences.n2_crd(pc[:, None, :], qc, np.ones(1), py[:, None], alpha)
        rep.record(abs(n2 - n1), label="n2_to_n1")
        # |Y| = 1: n2 collapses to BLP over G
        pg = _pmf(rng, ng)
        pcg, qcg = _cond(rng, k, ng), _cond(rng, k, ng)
        n2g = divergences.n2_crd(pcg[:, :, None], qcg[:, :, None], pg, np.ones((1, ng)), alpha)
        rep.record(abs(n2g - divergences.blp_crd(pcg, qcg, pg, alpha)), label="n2_to_blp")
        # independence: y-free tables give the plain Renyi divergence
        p, q = _pmf(rng, k), _pmf(rng, k)
        flat_p, flat_q = np.repeat(p[:, None], ny, 1), np.repeat(q[:, None], ny, 1)
        d = divergences.renyi_divergence(p, q, alpha)
        rep.record(abs(divergences.n1_crd(flat_p, flat_q, py, alpha) - d), label="n1_to_renyi")
        rep.record(abs(divergences.blp_crd(flat_p, flat_q, py, alpha) - d), label="blp_to_renyi")
    return rep


def suite_lemma1(trials: int, rng, tol: float = 1e-10, **_) -> SuiteReport:
    rep = SuiteReport("lemma1", trials, tol=tol)
    for _ in range(trials):
        k, ny = _dims(rng, 2)
        alpha = float(rng.uniform(1e-3, 1.0 - 1e-3))
        r = divergences.check_dpi_n1(_cond(rng, k, ny), _cond(rng, k, ny), _pmf(rng, ny), alpha)
        rep.record(-r.gap)
    return rep


def suite_lemma2(trials: int, rng, tol: float = 1e-10, **_) -> SuiteReport:
    rep = SuiteReport("lemma2", trials, tol=tol)
    for _ in range(trials):
        k, ny = _dims(rng, 2)
        alpha = LEMMA2_ORDERS[rng.integers(len(LEMMA2_ORDERS))]
        r = divergences.check_n1_le_blp(_cond(rng, k, ny), _cond(rng, k, ny), _pmf(rng, ny), alpha)
        rep.record(-r.gap)
    return rep


def _risk_choice(rng) -> float:
    return RISKS[rng.integers(len(RISKS))]


def suite_result1(trials: int, rng, tol: float = 1e-10, **_) -> SuiteReport:
    rep = SuiteReport("result1", trials, tol=tol)
    for _ in range(trials):
        k, ny = _dims(rng, 2, 2, 3)
        R = _risk_choice(rng)
        game = betting.BettingGame.bookmaker(_fair_odds(rng, k, ny, _sign(rng)), _pmf(rng, k, ny))
        b = betting.random_strategy(rng, k)
        rep.record(betting.decompose_bookmaker(game, b, R).residual)
    return rep


def suite_result2(trials: int, rng, tol: float = 1e-10, **_) -> SuiteReport:
    rep = SuiteReport("result2", trials, tol=tol)
    for _ in range(trials):
        k, ng, ny = _dims(rng, 3, 2, 3)
        R = _risk_choice(rng)
        game = betting.BettingGame.double(_fair_odds(rng, k, ny, _sign(rng)), _pmf(rng, k, ng, ny))
        b = betting.random_strategy(rng, k, ng)
        rep.record(betting.decompose_double(game, b, R).residual)
    return rep


def _oracle_cfg(kwargs) -> SimplexSearchConfig:
    return SimplexSearchConfig(
        resolution=kwargs.get("oracle_grid") or 24,
        restarts=kwargs.get("oracle_restarts") if kwargs.get("oracle_restarts") is not None else 6,
        seed=kwargs.get("seed", 0),
    )


def suite_oracle(trials: int, rng, tol: float = 1e-6, **kwargs) -> SuiteReport:
    """Closed-form optima against the simplex oracle (value agreement, two-sided)."""
    rep = SuiteReport("oracle", trials, tol=tol)
    cfg = _oracle_cfg(kwargs)
    finite = (-2.0, -0.5, 0.5, 1.0, 2.0, 7.0)
    for t in range(trials):
        k, ng, ny = _dims(rng, 3, 2, 3)
        R = finite[rng.integers(len(finite))]
        odds = _fair_odds(rng, k, ny, betting.sgn(R))
        if t % 2 == 0:
            game = betting.BettingGame.bookmaker(odds, _pmf(rng, k, ny))
        else:
            game = betting.BettingGame.double(odds, _pmf(rng, k, ng, ny))
        closed = betting.max_log_ice(game, R)
        found = oracle_max_log_ice(game, R, cfg).value
        rep.record(abs(closed - found))
    return rep


def suite_corollaries(trials: int, rng, tol: float = 1e-10, **_) -> SuiteReport:
    rep = SuiteReport("corollaries", trials, tol=tol)
    for _ in range(trials):
        k, ny = _dims(rng, 2, 2, 4)
        R = (1.0, 2.0, 10.0, 1e3)[rng.integers(4)]
        r = betting.ratio_bookmaker_vs_none(_fair_odds(rng, k, ny, 1), _pmf(rng, k, ny), R)
        rep.record(r.residual, 1e-9, "bookmaker_vs_none_identity")
        rep.record(-r.log_ratio, label="bookmaker_vs_none_nonneg")
        R = (-2.0, 0.5, 1.0, 2.0)[rng.integers(4)]
        r = betting.ratio_bookmaker_vs_gambler(_fair_odds(rng, k, ny, betting.sgn(R)), _pmf(rng, k, ny), R)
        rep.record(r.residual, 1e-9, "bookmaker_vs_gambler_identity")
        rep.record(-r.log_ratio, label="bookmaker_vs_gambler_nonneg")
    return rep


def _pt_agent(rng, S: float | None = None) -> prospect.PtAgent:
    while True:
        R = _risk_choice(rng)
        s = float(rng.choice((0.5, 0.8, 1.0, 1.3, 2.0))) if S is None else S
        if not (R == 1.0 and s != 1.0):
            return prospect.PtAgent(R, s)


def suite_pt(trials: int, rng, tol: float = 1e-10, **kwargs) -> SuiteReport:
    """Results 3-4 decompositions, the S = 1 collapse and the PT advantage vs the oracle."""
    rep = SuiteReport("pt", trials, tol=tol)
    for _ in range(trials):
        k, ng = _dims(rng, 2, 2, 3)
        agent = _pt_agent(rng)
        sign = _sign(rng)
        none = betting.BettingGame.none(_fair_odds(rng, k, None, sign), _pmf(rng, k))
        rep.record(prospect.decompose_pt_nosi(none, betting.random_strategy(rng, k), agent).residual, label="result3")
        gam = betting.BettingGame.gambler(_fair_odds(rng, k, None, sign), _pmf(rng, k, ng))
        rep.record(prospect.decompose_pt_gambler(gam, betting.random_strategy(rng, k, ng), agent).residual, label="result4")
        eut = _pt_agent(rng, 1.0)
        b = betting.random_strategy(rng, k, ng)
        rep.record(abs(prospect.log_pt_ce(gam, b, eut) - betting.log_ice(gam, b, eut.R)), label="s1_collapse")
    cfg = _oracle_cfg(kwargs)
    for _ in range(min(trials, kwargs.get("oracle_trials", 100))):
        k, ng = _dims(rng, 2, 2, 3)
        R = (-2.0, -0.5, 0.5, 2.0, 7.0)[rng.integers(5)]
        agent = prospect.PtAgent(R, float(rng.choice((0.5, 1.0, 2.0))))
        j, C = _pmf(rng, k, ng), float(rng.choice((0.5, 1.0, 10.0)))
        adv = prospect.pt_advantage(j, C, agent)
        rep.record(adv.residual, 1e-9, "advantage_identity")
        odds = np.full(k, betting.sgn(R) * C)
        num = oracle_max_log_pt_ce(betting.BettingGame.gambler(odds, j), agent, cfg).value
        den = oracle_max_log_pt_ce(betting.BettingGame.none(odds, j.sum(axis=1)), agent, cfg).value
        rep.record(abs((num - den) - adv.log_ratio), 1e-6, "advantage_oracle")
    return rep


def suite_result5(trials: int, rng, tol: float = 1e-8, **_) -> SuiteReport:
    rep = SuiteReport("result5", trials, tol=tol)
    for _ in range(trials):
        k, ng = _dims(rng, 2, 2, 4)
        j = _pmf(rng, k, ng)
        for q in Q_GRID:
            for r in R_GRID:
                C = (0.5, 1.0, 10.0)[rng.integers(3)]
                label = "identity_q_neg_r_ne_1" if q < 0 and r != 1.0 else "identity"
                rep.record(wealth_ratio.id_mi_operational(j, q, r, C, tol).residual, label=label)
        shannon = entropies.shannon_mutual_information(j)
        rep.record(abs(wealth_ratio.id_mi_operational(j, 1.0, 1.0, 1.0, tol).rhs_utility_of_ratio - shannon), label="shannon_1_1")
        q, r = Q_GRID[rng.integers(len(Q_GRID))], R_GRID[rng.integers(len(R_GRID))]
        vals = [wealth_ratio.id_mi_operational(j, q, r, C, tol).rhs_utility_of_ratio for C in (0.5, 1.0, 10.0)]
        rep.record(max(vals) - min(vals), label="c_invariance")
    return rep


def suite_chain_rule(trials: int, rng, tol: float = 1e-10, **_) -> SuiteReport:
    rep = SuiteReport("chain_rule", trials, tol=tol)
    for _ in range(trials):
        k, ng = _dims(rng, 2)
        j = _pmf(rng, k, ng)
        q = float(rng.choice((-3.0, -1.0, -0.3, 0.3, 0.7, 1.0, 2.0, 5.0)))
        r = float(rng.choice((-1.0, 0.5, 1.0, 1.5, 3.0)))
        c = entropies.check_chain_rule(j, q, r)
        rep.record(c.rhs - c.lhs, label="q_negative" if q < 0 else "q_positive")
        if q > 0:
            # (q, 1): Arimoto chain rule H^A(X|G) >= H(XG) - ln|G|
            arimoto = entropies.renyi_entropy(j.ravel(), q) - math.log(ng) - entropies.arimoto_cond_entropy(j, q)
            rep.record(arimoto, label="arimoto_chain_rule")
            r1 = entropies.check_chain_rule(j, q, 1.0)
            rep.record(abs(r1.lhs - entropies.arimoto_cond_entropy(j, q)), label="r1_specialization")
    return rep


def suite_quantum(trials: int, rng, tol: float = 1e-8, **kwargs) -> SuiteReport:
    rep = SuiteReport("quantum", trials, tol=tol)
    for _ in range(trials):
        e = quantum.QuantumEnsemble.random(int(rng.integers(2, 4)), 2, rng)
        m = quantum.Povm.random(2, int(rng.integers(2, 5)), rng)
        for q in Q_GRID:
            for r in R_GRID:
                label = "qsb_q_neg_r_ne_1" if q < 0 and r != 1.0 else "qsb"
                rep.record(quantum.qsb_identity(e, m, q, r).residual, label=label)
        ui = quantum.Povm.uninformative(rng.dirichlet(np.ones(2)), 2)
        q, r = Q_GRID[rng.integers(len(Q_GRID))], R_GRID[rng.integers(len(R_GRID))]
        rep.record(abs(quantum.qsb_identity(e, ui, q, r).log_ratio_utility), 1e-9, "uninformative")
    for t in range(min(trials, 10)):
        e = quantum.QuantumEnsemble.random(2, 2, rng)
        chan = quantum.KrausChannel.replace(quantum.DensityMatrix.random(2, rng)) if t % 2 else quantum.KrausChannel.depolarizing(1.0)
        nq = quantum.nqsb_identity(e, chan, 2.0, 0.5, directions=32, random_count=4, seed=t)
        rep.record(abs(nq.log_ratio_utility), 1e-9, "constant_channel")
    sweep = quantum.amplitude_damping_sweep(directions=kwargs.get("directions", 512), seed=kwargs.get("seed", 0))
    e = quantum.QuantumEnsemble((quantum.DensityMatrix.pure([1, 0]), quantum.DensityMatrix.pure([0, 1])), [0.5, 0.5])
    best_qsb = quantum.nqsb_identity(e, quantum.KrausChannel.identity(2), 1.0, 1.0, random_count=16)
    rep.record(abs(sweep[0]["log_ratio_utility"] - best_qsb.log_ratio_utility), 1e-9, "damping_gamma_0")
    rep.record(abs(sweep[-1]["log_ratio_utility"]), 1e-9, "damping_gamma_1")
    return rep


def _sm_limits(rng, rep):
    p = _pmf(rng, int(rng.integers(2, 6)))
    j = _pmf(rng, int(rng.integers(2, 5)), int(rng.integers(2, 5)))
    q = float(rng.choice((-2.0, -0.5, 0.3, 0.7, 2.0, 5.0)))
    for r in (1.0 - 1e-6, 1.0 + 1e-6):
        rep.record(abs(entropies.sharma_mittal_entropy(p, q, r) - entropies.renyi_entropy(p, q)), 1e-5)
        rep.record(abs(entropies.id_cond_entropy(j, q, r) - entropies.arimoto_cond_entropy(j, q)), 1e-5)


def _kl_limits(rng, rep):
    k, ny = _dims(rng, 2, 2, 4)
    p, q = _pmf(rng, k), _pmf(rng, k)
    pc, qc, py = _cond(rng, k, ny), _cond(rng, k, ny), _pmf(rng, ny)
    kl = float(np.sum(p * np.log(p / q)))
    cond_kl = float(np.sum(py * np.sum(pc * np.log(pc / qc), axis=0)))
    px = pc @ py
    n1_kl = float(np.sum(px * np.log(px)) - np.sum((pc * py) * np.log(qc)))
    for a in (1.0, 1.0 - 1e-8, 1.0 + 1e-8):
        rep.record(abs(divergences.renyi_divergence(p, q, a) - kl), 1e-6)
        rep.record(abs(divergences.kl_divergence(p, q) - kl), 1e-6)
        for fn in (divergences.sibson_crd, divergences.csiszar_crd, divergences.blp_crd):
            rep.record(abs(fn(pc, qc, py, a) - cond_kl), 1e-6)
        rep.record(abs(divergences.n1_crd(pc, qc, py, a) - n1_kl), 1e-6)


def suite_limits(trials: int, rng, tol: float = 1e-5, **_) -> SuiteReport:
    rep = SuiteReport("limits", trials, tol=tol)
    for _ in range(trials):
        _sm_limits(rng, rep)
        _kl_limits(rng, rep)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "reduction": suite_reduction,
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "result1": suite_result1,
    "result2": suite_result2,
    "oracle": suite_oracle,
    "corollaries": suite_corollaries,
    "pt": suite_pt,
    "result5": suite_result5,
    "chain_rule": suite_chain_rule,
    "quantum": suite_quantum,
    "limits": suite_limits,
}


def run_suite(name: str, trials: int, seed: int = 0, tol: float | None = None, **kwargs) -> SuiteReport:
    """Run one suite with a fresh ``default_rng(seed)``; ``tol`` overrides its default."""
    if name not in SUITES:
        raise KeyError(name)
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    extra = {} if tol is None else {"tol": tol}
    return SUITES[name](trials, rng, seed=seed, **extra, **kwargs)
