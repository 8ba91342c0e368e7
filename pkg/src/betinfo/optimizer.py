"""Brute-force oracle for maximizing objectives over probability simplexes.

Used to certify closed-form optima independently of them: a composition grid
over the simplex plus projected-gradient ascent (finite-difference gradients)
from the best grid point and from seeded Dirichlet starts, each finished with
exponentiated-gradient steps.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

GRID_FLOOR = 1e-9


def thread_cap() -> int:
    """Worker count from ``BETINFO_THREADS`` (default 1)."""
    raw = os.environ.get("BETINFO_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SimplexSearchConfig:
    resolution: int = 24
    iterations: int = 300
    restarts: int = 6
    seed: int = 0
    tol: float = 1e-12
    fd_step: float = 1e-6

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("grid resolution must be at least 2")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.iterations < 0 or self.restarts < 0:
            raise ValueError("iterations and restarts must be nonnegative")


@dataclass(frozen=True)
class OracleResult:
    argmax: np.ndarray
    value: float
    grid_value: float

    def to_dict(self) -> dict:
        return {"argmax": self.argmax.tolist(), "value": self.value, "grid_value": self.grid_value}


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def simplex_grid(k: int, n: int) -> np.ndarray:
    """All compositions of ``n`` into ``k`` parts, scaled to the simplex."""
    rows = []
    for bars in itertools.combinations(range(n + k - 1), k - 1):
        edges = (-1,) + bars + (n + k - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(k)])
    return np.asarray(rows, dtype=float) / n


def _safe(objective: Callable[[np.ndarray], float], b: np.ndarray) -> float:
    b = np.maximum(b, 0.0)
    b = b / b.sum()
    try:
        v = float(objective(b))
    except (ValueError, ZeroDivisionError, FloatingPointError):
        return -math.inf
    return v if not math.isnan(v) else -math.inf


def _gradient(objective, b: np.ndarray, h: float, f0: float) -> np.ndarray:
    g = np.zeros_like(b)
    for i in range(b.size):
        up = b.copy()
        up[i] += h
        dn = b.copy()
        dn[i] = max(dn[i] - h, 0.0)
        step = up[i] - dn[i]
        fu, fd = _safe(objective, up), _safe(objective, dn)
        if not (math.isfinite(fu) and math.isfinite(fd)):
            fu = fu if math.isfinite(fu) else f0
            fd = fd if math.isfinite(fd) else f0
        g[i] = (fu - fd) / step
    # only the component tangent to the simplex matters
    return g - g.mean()


def _ascend(objective, start: np.ndarray, cfg: SimplexSearchConfig):
    b = start.copy()
    f = _safe(objective, b)
    eta = 0.1
    for _ in range(cfg.iterations):
        if not math.isfinite(f):
            break
        g = _gradient(objective, b, cfg.fd_step, f)
        norm = float(np.linalg.norm(g))
        if norm == 0.0:
            break
        improved = False
        while eta > 1e-14:
            cand = project_simplex(b + eta * g / norm)
            fc = _safe(objective, cand)
            if fc > f:
                improved = True
                break
            eta *= 0.5
        if not improved:
            break
        gain = fc - f
        b, f = cand, fc
        eta = min(eta * 2.0, 1.0)
        if gain < cfg.tol:
            break
    return _polish(objective, b, f, cfg)


def _polish(objective, b: np.ndarray, f: float, cfg: SimplexSearchConfig):
    """Exponentiated-gradient steps; they scale with ``b`` and so keep converging near faces."""
    if not math.isfinite(f):
        return b, f
    inner = (1.0 - GRID_FLOOR) * b + GRID_FLOOR / b.size
    fi = _safe(objective, inner)
    if fi >= f:
        b, f = inner, fi
    eta = 1.0
    for _ in range(cfg.iterations):
        g = _gradient(objective, b, cfg.fd_step, f)
        improved = False
        while eta > 1e-14:
            cand = b * np.exp(eta * (g - g.max()))
            cand /= cand.sum()
            fc = _safe(objective, cand)
            if fc > f:
                improved = True
                break
            eta *= 0.5
        if not improved:
            break
        gain = fc - f
        b, f = cand, fc
        eta = min(eta * 2.0, 1e6)
        if gain < cfg.tol:
            break
    return b, f


def maximize_over_pmf(
    objective: Callable[[np.ndarray], float], k: int, cfg: SimplexSearchConfig | None = None
) -> OracleResult:
    """Best of a simplex grid and projected-gradient ascent restarts."""
    cfg = cfg or SimplexSearchConfig()
    if k < 1:
        raise ValueError("K must be at least 1")
    if k == 1:
        one = np.ones(1)
        v = _safe(objective, one)
        return OracleResult(one, v, v)
    grid = simplex_grid(k, cfg.resolution)
    # keep grid points off the boundary where log-wealth objectives blow up
    grid = (1.0 - GRID_FLOOR) * grid + GRID_FLOOR / k
    vals = np.array([_safe(objective, g) for g in grid])
    best = int(np.argmax(vals))
    grid_value = float(vals[best])
    rng = np.random.default_rng(cfg.seed)
    starts = [grid[best]] + [rng.dirichlet(np.ones(k)) for _ in range(cfg.restarts)]
    workers = min(thread_cap(), len(starts))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda s: _ascend(objective, s, cfg), starts))
    else:
        runs = [_ascend(objective, s, cfg) for s in starts]
    arg, val = grid[best], grid_value
    for b, f in runs:
        if f > val:
            arg, val = b, f
    return OracleResult(np.asarray(arg, dtype=float), float(val), grid_value)


def maximize_over_condtable(
    objective: Callable[[np.ndarray], float],
    shape: tuple[int, int],
    cfg: SimplexSearchConfig | None = None,
    separable: bool = True,
    sweeps: int = 8,
) -> OracleResult:
    """Maximize over column-stochastic ``(K, G)`` tables by block-coordinate search.

    Each column is optimized with :func:`maximize_over_pmf` while the others
    are held fixed.  A separable objective (monotone in per-column terms) is
    solved by a single sweep; otherwise sweeps repeat until no column improves.
    """
    cfg = cfg or SimplexSearchConfig()
    k, ng = shape
    table = np.full((k, ng), 1.0 / k)
    value = _safe_table(objective, table)
    grid_value = value
    for _ in range(sweeps):
        changed = False
        for g in range(ng):

            def column_objective(col, g=g):
                t = table.copy()
                t[:, g] = col
                return objective(t)

            res = maximize_over_pmf(column_objective, k, cfg)
            grid_value = max(grid_value, res.grid_value)
            if res.value > value:
                changed = changed or res.value > value + cfg.tol
                table[:, g] = res.argmax
                value = res.value
        if separable or not changed:
            break
    return OracleResult(table, value, grid_value)


def _safe_table(objective, table: np.ndarray) -> float:
    try:
        v = float(objective(table))
    except (ValueError, ZeroDivisionError, FloatingPointError):
        return -math.inf
    return v if not math.isnan(v) else -math.inf


def oracle_max_log_ice(game, R, cfg: SimplexSearchConfig | None = None) -> OracleResult:
    """Oracle maximum of the log-ICE of a betting game over all strategies.

    The ICE is a power mean over ``g`` of per-column ICEs, so it is monotone
    in each column and the block search is exact after one sweep.
    """
    from betinfo.betting import log_ice

    k, ng = game.size, game.n_side
    if ng == 1:
        return maximize_over_pmf(lambda b: log_ice(game, b, R), k, cfg)
    return maximize_over_condtable(lambda t: log_ice(game, t, R), (k, ng), cfg)


def oracle_max_log_pt_ce(game, agent, cfg: SimplexSearchConfig | None = None) -> OracleResult:
    """Oracle maximum of the prospect-theory log-CE (same column monotonicity)."""
    from betinfo.prospect import log_pt_ce

    k, ng = game.size, game.n_side
    if ng == 1:
        return maximize_over_pmf(lambda b: log_pt_ce(game, b, agent), k, cfg)
    return maximize_over_condtable(lambda t: log_pt_ce(game, t, agent), (k, ng), cfg)
