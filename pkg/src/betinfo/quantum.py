"""Quantum state betting: ensembles, POVMs, Kraus channels and Born-rule games.

Measurement outcomes play the role of the gambler's side information, so
everything reduces to the classical layer through ``p(g|x) = tr[M_g N(rho_x)]``.
Matrices serialize as ``dim x dim`` arrays of ``[re, im]`` pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from betinfo.betting import divergence_order, max_log_ice, BettingGame
from betinfo.entropies import _order, id_mutual_information
from betinfo.prob_core import sgn
from betinfo.wealth_ratio import id_mi_operational

QTOL = 1e-10

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _herm(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def _square(a, what: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{what} must be a square matrix")
    return a


def matrix_to_json(a: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a)]


def matrix_from_json(data, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("matrices are dim x dim arrays of [re, im] pairs")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"declared dimension {dim} does not match matrix size {arr.shape[0]}")
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self):
        rho = _herm(_square(self.matrix, "a density matrix"))
        if abs(np.trace(rho).real - 1.0) > QTOL:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(rho).min() < -QTOL:
            raise ValueError("density matrix must be positive semidefinite")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, vec) -> "DensityMatrix":
        v = np.asarray(vec, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def from_bloch(cls, r) -> "DensityMatrix":
        r = np.asarray(r, dtype=float)
        return cls(0.5 * (np.eye(2) + sum(ri * s for ri, s in zip(r, PAULI))))

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator) -> "DensityMatrix":
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        rho = g @ g.conj().T
        return cls(rho / np.trace(rho).real)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "matrix": matrix_to_json(self.matrix)}

    @classmethod
    def from_dict(cls, data: dict) -> "DensityMatrix":
        return cls(matrix_from_json(data["matrix"], data.get("dim")))


@dataclass(frozen=True)
class Povm:
    effects: tuple

    def __post_init__(self):
        effs = tuple(_herm(_square(m, "a POVM effect")) for m in self.effects)
        if not effs:
            raise ValueError("a POVM needs at least one effect")
        d = effs[0].shape[0]
        if any(m.shape != (d, d) for m in effs):
            raise ValueError("POVM effects must share one dimension")
        for m in effs:
            if np.linalg.eigvalsh(m).min() < -QTOL:
                raise ValueError("POVM effects must be positive semidefinite")
        if np.abs(sum(effs) - np.eye(d)).max() > QTOL:
            raise ValueError("POVM effects must sum to the identity")
        object.__setattr__(self, "effects", effs)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def __len__(self) -> int:
        return len(self.effects)

    @classmethod
    def computational(cls, dim: int) -> "Povm":
        return cls(tuple(np.diag(np.eye(dim)[i]).astype(complex) for i in range(dim)))

    @classmethod
    def projective(cls, unitary) -> "Povm":
        u = np.asarray(unitary, dtype=complex)
        return cls(tuple(np.outer(u[:, i], u[:, i].conj()) for i in range(u.shape[1])))

    @classmethod
    def uninformative(cls, q, dim: int) -> "Povm":
        return cls(tuple(float(qg) * np.eye(dim, dtype=complex) for qg in q))

    @classmethod
    def qubit_direction(cls, n) -> "Povm":
        """Two-outcome projective measurement along Bloch direction ``n``."""
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        ns = sum(ni * s for ni, s in zip(n, PAULI))
        return cls((0.5 * (np.eye(2) + ns), 0.5 * (np.eye(2) - ns)))

    @classmethod
    def random(cls, dim: int, outcomes: int, rng: np.random.Generator) -> "Povm":
        """Rank-one POVM from a Haar-random isometry (Naimark dilation)."""
        if outcomes < dim:
            raise ValueError("a rank-one POVM needs at least dim outcomes")
        u = unitary_group.rvs(outcomes, random_state=rng)
        v = u[:, :dim]
        return cls(tuple(np.outer(v[g].conj(), v[g]) for g in range(outcomes)))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "effects": [matrix_to_json(m) for m in self.effects]}

    @classmethod
    def from_dict(cls, data: dict) -> "Povm":
        return cls(tuple(matrix_from_json(m, data.get("dim")) for m in data["effects"]))


@dataclass(frozen=True)
class QuantumEnsemble:
    states: tuple
    prior: np.ndarray

    def __post_init__(self):
        states = tuple(s if isinstance(s, DensityMatrix) else DensityMatrix(s) for s in self.states)
        prior = np.asarray(self.prior, dtype=float)
        if len(states) != prior.size:
            raise ValueError("one prior weight per state")
        if np.any(prior < 0) or abs(prior.sum() - 1.0) > 1e-9:
            raise ValueError("prior must be a PMF")
        if len({s.dim for s in states}) != 1:
            raise ValueError("ensemble states must share one dimension")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "prior", prior / prior.sum())

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @classmethod
    def random(cls, size: int, dim: int, rng: np.random.Generator) -> "QuantumEnsemble":
        return cls(tuple(DensityMatrix.random(dim, rng) for _ in range(size)), rng.dirichlet(np.ones(size)))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "states": [matrix_to_json(s.matrix) for s in self.states], "prior": self.prior.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "QuantumEnsemble":
        dim = data.get("dim")
        return cls(tuple(DensityMatrix(matrix_from_json(m, dim)) for m in data["states"]), data["prior"])


@dataclass(frozen=True)
class KrausChannel:
    ops: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        ops = tuple(_square(k, "a Kraus operator") for k in self.ops)
        d = ops[0].shape[0]
        total = sum(k.conj().T @ k for k in ops)
        if np.abs(total - np.eye(d)).max() > QTOL:
            raise ValueError("Kraus operators must satisfy sum K^dag K = I")
        object.__setattr__(self, "ops", ops)

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]

    def apply(self, rho) -> np.ndarray:
        rho = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
        return sum(k @ rho @ k.conj().T for k in self.ops)

    @classmethod
    def identity(cls, dim: int) -> "KrausChannel":
        return cls((np.eye(dim, dtype=complex),), "identity")

    @classmethod
    def depolarizing(cls, lam: float, dim: int = 2) -> "KrausChannel":
        """``rho -> (1 - lam) rho + lam I/d`` via Weyl operators."""
        if not 0.0 <= lam <= 1.0 + 1.0 / (dim * dim - 1):
            raise ValueError("depolarizing parameter out of range")
        omega = np.exp(2j * math.pi / dim)
        shift = np.roll(np.eye(dim), 1, axis=0)
        clock = np.diag(omega ** np.arange(dim))
        ops = []
        for a in range(dim):
            for b in range(dim):
                w = 1.0 - lam + lam / dim**2 if a == b == 0 else lam / dim**2
                if w > 0:
                    ops.append(math.sqrt(w) * np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b))
        return cls(tuple(ops), f"depolarizing({lam})")

    @classmethod
    def amplitude_damping(cls, gamma: float) -> "KrausChannel":
        if not 0.0 <= gamma <= 1.0:
            raise ValueError("damping must lie in [0, 1]")
        k0 = np.array([[1, 0], [0, math.sqrt(1 - gamma)]], dtype=complex)
        k1 = np.array([[0, math.sqrt(gamma)], [0, 0]], dtype=complex)
        return cls((k0, k1), f"amplitude_damping({gamma})")

    @classmethod
    def replace(cls, sigma) -> "KrausChannel":
        """Constant channel ``rho -> sigma``."""
        s = sigma if isinstance(sigma, DensityMatrix) else DensityMatrix(sigma)
        vals, vecs = np.linalg.eigh(s.matrix)
        d = s.dim
        ops = []
        for i in range(d):
            if vals[i] > QTOL:
                for j in range(d):
                    ops.append(math.sqrt(vals[i]) * np.outer(vecs[:, i], np.eye(d)[j]))
        return cls(tuple(ops), "replace")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "kraus": [matrix_to_json(k) for k in self.ops]}

    @classmethod
    def from_dict(cls, data: dict) -> "KrausChannel":
        return cls(tuple(matrix_from_json(k, data.get("dim")) for k in data["kraus"]))


def induced_conditional(e: QuantumEnsemble, m: Povm, n: KrausChannel | None = None) -> np.ndarray:
    """Born-rule table ``p(g|x)`` laid out ``[g, x]``."""
    if m.dim != e.dim or (n is not None and n.dim != e.dim):
        raise ValueError("ensemble, POVM and channel dimensions differ")
    table = np.empty((len(m), len(e.states)))
    for x, rho in enumerate(e.states):
        out = rho.matrix if n is None else n.apply(rho)
        for g, eff in enumerate(m.effects):
            table[g, x] = np.trace(eff @ out).real
    table = np.clip(table, 0.0, None)
    return table / table.sum(axis=0, keepdims=True)


def induced_joint(e: QuantumEnsemble, m: Povm, n: KrausChannel | None = None) -> np.ndarray:
    """``p(x, g) = p(x) tr[M_g N(rho_x)]`` laid out ``[x, g]``."""
    return (induced_conditional(e, m, n) * e.prior[None, :]).T


def is_uninformative(m: Povm, tol: float = QTOL) -> bool:
    d = m.dim
    eye = np.eye(d)
    return all(np.abs(eff - np.trace(eff).real / d * eye).max() <= tol for eff in m.effects)


def _probe_states(d: int) -> list:
    """Pure states whose projectors span all Hermitian matrices."""
    basis = np.eye(d, dtype=complex)
    out = [basis[i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            out.append((basis[i] + basis[j]) / math.sqrt(2))
            out.append((basis[i] + 1j * basis[j]) / math.sqrt(2))
    return [np.outer(v, v.conj()) for v in out]


def is_constant(n: KrausChannel, tol: float = QTOL) -> bool:
    outs = [n.apply(rho) for rho in _probe_states(n.dim)]
    return all(np.abs(o - outs[0]).max() <= tol for o in outs[1:])


@dataclass(frozen=True)
class QuantumReport:
    id_mi: float
    log_ratio_utility: float
    residual: float
    agree: bool
    measurement: str = ""
    candidates: int = 1

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def qsb_identity(e: QuantumEnsemble, m: Povm, q, r, C: float = 1.0, tol: float = 1e-8) -> QuantumReport:
    """ID mutual information of the Born-rule joint against the QSB wealth-ratio utility.

    The maximum over uninformative measurements equals the best bet without
    side information, since ``tr[q(g) I rho_x] = q(g)``.
    """
    j = induced_joint(e, m)
    rep = id_mi_operational(j, q, r, C, tol)
    return QuantumReport(rep.lhs_id_mi, rep.rhs_utility_of_ratio, rep.residual, rep.agree, "given")


def fibonacci_directions(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors on the sphere (upper hemisphere suffices for +-n)."""
    i = np.arange(n) + 0.5
    z = 1.0 - i / n
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    rad = np.sqrt(1.0 - z * z)
    return np.stack([rad * np.cos(phi), rad * np.sin(phi), z], axis=1)


def candidate_povms(dim: int, directions: int = 512, random_count: int = 64, seed: int = 0):
    """Projective grid (qubits) plus seeded Haar-random rank-one POVMs, labelled."""
    out = [("computational", Povm.computational(dim))]
    if dim == 2:
        for k, n in enumerate(fibonacci_directions(directions)):
            out.append((f"grid[{k}]", Povm.qubit_direction(n)))
    rng = np.random.default_rng(seed)
    for k in range(random_count):
        if k % 2 == 0:
            out.append((f"haar-projective[{k}]", Povm.projective(unitary_group.rvs(dim, random_state=rng))))
        else:
            out.append((f"haar-rank1[{k}]", Povm.random(dim, dim * dim, rng)))
    return out


def nqsb_identity(
    e: QuantumEnsemble,
    n: KrausChannel,
    q,
    r,
    C: float = 1.0,
    m: Povm | None = None,
    directions: int = 512,
    random_count: int = 64,
    seed: int = 0,
    tol: float = 1e-8,
) -> QuantumReport:
    """Noisy QSB: best-found measurement (a lower bound on the true maximum).

    Candidates are ranked by the maximal ICE of the ``1/q`` gambler; the
    constant-channel baseline is the best bet without side information.
    """
    if e.dim > 3:
        raise ValueError("measurement search is limited to dimensions 2 and 3")
    q = _order(q)
    R = divergence_order(q)
    odds = np.full(len(e.states), sgn(q) * float(C))
    cands = [("given", m)] if m is not None else candidate_povms(e.dim, directions, random_count, seed)
    best, best_u = None, -math.inf
    for label, povm in cands:
        j = induced_joint(e, povm, n)
        u = max_log_ice(BettingGame.gambler(odds, j), R)
        if u > best_u + 1e-15:
            best, best_u = (label, j), u
    label, j = best
    rep = id_mi_operational(j, q, r, C, tol)
    return QuantumReport(rep.lhs_id_mi, rep.rhs_utility_of_ratio, rep.residual, rep.agree, label, len(cands))


def amplitude_damping_sweep(q=1.0, r=1.0, gammas=(0.0, 0.25, 0.5, 0.75, 1.0), directions: int = 512, seed: int = 0):
    """Best-found NQSB advantage for ``|0>, |1>`` (uniform) under amplitude damping."""
    e = QuantumEnsemble((DensityMatrix.pure([1, 0]), DensityMatrix.pure([0, 1])), [0.5, 0.5])
    rows = []
    for gamma in gammas:
        rep = nqsb_identity(e, KrausChannel.amplitude_damping(gamma), q, r, directions=directions, random_count=16, seed=seed)
        rows.append({"gamma": gamma, **rep.to_dict()})
    return rows


def uninformative_mi(e: QuantumEnsemble, qg, q, r) -> float:
    """ID mutual information of the joint induced by ``M_g = q(g) I``."""
    return id_mutual_information(induced_joint(e, Povm.uninformative(qg, e.dim)), q, r)
