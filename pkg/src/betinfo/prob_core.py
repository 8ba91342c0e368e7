"""Probability tables, odds tables, extended-real orders and deformed logarithms.

Everything downstream is built on the small set of primitives defined here:
labelled finite distributions (``Pmf``, ``JointPmf``, ``CondTable``), signed
odds tables, and the r-deformed algebra (``ln_r``, ``exp_q``, ``eta_r`` and the
pseudo-operations).  All tables are immutable once constructed.

Zero-probability conventions: ``0 * ln 0 = 0``, ``0**a = 0`` for ``a > 0`` and
``0**a = inf`` for ``a < 0``.  Functions that would need the latter raise
:class:`DomainError` instead of silently returning infinities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.special import logsumexp

#: Orders closer than this to a removable singularity use the limit branch.
SPECIAL_TOL = 1e-10
#: Mass defect tolerated (and repaired) by the table constructors.
NORM_TOL = 1e-9


class DomainError(ValueError):
    """Argument outside the domain where a quantity is defined."""


class DegenerateOrderError(ZeroDivisionError):
    """Order combination hitting a pole of a deformed operation."""


# ---------------------------------------------------------------------------
# orders and scalar helpers
# ---------------------------------------------------------------------------


def parse_order(value) -> float:
    """Parse an extended-real order; accepts numbers and ``inf``/``-inf`` strings."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity", "+infinity"):
            return math.inf
        if text in ("-inf", "-infinity"):
            return -math.inf
        try:
            out = float(text)
        except ValueError:
            raise ValueError(f"cannot parse order {value!r}") from None
    else:
        out = float(value)
    if math.isnan(out):
        raise ValueError("order must not be NaN")
    return out


def sgn(a) -> int:
    """Sign with the convention ``sgn(0) = +1``.

    A signed ``-0.0`` stands for the left limit ``0-`` and gives ``-1``.
    """
    a = float(a)
    if math.isnan(a):
        raise ValueError("sgn is undefined for NaN")
    if a == 0.0:
        return -1 if math.copysign(1.0, a) < 0 else 1
    return 1 if a > 0 else -1


def _near(a: float, b: float) -> bool:
    return abs(a - b) < SPECIAL_TOL


def _scalar_or_array(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def ln_r(x, r: float):
    """r-deformed logarithm ``(x**(1-r) - 1) / (1-r)``; ``ln`` at ``r = 1``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("ln_r requires x > 0")
    r = float(r)
    if not math.isfinite(r):
        raise DomainError("ln_r requires a finite deformation")
    lx = np.log(x)
    if _near(r, 1.0):
        return _scalar_or_array(lx)
    with np.errstate(over="ignore"):
        out = np.expm1((1.0 - r) * lx) / (1.0 - r)
    return _scalar_or_array(out)


def exp_q(x, q: float):
    """q-exponential, the inverse of :func:`ln_r` on its range."""
    x = np.asarray(x, dtype=float)
    q = float(q)
    if _near(q, 1.0):
        return _scalar_or_array(np.exp(x))
    base = 1.0 + (1.0 - q) * x
    if np.any(base < 0):
        raise DomainError("exp_q requires 1 + (1-q) x >= 0")
    with np.errstate(divide="ignore", over="ignore"):
        out = np.exp(np.log1p((1.0 - q) * x) / (1.0 - q))
    return _scalar_or_array(out)


def eta_r(x, r: float):
    """Map ``ln`` onto ``ln_r``: ``eta_r(ln x) == ln_r(x)``."""
    x = np.asarray(x, dtype=float)
    r = float(r)
    if _near(r, 1.0):
        return _scalar_or_array(x.copy())
    with np.errstate(over="ignore"):
        out = np.expm1((1.0 - r) * x) / (1.0 - r)
    return _scalar_or_array(out)


def eta_r_inv(y, r: float):
    y = np.asarray(y, dtype=float)
    r = float(r)
    if _near(r, 1.0):
        return _scalar_or_array(y.copy())
    if np.any(1.0 + (1.0 - r) * y <= 0):
        raise DomainError("eta_r_inv requires 1 + (1-r) y > 0")
    return _scalar_or_array(np.log1p((1.0 - r) * y) / (1.0 - r))


def pseudo_add(x, y, r: float):
    """``x + y + (1-r) x y``."""
    return x + y + (1.0 - r) * x * y


def pseudo_sub(x, y, r: float):
    """``(x - y) / (1 + (1-r) y)``, the inverse of :func:`pseudo_add` in ``x``."""
    den = 1.0 + (1.0 - r) * y
    if np.any(np.abs(den) < 1e-14):
        raise DegenerateOrderError(f"pseudo_sub pole: 1 + (1-r) y = 0 (r={r}, y={y})")
    return (x - y) / den


def log_power_mean(logv, w, t: float) -> float:
    """Logarithm of the weighted power mean ``(sum_i w_i v_i**t)**(1/t)``.

    ``logv`` holds ``ln v_i`` (``-inf``/``+inf`` allowed), ``w`` are weights
    summing to one.  ``t = 0`` is the geometric mean, ``t = +-inf`` the
    max/min over entries with positive weight.  Entries of zero weight are
    ignored.
    """
    logv = np.asarray(logv, dtype=float)
    w = np.asarray(w, dtype=float)
    mask = w > 0
    logv = logv[mask]
    w = w[mask]
    if logv.size == 0:
        raise DomainError("power mean over an empty support")
    w = w / w.sum()
    t = float(t)
    if t == math.inf:
        return float(np.max(logv))
    if t == -math.inf:
        return float(np.min(logv))
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        if abs(t) < SPECIAL_TOL:
            return float(np.dot(w, logv))
        scaled = t * logv
        finite = np.all(np.isfinite(scaled))
        if finite and np.max(np.abs(scaled)) < 0.5:
            # expm1/log1p keep full relative precision for small exponents
            return float(np.log1p(np.dot(w, np.expm1(scaled))) / t)
        return float(logsumexp(scaled, b=w) / t)



def tilted_weights(logv, w, t: float, tie_tol: float = 1e-12) -> np.ndarray:
    """Normalized ``w_i v_i**t``: the weights that attain the power mean.

    At ``t = +-inf`` the mass is split evenly over the argmax/argmin of ``v``
    on the support of ``w``.
    """
    logv = np.asarray(logv, dtype=float)
    w = np.asarray(w, dtype=float)
    mask = w > 0
    out = np.zeros_like(w)
    if not np.any(mask):
        raise DomainError("tilted weights over an empty support")
    t = float(t)
    if math.isinf(t):
        sub = logv[mask] if t > 0 else -logv[mask]
        best = np.max(sub)
        hit = sub >= best - tie_tol * max(1.0, abs(best)) if math.isfinite(best) else sub == best
        vals = np.zeros(sub.size)
        vals[hit] = 1.0 / hit.sum()
        out[mask] = vals
        return out
    with np.errstate(invalid="ignore", over="ignore"):
        a = np.log(w[mask]) + (t * logv[mask] if t != 0.0 else 0.0)
    out[mask] = np.exp(a - logsumexp(a))
    return out

# ---------------------------------------------------------------------------
# labelled tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if len(labels) < 1:
            raise ValueError("an alphabet needs at least one symbol")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in alphabet {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def range(cls, size: int, prefix: str = "x") -> "Alphabet":
        return cls(tuple(f"{prefix}{i}" for i in range(size)))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


def _normalize(w: np.ndarray, what: str, axis=None) -> np.ndarray:
    if not np.all(np.isfinite(w)):
        raise ValueError(f"{what}: weights must be finite")
    if np.any(w < 0):
        raise ValueError(f"{what}: weights must be nonnegative")
    total = w.sum(axis=axis, keepdims=axis is not None)
    if np.any(np.abs(total - 1.0) > NORM_TOL):
        raise ValueError(f"{what}: weights sum to {np.ravel(total)} instead of 1")
    return w / total


@dataclass(frozen=True)
class Pmf:
    """Distribution on a finite labelled alphabet."""

    alphabet: Alphabet
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.shape[0] != len(self.alphabet):
            raise ValueError(
                f"Pmf: {w.shape} weights for an alphabet of size {len(self.alphabet)}"
            )
        object.__setattr__(self, "weights", _frozen(_normalize(w, "Pmf")))

    @classmethod
    def from_weights(cls, weights: Sequence[float], labels: Sequence[str] | None = None):
        weights = np.asarray(weights, dtype=float)
        alphabet = Alphabet(tuple(labels)) if labels is not None else Alphabet.range(len(weights))
        return cls(alphabet, weights)

    @classmethod
    def uniform(cls, size: int) -> "Pmf":
        return cls.from_weights(np.full(size, 1.0 / size))

    @classmethod
    def point_mass(cls, size: int, at: int = 0) -> "Pmf":
        w = np.zeros(size)
        w[at] = 1.0
        return cls.from_weights(w)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    def __len__(self) -> int:
        return len(self.alphabet)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights > 0)

    def has_full_support(self) -> bool:
        return bool(np.all(self.weights > 0))

    def to_dict(self) -> dict:
        return {"alphabet": list(self.alphabet.labels), "weights": self.weights.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Pmf":
        if "weights" not in data:
            raise KeyError("weights")
        labels = data.get("alphabet")
        return cls.from_weights(data["weights"], labels)


@dataclass(frozen=True)
class JointPmf:
    """Joint distribution over several named axes (``("X", "G")`` etc.)."""

    axes: tuple[str, ...]
    alphabets: tuple[Alphabet, ...]
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        axes = tuple(self.axes)
        if len(set(axes)) != len(axes):
            raise ValueError(f"duplicate axis names {axes}")
        if w.ndim != len(axes) or len(self.alphabets) != len(axes):
            raise ValueError("JointPmf: axes, alphabets and weight rank disagree")
        if tuple(len(a) for a in self.alphabets) != w.shape:
            raise ValueError("JointPmf: alphabet sizes do not match the weight shape")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "alphabets", tuple(self.alphabets))
        object.__setattr__(self, "weights", _frozen(_normalize(w, "JointPmf")))

    @classmethod
    def from_array(cls, weights, axes: Sequence[str] | None = None) -> "JointPmf":
        w = np.asarray(weights, dtype=float)
        if axes is None:
            axes = ("X", "G", "Y")[: w.ndim] if w.ndim <= 3 else [f"A{i}" for i in range(w.ndim)]
        alphabets = tuple(Alphabet.range(n, prefix=a.lower()) for a, n in zip(axes, w.shape))
        return cls(tuple(axes), alphabets, w)

    @classmethod
    def product(cls, *pmfs: Pmf, axes: Sequence[str] | None = None) -> "JointPmf":
        w = np.asarray(pmfs[0].weights)
        for p in pmfs[1:]:
            w = np.multiply.outer(w, p.weights)
        axes = axes or ("X", "G", "Y")[: len(pmfs)]
        return cls(tuple(axes), tuple(p.alphabet for p in pmfs), w)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.weights.shape

    def axis_index(self, axis) -> int:
        if isinstance(axis, str):
            try:
                return self.axes.index(axis)
            except ValueError:
                raise KeyError(f"no axis {axis!r} in {self.axes}") from None
        return int(axis)

    def to_dict(self) -> dict:
        return {
            "axes": list(self.axes),
            "alphabets": [list(a.labels) for a in self.alphabets],
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JointPmf":
        if "weights" not in data:
            raise KeyError("weights")
        w = np.asarray(data["weights"], dtype=float)
        axes = data.get("axes")
        if axes is not None and len(axes) != w.ndim:
            raise ValueError(f"axes: {len(axes)} names for a rank-{w.ndim} table")
        out = cls.from_array(w, axes)
        if "alphabets" in data:
            out = cls(out.axes, tuple(Alphabet(tuple(a)) for a in data["alphabets"]), w)
        return out


@dataclass(frozen=True)
class CondTable:
    """Column-stochastic table ``p(a | b...)``.

    ``weights`` has shape ``(len(rows), *conditioning sizes)`` and every slice
    along axis 0 is a distribution.  Columns whose conditioning event had zero
    mass are stored as uniform and flagged ``False`` in ``defined``.
    """

    rows: Alphabet
    given: tuple[Alphabet, ...]
    weights: np.ndarray
    defined: np.ndarray = field(default=None)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        given = tuple(self.given)
        if w.ndim != 1 + len(given):
            raise ValueError("CondTable: weight rank must be 1 + number of conditioning axes")
        if w.shape != (len(self.rows), *(len(a) for a in given)):
            raise ValueError("CondTable: alphabet sizes do not match the weight shape")
        defined = (
            np.ones(w.shape[1:], dtype=bool)
            if self.defined is None
            else np.asarray(self.defined, dtype=bool)
        )
        if defined.shape != w.shape[1:]:
            raise ValueError("CondTable: defined-mask shape mismatch")
        defined = defined.copy()
        defined.setflags(write=False)
        object.__setattr__(self, "given", given)
        object.__setattr__(self, "weights", _frozen(_normalize(w, "CondTable", axis=0)))
        object.__setattr__(self, "defined", defined)

    @classmethod
    def from_array(cls, weights, row_prefix: str = "x", given_prefixes: Sequence[str] = ("y", "z")):
        w = np.asarray(weights, dtype=float)
        given = tuple(
            Alphabet.range(n, prefix=given_prefixes[i % len(given_prefixes)])
            for i, n in enumerate(w.shape[1:])
        )
        return cls(Alphabet.range(w.shape[0], prefix=row_prefix), given, w)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.weights, dtype=dtype)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.weights.shape

    def column(self, *index) -> Pmf:
        return Pmf(self.rows, self.weights[(slice(None), *index)])

    def to_dict(self) -> dict:
        return {
            "rows": list(self.rows.labels),
            "given": [list(a.labels) for a in self.given],
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CondTable":
        if "weights" not in data:
            raise KeyError("weights")
        w = np.asarray(data["weights"], dtype=float)
        out = cls.from_array(w)
        if "rows" in data or "given" in data:
            rows = Alphabet(tuple(data["rows"])) if "rows" in data else out.rows
            given = tuple(Alphabet(tuple(a)) for a in data["given"]) if "given" in data else out.given
            out = cls(rows, given, w)
        return out


@dataclass(frozen=True)
class OddsTable:
    """Payouts ``o(x)`` or ``o(x|y)`` sharing one sign and no zero entries.

    ``values`` is stored signed; ``magnitude`` gives ``|o|``.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim not in (1, 2):
            raise ValueError("odds must be a vector o(x) or a table o(x|y)")
        if not np.all(np.isfinite(v)):
            raise ValueError("odds must be finite")
        if np.any(v == 0):
            raise ValueError("odds entries must be nonzero")
        if not (np.all(v > 0) or np.all(v < 0)):
            raise ValueError("odds entries must share one sign")
        object.__setattr__(self, "values", _frozen(v))

    @classmethod
    def from_magnitude(cls, magnitude, sign: int = 1) -> "OddsTable":
        m = np.asarray(magnitude, dtype=float)
        if np.any(m <= 0):
            raise ValueError("odds magnitudes must be positive")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(sign * m)

    @classmethod
    def constant(cls, size: int, value: float) -> "OddsTable":
        return cls(np.full(size, float(value)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    @property
    def sign(self) -> int:
        return 1 if self.values.flat[0] > 0 else -1

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def is_conditional(self) -> bool:
        return self.values.ndim == 2

    def as_table(self) -> np.ndarray:
        """Signed odds as a ``(K, |Y|)`` array (``|Y| = 1`` for plain odds)."""
        return self.values if self.is_conditional else self.values[:, None]

    def reciprocal(self) -> np.ndarray:
        """``r(x|y) = 1/|o(x|y)|`` as a ``(K, |Y|)`` array."""
        return 1.0 / np.abs(self.as_table())

    def to_dict(self) -> dict:
        return {"values": self.magnitude.tolist(), "sign": self.sign}

    @classmethod
    def from_dict(cls, data: dict) -> "OddsTable":
        if "values" not in data:
            raise KeyError("values")
        v = np.asarray(data["values"], dtype=float)
        sign = int(data.get("sign", 1 if np.all(v > 0) else -1))
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if np.all(v > 0):
            return cls(sign * v)
        out = cls(v)
        if out.sign != sign:
            raise ValueError("sign disagrees with the signed odds values")
        return out


# ---------------------------------------------------------------------------
# operations on tables
# ---------------------------------------------------------------------------


def escort(p, s: float) -> Pmf:
    """Escort distribution ``p**s / sum(p**s)`` restricted to ``supp(p)``."""
    w = np.asarray(p, dtype=float)
    s = float(s)
    if not math.isfinite(s):
        raise DomainError("escort exponent must be finite")
    supp = w > 0
    if s < 0 and not np.all(supp):
        raise DomainError("escort with negative exponent needs full support")
    out = np.zeros_like(w)
    if s == 0:
        out[supp] = 1.0
    else:
        logw = s * np.log(w[supp])
        out[supp] = np.exp(logw - logsumexp(logw))
    out /= out.sum()
    labels = p.alphabet.labels if isinstance(p, Pmf) else None
    return Pmf.from_weights(out, labels)


def _axes_of(j: JointPmf, axes) -> list[int]:
    if isinstance(axes, (str, int, np.integer)):
        axes = [axes]
    return [j.axis_index(a) for a in axes]


def marginalize(j: JointPmf, keep) -> Pmf | JointPmf:
    """Marginal over the axes in ``keep`` (names or indices), in that order."""
    keep_idx = _axes_of(j, keep)
    drop = tuple(i for i in range(len(j.axes)) if i not in keep_idx)
    w = j.weights.sum(axis=drop) if drop else j.weights
    # sum keeps remaining axes in ascending order; reorder to the request
    remaining = [i for i in range(len(j.axes)) if i in keep_idx]
    w = np.transpose(w, [remaining.index(i) for i in keep_idx])
    if len(keep_idx) == 1:
        return Pmf(j.alphabets[keep_idx[0]], w)
    return JointPmf(
        tuple(j.axes[i] for i in keep_idx), tuple(j.alphabets[i] for i in keep_idx), w
    )


def condition(j: JointPmf, target, given) -> CondTable:
    """Conditional table ``p(target | given)`` (other axes are summed out)."""
    t = j.axis_index(target)
    g = _axes_of(j, given)
    if t in g:
        raise ValueError("target axis cannot also be conditioned on")
    order = [t, *g]
    drop = tuple(i for i in range(len(j.axes)) if i not in order)
    w = j.weights.sum(axis=drop) if drop else j.weights
    remaining = [i for i in range(len(j.axes)) if i in order]
    w = np.transpose(w, [remaining.index(i) for i in order])
    mass = w.sum(axis=0)
    defined = mass > 0
    safe = np.where(defined, mass, 1.0)
    cond = np.where(defined[None, ...], w / safe[None, ...], 1.0 / w.shape[0])
    return CondTable(j.alphabets[t], tuple(j.alphabets[i] for i in g), cond, defined)


def compose(c: CondTable, p, axes: Sequence[str] | None = None) -> JointPmf:
    """Joint ``p(a, b...) = c(a|b...) p(b...)``; axes ordered (rows, given...)."""
    pw = np.asarray(p, dtype=float)
    if pw.shape != c.shape[1:]:
        raise ValueError(f"compose: conditioning shape {c.shape[1:]} vs marginal {pw.shape}")
    w = c.weights * pw[None, ...]
    if axes is None:
        axes = ("X", "G", "Y")[: w.ndim] if w.ndim <= 3 else [f"A{i}" for i in range(w.ndim)]
    return JointPmf(tuple(axes), (c.rows, *c.given), w)


def as_array(x, ndim: int | None = None, what: str = "table") -> np.ndarray:
    """Coerce a table or array-like to a float array, checking its rank."""
    arr = np.asarray(x, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{what}: expected rank {ndim}, got shape {arr.shape}")
    return arr


def require_full_support(arrays: Iterable[np.ndarray], what: str) -> None:
    for a in arrays:
        if np.any(np.asarray(a) <= 0):
            raise DomainError(f"{what}: negative orders need full support")
