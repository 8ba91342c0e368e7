"""Command-line front end.

Every subcommand prints one JSON document (or CSV rows) on stdout.  Exit
codes: 0 success, 1 input error (the diagnostic names the offending field),
2 a verification suite reported failures.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from typing import Any, Callable

import numpy as np

from betinfo import betting, divergences, entropies, prospect, quantum, suites, wealth_ratio
from betinfo.optimizer import SimplexSearchConfig, oracle_max_log_ice, oracle_max_log_pt_ce
from betinfo import prob_core
from betinfo.prob_core import DegenerateOrderError, OddsTable, parse_order


class InputError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _read_json(path: str | None, flag: str) -> Any:
    if path is None:
        raise InputError(flag, "required for this command")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(flag, f"no such file {path!r}") from None
    except json.JSONDecodeError as exc:
        raise InputError(flag, f"malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _field(doc: Any, key: str, flag: str, allow_bare: bool = True) -> Any:
    """``doc[key]``, or the document itself when it is a bare array."""
    if isinstance(doc, dict):
        if key not in doc:
            raise InputError(f"{flag}.{key}", "missing field")
        return doc[key]
    if allow_bare:
        return doc
    raise InputError(flag, f"expected an object with field {key!r}")


def _array(value: Any, field: str, ndim: int | tuple | None = None) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise InputError(field, "expected a numeric (nested) array") from None
    dims = (ndim,) if isinstance(ndim, int) else ndim
    if dims is not None and arr.ndim not in dims:
        raise InputError(field, f"expected {' or '.join(map(str, dims))}-d array, got {arr.ndim}-d")
    return arr


def _load_array(path, flag: str, key: str, ndim=None) -> np.ndarray:
    """Bare array, ``{key: ...}`` or the table schema ``{"weights": ...}``."""
    doc = _read_json(path, flag)
    if isinstance(doc, dict) and key not in doc and "weights" in doc:
        key = "weights"
    name = f"{flag}.{key}" if isinstance(doc, dict) else flag
    return _array(_field(doc, key, flag), name, ndim)


def _load_odds(path) -> OddsTable:
    doc = _read_json(path, "--odds")
    try:
        if isinstance(doc, dict):
            return OddsTable.from_dict(doc)
        return OddsTable(_array(doc, "--odds", (1, 2)))
    except KeyError as exc:
        raise InputError(f"--odds.{exc.args[0]}", "missing field") from None
    except ValueError as exc:
        raise InputError("--odds", str(exc)) from None


def _order_arg(value, flag: str, default=None) -> float:
    if value is None:
        if default is None:
            raise InputError(flag, "required for this command")
        value = default
    try:
        return parse_order(value)
    except ValueError as exc:
        raise InputError(flag, str(exc)) from None


def _positive(value, flag: str) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise InputError(flag, "expected a number") from None
    if not v > 0:
        raise InputError(flag, "must be positive")
    return v


def _game(args) -> betting.BettingGame:
    odds = _load_odds(args.odds)
    ndim = {"none": 1, "gambler": 2, "bookmaker": 2, "double": 3}[args.config]
    joint = _load_array(args.joint, "--joint", "joint", ndim)
    try:
        return betting.BettingGame(odds, joint, args.config)
    except ValueError as exc:
        raise InputError("--joint", str(exc)) from None


def _bet(args) -> betting.Strategy:
    b = _load_array(args.bet, "--bet", "bet", (1, 2))
    try:
        return betting.Strategy(b)
    except ValueError as exc:
        raise InputError("--bet", str(exc)) from None


def _oracle(args) -> SimplexSearchConfig | None:
    if args.oracle_grid is None and args.oracle_restarts is None:
        return None
    try:
        return SimplexSearchConfig(
            resolution=args.oracle_grid or 24,
            restarts=6 if args.oracle_restarts is None else args.oracle_restarts,
            seed=args.seed,
        )
    except ValueError as exc:
        raise InputError("--oracle-grid", str(exc)) from None


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _plain(obj: Any) -> Any:
    """JSON-ready copy: numpy to Python, non-finite floats to strings."""
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _plain(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        rows = []
        for k, v in obj.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else k))
        return rows
    if isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        rows = []
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
        return rows
    return [(prefix or "value", json.dumps(obj) if isinstance(obj, list) else obj)]


def render(result: Any, fmt: str) -> str:
    data = _plain(result)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerows(_flatten(data))
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

PMF_ENTROPIES: dict[str, Callable] = {
    "shannon": lambda p, q, r: entropies.shannon_entropy(p),
    "renyi": lambda p, q, r: entropies.renyi_entropy(p, q()),
    "tsallis": lambda p, q, r: entropies.tsallis_entropy(p, q()),
    "sharma-mittal": lambda p, q, r: entropies.sharma_mittal_entropy(p, q(), r()),
    "renyi-probability": lambda p, q, r: entropies.renyi_probability(p, q()),
}

JOINT_ENTROPIES: dict[str, Callable] = {
    "shannon-cond": lambda j, q, r: entropies.shannon_cond_entropy(j),
    "arimoto-cond": lambda j, q, r: entropies.arimoto_cond_entropy(j, q()),
    "h1": lambda j, q, r: entropies.cond_entropy_h1(j, q()),
    "h2": lambda j, q, r: entropies.cond_entropy_h2(j, q()),
    "h4": lambda j, q, r: entropies.cond_entropy_h4(j, q()),
    "id-cond": lambda j, q, r: entropies.id_cond_entropy(j, q(), r()),
    "id-mi": lambda j, q, r: entropies.id_mutual_information(j, q(), r()),
    "arimoto-mi": lambda j, q, r: entropies.arimoto_mutual_information(j, q()),
    "shannon-mi": lambda j, q, r: entropies.shannon_mutual_information(j),
    "renyi-cond-probability": lambda j, q, r: entropies.renyi_cond_probability(j, q()),
    "chain-rule": lambda j, q, r: entropies.check_chain_rule(j, q(), r()),
}


SCALAR_OPS: dict[str, Callable] = {
    "sgn": lambda x, y, r: prob_core.sgn(x()),
    "ln-r": lambda x, y, r: prob_core.ln_r(x(), r()),
    "exp-q": lambda x, y, r: prob_core.exp_q(x(), r()),
    "eta-r": lambda x, y, r: prob_core.eta_r(x(), r()),
    "eta-r-inv": lambda x, y, r: prob_core.eta_r_inv(x(), r()),
    "pseudo-add": lambda x, y, r: prob_core.pseudo_add(x(), y(), r()),
    "pseudo-sub": lambda x, y, r: prob_core.pseudo_sub(x(), y(), r()),
}


def _tables(j: np.ndarray) -> dict:
    """Marginals, ``p(first axis | rest)`` and the recomposition residual."""
    joint = prob_core.JointPmf.from_array(j)
    rest = joint.axes[1:]
    cond = prob_core.condition(joint, joint.axes[0], rest)
    given = prob_core.marginalize(joint, rest)
    back = prob_core.compose(cond, given, joint.axes)
    return {
        "axes": list(joint.axes),
        "marginals": {a: prob_core.marginalize(joint, [a]).weights for a in joint.axes},
        "conditional": cond.weights,
        "compose_residual": float(np.abs(back.weights - joint.weights).max()),
    }


def _value(v: Any) -> Any:
    return {"value": v} if isinstance(v, (float, int, np.floating)) else v


def cmd_entropy(args) -> Any:
    q = lambda: _order_arg(args.q, "--q")  # noqa: E731
    r = lambda: float(_order_arg(args.r, "--r"))  # noqa: E731
    if args.kind in SCALAR_OPS:
        x = lambda: _order_arg(args.x, "--x")  # noqa: E731
        y = lambda: _order_arg(args.y, "--y")  # noqa: E731
        return _value(SCALAR_OPS[args.kind](x, y, lambda: float(_order_arg(args.r, "--r"))))
    if args.kind == "escort":
        return {"escort": prob_core.escort(_load_array(args.pmf, "--pmf", "p", 1), q()).weights}
    if args.kind == "tables":
        return _tables(_load_array(args.joint, "--joint", "joint", (2, 3)))
    if args.kind in PMF_ENTROPIES:
        p = _load_array(args.pmf, "--pmf", "p", 1)
        return _value(PMF_ENTROPIES[args.kind](p, q, r))
    j = _load_array(args.joint, "--joint", "joint", 2)
    return _value(JOINT_ENTROPIES[args.kind](j, q, r))


def _cond_inputs(args, keys: tuple[str, ...]) -> list[np.ndarray]:
    doc = _read_json(args.joint, "--joint")
    if not isinstance(doc, dict):
        raise InputError("--joint", f"expected an object with fields {', '.join(keys)}")
    return [_array(_field(doc, k, "--joint"), f"--joint.{k}") for k in keys]


def cmd_divergence(args) -> Any:
    kind = args.kind
    if kind in ("renyi", "kl"):
        doc = _read_json(args.pmf, "--pmf")
        p = _array(_field(doc, "p", "--pmf", False), "--pmf.p", 1)
        q = _array(_field(doc, "q", "--pmf", False), "--pmf.q", 1)
        if kind == "kl":
            return {"value": divergences.kl_divergence(p, q)}
        return {"value": divergences.renyi_divergence(p, q, _order_arg(args.alpha, "--alpha"))}
    if kind == "crd-identities":
        j = _load_array(args.joint, "--joint", "joint", 2)
        return divergences.crd_entropy_identities(j, _order_arg(args.alpha, "--alpha"), args.tol or 1e-10)
    alpha = _order_arg(args.alpha, "--alpha")
    if kind == "n2":
        pc, qc, pg, pyg = _cond_inputs(args, ("p_cond", "q_cond", "p_g", "p_y_given_g"))
        return {"value": divergences.n2_crd(pc, qc, pg, pyg, alpha)}
    pc, qc, w = _cond_inputs(args, ("p_cond", "q_cond", "weights"))
    fn = {
        "sibson": divergences.sibson_crd,
        "csiszar": divergences.csiszar_crd,
        "blp": divergences.blp_crd,
        "n1": divergences.n1_crd,
        "dpi-n1": divergences.dpi_n1_gap,
        "n1-le-blp": divergences.check_n1_le_blp,
    }[kind]
    return _value(fn(pc, qc, w, alpha))


def cmd_bet(args) -> Any:
    kind = args.kind
    if kind == "fairness":
        return betting.fairness(_load_odds(args.odds), args.tol or betting.FAIR_TOL)
    if kind == "utility":
        R = _order_arg(args.risk_aversion, "--risk-aversion")
        w = _positive(args.wealth, "--wealth")
        return {"utility": betting.isoelastic_utility(w, R), "rra": betting.rra(lambda x: betting.isoelastic_utility(x, R), w)}
    R = _order_arg(args.risk_aversion, "--risk-aversion")
    tol = args.tol
    if kind == "ratio-none":
        j = _load_array(args.joint, "--joint", "joint", 2)
        return betting.ratio_bookmaker_vs_none(_load_odds(args.odds), j, R, tol or 1e-9)
    if kind == "ratio-gambler":
        j = _load_array(args.joint, "--joint", "joint", 2)
        return betting.ratio_bookmaker_vs_gambler(_load_odds(args.odds), j, R, tol or 1e-9)
    game = _game(args)
    if kind == "ice":
        return {"ice": betting.ice(game, _bet(args), R), "log_ice": betting.log_ice(game, _bet(args), R)}
    if kind == "optimal":
        if game.config in ("none", "bookmaker"):
            out = {"bet": betting.optimal_bet_bookmaker(game, R).bet}
        else:
            lifted = game if game.config == "double" else betting.BettingGame.double(game.odds.values[:, None], game.joint[:, :, None])
            out = betting.optimal_bet_double(lifted, R).to_dict()
        out["max_log_ice"] = betting.max_log_ice(game, R)
        oracle = _oracle(args)
        if oracle is not None:
            out["oracle"] = oracle_max_log_ice(game, R, oracle)
        return out
    if kind == "decompose":
        if game.config in ("none", "bookmaker"):
            return betting.decompose_bookmaker(game, _bet(args), R, tol or betting.IDENTITY_TOL)
        return betting.decompose_double(game, _bet(args), R, tol or betting.IDENTITY_TOL)
    if kind == "advantage":
        doc = _read_json(args.bet, "--bet")
        b1 = _array(_field(doc, "b1", "--bet", False), "--bet.b1")
        b2 = _array(_field(doc, "b2", "--bet", False), "--bet.b2")
        return wealth_ratio.advantage_strategies(game, b1, b2, R)
    raise InputError("--kind", f"unknown bet kind {kind!r}")


def cmd_pt(args) -> Any:
    if args.kind == "weight":
        if args.p is None:
            raise InputError("--p", "required for this command")
        S = float(_order_arg(args.sensitivity, "--sensitivity"))
        return {"value": prospect.weight_power(args.p, S)}
    agent = prospect.PtAgent(
        _order_arg(args.risk_aversion, "--risk-aversion"), float(_order_arg(args.sensitivity, "--sensitivity"))
    )
    tol = args.tol
    if args.kind == "advantage":
        j = _load_array(args.joint, "--joint", "joint", 2)
        return prospect.pt_advantage(j, _positive(args.c, "--c"), agent, tol or 1e-9)
    if args.config not in ("none", "gambler"):
        raise InputError("--config", "prospect-theory games are 'none' or 'gambler'")
    game = _game(args)
    if args.kind == "value":
        return {"value": prospect.pt_value(game, _bet(args), agent)}
    if args.kind == "ce":
        b = _bet(args)
        return {"ce": prospect.pt_ce(game, b, agent), "log_ce": prospect.log_pt_ce(game, b, agent)}
    if args.kind == "optimal":
        out = {"bet": prospect.optimal_pt_bet(game, agent).bet}
        out["log_ce"] = prospect.log_pt_ce(game, out["bet"], agent)
        oracle = _oracle(args)
        if oracle is not None:
            out["oracle"] = oracle_max_log_pt_ce(game, agent, oracle)
        return out
    if args.kind == "decompose":
        fn = prospect.decompose_pt_nosi if game.config == "none" else prospect.decompose_pt_gambler
        return fn(game, _bet(args), agent, tol or prospect.IDENTITY_TOL)
    if args.kind == "escort":
        return {"escort": prospect.escort_joint(game.joint, agent.S)}
    raise InputError("--kind", f"unknown pt kind {args.kind!r}")


def cmd_wealth_ratio(args) -> Any:
    q = _order_arg(args.q, "--q")
    C = _positive(args.c, "--c")
    oracle = _oracle(args)
    tol = args.tol or 1e-8
    if args.kind == "renyi-probability":
        return wealth_ratio.renyi_prob_via_betting(_load_array(args.pmf, "--pmf", "p", 1), q, C, tol, oracle)
    j = _load_array(args.joint, "--joint", "joint", 2)
    if args.kind == "arimoto-probability":
        return wealth_ratio.arimoto_prob_via_betting(j, q, C, tol, oracle)
    if args.kind == "id-mi":
        return wealth_ratio.id_mi_operational(j, q, float(_order_arg(args.r, "--r")), C, tol, oracle)
    if args.kind == "side-information":
        R = betting.divergence_order(q)
        odds = np.full(j.shape[0], betting.sgn(q) * C)
        return {"ratio": wealth_ratio.advantage_side_information(odds, j, R, oracle)}
    raise InputError("--kind", f"unknown wealth-ratio kind {args.kind!r}")


def _quantum_obj(path, flag: str, loader):
    doc = _read_json(path, flag)
    if not isinstance(doc, dict):
        raise InputError(flag, "expected a JSON object")
    try:
        return loader(doc)
    except KeyError as exc:
        raise InputError(f"{flag}.{exc.args[0]}", "missing field") from None
    except ValueError as exc:
        raise InputError(flag, str(exc)) from None


def _channel(args, dim: int) -> quantum.KrausChannel:
    if args.channel:
        return _quantum_obj(args.channel, "--channel", quantum.KrausChannel.from_dict)
    if args.damping is not None:
        return quantum.KrausChannel.amplitude_damping(args.damping)
    if args.depolarizing is not None:
        return quantum.KrausChannel.depolarizing(args.depolarizing, dim)
    return quantum.KrausChannel.identity(dim)


def cmd_quantum(args) -> Any:
    if args.kind == "damping-sweep":
        q, r = _order_arg(args.q, "--q", "1"), float(_order_arg(args.r, "--r", "1"))
        return quantum.amplitude_damping_sweep(q, r, directions=args.directions, seed=args.seed)
    if args.kind == "channel-check":
        n = _quantum_obj(args.channel, "--channel", quantum.KrausChannel.from_dict)
        return {"constant": quantum.is_constant(n, args.tol or quantum.QTOL)}
    if args.kind == "povm-check":
        m = _quantum_obj(args.povm, "--povm", quantum.Povm.from_dict)
        return {"uninformative": quantum.is_uninformative(m, args.tol or quantum.QTOL)}
    e = _quantum_obj(args.ensemble, "--ensemble", quantum.QuantumEnsemble.from_dict)
    if args.kind == "born":
        m = _quantum_obj(args.povm, "--povm", quantum.Povm.from_dict)
        n = _channel(args, e.dim)
        return {"p_g_given_x": quantum.induced_conditional(e, m, n), "joint": quantum.induced_joint(e, m, n)}
    q, r = _order_arg(args.q, "--q"), float(_order_arg(args.r, "--r"))
    C = _positive(args.c, "--c")
    tol = args.tol or 1e-8
    if args.kind == "qsb":
        m = _quantum_obj(args.povm, "--povm", quantum.Povm.from_dict)
        return quantum.qsb_identity(e, m, q, r, C, tol)
    if args.kind == "nqsb":
        m = _quantum_obj(args.povm, "--povm", quantum.Povm.from_dict) if args.povm else None
        return quantum.nqsb_identity(
            e, _channel(args, e.dim), q, r, C, m, args.directions, args.random_povms, args.seed, tol
        )
    raise InputError("--kind", f"unknown quantum kind {args.kind!r}")


def cmd_verify(args) -> tuple[Any, bool]:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.append(
            suites.run_suite(
                name,
                args.trials,
                seed=args.seed,
                tol=args.tol,
                oracle_grid=args.oracle_grid,
                oracle_restarts=args.oracle_restarts,
            )
        )
    ok = all(r.passed for r in reports)
    if len(reports) == 1:
        return reports[0], ok
    return {"passed": ok, "suites": reports}, ok


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

KINDS = {
    "entropy": sorted(PMF_ENTROPIES) + sorted(JOINT_ENTROPIES) + sorted(SCALAR_OPS) + ["escort", "tables"],
    "divergence": ["renyi", "kl", "sibson", "csiszar", "blp", "n1", "n2", "dpi-n1", "n1-le-blp", "crd-identities"],
    "bet": ["ice", "optimal", "decompose", "ratio-none", "ratio-gambler", "fairness", "utility", "advantage"],
    "pt": ["value", "ce", "optimal", "decompose", "advantage", "escort", "weight"],
    "wealth-ratio": ["renyi-probability", "arimoto-probability", "id-mi", "side-information"],
    "quantum": ["born", "qsb", "nqsb", "damping-sweep", "channel-check", "povm-check"],
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--oracle-grid", type=int, default=None)
    common.add_argument("--oracle-restarts", type=int, default=None)

    orders = argparse.ArgumentParser(add_help=False)
    orders.add_argument("--q", default=None, help="order q (decimal, inf or -inf)")
    orders.add_argument("--r", default=None, help="deformation r")
    orders.add_argument("--alpha", default=None, help="divergence order")
    orders.add_argument("--risk-aversion", default=None, help="relative risk aversion R")
    orders.add_argument("--sensitivity", default=None, help="probability sensitivity S")
    orders.add_argument("--c", default="1", help="constant odds magnitude C")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--pmf", metavar="FILE")
    files.add_argument("--joint", metavar="FILE")
    files.add_argument("--odds", metavar="FILE")
    files.add_argument("--bet", metavar="FILE")
    files.add_argument("--config", choices=betting.CONFIGS, default="none")

    parser = argparse.ArgumentParser(prog="betinfo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, kinds in KINDS.items():
        p = sub.add_parser(name, parents=[common, orders, files])
        p.add_argument("--kind", choices=kinds, required=True)
        if name == "entropy":
            p.add_argument("--x", default=None, help="scalar argument for deformed arithmetic")
            p.add_argument("--y", default=None, help="second scalar argument")
        if name == "bet":
            p.add_argument("--wealth", default="1")
        if name == "pt":
            p.add_argument("--p", default=None, help="probability for --kind weight")
        if name == "quantum":
            p.add_argument("--ensemble", metavar="FILE")
            p.add_argument("--povm", metavar="FILE")
            p.add_argument("--channel", metavar="FILE")
            p.add_argument("--damping", type=float, default=None, help="amplitude-damping gamma")
            p.add_argument("--depolarizing", type=float, default=None, help="depolarizing lambda")
            p.add_argument("--directions", type=int, default=512)
            p.add_argument("--random-povms", type=int, default=64)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", choices=sorted(suites.SUITES) + ["all"], required=True)
    v.add_argument("--trials", type=int, default=100)
    return parser


COMMANDS = {
    "entropy": cmd_entropy,
    "divergence": cmd_divergence,
    "bet": cmd_bet,
    "pt": cmd_pt,
    "wealth-ratio": cmd_wealth_ratio,
    "quantum": cmd_quantum,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "verify":
            if args.trials < 1:
                raise InputError("--trials", "must be positive")
            result, ok = cmd_verify(args)
            stdout.write(render(result, args.format))
            return 0 if ok else 2
        result = COMMANDS[args.command](args)
    except InputError as exc:
        stderr.write(f"betinfo: error: {exc}\n")
        return 1
    except (ValueError, ZeroDivisionError, DegenerateOrderError) as exc:
        stderr.write(f"betinfo: error: --kind {args.kind}: {exc}\n")
        return 1
    stdout.write(render(result, args.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
