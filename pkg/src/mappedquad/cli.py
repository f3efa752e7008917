"""Command-line front end: weight dumps, convergence sweeps, moments and the
monomial-recursion instability trace.

Exit codes
----------
0 success, 2 invalid arguments, 3 solver failure (rank deficiency or a
singular system), 4 moment non-convergence, 5 overflow.

The environment variable ``MAPPEDQUAD_THREADS`` caps the number of sweep
points evaluated concurrently; rows are always written in ascending ``m``.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import (
    DomainError,
    MomentConvergenceError,
    NodeGenerationError,
    RankDeficiencyError,
)
from .kt_map import MapParam
from .lsq import build_design, condition_estimate, ls_mu_weights
from .moments import MAX_SAMPLES, moments
from .monomial import sine_power_integral_recursive
from .nodes import NODE_FAMILIES, make_nodes
from .oracle import TEST_FUNCTIONS, get_test_function, relative_error
from .quadrature import integrate, kti_rule, ktl_rule, weight_diagnostics
from .serialize import build_id, rule_table, write_table
from .strategies import Fixed, Full, StrategySpec, format_strategy, parse_strategy, resolve

__all__ = ["main", "build_parser", "ConvergenceRecord"]

EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_MOMENTS = 4
EXIT_OVERFLOW = 5

_EPILOG = ("exit codes: 0 ok, 2 invalid arguments, 3 solver failure "
           "(rank deficiency / singular system), 4 moment non-convergence, 5 overflow")


@dataclass(frozen=True)
class ConvergenceRecord:
    """One point of a convergence sweep."""

    m: int
    n: int
    alpha: float
    function_id: str
    node_family: str
    seed: int | None
    rel_error: float
    min_weight: float
    sum_abs_weights: float
    cond_estimate: float
    clamped: bool


class UsageError(Exception):
    pass


def _log_base(text):
    if text in ("e", "ln", "natural"):
        return math.e
    if text == "10":
        return 10.0
    raise argparse.ArgumentTypeError("log base must be 'e' or '10'")


def _m_range(text):
    parts = text.split(":")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad m-range {text!r}; use start:stop:step") from None
    if len(vals) == 2:
        vals.append(1)
    if len(vals) != 3 or vals[2] <= 0 or vals[0] < 1 or vals[1] < vals[0]:
        raise argparse.ArgumentTypeError(f"bad m-range {text!r}; use start:stop:step with 1 <= start <= stop")
    start, stop, step = vals
    # stop is inclusive
    return list(range(start, stop + 1, step))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mappedquad", description=__doc__.split("\n\n")[0], epilog=_EPILOG)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, strategy=True):
        if strategy:
            g = sp.add_mutually_exclusive_group()
            g.add_argument("--alpha", type=float, help="fixed map parameter in [0, 1]")
            g.add_argument("--strategy", help="e.g. dynlog:eps=1e-12,ratio=0.5 or fixed:alpha=0.9,sqrt=4")
            sp.add_argument("--log-base", type=_log_base, default=math.e,
                            help="logarithm base for dynlog: e (default) or 10")
            sp.add_argument("--nodes", choices=NODE_FAMILIES, default="closed")
            sp.add_argument("--seed", type=int, default=0, help="seed for perturbed nodes")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="output path (default: stdout)")

    w = sub.add_parser("weights", help="dump one quadrature rule", epilog=_EPILOG)
    w.add_argument("--m", type=int, required=True, help="number of nodes minus one")
    w.add_argument("--n", type=int, help="degree (KTL); default from --strategy or m")
    w.add_argument("--mode", choices=("kti", "ktl"), default=None)
    common(w)

    c = sub.add_parser("converge", help="relative-error sweep over m", epilog=_EPILOG)
    c.add_argument("--function", choices=sorted(TEST_FUNCTIONS), required=True)
    c.add_argument("--m-range", type=_m_range, default=_m_range("10:500:10"),
                   help="start:stop:step, stop inclusive (default 10:500:10)")
    common(c)

    mo = sub.add_parser("moments", help="moments tau_0..tau_n", epilog=_EPILOG)
    mo.add_argument("--alpha", type=float, required=True)
    mo.add_argument("--n", type=int, required=True)
    mo.add_argument("--tol", type=float, default=1e-13)
    mo.add_argument("--max-samples", type=int, default=MAX_SAMPLES, help="refinement budget (default 2**20)")
    common(mo, strategy=False)

    ins = sub.add_parser("instability", help="monomial recursion error trace", epilog=_EPILOG)
    ins.add_argument("--alpha", type=float, required=True)
    ins.add_argument("--kmax", type=int, required=True, help="largest k; powers 2k are traced")
    ins.add_argument("--perturb", type=float, default=1e-12, help="perturbation of the seed S_0 = 2")
    common(ins, strategy=False)
    return p


def _spec_from(args, default_degree=Full()) -> StrategySpec:
    if args.strategy is not None:
        return parse_strategy(args.strategy, log_base=args.log_base)
    alpha = 1.0 if args.alpha is None else args.alpha
    return StrategySpec(Fixed(alpha), default_degree)


def _base_meta(args):
    return {"command": args.command, "build": build_id()}


def cmd_weights(args) -> str:
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    spec = _spec_from(args)
    res = resolve(spec, args.m)
    n = res.n if args.n is None else args.n
    mode = args.mode or ("kti" if n == args.m else "ktl")
    if mode == "kti" and n != args.m:
        raise UsageError("--mode kti requires n = m")
    nodes = make_nodes(args.nodes, args.m, seed=args.seed)
    rule = kti_rule(res.alpha, nodes) if mode == "kti" else ktl_rule(res.alpha, nodes, n)
    meta = _base_meta(args)
    meta.update({"strategy": format_strategy(spec), "clamped": res.clamped,
                 "nodes": args.nodes, "seed": args.seed if args.nodes == "perturbed" else None})
    return rule_table(rule, args.format, meta, weight_diagnostics(rule))


def _sweep_point(spec, fid, family, seed, m) -> ConvergenceRecord:
    tf = get_test_function(fid)
    res = resolve(spec, m)
    nodes = make_nodes(family, m, seed=seed)
    rule = kti_rule(res.alpha, nodes) if res.n == m else ktl_rule(res.alpha, nodes, res.n)
    diag = weight_diagnostics(rule)
    A = build_design(res.alpha, nodes, res.n)
    return ConvergenceRecord(
        m=m, n=res.n, alpha=res.alpha.alpha, function_id=fid, node_family=family,
        seed=seed if family == "perturbed" else None,
        rel_error=relative_error(integrate(rule, tf), tf.reference_integral),
        min_weight=diag.min_weight, sum_abs_weights=diag.sum_abs_weights,
        cond_estimate=condition_estimate(A, ls_mu_weights(res.alpha, nodes)),
        clamped=res.clamped,
    )


def _threads():
    raw = os.environ.get("MAPPEDQUAD_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"MAPPEDQUAD_THREADS must be an integer, got {raw!r}") from None


def cmd_converge(args) -> str:
    spec = _spec_from(args)
    get_test_function(args.function)  # fail early, and cache the reference
    ms = args.m_range

    def point(m):
        return _sweep_point(spec, args.function, args.nodes, args.seed, m)

    nthreads = min(_threads(), len(ms))
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            records = list(ex.map(point, ms))  # map keeps input order
    else:
        records = [point(m) for m in ms]
    meta = _base_meta(args)
    meta.update({"function": args.function, "strategy": format_strategy(spec),
                 "log_base": "10" if args.log_base == 10.0 else "e",
                 "nodes": args.nodes, "seed": args.seed if args.nodes == "perturbed" else None,
                 "m_values": f"{ms[0]}..{ms[-1]} ({len(ms)} points)"})
    cols = [f.name for f in fields(ConvergenceRecord)]
    return write_table(cols, [astuple(r) for r in records], meta, args.format)


def cmd_moments(args) -> str:
    p = MapParam(args.alpha)
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    mv = moments(p, args.n, tol=args.tol, max_samples=args.max_samples)
    meta = _base_meta(args)
    meta.update({"alpha": p.alpha, "n": args.n, "method": mv.method, "samples": mv.samples, "tol": args.tol})
    rows = [(i, float(t)) for i, t in enumerate(mv.entries)]
    return write_table(("i", "tau_i"), rows, meta, args.format)


def cmd_instability(args) -> str:
    p = MapParam(args.alpha)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    if p.alpha == 0.0:
        raise UsageError("--alpha must be positive (C = alpha*pi/2 must be nonzero)")
    tr = sine_power_integral_recursive(p.half_angle, 2 * args.kmax, s0=2.0 + args.perturb)
    E = tr.even("errors")
    scaled = tr.even("scaled_errors")
    rows = []
    for k in range(args.kmax + 1):
        ratio = E[k] / E[k - 1] if k >= 1 and E[k - 1] != 0 else float("nan")
        rows.append((k, 2 * k, tr.S[2 * k], tr.exact[2 * k], E[k], scaled[k], ratio,
                     (2 * k - 1) / (2 * k) if k else float("nan")))
    meta = _base_meta(args)
    meta.update({"alpha": p.alpha, "C": tr.C, "kmax": args.kmax, "perturb": args.perturb,
                 "seed_S0": tr.s0})
    cols = ("k", "i", "S_i", "exact_i", "error_i", "scaled_error_i", "error_ratio", "predicted_ratio")
    return write_table(cols, rows, meta, args.format)


COMMANDS = {
    "weights": cmd_weights,
    "converge": cmd_converge,
    "moments": cmd_moments,
    "instability": cmd_instability,
}


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except (UsageError, DomainError, NodeGenerationError) as e:
        print(f"mappedquad {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RankDeficiencyError as e:
        print(f"mappedquad {args.command}: solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except MomentConvergenceError as e:
        print(f"mappedquad {args.command}: moments did not converge: {e}", file=sys.stderr)
        return EXIT_MOMENTS
    except OverflowError as e:
        print(f"mappedquad {args.command}: overflow: {e}", file=sys.stderr)
        return EXIT_OVERFLOW
    try:
        _emit(text, args.out)
    except OSError as e:
        print(f"mappedquad {args.command}: cannot write output: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
