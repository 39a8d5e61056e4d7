"""Command-line surface: JSON reports on stdout, logs on stderr.

Exit codes: 0 success; 1 malformed input (file, schema, flag values);
2 refusal of a well-formed request (|lambda| on the unit circle, a cap
would be exceeded, or a numerical certification failed).

Every global flag is mirrored by an environment variable with the
HYPERISING_ prefix (flags win), e.g. HYPERISING_M_CAP for --m-cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .errors import HyperIsingError, SchemaError
from .hypergraph import Hyperedge, Hypergraph, IsingActivity, parse_hypergraph
from .instances import random_regular_graph
from .leeyang import (
    check_activity_ranges,
    ising_ly_range,
    off_circle_witness,
    verify_zeros_on_circle,
)
from .oracle import exact_coefficients, exact_multivariate, exact_partition
from .subgraphs import count_bound, enumerate_connected
from .taylor import PartitionEstimator

log = logging.getLogger("hyperising")

ENV_PREFIX = "HYPERISING_"


class CliInputError(Exception):
    """Bad command line or input document; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


def _env(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError as exc:
        raise CliInputError(f"bad {ENV_PREFIX}{name}={raw!r}: {exc}") from exc


def parse_lambda(text: str) -> complex:
    """Accept "re" or "re,im" with scientific notation."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise CliInputError(f"cannot parse activity {text!r}; expected re or re,im")


def _cnum(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _load_input(path: str) -> tuple[Hypergraph, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise CliInputError(f"cannot read input {path!r}: {exc}") from exc
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"input {path!r} is not valid JSON: {exc}") from exc
    return parse_hypergraph(doc), digest


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int,
                   default=_env("THREADS", int, 1),
                   help="worker threads for batch commands (results are"
                        " independent of this)")
    p.add_argument("--m-cap", type=int, default=_env("M_CAP", int, 24),
                   help="cap on the coefficient-table order")
    p.add_argument("--memory-cap", type=int,
                   default=_env("MEMORY_CAP", int, 1 << 26),
                   help="cap on stored connected label sets")
    p.add_argument("--oracle-cap", type=int,
                   default=_env("ORACLE_CAP", int, 24),
                   help="vertex cap for exact enumeration")
    p.add_argument("--tol-circle", type=float,
                   default=_env("TOL_CIRCLE", float, 1e-6),
                   help="allowed deviation of |root| from 1")
    p.add_argument("--tol-residual", type=float,
                   default=_env("TOL_RESIDUAL", float, 1e-8),
                   help="allowed |P(root)| relative to max |coefficient|")
    p.add_argument("--seed", type=int, default=_env("SEED", int, 0),
                   help="seed for generated instances")
    p.add_argument("--verbose", "-v", action="store_true",
                   help="stage logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperising", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="truncated-series estimate of Z(lambda)")
    p.add_argument("input")
    p.add_argument("--lambda", dest="lam", required=True, metavar="RE[,IM]")
    p.add_argument("--epsilon", type=float, required=True)
    _common_flags(p)

    p = sub.add_parser("exact", help="brute-force Z(lambda) and coefficients")
    p.add_argument("input")
    p.add_argument("--lambda", dest="lam", required=True, metavar="RE[,IM]")
    p.add_argument("--multivariate", metavar="RE[,IM];RE[,IM];...",
                   help="per-vertex activities (Ising edges only)")
    _common_flags(p)

    p = sub.add_parser("zeros", help="root locations of the exact polynomial")
    p.add_argument("input")
    _common_flags(p)

    p = sub.add_parser("check-range", help="per-edge activity range verdicts")
    p.add_argument("input")
    _common_flags(p)

    p = sub.add_parser("enumerate", help="connected label sets up to size t")
    p.add_argument("input")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--emit-sets", action="store_true")
    _common_flags(p)

    p = sub.add_parser("coeffs", help="power sums and polynomial coefficients")
    p.add_argument("input")
    p.add_argument("--m", type=int, required=True)
    _common_flags(p)

    p = sub.add_parser("tight-example",
                       help="off-circle zero witness for out-of-range beta")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    _common_flags(p)

    p = sub.add_parser("sweep", help="circle deviation over an activity grid")
    p.add_argument("input", nargs="?")
    p.add_argument("--random-regular", metavar="N,DEGREE",
                   help="generate the host from --seed instead of a file")
    p.add_argument("--beta-from", type=float, required=True)
    p.add_argument("--beta-to", type=float, required=True)
    p.add_argument("--steps", type=int, default=21)
    _common_flags(p)

    return parser


def _report(command: str, digest: str | None, parameters: dict, result,
            guarantee, timings: dict) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "parameters": parameters,
        "result": result,
        "guarantee": guarantee,
        "timings": {k: round(v, 6) for k, v in timings.items()},
    }


def _cmd_approx(args) -> dict:
    t0 = time.perf_counter()
    g, digest = _load_input(args.input)
    lam = parse_lambda(args.lam)
    t1 = time.perf_counter()
    est = PartitionEstimator(g, order_cap=args.m_cap, set_cap=args.memory_cap)
    approx = est.approximate(lam, args.epsilon)
    t2 = time.perf_counter()
    result = {
        "m": approx.order,
        "lambda": _cnum(approx.lam),
        "lambda_effective": _cnum(approx.lam_effective),
        "inverted": approx.inverted,
        "log_z_estimate": _cnum(approx.log_estimate),
        "z_estimate": _cnum(approx.value),
        "bound": approx.bound,
        "epsilon": approx.epsilon,
        "guaranteed": approx.guaranteed,
    }
    params = {
        "lambda": _cnum(lam),
        "epsilon": args.epsilon,
        "m_cap": args.m_cap,
        "memory_cap": args.memory_cap,
    }
    return _report("approx", digest, params, result, approx.guaranteed,
                   {"parse": t1 - t0, "approximate": t2 - t1})


def _cmd_exact(args) -> dict:
    t0 = time.perf_counter()
    g, digest = _load_input(args.input)
    lam = parse_lambda(args.lam)
    t1 = time.perf_counter()
    value = exact_partition(g, lam, cap=args.oracle_cap)
    coeffs = exact_coefficients(g, cap=args.oracle_cap)
    result = {
        "z": _cnum(value),
        "coefficients": [_cnum(c) for c in coeffs],
    }
    if args.multivariate is not None:
        lams = [parse_lambda(s) for s in args.multivariate.split(";") if s]
        result["z_multivariate"] = _cnum(
            exact_multivariate(g, lams, cap=args.oracle_cap))
    t2 = time.perf_counter()
    params = {"lambda": _cnum(lam), "oracle_cap": args.oracle_cap}
    return _report("exact", digest, params, result, None,
                   {"parse": t1 - t0, "enumerate": t2 - t1})


def _cmd_zeros(args) -> dict:
    t0 = time.perf_counter()
    g, digest = _load_input(args.input)
    t1 = time.perf_counter()
    cert = verify_zeros_on_circle(g, circle_tol=args.tol_circle,
                                  residual_tol=args.tol_residual,
                                  cap=args.oracle_cap)
    t2 = time.perf_counter()
    result = {
        "coefficients": [_cnum(c) for c in cert.report.coefficients],
        "roots": [_cnum(r) for r in cert.report.roots],
        "residuals": [float(r) for r in cert.report.residuals],
        "max_circle_deviation": cert.report.max_circle_deviation,
        "in_range": cert.ranges.all_pass,
        "on_circle": cert.on_circle,
        "certified": cert.certified,
    }
    params = {"tol_circle": args.tol_circle, "tol_residual": args.tol_residual,
              "oracle_cap": args.oracle_cap}
    return _report("zeros", digest, params, result, cert.certified,
                   {"parse": t1 - t0, "roots": t2 - t1})


def _verdicts_payload(g: Hypergraph) -> dict:
    check = check_activity_ranges(g)
    return {
        "edges": [
            {
                "index": v.index,
                "size": v.size,
                "kind": v.kind,
                "passes": v.passes,
                "detail": v.detail,
            }
            for v in check.edges
        ],
        "all_pass": check.all_pass,
    }


def _cmd_check_range(args) -> dict:
    t0 = time.perf_counter()
    g, digest = _load_input(args.input)
    t1 = time.perf_counter()
    result = _verdicts_payload(g)
    t2 = time.perf_counter()
    return _report("check-range", digest, {}, result, result["all_pass"],
                   {"parse": t1 - t0, "check": t2 - t1})


def _cmd_enumerate(args) -> dict:
    t0 = time.perf_counter()
    g, digest = _load_input(args.input)
    if args.t < 1:
        raise CliInputError("--t must be >= 1")
    t1 = time.perf_counter()
    fam = enumerate_connected(g, args.t, set_cap=args.memory_cap)
    t2 = time.perf_counter()
    counts = fam.counts()
    bounds = {}
    degree, esize = g.max_degree, g.max_edge_size
    for t in range(2, args.t + 1):
        if degree >= 1 and esize >= 1:
            b = count_bound(g.n, degree, esize, t)
            bounds[str(t)] = {"bound": b,
                              "count": counts.get(t, 0),
                              "respected": counts.get(t, 0) <= b}
    result = {
        "counts": {str(k): v for k, v in counts.items()},
        "count_bounds": bounds,
    }
    if args.emit_sets:
        result["sets"] = {
            str(s): [list(x) for x in fam.sets_of_size(s)]
            for s in range(1, fam.t_max + 1)
        }
    params = {"t": args.t, "memory_cap": args.memory_cap}
    return _report("enumerate", digest, params, result, None,
                   {"parse": t1 - t0, "enumerate": t2 - t1})


def _cmd_coeffs(args) -> dict:
    t0 = time.perf_counter()
    g, digest = _load_input(args.input)
    if args.m < 1:
        raise CliInputError("--m must be >= 1")
    t1 = time.perf_counter()
    est = PartitionEstimator(g, order_cap=args.m_cap, set_cap=args.memory_cap)
    p = est.power_sums_up_to(args.m)
    e = est.elementary() if g.n else []
    e = (e + [0.0 + 0.0j] * (args.m - len(e)))[: args.m]
    t2 = time.perf_counter()
    result = {
        "power_sums": [_cnum(x) for x in p],
        "elementary": [_cnum(x) for x in e],
        "coefficients": [_cnum(complex(1.0))] + [
            _cnum(x if (i + 1) % 2 == 0 else -x) for i, x in enumerate(e)
        ],
    }
    params = {"m": args.m, "m_cap": args.m_cap, "memory_cap": args.memory_cap}
    return _report("coeffs", digest, params, result, None,
                   {"parse": t1 - t0, "tables": t2 - t1})


def _cmd_tight_example(args) -> dict:
    t0 = time.perf_counter()
    try:
        witness = off_circle_witness(args.k, args.beta,
                                     circle_tol=args.tol_circle,
                                     residual_tol=args.tol_residual)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    t1 = time.perf_counter()
    rng = ising_ly_range(args.k)
    result = {
        "k": witness.k,
        "beta": witness.beta,
        "range": [rng.lo, rng.hi],
        "edge_size_used": witness.edge_size_used,
        "polynomial": [_cnum(c) for c in witness.polynomial],
        "witness_root": _cnum(witness.witness_root),
        "residual": witness.residual,
        "circle_deviation": witness.circle_deviation,
        "sign_change": list(witness.sign_change) if witness.sign_change else None,
        "bracket_root": witness.bracket_root,
    }
    params = {"k": args.k, "beta": args.beta, "tol_circle": args.tol_circle,
              "tol_residual": args.tol_residual}
    return _report("tight-example", None, params, result, None,
                   {"witness": t1 - t0})


def _with_uniform_beta(g: Hypergraph, beta: float) -> Hypergraph:
    return Hypergraph(g.n, tuple(
        Hyperedge(e.vertices, IsingActivity(beta)) for e in g.edges
    ))


def _cmd_sweep(args) -> dict:
    t0 = time.perf_counter()
    if (args.input is None) == (args.random_regular is None):
        raise CliInputError("provide an input file or --random-regular, not both")
    if args.steps < 1:
        raise CliInputError("--steps must be >= 1")
    if args.input is not None:
        g, digest = _load_input(args.input)
    else:
        try:
            n, degree = (int(x) for x in args.random_regular.split(","))
        except ValueError as exc:
            raise CliInputError("--random-regular expects N,DEGREE") from exc
        import random

        g = random_regular_graph(random.Random(args.seed), n, degree, 0.5)
        digest = None
    t1 = time.perf_counter()
    betas = list(np.linspace(args.beta_from, args.beta_to, args.steps))

    def one(beta: float) -> dict:
        host = _with_uniform_beta(g, beta)
        cert = verify_zeros_on_circle(host, circle_tol=args.tol_circle,
                                      residual_tol=args.tol_residual,
                                      cap=args.oracle_cap)
        return {
            "beta": float(beta),
            "in_range": cert.ranges.all_pass,
            "max_circle_deviation": cert.report.max_circle_deviation,
            "on_circle": cert.on_circle,
        }

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(one, betas))
    else:
        rows = [one(b) for b in betas]
    t2 = time.perf_counter()
    params = {"beta_from": args.beta_from, "beta_to": args.beta_to,
              "steps": args.steps, "threads": args.threads,
              "seed": args.seed, "tol_circle": args.tol_circle}
    return _report("sweep", digest, params, {"rows": rows}, None,
                   {"setup": t1 - t0, "sweep": t2 - t1})


_HANDLERS = {
    "approx": _cmd_approx,
    "exact": _cmd_exact,
    "zeros": _cmd_zeros,
    "check-range": _cmd_check_range,
    "enumerate": _cmd_enumerate,
    "coeffs": _cmd_coeffs,
    "tight-example": _cmd_tight_example,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    start = time.perf_counter()
    try:
        report = _HANDLERS[args.command](args)
    except (CliInputError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HyperIsingError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    report["timings"]["total"] = round(time.perf_counter() - start, 6)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    log.info("%s finished in %.3fs", args.command, time.perf_counter() - start)
    return 0


if __name__ == "__main__":
    sys.exit(main())
