"""Command-line surface.

Subcommands: gen, mean, verify, sweep, minimize, lemma-ah. Exit codes:
0 success, 1 usage or input-format error, 2 numerical error, 3 the
theorem-violation sentinel (a verified pair whose means coincide while the
commutator gap is firmly positive; never expected to occur).
"""

from __future__ import annotations

import argparse
import sys

from .linalg import DEFAULT_CONFIG, NumericalError, ToleranceConfig
from .matio import MatrixFormatError, load_matrix, save_json, save_matrix, write_csv
from .means import HpdPair, geometric_mean, heron_mean, wasserstein_mean
from .randgen import GenSpec, InvalidSpec, near_commuting_pair, random_commuting_pair, random_hpd
from .sweep import SweepSpec, run_sweep
from .verify import (
    Verdict,
    ando_hayashi_witness,
    classify_gaps,
    minimize_gap,
    proof_chain_report,
)

__all__ = ["cli_main", "main"]

_MEAN_KINDS = {
    "heron": heron_mean,
    "wasserstein": wasserstein_mean,
    "geometric": geometric_mean,
}

_CLI_FAMILIES = {
    "generic": "generic",
    "commuting": "commuting",
    "near-commuting": "near_commuting",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _config(args) -> ToleranceConfig:
    if getattr(args, "tol", None) is None:
        return DEFAULT_CONFIG
    return ToleranceConfig(identity_tol=args.tol)


def _matrix_payload(m) -> dict:
    return {
        "n": m.shape[0],
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel(order="C")],
    }


def _report_payload(report, verdict: Verdict, cfg: ToleranceConfig, seed) -> dict:
    return {
        "mean_gap": report.mean_gap,
        "commutator_gap": report.commutator_gap,
        "residuals": dict(report.residuals),
        "trace_gap": report.trace_gap,
        "polar_singular": report.polar_singular,
        "verdict": verdict.value,
        "tolerances": {
            "identity_tol": cfg.identity_tol,
            "positivity_floor": cfg.positivity_floor,
            "eig_off_diag_tol": cfg.eig_off_diag_tol,
            "max_jacobi_sweeps": cfg.max_jacobi_sweeps,
        },
        "seed": seed,
    }


def _cmd_gen(args) -> int:
    family = _CLI_FAMILIES[args.family]
    spec = GenSpec(
        dim=args.n,
        seed=args.seed,
        cond_target=args.cond,
        family=family,
        epsilon=args.epsilon if family == "near_commuting" else 0.0,
    )
    if family == "generic":
        if args.out is None:
            raise _UsageError("gen --family generic needs --out")
        save_matrix(args.out, random_hpd(spec))
        return 0
    if args.out_a is None or args.out_b is None:
        raise _UsageError(f"gen --family {args.family} needs --out-a and --out-b")
    if family == "commuting":
        pair = random_commuting_pair(spec)
    else:
        pair = near_commuting_pair(spec, _config(args))
    save_matrix(args.out_a, pair.a)
    save_matrix(args.out_b, pair.b)
    return 0


def _cmd_mean(args) -> int:
    cfg = _config(args)
    pair = HpdPair.validated(load_matrix(args.a), load_matrix(args.b), cfg)
    result = _MEAN_KINDS[args.kind](pair, cfg)
    save_matrix(args.out, result)
    return 0


def _cmd_verify(args) -> int:
    cfg = _config(args)
    pair = HpdPair.validated(load_matrix(args.a), load_matrix(args.b), cfg)
    report = proof_chain_report(pair, cfg)
    verdict = classify_gaps(report.mean_gap, report.commutator_gap, cfg)
    text = save_json(args.out, _report_payload(report, verdict, cfg, args.seed))
    if args.out is None:
        sys.stdout.write(text)
    return 3 if verdict is Verdict.COUNTEREXAMPLE_TO_THEOREM else 0


def _cmd_sweep(args) -> int:
    cfg = _config(args)
    try:
        epsilons = tuple(float(tok) for tok in args.epsilons.split(","))
    except ValueError as exc:
        raise _UsageError(f"--epsilons must be a comma-separated list of numbers: {exc}") from exc
    base = GenSpec(dim=args.n, seed=args.seed, cond_target=args.cond, family="near_commuting")
    spec = SweepSpec(base=base, epsilons=epsilons, trials_per_epsilon=args.trials)
    rows = run_sweep(spec, cfg)
    write_csv(
        args.out,
        ["epsilon", "seed", "mean_gap", "commutator_gap", "trace_gap", "verdict"],
        [(r.epsilon, r.seed, r.mean_gap, r.commutator_gap, r.trace_gap, r.verdict) for r in rows],
    )
    counterexamples = sum(r.verdict == Verdict.COUNTEREXAMPLE_TO_THEOREM.value for r in rows)
    return 3 if counterexamples else 0


def _cmd_minimize(args) -> int:
    cfg = _config(args)
    a = load_matrix(args.a)
    b0 = load_matrix(args.b0)
    trace = minimize_gap(a, b0, cfg, budget=args.budget)
    write_csv(
        args.out,
        ["step", "mean_gap", "commutator_gap", "objective"],
        trace.iterates,
    )
    if args.out_b is not None:
        save_matrix(args.out_b, trace.final_b)
    if trace.no_descent:
        print("warning: line search stalled before the budget was used", file=sys.stderr)
    return 0


def _cmd_lemma_ah(args) -> int:
    cfg = _config(args)
    report = ando_hayashi_witness(load_matrix(args.x), load_matrix(args.y), cfg)
    payload = {
        "triangle_residual": report.triangle_residual,
        "factor_residual_x": report.factor_residuals[0],
        "factor_residual_y": report.factor_residuals[1],
        "witness": _matrix_payload(report.witness),
    }
    text = save_json(args.out, payload)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="opmeans", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol(p):
        p.add_argument("--tol", type=float, default=None,
                       help="override the identity tolerance (default 1e-10)")

    p = sub.add_parser("gen", help="generate matrices from a seeded spec")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cond", type=float, default=10.0,
                   help="target ratio of largest to smallest eigenvalue")
    p.add_argument("--family", choices=sorted(_CLI_FAMILIES), default="generic")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="perturbation size for --family near-commuting")
    p.add_argument("--out", default=None, help="output file (generic family)")
    p.add_argument("--out-a", dest="out_a", default=None, help="output for A (pair families)")
    p.add_argument("--out-b", dest="out_b", default=None, help="output for B (pair families)")
    add_tol(p)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("mean", help="compute a mean of two matrices")
    p.add_argument("--kind", choices=sorted(_MEAN_KINDS), required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", required=True)
    add_tol(p)
    p.set_defaults(handler=_cmd_mean)

    p = sub.add_parser("verify", help="full gap report and verdict for a pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", default=None, help="report file (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help="seed recorded in the report")
    add_tol(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("sweep", help="near-commuting sweep over epsilon, CSV output")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cond", type=float, default=10.0)
    p.add_argument("--epsilons", required=True, help="comma-separated, strictly increasing")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--out", required=True)
    add_tol(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("minimize", help="descend the squared mean gap over B")
    p.add_argument("--a", required=True)
    p.add_argument("--b0", required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--out", required=True, help="trajectory CSV")
    p.add_argument("--out-b", dest="out_b", default=None, help="final B matrix file")
    add_tol(p)
    p.set_defaults(handler=_cmd_minimize)

    p = sub.add_parser("lemma-ah", help="common polar factor from a triangle equality")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--out", default=None, help="report file (default: stdout)")
    add_tol(p)
    p.set_defaults(handler=_cmd_lemma_ah)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (MatrixFormatError, InvalidSpec) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())
