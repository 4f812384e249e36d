"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 infeasible instance,
3 verification mismatch. Artifacts go to stdout (or ``--output``);
diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .core import INF, CvpInstance, ObjectiveWeights, Status, evaluate
from .errors import SegCvpError
from .instgen import Sat36Formula, gen_msc_matrix, gen_random_instance, gen_sat36, reduce_3sat6
from .io import SolutionFile, decode_rational, instance_from_json, instance_to_json
from .oracle import OracleBudget
from .rounding import RngSpec, deviation_estimate
from .segmentation import ExplicitSegments, MatrixInstance, MinSeparation, evaluate_plan, solve_msc
from .solve import METHODS, FractionalVertex, solve

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _cap_arg(text):
    if text == "inf":
        return INF
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("cap must be a nonnegative integer or 'inf'")
    return value


def _rational_arg(text):
    return decode_rational(text, "weight")


def _emit(text: str, path):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# ---------- solve ----------

def _solve_vector(inst: CvpInstance, args):
    report = solve(inst, args.method, trials=args.trials, seed=args.seed,
                   sum_preserving=args.sum_preserving, workers=args.workers, budget=OracleBudget())
    if report.status is Status.INFEASIBLE:
        return None
    sol = report.solution
    return SolutionFile(sol.u, None, sol.tc, sol.linf, sol.bot, sol.objective,
                        report.status, report.method, report.seed)


def _solve_matrix(inst: MatrixInstance, args):
    if isinstance(inst.constraint, MinSeparation):
        method = "flow" if args.method == "auto" else args.method
        options = {}
        if method == "round":
            options = dict(trials=args.trials, seed=args.seed, sum_preserving=args.sum_preserving)
        plan = solve_msc(inst, method, workers=args.workers, **options)
        if plan is None:
            return None
        seed = args.seed if method == "round" else None
        label = ("round-sum" if args.sum_preserving else "round") if method == "round" else method
        return SolutionFile(None, plan.terms, plan.tc, plan.linf, plan.bot, plan.objective,
                            plan.status, label, seed)
    report = solve(inst.to_cvp(), args.method, trials=args.trials, seed=args.seed,
                   sum_preserving=args.sum_preserving, workers=args.workers, budget=OracleBudget())
    if report.status is Status.INFEASIBLE:
        return None
    segs = inst.constraint.segments
    terms = tuple((segs[j], c) for j, c in enumerate(report.solution.u) if c)
    plan = evaluate_plan(inst, terms)
    return SolutionFile(None, terms, plan.tc, plan.linf, plan.bot, plan.objective,
                        report.status, report.method, report.seed)


def cmd_solve(args) -> int:
    inst = instance_from_json(_read(args.input))
    if isinstance(inst, CvpInstance):
        out = _solve_vector(inst, args)
    else:
        out = _solve_matrix(inst, args)
    if out is None:
        print("infeasible: no vector within C", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(out.to_json(), args.output)
    return EXIT_OK


# ---------- verify ----------

def verification_problems(inst, sol: SolutionFile) -> list:
    """Mismatches between a solution file and a fresh evaluation against the instance."""
    problems = []
    if sol.status is Status.INFEASIBLE:
        return ["status mismatch: file says Infeasible but carries a solution"]
    if isinstance(inst, CvpInstance):
        if sol.u is None:
            return ["shape mismatch: vector instance needs 'u'"]
        if len(sol.u) != inst.k:
            return [f"shape mismatch: u has {len(sol.u)} entries, instance has {inst.k} generators"]
        fresh = evaluate(inst, sol.u)
    else:
        if sol.terms is None:
            return ["shape mismatch: matrix instance needs 'terms'"]
        lam = inst.constraint.lam if isinstance(inst.constraint, MinSeparation) else None
        allowed = set(inst.constraint.segments) if isinstance(inst.constraint, ExplicitSegments) else None
        for t_idx, (seg, _) in enumerate(sol.terms):
            if len(seg.rows) != inst.m:
                problems.append(f"shape mismatch: term {t_idx} has {len(seg.rows)} rows, expected {inst.m}")
                continue
            for i in seg.bad_rows(inst.n, lam):
                label = "MSC violation" if lam is not None else "interval out of range"
                problems.append(f"{label} row {i + 1} (term {t_idx}, interval {seg.rows[i]})")
            if allowed is not None and seg not in allowed:
                problems.append(f"segment mismatch: term {t_idx} is not an allowed segment")
        if problems:
            return problems
        fresh = evaluate_plan(inst, sol.terms)
    for name in ("tc", "linf", "bot", "objective"):
        stated, actual = getattr(sol, name), getattr(fresh, name)
        if stated != actual:
            problems.append(f"{name} mismatch: file says {stated}, recomputed {actual}")
    if sol.status is Status.OPTIMAL_EXACT and not fresh.within_cap:
        problems.append(f"cap violation: linf {fresh.linf} exceeds C={inst.cap}")
    return problems


def cmd_verify(args) -> int:
    inst = instance_from_json(_read(args.input))
    sol = SolutionFile.from_json(_read(args.solution))
    problems = verification_problems(inst, sol)
    for p in problems:
        print(p, file=sys.stderr)
    return EXIT_MISMATCH if problems else EXIT_OK


# ---------- gen ----------

def _weights(args):
    return ObjectiveWeights(args.mu, args.nu)


def cmd_gen(args) -> int:
    rng = RngSpec(args.seed).generator()
    if args.kind == "random":
        inst = gen_random_instance(args.d, args.k, args.max_entry, args.cap, args.consecutive, rng, _weights(args))
    elif args.kind == "msc":
        if not 1 <= args.lam <= args.n:
            raise UsageError(f"--lam must lie in [1, {args.n}]")
        inst = gen_msc_matrix(args.m, args.n, args.lam, args.max_entry, rng, args.decomposable,
                              args.cap, _weights(args))
    else:
        if args.formula:
            formula = Sat36Formula.parse(_read(args.formula))
        elif args.s:
            formula = gen_sat36(args.s, rng)
        else:
            raise UsageError("gen sat needs --formula PATH or --s N")
        inst = reduce_3sat6(formula).matrix_instance
    _emit(instance_to_json(inst), args.output)
    return EXIT_OK


# ---------- lemma-sim ----------

def _probabilities(args):
    if args.p_file:
        text = _read(args.p_file).strip()
        try:
            values = json.loads(text) if text.startswith("[") else [float(x) for x in text.split()]
        except ValueError:
            raise UsageError(f"{args.p_file}: expected a JSON list or whitespace-separated numbers") from None
        if args.q is not None and len(values) != args.q:
            raise UsageError(f"--q {args.q} disagrees with {len(values)} probabilities in {args.p_file}")
        return np.asarray(values, dtype=float)
    if args.q is None:
        raise UsageError("lemma-sim needs --q or --p-file")
    if args.p is not None:
        return np.full(args.q, args.p)
    # probabilities come from a stream separate from the simulation draws
    return RngSpec(args.seed, 1).generator().random(args.q)


def cmd_lemma_sim(args) -> int:
    p = _probabilities(args)
    if np.any((p < 0) | (p > 1)):
        raise UsageError("probabilities must lie in [0, 1]")
    est = deviation_estimate(p, args.trials, RngSpec(args.seed, 0))
    verdict = "PASS" if est.passed else "FAIL"
    print(f"q={p.size} trials={est.trials} mean={est.mean:.6f} se={est.stderr:.6f} "
          f"bound={est.bound:.6f} {verdict}")
    return EXIT_OK


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segcvp", description="Closest vector solver for interval and segment decompositions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--trials", type=_positive, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sum-preserving", action="store_true")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="re-evaluate a solution file against its instance")
    p.add_argument("--input", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance file")
    gsub = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output")
    weighted = _Parser(add_help=False)
    weighted.add_argument("--cap", type=_cap_arg, default=INF)
    weighted.add_argument("--mu", type=_rational_arg, default=1)
    weighted.add_argument("--nu", type=_rational_arg, default=0)
    weighted.add_argument("--max-entry", type=int, default=3)
    g = gsub.add_parser("random", parents=[common, weighted])
    g.add_argument("--d", type=_positive, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--consecutive", action="store_true")
    g = gsub.add_parser("msc", parents=[common, weighted])
    g.add_argument("--m", type=_positive, required=True)
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--lam", type=_positive, required=True)
    g.add_argument("--decomposable", action="store_true")
    g = gsub.add_parser("sat", parents=[common])
    g.add_argument("--formula")
    g.add_argument("--s", type=_positive)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("lemma-sim", help="Monte Carlo check of the centred Bernoulli sum bound")
    p.add_argument("--q", type=_positive)
    p.add_argument("--trials", type=_positive, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float)
    p.add_argument("--p-file")
    p.set_defaults(func=cmd_lemma_sim)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (SegCvpError, FractionalVertex, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
