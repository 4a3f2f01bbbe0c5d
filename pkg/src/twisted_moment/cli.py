"""Command-line front end: ``twisted-moment <command> [options]``.

Commands
  verify-theorem    lhs, main term and dual moment for one (p, q, T)
  verify-corollary  D(p, q) - D(q, p) for one (p, q, T)
  intermediates     the F(0) decomposition ledger for one (p, q, T)
  sweep             verify-theorem over comma-separated lists of p, q and T
  selftest          the fast invariant suite

The report goes to ``--output``, else to ``$TWISTED_MOMENT_OUTPUT_DIR/<command>.<format>``
when that variable is set, else to stdout.  Exit status: 0 all invariants
passed, 2 invalid input, 3 tolerance exceeded, 4 io failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import itertools
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import calibration
from .characters import check_odd_prime
from .moments import ReciprocityInstance, verify_corollary, verify_theorem
from .numerics import ERROR_BUDGET, DEFAULT_PLAN, QuadraturePlan
from .report import Invariant, Report, render, table

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_TOLERANCE = 3
EXIT_IO = 4

OUTPUT_DIR_ENV = "TWISTED_MOMENT_OUTPUT_DIR"
RATIO_T = 160.0
RATIO_BOUND = 0.1
REALNESS_BOUND = 1e-9
DECOMPOSITION_BOUND = 1e-6


class InvalidInput(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _plan_override(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"plan override must be key=value, got {text!r}")
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twisted-moment",
                                     description="Verify the twisted second moment reciprocity numerically.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", type=Path, help="report path (default: stdout or $%s)" % OUTPUT_DIR_ENV)
        p.add_argument("--plan", type=_plan_override, action="append", default=[],
                       metavar="KEY=VALUE", help="override a quadrature plan field")
        p.add_argument("--quiet", action="store_true", help="suppress the pass/fail table")

    for name, help_text in (("verify-theorem", "theorem residual for one instance"),
                            ("verify-corollary", "corollary difference for one instance"),
                            ("intermediates", "proof intermediates for one instance")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--T", type=float, required=True)
        common(p)

    p = sub.add_parser("sweep", help="verify-theorem over a grid")
    p.add_argument("--p", type=_int_list, required=True)
    p.add_argument("--q", type=_int_list, required=True)
    p.add_argument("--T", type=_float_list, required=True)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common(p)

    p = sub.add_parser("selftest", help="fast invariant suite")
    p.add_argument("--inject-fault", choices=("gauss_sum_sign",), default=None,
                   help="deliberately break a component to exercise the checks")
    common(p)
    return parser


def make_plan(overrides) -> QuadraturePlan:
    fields = {f.name: f.type for f in dataclasses.fields(QuadraturePlan)}
    kwargs = {}
    for key, value in overrides:
        if key not in fields:
            raise InvalidInput(f"unknown plan field {key!r}")
        caster = int if getattr(DEFAULT_PLAN, key).__class__ is int else float
        try:
            kwargs[key] = caster(value)
        except ValueError as exc:
            raise InvalidInput(f"bad value for {key}: {value!r}") from exc
    try:
        return dataclasses.replace(DEFAULT_PLAN, **kwargs)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def _instance(p, q, T) -> ReciprocityInstance:
    for x in (p, q):
        try:
            check_odd_prime(x)
        except ValueError as exc:
            raise InvalidInput(f"invalid prime: {exc}") from exc
    if not (math.isfinite(T) and T > 1):
        raise InvalidInput(f"invalid range: T must be finite and exceed 1, got {T}")
    if p == q:
        raise InvalidInput("invalid range: p and q must be distinct")
    return ReciprocityInstance(p, q, T)


# ---------------------------------------------------------------------------
# commands


def _theorem_invariants(rep) -> list[Invariant]:
    where = (rep.p, rep.q, rep.T)
    out = [
        Invariant("normalized_residual_calibrated", abs(rep.normalized_residual),
                  calibration.bound("C0_theorem_normalized_residual"), where),
        Invariant("dual_imag_residual", rep.dual_imag_residual, REALNESS_BOUND, where),
        Invariant("quadrature_error_estimate", rep.quadrature_error_estimate, ERROR_BUDGET, where),
    ]
    if rep.T == RATIO_T:
        out.append(Invariant("residual_over_main", abs(rep.residual) / abs(rep.main), RATIO_BOUND, where))
    return out


def _warning_invariant(caught, where=None) -> Invariant:
    return Invariant("numerical_warnings", float(len(caught)), 0.0, where)


def _run_theorem(inst, plan):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = verify_theorem(inst, plan)
    return rep, _theorem_invariants(rep) + [_warning_invariant(caught, (inst.p, inst.q, inst.T))]


def _sweep_worker(args):
    p, q, T, plan = args
    rep, invs = _run_theorem(ReciprocityInstance(p, q, T), plan)
    return rep, invs


def cmd_verify_theorem(args, plan) -> Report:
    inst = _instance(args.p, args.q, args.T)
    rep, invs = _run_theorem(inst, plan)
    return Report(args.command, _config(args), plan.as_dict(), [rep.as_dict()], invs)


def cmd_verify_corollary(args, plan) -> Report:
    inst = _instance(args.p, args.q, args.T)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = verify_corollary(inst.p, inst.q, inst.T, plan)
        back = verify_corollary(inst.q, inst.p, inst.T, plan)
    where = (inst.p, inst.q, inst.T)
    invs = [
        Invariant("corollary_difference_calibrated", abs(rep.difference),
                  calibration.bound("C1_corollary_normalized_difference") * rep.bound_scale, where),
        Invariant("antisymmetry", abs(rep.difference + back.difference), 0.0, where),
        Invariant("quadrature_error_estimate", rep.quadrature_error_estimate, ERROR_BUDGET, where),
        _warning_invariant(caught, where),
    ]
    return Report(args.command, _config(args), plan.as_dict(), [rep.as_dict()], invs)


def cmd_intermediates(args, plan) -> Report:
    from .oracles import decomposition_check
    inst = _instance(args.p, args.q, args.T)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        led = decomposition_check(inst, plan)
    where = (inst.p, inst.q, inst.T)
    root = math.sqrt(inst.p / inst.q)
    invs = [
        Invariant("decomposition_residual", led.decomposition_residual, DECOMPOSITION_BOUND, where),
        Invariant("approx_gap_calibrated", led.approx_gap,
                  calibration.bound("C2_taylor_gap_over_sqrt_p_over_q") * root, where),
        Invariant("f1_calibrated", abs(led.f1_0), calibration.bound("F1_over_sqrt_p_over_q") * root, where),
        Invariant("f3_calibrated", abs(led.f3_0), calibration.bound("F3_over_sqrt_p_over_q") * root, where),
        Invariant("f0_imaginary_part", abs(led.f0_direct.imag), REALNESS_BOUND, where),
        _warning_invariant(caught, where),
    ]
    return Report(args.command, _config(args), plan.as_dict(), [led.as_dict()], invs)


def cmd_sweep(args, plan) -> Report:
    for x in set(args.p) | set(args.q):
        try:
            check_odd_prime(x)
        except ValueError as exc:
            raise InvalidInput(f"invalid prime: {exc}") from exc
    if not (args.p and args.q and args.T):
        raise InvalidInput("invalid range: sweep lists must be nonempty")
    for T in args.T:
        if not (math.isfinite(T) and T > 1):
            raise InvalidInput(f"invalid range: T must be finite and exceed 1, got {T}")
    if args.workers < 1:
        raise InvalidInput("invalid range: --workers must be positive")
    jobs = sorted({(p, q, T) for p, q, T in itertools.product(args.p, args.q, args.T) if p != q})
    tasks = [(p, q, T, plan) for p, q, T in jobs]
    if args.workers == 1 or len(tasks) <= 1:
        outcomes = [_sweep_worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            outcomes = list(pool.map(_sweep_worker, tasks))  # map keeps (p, q, T) order
    results = [rep.as_dict() for rep, _ in outcomes]
    invs = [inv for _, group in outcomes for inv in group]
    return Report(args.command, _config(args), plan.as_dict(), results, invs)


def cmd_selftest(args, plan) -> Report:
    from .selftest import selftest
    checks = selftest(args.inject_fault)
    invs = [Invariant(c.name, c.value, c.bound) for c in checks]
    return Report(args.command, _config(args), plan.as_dict(), [c.as_dict() for c in checks], invs)


COMMANDS = {
    "verify-theorem": cmd_verify_theorem,
    "verify-corollary": cmd_verify_corollary,
    "intermediates": cmd_intermediates,
    "sweep": cmd_sweep,
    "selftest": cmd_selftest,
}


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("output", "quiet")}
    cfg["plan"] = [f"{k}={v}" for k, v in args.plan]
    cfg.pop("workers", None)  # does not affect results
    return cfg


def _destination(args) -> Path | None:
    if args.output is not None:
        return args.output
    outdir = os.environ.get(OUTPUT_DIR_ENV)
    if outdir:
        return Path(outdir) / f"{args.command}.{args.format}"
    return None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on malformed flags
    try:
        plan = make_plan(args.plan)
        report = COMMANDS[args.command](args, plan)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    text = render(report, args.format)
    dest = _destination(args)
    try:
        if dest is None:
            sys.stdout.write(text)
        else:
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(text)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO

    if not args.quiet:
        print(table(report), file=sys.stderr if dest is None else sys.stdout)
    if not report.passed:
        names = sorted({inv.name for inv in report.failures()})
        print("failed: " + ", ".join(names), file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
