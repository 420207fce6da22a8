"""Command line: verify, sweep, trajectory, demo, falsify.

Exit codes: 0 success, 1 a verification or falsification failure, 2 usage or
domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import ga_core as ga
from . import records
from .checks import default_suites, run_suites
from .errors import DomainError, PreconditionError
from .game import (
    NEAR_FAMILY_TOL,
    STAGE_LABELS,
    StrategyParams,
    classical_strategy,
    falsify_random,
    meyer_strategy,
    play,
    solve_family,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _sign(text):
    value = int(text)
    if value not in (1, -1):
        raise argparse.ArgumentTypeError("must be +1 or -1")
    return value


def _angle(args, value):
    return math.radians(value) if args.degrees else value


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _coin(s3: float, tol: float = 1e-9) -> str:
    if s3 >= 1 - tol:
        return "heads (σ₃)"
    if s3 <= -1 + tol:
        return "tails (-σ₃)"
    return f"undetermined, P(heads) = {0.5 * (1 + s3):.6g}"


# -- subcommands ------------------------------------------------------------------------

def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    results = run_suites(default_suites(args.samples), args.tolerance)
    width = max(len(r.name) for r in results)
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        print(f"{flag}  {r.name:<{width}}  max deviation {r.deviation:.3e}  (tol {r.tolerance:.1e})")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed in {time.perf_counter() - t0:.2f}s")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sweep(args) -> int:
    lo = _angle(args, args.theta_min)
    hi = _angle(args, args.theta_max)
    thetas = records.theta_grid(args.theta_steps, lo, hi)
    for t in (lo, hi):
        StrategyParams(t)  # reject an out-of-band range before any output
    signs = records.ALL_SIGNS if args.signs == "all" else ((args.sign_a, args.c3),)
    recs = records.sweep_records(thetas, records.phi_grid(args.phi_steps),
                                 records.p_grid(args.p_steps), signs)
    _emit(records.serialize(recs, args.format), args.out)
    passed = sum(r.passed for r in recs)
    summary = f"{passed}/{len(recs)} records pass (s3 >= 1 - 1e-9 in both back ends)"
    print(summary, file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK if passed == len(recs) else EXIT_FAIL


def _strategy_from_args(args):
    if args.classical:
        return classical_strategy()
    return solve_family(StrategyParams(_angle(args, args.theta), _angle(args, args.phi),
                                       args.sign_a, args.c3))


def cmd_trajectory(args) -> int:
    recs = records.trajectory_records(_strategy_from_args(args), args.p, args.backend)
    _emit(records.serialize(recs, args.format), args.out)
    return EXIT_OK


def demo_outcomes(ps, classical: bool = False):
    """[(p, GA transcript, GA outcome, DM outcome)] for the Meyer or do-nothing strategy."""
    strategy = classical_strategy() if classical else meyer_strategy()
    rows = []
    for p in ps:
        transcript, outcome = play(strategy, p, "ga")
        _, dm_outcome = play(strategy, p, "dm")
        rows.append((p, transcript, outcome, dm_outcome))
    return strategy, rows


def cmd_demo(args) -> int:
    ps = args.p if args.p else [0.0, 0.5, 1.0]
    strategy, rows = demo_outcomes(ps, args.classical)
    if args.classical:
        print("Classical Q: no operation on either move (U1 = U3 = 1).")
    else:
        print("Meyer's quantum strategy: U1 = Hadamard rotor, U3 = U1†.")
    print(f"  U1 = {strategy.u1}")
    print(f"  U3 = {strategy.u3}")
    print("The coin starts heads up, ψ0 = σ₃. P flips (F = σ₁) with probability p.")
    always = True
    for p, transcript, outcome, dm_outcome in rows:
        print(f"\np = {p:g}")
        for k, label in enumerate(STAGE_LABELS):
            print(f"  {label:<9} ψ{k} = {ga.format_multivector(transcript.states[k])}")
        if outcome.q_always_wins:
            winner = "Q"
        elif outcome.q_win_probability <= 1e-9:
            winner = "P"
        else:
            winner = f"Q with probability {outcome.q_win_probability:.6g}, else P"
        print(f"  final state: {_coin(outcome.s3)}   s3 = {outcome.s3:.17g}"
              f"   (density-matrix check: s3 = {dm_outcome.s3:.17g})")
        print(f"  winner: {winner}")
        always &= outcome.q_always_wins
    verdict = "winning" if always else "non-winning"
    print(f"\nQ's strategy is {verdict} over the p values played.")
    return EXIT_OK


def cmd_falsify(args) -> int:
    t0 = time.perf_counter()
    report = falsify_random(args.trials, args.seed)
    print(f"falsify: {report.trials} random U1 draws, seed {report.seed}")
    print(f"  refuted (Q loses at some p in {{0, 1/2, 1}}): {len(report.refuted)}")
    print(f"  skipped (within {NEAR_FAMILY_TOL:g} of the family): {len(report.skipped)}")
    for r in report.skipped:
        print(f"    trial {r.index}: distance {r.distance:.3e}, axis {tuple(round(x, 6) for x in r.axis)},"
              f" angle {r.angle:.6f}")
    print(f"  violations: {len(report.violations)}")
    for r in report.violations:
        print(f"    trial {r.index}: axis {r.axis}, angle {r.angle!r}, phi {r.phi!r},"
              f" distance {r.distance:.3e}, s3 at p=0,1/2,1: {r.s3_by_p}")
    print(f"  elapsed {time.perf_counter() - t0:.2f}s")
    return EXIT_FAIL if report.violations else EXIT_OK


# -- parser -------------------------------------------------------------------------------

def _add_strategy_flags(sp):
    sp.add_argument("--theta", type=float, default=math.pi, help="U1 rotation angle (radians)")
    sp.add_argument("--phi", type=float, default=0.0, help="free phase angle of U3 (radians)")
    sp.add_argument("--sign-a", type=_sign, default=1)
    sp.add_argument("--c3", type=_sign, default=1)
    sp.add_argument("--degrees", action="store_true", help="read angles in degrees")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pennyflip", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run every invariant suite")
    sp.add_argument("--tolerance", type=float, default=None, help="override every suite tolerance")
    sp.add_argument("--samples", type=_positive_int, default=1000, help="random draws per suite")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="grid over the winning family")
    sp.add_argument("--theta-steps", type=_positive_int, default=41)
    sp.add_argument("--phi-steps", type=_positive_int, default=5)
    sp.add_argument("--p-steps", type=_positive_int, default=11)
    sp.add_argument("--theta-min", type=float, default=math.pi / 2)
    sp.add_argument("--theta-max", type=float, default=3 * math.pi / 2)
    sp.add_argument("--signs", choices=("all", "one"), default="all")
    sp.add_argument("--sign-a", type=_sign, default=1)
    sp.add_argument("--c3", type=_sign, default=1)
    sp.add_argument("--degrees", action="store_true")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("trajectory", help="Bloch vector after each move")
    _add_strategy_flags(sp)
    sp.add_argument("--p", type=float, default=0.0)
    sp.add_argument("--backend", choices=("ga", "dm"), default="ga")
    sp.add_argument("--classical", action="store_true", help="Q does nothing (U1 = U3 = 1)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_trajectory)

    sp = sub.add_parser("demo", help="narrate the Hadamard game")
    sp.add_argument("--p", type=float, nargs="+", default=None)
    sp.add_argument("--classical", action="store_true")
    sp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("falsify", help="random non-family U1 must lose somewhere")
    sp.add_argument("--trials", type=_positive_int, default=1000)
    sp.add_argument("--seed", type=int, default=42)
    sp.set_defaults(func=cmd_falsify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
