"""Command-line interface: suite runner, focused checks, and point evaluation."""

from __future__ import annotations

import argparse
import sys
import time

from .corep import t_word, tau_closed, tau_product
from .rep import RepContext, apply_word
from .rmatrix import r_entries
from .series import SeriesSpec, eval_omega, eval_omega_termwise
from .suites import (
    SUITE_NAMES,
    RunConfig,
    bailey_table,
    biorth_table,
    canonical_json,
    corep_table,
    qdybe_table,
    relations_table,
    run_report,
)
from .theta import ThetaContext, TrackedArg, garg, pochhammer, qarg, theta

__all__ = ["main"]


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' style complex literals (plain reals included)."""
    t = text.strip().replace(" ", "").replace("I", "i")
    t = t.replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}")


def parse_tracked(text: str, ctx: ThetaContext, z: complex | None) -> TrackedArg:
    """Parse a series parameter, keeping exact q-power structure when given.

    Accepted forms: 'a+bi' (generic), 'q^:<int>' (exact q to twice the
    integer), and 'z*q^:<int>' (the --z point times an exact q power).
    """
    t = text.strip()
    if t.startswith("q^:"):
        return qarg(int(t[3:]))
    if t.startswith("z*q^:"):
        if z is None:
            raise argparse.ArgumentTypeError("form 'z*q^:<int>' requires --z")
        return garg(z * ctx.qpow(2 * int(t[5:])))
    return garg(parse_complex(t))


def fmt(value: complex) -> str:
    # Adding 0.0 folds IEEE negative zeros into plain zeros before printing.
    re, im = complex(value).real + 0.0, complex(value).imag + 0.0
    if im == 0.0:
        return f"{re:.12g}"
    if re == 0.0:
        return f"{im:.12g}i"
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g}{sign}{abs(im):.12g}i"


def _add_base_args(p: argparse.ArgumentParser, p_default=None, q_default=None) -> None:
    p.add_argument("--p", type=float, default=p_default, help="elliptic nome in (0, 1)")
    p.add_argument("--q", type=float, default=q_default, help="deformation base in (0, 1)")


def _add_check_args(p: argparse.ArgumentParser, samples_default: int) -> None:
    p.add_argument("--samples", type=int, default=samples_default)
    p.add_argument("--seed", type=int, default=20240)
    _add_base_args(p)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", dest="json_path", default=None)
    p.add_argument("--max-redraws", type=int, default=50)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ellu2",
        description="Numerical checks for elliptic hypergeometric identities "
        "and the dynamical quantum group behind them.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run verification suites and emit a JSON report")
    runp.add_argument(
        "--suite",
        action="append",
        default=None,
        choices=list(SUITE_NAMES) + ["all"],
        help="suite to run (repeatable; default all)",
    )
    runp.add_argument("--seed", type=int, default=20240)
    runp.add_argument("--samples", type=int, default=None, help="override per-suite draw count")
    _add_base_args(runp)
    runp.add_argument("--tol", type=float, default=None, help="override headline tolerance")
    runp.add_argument("--json", dest="json_path", default=None, help="write report to this path")
    runp.add_argument("--max-redraws", type=int, default=50)

    checkp = sub.add_parser("check", help="focused checks with per-entry residual tables")
    checksub = checkp.add_subparsers(dest="check_kind", required=True)

    ccorep = checksub.add_parser("corep", help="matrix-element oracle tower at one level")
    ccorep.add_argument("--N", type=int, required=True)
    _add_check_args(ccorep, 5)

    cbiorth = checksub.add_parser("biorth", help="(dual) biorthogonality residual table")
    cbiorth.add_argument("--N", type=int, required=True)
    cbiorth.add_argument("--M", type=int, default=0)
    cbiorth.add_argument("--dual", action="store_true")
    _add_check_args(cbiorth, 5)

    cbailey = checksub.add_parser("bailey", help="series transformation residuals per sample")
    cbailey.add_argument(
        "--n", type=int, default=None, help="pin the truncation order (default: random 0..6)"
    )
    _add_check_args(cbailey, 50)

    cqdybe = checksub.add_parser("qdybe", help="shifted hexagon identity residuals per sample")
    _add_check_args(cqdybe, 100)

    crel = checksub.add_parser("relations", help="defining-relation residual table")
    crel.add_argument(
        "--omega", type=parse_complex, default=None, help="pin the representation weight"
    )
    crel.add_argument(
        "--lambda", dest="lam", type=parse_complex, default=None, help="pin the evaluation point"
    )
    _add_check_args(crel, 50)

    evalp = sub.add_parser("eval", help="evaluate one quantity at explicit parameters")
    evalsub = evalp.add_subparsers(dest="eval_kind", required=True)

    etheta = evalsub.add_parser("theta")
    etheta.add_argument("--z", type=parse_complex, required=True)
    _add_base_args(etheta, p_default=0.1, q_default=0.7)

    epoch = evalsub.add_parser("pochhammer")
    epoch.add_argument("--a", required=True, help="argument: a+bi, q^:<int>, or z*q^:<int>")
    epoch.add_argument("--n", type=int, required=True)
    epoch.add_argument("--z", type=parse_complex, default=None)
    _add_base_args(epoch, p_default=0.1, q_default=0.7)

    eomega = evalsub.add_parser("omega")
    eomega.add_argument("--a1", required=True)
    eomega.add_argument("--upper", required=True, help="comma-separated parameter list")
    eomega.add_argument(
        "--slot", type=int, required=True, help="0-based index of the q^:-n entry in --upper"
    )
    eomega.add_argument("--z", type=parse_complex, default=None)
    _add_base_args(eomega, p_default=0.1, q_default=0.7)

    etau = evalsub.add_parser("tau")
    etau.add_argument("--N", type=int, required=True)
    etau.add_argument("--k", type=int, required=True)
    etau.add_argument("--j", type=int, required=True)
    etau.add_argument("--m", type=int, required=True)
    etau.add_argument("--omega", type=parse_complex, required=True)
    etau.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    etau.add_argument("--z", type=parse_complex, required=True)
    _add_base_args(etau, p_default=0.1, q_default=0.7)

    erent = evalsub.add_parser("r-entries")
    erent.add_argument("--z", type=parse_complex, required=True)
    erent.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    _add_base_args(erent, p_default=0.1, q_default=0.7)

    return ap


def _emit(report: dict, json_path: str | None) -> None:
    text = canonical_json(report)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        seed=args.seed,
        samples=args.samples,
        p=args.p,
        q=args.q,
        tol=args.tol,
        max_redraws=args.max_redraws,
    )
    t0 = time.monotonic()
    report = run_report(cfg, args.suite)
    elapsed = 1000.0 * (time.monotonic() - t0)
    _emit(report, args.json_path)
    print(f"wall time: {elapsed:.0f} ms", file=sys.stderr)
    return 0 if report["pass"] else 1


def _cmd_check(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        seed=args.seed, p=args.p, q=args.q, tol=args.tol, max_redraws=args.max_redraws
    )
    t0 = time.monotonic()
    if args.check_kind == "corep":
        report = corep_table(cfg, args.N, args.samples)
    elif args.check_kind == "biorth":
        report = biorth_table(cfg, args.N, args.M, args.samples, args.dual)
    elif args.check_kind == "bailey":
        report = bailey_table(cfg, args.n, args.samples)
    elif args.check_kind == "qdybe":
        report = qdybe_table(cfg, args.samples)
    else:
        report = relations_table(cfg, args.omega, args.lam, args.samples)
    elapsed = 1000.0 * (time.monotonic() - t0)
    _emit(report, args.json_path)
    print(f"wall time: {elapsed:.0f} ms", file=sys.stderr)
    return 0 if report["pass"] else 1


def _context(args: argparse.Namespace) -> ThetaContext:
    return ThetaContext(args.p, args.q)


def _cmd_eval(args: argparse.Namespace) -> int:
    ctx = _context(args)
    if args.eval_kind == "theta":
        print(fmt(theta(args.z, ctx)))
        return 0
    if args.eval_kind == "pochhammer":
        arg = parse_tracked(args.a, ctx, args.z)
        print(fmt(pochhammer(arg, args.n, ctx)))
        return 0
    if args.eval_kind == "omega":
        a1 = parse_tracked(args.a1, ctx, args.z)
        upper = tuple(parse_tracked(tk, ctx, args.z) for tk in args.upper.split(","))
        spec = SeriesSpec(a1, upper, args.slot, ctx)
        result = eval_omega(spec)
        termwise = eval_omega_termwise(spec)
        print(f"omega = {fmt(result.value)}")
        print(f"terms = {result.terms}")
        print(f"|ratio - termwise| = {abs(result.value - termwise):.3e}")
        for w in result.warnings:
            print(f"warning: {w}")
        return 0
    if args.eval_kind == "tau":
        rc = RepContext(args.omega, args.lam, ctx)
        closed = tau_closed(args.N, args.k, args.j, args.m, args.lam, args.z, args.omega, ctx)
        prod = tau_product(args.N, args.k, args.j, args.m, args.lam, args.z, args.omega, ctx)
        got = apply_word(t_word(args.N, args.k, args.j, args.z, ctx), args.m, rc)
        word_val = got.get(args.m + args.k - args.j, 0.0 + 0.0j)
        print(f"tau = {fmt(closed)}")
        print(f"|closed - word| = {abs(closed - word_val):.3e}")
        print(f"|closed - product| = {abs(closed - prod):.3e}")
        return 0
    a, b, c, d = r_entries(args.lam, args.z, ctx)
    print(f"a = {fmt(a)}")
    print(f"b = {fmt(b)}")
    print(f"c = {fmt(c)}")
    print(f"d = {fmt(d)}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "check":
        return _cmd_check(args)
    return _cmd_eval(args)


if __name__ == "__main__":
    sys.exit(main())
