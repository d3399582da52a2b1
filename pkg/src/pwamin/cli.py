"""Command-line front end.

    pwamin solve INSTANCE [--rule unique|proximal] [--cycles K] [--tol T]
                 [--numeric exact|float] [--x0 "2,1,0"] [--trace out.csv] [--json] [--jobs N]
    pwamin consistency [INSTANCE | --signs "0,1,-1;1,-1,0"] [--at-point X] [--at-eps E]
    pwamin oracle INSTANCE --check bounded-below|global-min|rint|y-bounded [--at-point X]
    pwamin transform INSTANCE -o OUT
    pwamin generate -n N -m M --seed S --profile rint|sign|unrestricted [-o OUT]

Exit status of ``solve``: 0 fixed point, 2 cycle budget exhausted, 3 divergence
suspected, 1 error. Other commands exit 0 on success and 1 on error.
Indices in reports are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import core, oracle
from .coordinate import Outcome, PreconditionError, UpdateRule, run, rows_consistent, violation_measure
from .core import format_scalar
from .instances import PROFILES, InstanceFormatError, dump_instance, generate_random, load_instance
from .signs import enforce_consistency, is_consistent, sign_set
from .summax import SumMaxFunction, interlaced_minimize, lift

EXIT_CODES = {
    Outcome.FIXED_POINT: 0,
    Outcome.BUDGET_EXHAUSTED: 2,
    Outcome.DIVERGENCE_SUSPECTED: 3,
}


class CliError(Exception):
    pass


def _fmt(v):
    if v is None:
        return None
    if isinstance(v, (list, tuple)):
        return [_fmt(w) for w in v]
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return format_scalar(v)


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse vector {text!r}: {exc}") from None


def _parse_signs(text: str) -> frozenset:
    try:
        return sign_set(
            tuple(int(v) for v in chunk.split(",")) for chunk in text.split(";") if chunk.strip()
        )
    except ValueError as exc:
        raise CliError(f"cannot parse sign set {text!r}: {exc}") from None


def _signs_text(S) -> str:
    if not S:
        return "{}"
    return "{" + ", ".join("(" + ", ".join(str(v) for v in s) + ")" for s in sorted(S)) + "}"


def _emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, list):
            value = "(" + ", ".join("?" if v is None else str(v) for v in value) + ")"
        out.write(f"{key}: {value}\n")


def _load(path):
    try:
        return load_instance(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None
    except InstanceFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


# solve ----------------------------------------------------------------------

def _solve_one(path, rule, cycles, tol, numeric, x0_text, trace_path):
    inst = _load(path)
    func = inst.function.with_numeric(numeric)
    n = func.n
    x0 = _parse_vector(x0_text) if x0_text else inst.x0
    if x0 is not None and len(x0) != n:
        raise CliError(f"--x0 has {len(x0)} entries, instance has n={n}")
    tol_value = None if tol is None else core.to_scalar(Fraction(tol), numeric)

    report = {"instance": str(path), "kind": inst.kind, "rule": rule, "numeric": numeric}
    if isinstance(func, SumMaxFunction):
        if rule != UpdateRule.UNIQUE.value:
            raise CliError("sum-of-maxima instances are solved with the unique rule only")
        outcome = interlaced_minimize(func, x0, max_cycles=cycles, tol=tol_value)
        x = outcome.state.x[:n]
        value = func(x)
        lifted = lift(func)
        e = violation_measure(lifted.g, outcome.state.y)
    else:
        outcome = run(func, x0, rule, max_cycles=cycles, tol=tol_value)
        x = outcome.state.x
        value = core.evaluate(func, x)
        e = violation_measure(func, outcome.state.y) if rows_consistent(func) else None
    report.update(
        outcome=outcome.status.value,
        cycles=outcome.cycles,
        x=_fmt(x),
        f=_fmt(value),
        e_y=_fmt(e),
        max_abs_y=_fmt(outcome.max_abs_y),
    )
    if outcome.message:
        report["message"] = outcome.message
    if trace_path:
        with open(trace_path, "w", newline="") as fh:
            outcome.trace.write_csv(fh)
        report["trace"] = str(trace_path)
    return report, EXIT_CODES[outcome.status]


def _solve_job(job):
    try:
        return _solve_one(*job)
    except (CliError, PreconditionError, core.DimensionError) as exc:
        return {"instance": str(job[0]), "error": str(exc)}, 1


def cmd_solve(args) -> int:
    numeric = args.numeric or core.default_numeric()
    target = Path(args.instance)
    if target.is_dir():
        files = sorted(target.glob("*.json"))
        trace_dir = Path(args.trace) if args.trace else None
        if trace_dir:
            trace_dir.mkdir(parents=True, exist_ok=True)
        jobs = [
            (p, args.rule, args.cycles, args.tol, numeric, args.x0,
             str(trace_dir / (p.name.split(".")[0] + ".csv")) if trace_dir else None)
            for p in files
        ]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_solve_job, jobs))
        else:
            results = [_solve_job(job) for job in jobs]
        code = 0
        for report, status in results:
            _emit(report, args.json)
            if not args.json:
                sys.stdout.write("\n")
            code = max(code, status)
        return code
    try:
        report, status = _solve_one(target, args.rule, args.cycles, args.tol, numeric, args.x0, args.trace)
    except PreconditionError as exc:
        raise CliError(f"precondition violated: {exc}") from None
    _emit(report, args.json)
    return status


# consistency ----------------------------------------------------------------

def _pwa_of(inst):
    func = inst.function
    if isinstance(func, SumMaxFunction):
        lifted = lift(func)
        x0 = lifted.pack(inst.x0, [0] * lifted.n_groups) if inst.x0 is not None else None
        return lifted.g, x0
    return func, inst.x0


def cmd_consistency(args) -> int:
    report = {}
    if args.signs:
        if args.instance:
            raise CliError("give either an instance or --signs, not both")
        if args.at_point or args.at_eps is not None:
            raise CliError("--at-point/--at-eps need an instance")
        S = _parse_signs(args.signs)
    else:
        if not args.instance:
            raise CliError("give an instance path or --signs")
        func, x0 = _pwa_of(_load(args.instance))
        if args.at_point or args.at_eps is not None:
            x = _parse_vector(args.at_point) if args.at_point else (x0 or (0,) * func.n)
            if len(x) != func.n:
                raise CliError(f"point has {len(x)} entries, instance has n={func.n}")
            y = core.values(func, x)
            if args.at_eps is not None:
                eps = Fraction(args.at_eps)
                if eps < 0:
                    raise CliError("--at-eps must be nonnegative")
                rows = core.eps_argmax_set(y, eps)
                report["eps"] = _fmt(eps)
            else:
                rows = core.argmax_set(y)
            report["point"] = _fmt(x)
            report["f"] = _fmt(max(y))
            if rows_consistent(func):
                report["e_y"] = _fmt(violation_measure(func, y))
        else:
            rows = tuple(range(func.m))
        report["rows"] = [str(i + 1) for i in rows]
        S = sign_set(func.row_signs[i] for i in rows)
    closure, removals = enforce_consistency(S)
    report.update(
        signs=_signs_text(S),
        consistent=is_consistent(S),
        closure=_signs_text(closure),
        closure_empty=not closure,
        enforcement=[f"j={j + 1} removed {_signs_text(dropped)}" for j, dropped in removals],
    )
    if not args.json:
        report["enforcement"] = "; ".join(report["enforcement"]) or "none"
    _emit(report, args.json)
    return 0


# oracle ---------------------------------------------------------------------

def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    func, x0 = _pwa_of(inst)
    report = {"instance": args.instance, "check": args.check}
    cert = None
    if args.check == "bounded-below":
        verdict, cert = oracle.contains_origin_conv(func.A)
    elif args.check == "global-min":
        x = _parse_vector(args.at_point) if args.at_point else x0
        if x is None:
            raise CliError("--check global-min needs --at-point or an instance x0")
        if len(x) != func.n:
            raise CliError(f"point has {len(x)} entries, instance has n={func.n}")
        y = core.values(func, x)
        active = core.argmax_set(y)
        verdict, cert = oracle.contains_origin_conv([func.A[i] for i in active])
        report["point"] = _fmt(x)
        report["active_rows"] = [str(i + 1) for i in active]
    elif args.check == "rint":
        verdict, cert = oracle.contains_origin_rint_conv(func.A)
    else:
        try:
            verdict = oracle.y_set_is_bounded(func)
        except oracle.EmptyFeasibleSet as exc:
            raise CliError(str(exc)) from None
        if verdict:
            cert = oracle.contains_origin_rint_conv(func.A)[1]
    report["verdict"] = verdict
    if cert is not None:
        report["lambda"] = _fmt(cert.lam)
        report["certificate"] = cert.flavor.value
    _emit(report, args.json)
    return 0


# transform / generate ---------------------------------------------------------

def cmd_transform(args) -> int:
    inst = _load(args.instance)
    if not isinstance(inst.function, SumMaxFunction):
        raise CliError("transform expects a 'summax' instance")
    lifted = lift(inst.function)
    x0 = None
    if inst.x0 is not None:
        x0 = lifted.pack(inst.x0, [0] * lifted.n_groups)
    text = dump_instance(lifted.g, x0)
    _write(text, args.output)
    return 0


def cmd_generate(args) -> int:
    if args.n < 1 or args.m < 1:
        raise CliError("-n and -m must be >= 1")
    func = generate_random(args.n, args.m, args.seed, args.profile)
    _write(dump_instance(func, (0,) * func.n), args.output)
    return 0


def _write(text, output):
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwamin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run coordinate minimization on an instance (or a directory of them)")
    p.add_argument("instance")
    p.add_argument("--rule", choices=[r.value for r in UpdateRule], default=UpdateRule.UNIQUE.value)
    p.add_argument("--cycles", type=int, default=1000)
    p.add_argument("--tol", default=None, help="fixed-point tolerance on ||p(y) - y||_inf")
    p.add_argument("--numeric", choices=core.NUMERIC_MODES, default=None)
    p.add_argument("--x0", default=None, help='starting point, e.g. "2,1,0"')
    p.add_argument("--trace", default=None, help="CSV trace path (a directory when solving a directory)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("consistency", help="sign set, its consistency closure and e(y)")
    p.add_argument("instance", nargs="?")
    p.add_argument("--signs", default=None, help='sign vectors, e.g. "0,1,-1;1,-1,0"')
    p.add_argument("--at-point", default=None)
    p.add_argument("--at-eps", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_consistency)

    p = sub.add_parser("oracle", help="exact LP checks")
    p.add_argument("instance")
    p.add_argument("--check", required=True, choices=["bounded-below", "global-min", "rint", "y-bounded"])
    p.add_argument("--at-point", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("transform", help="lift a sum-of-maxima instance to a single max")
    p.add_argument("instance")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=PROFILES, default="unrestricted")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cycles", 1) < 1:
        parser.error("--cycles must be >= 1")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except (CliError, PreconditionError, core.DimensionError, ValueError) as exc:
        if getattr(args, "json", False):
            sys.stdout.write(json.dumps({"error": str(exc)}) + "\n")
        else:
            sys.stderr.write(f"pwamin: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
