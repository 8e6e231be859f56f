"""Command-line interface.

Exit codes: 0 success, 1 a requested verification failed, 2 usage or parse error.
All integers are printed as plain decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import engine, handles, periods, series
from .errors import BudgetExceeded, CollatzError, DomainError
from .scenario import as_scenario

OUT_ENV = "COLLATZ_SCENARIOS_OUT"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _scenario(text: str):
    try:
        return as_scenario(text)
    except CollatzError as exc:
        raise UsageError(f"bad scenario {text!r}: {exc}") from None


def _slug(s) -> str:
    return re.sub(r"[^sd0-9]", "", s.compressed())[:60]


class _Output:
    def __init__(self, args):
        self.json = args.json
        self.out_dir = Path(args.out or os.environ.get(OUT_ENV) or ".")
        self.artifacts: list[str] = []

    def path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        p = self.out_dir / name
        self.artifacts.append(str(p))
        return p

    def emit(self, payload: dict, lines: list[str]):
        if self.json:
            if self.artifacts:
                payload = dict(payload, artifacts=self.artifacts)
            print(json.dumps(payload, sort_keys=True))
        else:
            for line in lines:
                print(line)
            for path in self.artifacts:
                print(f"wrote {path}")


def cmd_periods(args, out: _Output) -> int:
    s = _scenario(args.scenario)
    pp = periods.compute_period_phase(s)
    out.emit(dict(scenario=s.compressed(), **pp.to_dict()), [" ".join(str(v) for v in pp)])
    return EXIT_OK


def cmd_realize(args, out: _Output) -> int:
    s = _scenario(args.scenario)
    pp = periods.compute_period_phase(s)
    r = pp.realize(args.k)
    payload = dict(scenario=s.compressed(), **pp.to_dict(), **r.to_dict())
    lines = [f"{r.start} {r.end}"]
    code = EXIT_OK
    if args.verify:
        verdict = engine.verify_realization(s, args.k)
        payload["verified"] = verdict.ok
        lines.append(("PASS " if verdict else "FAIL ") + verdict.detail)
        code = EXIT_OK if verdict else EXIT_FAIL
    out.emit(payload, lines)
    return code


def cmd_verify(args, out: _Output) -> int:
    s = _scenario(args.scenario)
    results = []
    lines = []
    for k in range(1, args.k_max + 1):
        verdict = engine.verify_realization(s, k)
        results.append({"k": k, "ok": verdict.ok, "detail": verdict.detail})
        lines.append(f"k={k} {'PASS' if verdict else 'FAIL'} {verdict.detail}")
    ok = all(r["ok"] for r in results)
    payload = {"scenario": s.compressed(), "realizations": results}
    if args.oracle:
        oracle = periods.bruteforce_phase_oracle(s, max_length=args.oracle_max_length)
        match = oracle == periods.compute_period_phase(s)
        payload["oracle"] = dict(oracle.to_dict(), match=match)
        lines.append(f"oracle {'PASS' if match else 'FAIL'} " + " ".join(str(v) for v in oracle))
        ok = ok and match
    payload["ok"] = ok
    lines.append("PASS" if ok else "FAIL")
    out.emit(payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_trace(args, out: _Output) -> int:
    if args.n % 2 == 0:
        raise UsageError(f"trace needs an odd start number, got {args.n}")
    try:
        stop = engine.StopRule.parse(args.stop, max_ops=args.max_ops)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        s, traj = engine.extract_scenario(args.n, stop)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    fmts = {"none": (), "csv": ("csv",), "svg": ("svg",), "both": ("csv", "svg")}[args.format]
    for fmt in fmts:
        path = out.path(f"trace_{args.n}.{fmt}")
        if fmt == "csv":
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                engine.write_trajectory_csv(traj, fh)
        else:
            series.emit(series.an_series(traj), "svg", path, title=f"trace {args.n}")
    payload = {"start": str(args.n), "scenario": s.word, "end": str(traj.end), "ops": traj.n_ops}
    out.emit(payload, [s.word])
    return EXIT_OK


def cmd_link(args, out: _Output) -> int:
    if args.n % 3 == 0:
        if args.n % 2 == 0:
            raise UsageError(f"{args.n} is an even RC0 integer; no handle leads to it")
        lk = handles.link_odd(args.n)
    else:
        lk = handles.link(args.n)
    verdict = handles.verify_link(lk)
    payload = dict(lk.to_dict(), verified=verdict.ok)
    scen = lk.scenario.compressed() if lk.scenario else "-"
    line = f"target {lk.target} handle {lk.handle} scenario {scen} steps {lk.steps} ops {lk.ops or '-'}"
    out.emit(payload, [line, "PASS" if verdict else "FAIL " + verdict.detail])
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_sweep(args, out: _Output) -> int:
    if args.limit < 18:
        raise UsageError("sweep limit must be >= 18")
    report = handles.sweep_verify(args.limit, workers=args.workers)
    print(report.to_json())
    return EXIT_OK if report.ok else EXIT_FAIL


def hook_table(max_delta: int) -> list[str]:
    rows = ["delta,startperiod,startphase,endperiod,endphase"]
    for delta in range(max_delta + 1):
        pp = periods.hook_period_phase(delta)
        rows.append(",".join(str(v) for v in (delta, *pp)))
    return rows


def cmd_hooks(args, out: _Output) -> int:
    rows = hook_table(args.max_delta)
    payload = {
        "hooks": [
            dict(delta=d, **periods.hook_period_phase(d).to_dict()) for d in range(args.max_delta + 1)
        ]
    }
    out.emit(payload, rows)
    return EXIT_OK


def cmd_rho(args, out: _Output) -> int:
    s = _scenario(args.scenario)
    rho = periods.rho_metric(periods.compute_period_phase(s), args.k)
    text = periods.render_decimal(rho, args.places)
    out.emit(
        {"scenario": s.compressed(), "k": args.k, "rho": f"{rho.numerator}/{rho.denominator}",
         "rho_decimal": text},
        [f"{rho.numerator}/{rho.denominator}", text],
    )
    return EXIT_OK


def cmd_plot(args, out: _Output) -> int:
    s = _scenario(args.scenario)
    pp = periods.compute_period_phase(s)
    trajs = [engine.apply_scenario(pp.realize(k).start, s) for k in range(1, args.realizations + 1)]
    data = series.overlay(trajs, args.mode)
    stem = f"plot_{_slug(s)}_{args.mode}"
    if args.format == "svg":
        series.emit(data, "svg", out.path(stem + ".svg"), log_scale=not args.linear,
                    title=f"{s.compressed()} ({args.mode.upper()})",
                    labels=[f"k={k}" for k in range(1, args.realizations + 1)])
    else:
        for k, ser in enumerate(data, start=1):
            series.emit(ser, "csv", out.path(f"{stem}_k{k}.csv"))
    out.emit({"scenario": s.compressed(), "mode": args.mode,
              "points": [len(d) for d in data]}, [])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collatz-scenarios", description="Periods, phases and realizations of Collatz scenarios."
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--out", metavar="DIR", help=f"artifact directory (default ${OUT_ENV} or .)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("periods", help="print A_M B_M A_N B_N")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("realize", help="print M_k N_k")
    p.add_argument("scenario")
    p.add_argument("k", type=_positive_int)
    p.add_argument("--verify", action="store_true", help="replay by simulation")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="simulate realizations k=1..K (and optionally the oracle)")
    p.add_argument("scenario")
    p.add_argument("--k-max", type=_positive_int, default=10)
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force scan")
    p.add_argument("--oracle-max-length", type=_positive_int, default=periods.ORACLE_MAX_LENGTH)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="spell the Collatz run from odd N as a scenario")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--stop", default="one", help="'one' (default) or 'sigma=K'")
    p.add_argument("--max-ops", type=_positive_int, default=engine.DEFAULT_MAX_OPS)
    p.add_argument("--format", choices=["none", "csv", "svg", "both"], default="none")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("link", help="handle link for N")
    p.add_argument("n", type=_positive_int)
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("sweep", help="verify links for every non-RC0 n <= LIMIT")
    p.add_argument("limit", type=_positive_int)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hooks", help="hook table for delta = 0..MAX_DELTA")
    p.add_argument("max_delta", type=_nonneg_int)
    p.set_defaults(func=cmd_hooks)

    p = sub.add_parser("rho", help="|M_k - N_k| / N_k")
    p.add_argument("scenario")
    p.add_argument("k", type=_positive_int)
    p.add_argument("--places", type=_nonneg_int, default=4)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("plot", help="ON/AN figure of the first realizations")
    p.add_argument("scenario")
    p.add_argument("--realizations", type=_positive_int, default=3)
    p.add_argument("--mode", choices=["on", "an"], default="on")
    p.add_argument("--format", choices=["svg", "csv"], default="svg")
    p.add_argument("--linear", action="store_true", help="linear instead of log10 y axis")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Output(args)
    try:
        return args.func(args, out)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
