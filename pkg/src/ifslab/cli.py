"""Command-line front end.

Subcommands: ``run`` (scenario configs), ``omega`` (recluster an orbit dump),
``driver gen`` / ``driver audit``, ``kaczmarz``, and ``presets``.

Exit codes: 0 all requested checks pass, 1 some check failed, 2 parse or
validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import drivers, fileio, kaczmarz, omega, scenarios
from .errors import IfsLabError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2


def _load_config(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise scenarios.ScenarioError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _cmd_run(args):
    scenario = scenarios.scenario_from_dict(_load_config(args.config))
    result = scenarios.run_scenario(scenario)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = scenario.name
    fileio.write_orbit_csv(out_dir / f"{stem}.orbit.csv", result.orbit)
    fileio.write_json(out_dir / f"{stem}.omega.json", result.estimate.to_dict())
    fileio.write_json(out_dir / f"{stem}.report.json", result.report_dict())
    if scenario.system.dim == 2 and not args.no_svg:
        fileio.render_svg_scatter(out_dir / f"{stem}.svg",
                                  result.orbit.tail(scenario.burn_in),
                                  result.estimate.representatives.points)

    for outcome in result.checks:
        status = "pass" if outcome.passed else "FAIL"
        print(f"{stem}: check {outcome.kind}: {status}")
    print(f"{stem}: representatives={result.estimate.representatives.size} "
          f"files written to {out_dir}")
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def _cmd_omega(args):
    orbit = fileio.read_orbit_csv(args.orbit)
    estimate = omega.estimate_omega(orbit, burn_in=args.burn_in, cluster_eps=args.eps)
    payload = estimate.to_dict()
    if args.out:
        fileio.write_json(args.out, payload)
    else:
        print(json.dumps(payload, indent=2))
    return EXIT_OK


def _driver_spec_from_args(args):
    kind = args.kind
    if kind == "cyclic":
        if args.perm:
            return drivers.Cyclic(tuple(int(s) for s in args.perm.split(",")))
        if not args.alphabet:
            raise IfsLabError("cyclic driver needs --perm or --alphabet")
        return drivers.Cyclic(tuple(range(1, args.alphabet + 1)))
    if kind == "iid":
        if args.seed is None:
            raise IfsLabError("iid driver needs --seed")
        if args.weights:
            return drivers.IidRandom(args.seed, tuple(float(w) for w in args.weights.split(",")))
        if not args.alphabet:
            raise IfsLabError("iid driver needs --weights or --alphabet")
        return drivers.IidRandom.uniform(args.seed, args.alphabet)
    if kind == "disjunctive":
        if not args.alphabet:
            raise IfsLabError("disjunctive driver needs --alphabet")
        return drivers.DisjunctiveEnumeration(args.alphabet)
    if kind == "custom":
        if not args.symbols:
            raise IfsLabError("custom driver needs --symbols")
        return drivers.Custom(tuple(int(s) for s in args.symbols.split(",")))
    raise IfsLabError(f"unknown driver kind {kind!r}")


def _cmd_driver_gen(args):
    spec = _driver_spec_from_args(args)
    symbols = drivers.generate(spec, args.n)
    print(" ".join(str(int(s)) for s in symbols))
    if args.out:
        Path(args.out).write_text("\n".join(str(int(s)) for s in symbols) + "\n")
    return EXIT_OK


def _read_sequence(path):
    lines = [line.strip() for line in Path(path).read_text().splitlines()]
    return [int(line) for line in lines if line]


def _cmd_driver_audit(args):
    seq = _read_sequence(args.sequence)
    report = drivers.check_disjunctive(seq, args.m, alphabet_size=args.alphabet)
    counts = drivers.check_repetitive(seq, alphabet_size=report.alphabet_size)
    print(f"prefix length {report.prefix_length}, alphabet {report.alphabet_size}")
    print(f"disjunctivity at m={report.window_length}: "
          f"{report.found}/{report.total_words} words found")
    if report.warning:
        print(f"warning: {report.warning}")
    if report.missing_count:
        shown = ", ".join("(" + ",".join(map(str, w)) + ")" for w in report.missing)
        more = "" if report.missing_count <= len(report.missing) \
            else f" (+{report.missing_count - len(report.missing)} more)"
        print(f"missing words: {shown}{more}")
    print("symbol counts: " + ", ".join(
        f"{i + 1}:{c}" for i, c in enumerate(counts.counts)))
    if counts.absent:
        print(f"absent symbols (prefix not repetitive): {list(counts.absent)}")
    if args.out:
        fileio.write_json(args.out, {"disjunctivity": report.to_dict(),
                                     "repetition": counts.to_dict()})
    ok = report.complete and not counts.absent
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_kaczmarz(args):
    system = fileio.read_linear_system_csv(args.system)
    args.alphabet = args.alphabet or system.n_rows
    spec = _driver_spec_from_args(args)
    x0 = None
    if args.x0:
        x0 = np.asarray([float(c) for c in args.x0.split(",")], dtype=float)
    report = kaczmarz.solve(system, spec, tol=args.tol, max_iter=args.max_iter, x0=x0)
    payload = report.to_dict()
    if args.out:
        fileio.write_json(args.out, payload)
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_presets(args):
    if args.action == "list":
        for name in scenarios.PRESET_NAMES:
            print(name)
        return EXIT_OK
    config = scenarios.preset_config(args.name)
    text = json.dumps(config, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ifslab",
        description="Iterate nonexpansive IFSs under controllable drivers and "
                    "verify invariance properties of omega-limit estimates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config and its checks")
    p_run.add_argument("config", help="scenario config (JSON)")
    p_run.add_argument("--out-dir", default=".", help="directory for emitted files")
    p_run.add_argument("--no-svg", action="store_true", help="skip the SVG scatter")
    p_run.set_defaults(func=_cmd_run)

    p_omega = sub.add_parser("omega", help="recluster an orbit CSV dump")
    p_omega.add_argument("orbit", help="orbit CSV written by `run`")
    p_omega.add_argument("--burn-in", type=int, required=True)
    p_omega.add_argument("--eps", type=float, required=True)
    p_omega.add_argument("--out", help="write the omega JSON here instead of stdout")
    p_omega.set_defaults(func=_cmd_omega)

    p_driver = sub.add_parser("driver", help="generate or audit driving sequences")
    driver_sub = p_driver.add_subparsers(dest="action", required=True)

    p_gen = driver_sub.add_parser("gen", help="emit driver symbols")
    p_gen.add_argument("--kind", required=True,
                       choices=["cyclic", "iid", "disjunctive", "custom"])
    p_gen.add_argument("--n", type=int, required=True, help="number of symbols")
    p_gen.add_argument("--alphabet", type=int, help="alphabet size N")
    p_gen.add_argument("--seed", type=int, help="seed for iid drivers")
    p_gen.add_argument("--weights", help="comma-separated iid weights")
    p_gen.add_argument("--perm", help="comma-separated cyclic permutation of 1..N")
    p_gen.add_argument("--symbols", help="comma-separated custom symbols")
    p_gen.add_argument("--out", help="also write one symbol per line to this file")
    p_gen.set_defaults(func=_cmd_driver_gen)

    p_audit = driver_sub.add_parser("audit", help="audit a sequence file")
    p_audit.add_argument("sequence", help="file with one 1-based symbol per line")
    p_audit.add_argument("--m", type=int, required=True, help="window length")
    p_audit.add_argument("--alphabet", type=int, help="alphabet size (default: max symbol)")
    p_audit.add_argument("--out", help="write the audit report JSON here")
    p_audit.set_defaults(func=_cmd_driver_audit)

    p_kacz = sub.add_parser("kaczmarz", help="solve a linear system by row projections")
    p_kacz.add_argument("system", help="system CSV: a1,...,ad,b per row")
    p_kacz.add_argument("--driver", dest="kind", default="cyclic",
                        choices=["cyclic", "iid", "disjunctive", "custom"])
    p_kacz.add_argument("--tol", type=float, default=1e-10)
    p_kacz.add_argument("--max-iter", type=int, default=100_000)
    p_kacz.add_argument("--alphabet", type=int, help="driver alphabet (default: row count)")
    p_kacz.add_argument("--seed", type=int, help="seed for iid drivers")
    p_kacz.add_argument("--weights", help="comma-separated iid weights")
    p_kacz.add_argument("--perm", help="comma-separated cyclic permutation")
    p_kacz.add_argument("--symbols", help="comma-separated custom symbols")
    p_kacz.add_argument("--x0", help="comma-separated start point (default: origin)")
    p_kacz.add_argument("--out", help="write the solve report JSON here")
    p_kacz.set_defaults(func=_cmd_kaczmarz)

    p_presets = sub.add_parser("presets", help="list or emit the figure presets")
    preset_sub = p_presets.add_subparsers(dest="action", required=True)
    p_list = preset_sub.add_parser("list", help="list preset names")
    p_list.set_defaults(func=_cmd_presets)
    p_write = preset_sub.add_parser("write", help="emit a preset config")
    p_write.add_argument("name")
    p_write.add_argument("--out", help="write the config here instead of stdout")
    p_write.set_defaults(func=_cmd_presets)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IfsLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
