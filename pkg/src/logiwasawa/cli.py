"""Command-line front end.

Exit codes: 0 success, 1 tower-check found violations, 2 bad input or
precision failure, 3 no eventual fit, 4 infinite quotient, 5 invalid
scenario or config, 6 cyclotomic point not isolated.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .errors import (
    FitInconclusive,
    InfiniteQuotient,
    InvalidConfig,
    IwasawaError,
    NoEventualFit,
    NotIsolated,
    PrecisionExhausted,
    TruncationTooSmall,
)
from .extensions import TOPOLOGIES, TowerConfig, cyclotomic_isolation, invariant_map
from .fitting import fit
from .ingest import dump_json, read_json, read_sequence_csv, sequence_csv
from .ramification import (
    LocalStep,
    compose,
    composite_step,
    log_indices,
    log_unramified_implies_unramified,
    validate_away_from_ell,
)
from .scenario import Scenario
from .series import DistinguishedPoly, LambdaSeries, weierstrass_divide, weierstrass_prepare
from .structure import (
    ElementaryModule,
    growth_sequence,
    invariants,
    is_pseudo_null_pair,
    stable_onset,
)

EXIT_VIOLATIONS = 1
EXIT_INPUT = 2
EXIT_NO_FIT = 3
EXIT_INFINITE = 4
EXIT_SCENARIO = 5
EXIT_NOT_ISOLATED = 6


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_series(path, args) -> LambdaSeries:
    try:
        obj = read_json(path)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"cannot read series file: {exc}")
    if args.ell is not None:
        obj["ell"] = args.ell
    if args.precision is not None:
        obj["precision"] = args.precision
    if args.degree is not None:
        obj["degree"] = args.degree
    try:
        return LambdaSeries.from_json(obj)
    except (KeyError, TypeError, ValueError, IwasawaError) as exc:
        raise CliError(EXIT_INPUT, f"bad series: {exc}")


def cmd_prepare(args):
    f = _load_series(args.series, args)
    try:
        prep = weierstrass_prepare(f)
    except (PrecisionExhausted, TruncationTooSmall) as exc:
        raise CliError(EXIT_INPUT, f"{type(exc).__name__}: {exc}")
    residual = prep.recombine() - f
    report = {
        "ell": f.ell,
        "mu": prep.mu,
        "lambda": prep.lam,
        "P": [str(c) for c in prep.poly.coeffs],
        "P_str": str(prep.poly),
        "U": prep.unit.to_json(),
        "precision": prep.precision,
        "residual_zero": residual.is_zero(),
    }
    _emit(args, dump_json(report))


def cmd_divide(args):
    f = _load_series(args.series, args)
    try:
        P = DistinguishedPoly(f.ell, tuple(int(x) for x in args.by.split(",")))
        q, r = weierstrass_divide(f, P)
    except (ValueError, IwasawaError) as exc:
        raise CliError(EXIT_INPUT, f"{type(exc).__name__}: {exc}")
    report = {"quotient": q.to_json(), "remainder": [str(c) for c in r.polynomial()]}
    _emit(args, dump_json(report))


def cmd_fit(args):
    if args.ell is None:
        raise CliError(EXIT_INPUT, "--ell is required")
    try:
        seq = read_sequence_csv(args.csv, args.ell)
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad sequence file: {exc}")
    try:
        result = fit(seq)
    except NoEventualFit as exc:
        raise CliError(EXIT_NO_FIT, f"NoEventualFit: {exc}")
    if args.lambda_log is not None:
        result = result.with_log_correction(args.lambda_log)
    _emit(args, dump_json(result.to_json()))


def cmd_simulate(args):
    try:
        E = ElementaryModule.from_json(read_json(args.module))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad module file: {exc}")
    try:
        growth = growth_sequence(E, args.nmax)
    except InfiniteQuotient as exc:
        raise CliError(EXIT_INFINITE, f"InfiniteQuotient: {exc}")
    except FitInconclusive as exc:
        raise CliError(EXIT_NO_FIT, f"FitInconclusive: {exc}")
    inv = invariants(E)
    text = sequence_csv(enumerate(growth.exponents))
    text += "# fit: " + json.dumps(growth.fit.to_json(), sort_keys=True) + "\n"
    text += "# invariants: " + json.dumps({"mu": inv.mu, "lambda": inv.lam}, sort_keys=True) + "\n"
    _emit(args, text)


def cmd_pseudo_null(args):
    f = _load_series(args.f, args)
    g = _load_series(args.g, args)
    try:
        answer = is_pseudo_null_pair(f, g)
    except IwasawaError as exc:
        raise CliError(EXIT_INPUT, f"{type(exc).__name__}: {exc}")
    _emit(args, dump_json({"pseudo_null": answer}))


def cmd_tower_check(args):
    try:
        steps = [LocalStep.from_json(o) for o in read_json(args.tower)]
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_INPUT, f"bad tower file: {exc}")
    violations = []
    report = {"steps": [], "towers": {}}
    for i, s in enumerate(steps):
        issues = s.problems()
        entry = {"index": i, "p": s.p, "problems": issues}
        if not issues:
            e_log, f_log = log_indices(s)
            entry.update(e_log=e_log, f_log=f_log)
            if s.galois_ell:
                entry["index_violations"] = validate_away_from_ell(s)
                issues = issues + entry["index_violations"]
        violations += [f"step {i}: {msg}" for msg in issues]
        report["steps"].append(entry)
    clean = [s for s in steps if not s.problems()]
    for p in sorted({s.p for s in clean}):
        chain = [s for s in clean if s.p == p]
        total, acc = log_indices(chain[0]), chain[0]
        for s in chain[1:]:
            total = compose((acc, total), s, composite=composite_step(acc, s),
                            check_ell_powers=False)
            acc = composite_step(acc, s)
        report["towers"][str(p)] = {"e_log": total.e_log, "f_log": total.f_log}
    logunram = [s for s in clean if s.galois_ell and log_indices(s).e_log == 1]
    if logunram and len(logunram) == len(clean):
        ok = log_unramified_implies_unramified(logunram)
        report["log_unramified_implies_unramified"] = ok
        if not ok:
            violations.append("logarithmically unramified tower is ramified away from ell")
    report["violations"] = violations
    _emit(args, dump_json(report))
    if violations:
        raise CliError(EXIT_VIOLATIONS, f"{len(violations)} violation(s)")


def cmd_scan(args):
    try:
        sc = Scenario.load(args.scenario)
        if args.topology:
            sc.topology = args.topology
        if args.center:
            sc.center = tuple(int(x) for x in args.center.split(","))
        if args.level is not None:
            sc.level = args.level
        if args.sample_precision is not None:
            sc.sample_precision = args.sample_precision
        sc.validate()
        if not sc.presentations:
            raise InvalidConfig("scenario has no presentation to scan")
        center = sc.center_point()
        if center is None:
            raise InvalidConfig("scenario has no center and no cyclotomic point")
    except (OSError, InvalidConfig) as exc:
        raise CliError(EXIT_SCENARIO, f"invalid scenario: {exc}")
    try:
        result = invariant_map(sc.presentations[args.index], center, sc.level,
                               sc.sample_precision, cfg=sc.config, topology=sc.topology,
                               working_precision=sc.working_precision, degree=sc.degree,
                               finite_splitting_only=args.finite_splitting)
    except (IndexError, ValueError) as exc:
        raise CliError(EXIT_SCENARIO, f"invalid scenario: {exc}")
    text = result.to_csv()
    if args.output:
        Path(args.output).write_text(text)
        print(result.summary())
    else:
        sys.stdout.write(text)
        print(result.summary(), file=sys.stderr)


def cmd_isolate(args):
    try:
        obj = read_json(args.config)
        cfg = TowerConfig.from_json(obj.get("config", obj)).validate()
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise CliError(EXIT_SCENARIO, f"invalid config: {exc}")
    try:
        n = cyclotomic_isolation(cfg, args.nmax)
    except NotIsolated as exc:
        raise CliError(EXIT_NOT_ISOLATED, f"NotIsolated({exc.n_max})")
    except ValueError as exc:
        raise CliError(EXIT_SCENARIO, f"invalid config: {exc}")
    _emit(args, dump_json({"isolation_level": n, "n_max": args.nmax,
                           "cyclotomic_point": list(cfg.cyclotomic(args.nmax).coords)}))


def cmd_selfcheck(args):
    """Randomized Weierstrass round trips and growth-law checks, seeded by --seed."""
    rng = random.Random(args.seed)
    ells = [args.ell] if args.ell else [2, 3, 5]
    N = args.precision or 16
    D = args.degree or 32
    failures = 0
    for ell in ells:
        for _ in range(args.trials):
            f = LambdaSeries(ell, [rng.randrange(ell**N) for _ in range(D + 1)], N, D)
            try:
                if weierstrass_prepare(f).recombine() != f:
                    failures += 1
            except PrecisionExhausted:
                pass
            parts = []
            for _ in range(rng.randint(0, 2)):
                deg = rng.randint(1, 3)
                low = [ell * rng.randrange(1, ell**3) for _ in range(1)]
                low += [ell * rng.randrange(ell**3) for _ in range(deg - 1)]
                parts.append(low + [1])
            E = ElementaryModule(ell, [rng.randint(1, 2) for _ in range(rng.randint(0, 2))], parts)
            try:
                g = growth_sequence(E, stable_onset(E) + 3)
            except InfiniteQuotient:
                continue
            inv = invariants(E)
            if (g.fit.mu, g.fit.lam) != (inv.mu, inv.lam):
                failures += 1
    _emit(args, dump_json({"seed": args.seed, "trials": args.trials * len(ells), "failures": failures}))
    if failures:
        raise CliError(EXIT_VIOLATIONS, f"{failures} failure(s)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ell", type=int, help="the prime l (overrides input files)")
    common.add_argument("--precision", type=int, help="l-adic precision N")
    common.add_argument("--degree", type=int, help="T-truncation degree D")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized drivers")
    common.add_argument("--output", "-o", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="logiwasawa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", parents=[common], help="Weierstrass preparation of a series")
    p.add_argument("series")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("divide", parents=[common], help="Weierstrass division by a distinguished polynomial")
    p.add_argument("series")
    p.add_argument("--by", required=True, help="coefficients a_0,...,1 of the divisor")
    p.set_defaults(func=cmd_divide)

    p = sub.add_parser("fit", parents=[common], help="recover (mu, lambda, nu) from n,e or n,order CSV")
    p.add_argument("csv")
    p.add_argument("--lambda-log", type=int, dest="lambda_log",
                   help="lambda^[l]; reports lambda_classical = lambda - lambda^[l]")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("simulate", parents=[common], help="growth sequence of an elementary module")
    p.add_argument("module")
    p.add_argument("--nmax", type=int, default=6)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pseudo-null", parents=[common], help="is Lambda/(f, g) finite")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_pseudo_null)

    p = sub.add_parser("tower-check", parents=[common], help="validate logarithmic index data")
    p.add_argument("tower")
    p.set_defaults(func=cmd_tower_check)

    p = sub.add_parser("scan", parents=[common], help="invariant table over a neighborhood")
    p.add_argument("scenario")
    p.add_argument("--topology", choices=TOPOLOGIES)
    p.add_argument("--center", help="comma-separated character vector")
    p.add_argument("--level", type=int)
    p.add_argument("--sample-precision", type=int, dest="sample_precision")
    p.add_argument("--index", type=int, default=0, help="which presentation of the scenario")
    p.add_argument("--finite-splitting", action="store_true", dest="finite_splitting",
                   help="skip points that do not split finitely")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("isolate", parents=[common], help="isolation level of the cyclotomic point")
    p.add_argument("config")
    p.add_argument("--nmax", type=int, default=4)
    p.set_defaults(func=cmd_isolate)

    p = sub.add_parser("selfcheck", parents=[common], help="seeded randomized consistency checks")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
