"""Command-line entry point ``uncbounds``.

Exit codes: 0 success, 1 input error, 2 invariant violation, 3 search found nothing.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import selftest
from .bounds import MPSuiteReport, bound_suite
from .constants import COMMUTATOR_TOL, EPS_EIGEN, SEARCH_STARTS, SLACK_TOL
from .linalg import DimensionError
from .sampler import SampleConfig, eigenstate_approach_scan, stream, tightness_scan
from .scenarios import (
    CommutingPairError,
    counterexample_scenario,
    counterexample_search,
    eigenstate_scenario,
)
from .serialize import (
    ProblemError,
    dumps_canonical,
    format_float,
    load_problem,
    vector_to_json,
    write_csv,
)
from .state import pair_scale

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_NOT_FOUND = 3

SEED_ENV = "UNCBOUNDS_SEED"

REPORT_COLUMNS = [
    "var_a", "var_b", "lhs_sum", "hr_lhs", "hr_rhs",
    "mp1_plus", "mp1_minus", "mp1_best", "mp2", "m12a", "max_bound",
    "slack_hr", "slack_mp1_plus", "slack_mp1_minus", "slack_mp1_best", "slack_mp2", "slack_m12a",
    "scale", "self_referential",
]


class InputError(Exception):
    pass


def _report_row(r: MPSuiteReport) -> list:
    return [
        r.var_a, r.var_b, r.lhs_sum, r.hr.lhs_product, r.hr.rhs,
        r.mp1_plus.rhs, r.mp1_minus.rhs, r.mp1_best, r.mp2, r.m12a, r.max_bound,
        r.slacks["hr"], r.slacks["mp1_plus"], r.slacks["mp1_minus"], r.slacks["mp1_best"],
        r.slacks["mp2"], r.slacks["m12a"], r.scale, r.self_referential,
    ]


def _render_text(r: MPSuiteReport) -> str:
    f = lambda x: f"{x:.12g}"  # noqa: E731
    lines = [
        f"lhs  dA^2 + dB^2 = {f(r.lhs_sum)}   (dA^2 = {f(r.var_a)}, dB^2 = {f(r.var_b)})",
        f"hr   dA dB = {f(r.hr.lhs_product)} >= {f(r.hr.rhs)}   slack {f(r.hr.slack)}"
        + ("   [trivial: 0 >= 0]" if r.hr.trivial else ""),
        f"mp1+ {f(r.mp1_plus.rhs)}   mp1- {f(r.mp1_minus.rhs)}   best {f(r.mp1_best)}",
        f"mp2  {f(r.mp2)}",
        f"m12a {f(r.m12a)}",
        f"max_bound {f(r.max_bound)}   self_referential {str(r.self_referential).lower()}",
    ]
    return "\n".join(lines)


def _valid(r: MPSuiteReport) -> bool:
    return r.min_scaled_slack() >= -SLACK_TOL


def cmd_check(args) -> int:
    prob = load_problem(args.problem)
    if prob.state is None:
        raise InputError(f"{args.problem}: problem has no 'state'")
    report = bound_suite(prob.A, prob.B, prob.state, prob.tolerances.get("eps_eigen", EPS_EIGEN))
    if args.format == "json":
        payload = {"problem": prob.name, "dim": prob.dim, "state": vector_to_json(prob.state.vec)}
        payload.update(report.to_dict())
        sys.stdout.write(dumps_canonical(payload))
    elif args.format == "csv":
        sys.stdout.write(",".join(REPORT_COLUMNS) + "\n")
        sys.stdout.write(",".join(_fmt_cell(v) for v in _report_row(report)) + "\n")
    else:
        print(_render_text(report))
    return EXIT_OK if _valid(report) else EXIT_INVARIANT


def _fmt_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    return format_float(v)


def _emit_scenario(result, fmt: str, extra: dict | None = None) -> None:
    if fmt == "json":
        payload = result.to_dict()
        if extra:
            payload.update(extra)
        sys.stdout.write(dumps_canonical(payload))
    else:
        print(result.render())


def cmd_scenario(args) -> int:
    prob = load_problem(args.problem)
    if args.name == "eigenstate":
        A, B = prob.A, prob.B
        index = args.index
        if prob.selector is not None:
            of, sel_index = prob.selector
            if of == "A":
                A, B = B, A
            if index is None:
                index = sel_index
        if index is None:
            raise InputError("eigenstate scenario needs --index or a state selector {of, index}")
        if not 0 <= index < prob.dim:
            raise InputError(f"--index {index} out of range for dimension {prob.dim}")
        result = eigenstate_scenario(A, B, index, prob.tolerances.get("eps_eigen", EPS_EIGEN))
        _emit_scenario(result, args.format)
        return EXIT_OK if result.verdict else EXIT_INVARIANT

    tol = args.tol
    if tol is None:
        tol = prob.tolerances.get("commutator_tol", COMMUTATOR_TOL * pair_scale(prob.A, prob.B))

    if args.name == "counterexample":
        if prob.state is None:
            raise InputError(f"{args.problem}: problem has no 'state'")
        result = counterexample_scenario(prob.A, prob.B, prob.state, tol)
        _emit_scenario(result, args.format)
        return EXIT_OK if result.verdict else EXIT_INVARIANT

    found = counterexample_search(prob.A, prob.B, seed=args.seed, n_starts=args.starts, tol=tol)
    if found is None:
        print(f"no state found in {args.starts} starts", file=sys.stderr)
        return EXIT_NOT_FOUND
    result = counterexample_scenario(prob.A, prob.B, found, tol)
    result.name = "search"
    _emit_scenario(result, args.format, {"state": vector_to_json(found.vec)})
    if args.format != "json":
        print("  state: " + " ".join(f"{z.real:+.12g}{z.imag:+.12g}j" for z in found.vec))
    return EXIT_OK if result.verdict else EXIT_INVARIANT


def cmd_scan(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.kind == "haar":
        if args.dim < 2 or args.dim > 64:
            raise InputError("--dim must be in [2, 64]")
        if args.samples < 1:
            raise InputError("--samples must be >= 1")
        stats = tightness_scan(SampleConfig(args.dim, args.samples, args.seed))
        rows = [[i, args.dim] + _report_row(r) for i, r in enumerate(stats.reports)]
        write_csv(out / "scan_haar.csv", ["sample_index", "dim"] + REPORT_COLUMNS, rows)
        summary = {"kind": "haar"}
        summary.update(stats.summary())
        (out / "scan_haar.json").write_text(dumps_canonical(summary), encoding="utf-8")
        print(f"wrote {out / 'scan_haar.csv'} and {out / 'scan_haar.json'}")
        return EXIT_OK if stats.violations == 0 else EXIT_INVARIANT

    prob = load_problem(args.problem)
    A, B = prob.A, prob.B
    index = args.index
    if prob.selector is not None:
        of, sel_index = prob.selector
        if of == "A":
            A, B = B, A
        if index is None:
            index = sel_index
    if index is None:
        index = 0
    if not 0 <= index < prob.dim:
        raise InputError(f"--index {index} out of range for dimension {prob.dim}")
    if args.steps < 2:
        raise InputError("--steps must be >= 2")
    steps = eigenstate_approach_scan(A, B, index, args.steps, stream(args.seed, 0))
    rows = []
    for k, s in enumerate(steps):
        r = s.report
        ratio = r.mp2 / r.lhs_sum if r.lhs_sum > 0 else 0.0
        rows.append([k, s.t] + _report_row(r) + [ratio])
    write_csv(out / "scan_approach.csv", ["step", "t"] + REPORT_COLUMNS + ["mp2_over_lhs"], rows)
    end = steps[-1].report
    valid = all(_valid(s.report) for s in steps)
    endpoint_ok = (
        end.hr.rhs <= SLACK_TOL * end.scale
        and abs(end.mp2 / end.lhs_sum - 0.5) <= 1e-9
        and end.self_referential
    )
    summary = {
        "kind": "approach",
        "problem": prob.name,
        "eig_index": index,
        "steps": args.steps,
        "seed": args.seed,
        "all_valid": valid,
        "endpoint": {
            "hr_rhs": end.hr.rhs,
            "mp2_over_lhs": end.mp2 / end.lhs_sum,
            "self_referential": end.self_referential,
            "ok": endpoint_ok,
        },
    }
    (out / "scan_approach.json").write_text(dumps_canonical(summary), encoding="utf-8")
    print(f"wrote {out / 'scan_approach.csv'} and {out / 'scan_approach.json'}")
    return EXIT_OK if valid and endpoint_ok else EXIT_INVARIANT


def cmd_selftest(args) -> int:
    ok = selftest.run(mutate=args.mutate, out=sys.stdout)
    return EXIT_OK if ok else EXIT_INVARIANT


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if seed < 0:
        raise InputError(f"{SEED_ENV} must be non-negative")
    return seed


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    parser = _Parser(prog="uncbounds", description="Variance uncertainty bounds for pairs of observables.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="evaluate every bound for a problem")
    p.add_argument("problem", help="problem JSON file or built-in name")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scenario", help="run an eigenstate, counterexample or search scenario")
    p.add_argument("name", choices=["eigenstate", "counterexample", "search"])
    p.add_argument("problem", help="problem JSON file or built-in name")
    p.add_argument("--index", type=int, default=None, help="eigenvector index of B (eigenstate)")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--starts", type=int, default=SEARCH_STARTS)
    p.add_argument("--tol", type=float, default=None, help="commutator tolerance (default 1e-8 * scale)")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("scan", help="batch scans over random instances or toward an eigenstate")
    p.add_argument("kind", choices=["haar", "approach"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--problem", default="pauli-xz-eigenstate")
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("selftest", help="run the invariant suite at reduced sample counts")
    p.add_argument("--mutate", choices=sorted(selftest.MUTATIONS), default=None,
                   help="inject a known defect to confirm the suite detects it")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser(_default_seed())
        args = parser.parse_args(argv)
        if getattr(args, "seed", 0) < 0:
            raise InputError("--seed must be non-negative")
        if getattr(args, "starts", 1) < 1:
            raise InputError("--starts must be >= 1")
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except (InputError, ProblemError, CommutingPairError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
