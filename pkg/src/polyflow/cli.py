"""Command-line interface: solve, check, bench.

Coefficients are given in descending power order after the leading
z^N term, i.e. ``--coeffs "c1,c2,...,cN"`` describes
z^N + c1 z^(N-1) + ... + cN.  Note this is the opposite of the
ascending-order convention some tools use.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import statistics
import sys
import time

import numpy as np

from . import __version__
from .errors import NoConvergence, PolyflowError, ResidualTooLarge
from .flow import homotopy_residual, identity_fd_check, make_problem, vector_field
from .integrator import IntegratorConfig, integrate
from .oracle import durand_kerner
from .poly import MonicPolynomial, coeffs_from_roots
from .solver import SolverConfig, match_root_sets, solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_SOLUTION = 3
EXIT_INTERNAL = 4

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^[+-]?{_NUM}$")
_RE_IMAG = re.compile(rf"^(?P<im>[+-]?{_NUM}|[+-])?i$")
_RE_BOTH = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-]{_NUM}|[+-])i$")


class ComplexParseError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse a complex literal: `1`, `-2.5i`, `3+4i`, `1e-3-2e2i`, `i`.

    The imaginary part carries a mandatory trailing `i`; whitespace is
    ignored.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ComplexParseError("empty complex literal")
    if _RE_REAL.match(s):
        return complex(float(s), 0.0)
    m = _RE_IMAG.match(s)
    if m:
        return complex(0.0, _imag_value(m.group("im")))
    m = _RE_BOTH.match(s)
    if m:
        return complex(float(m.group("re")), _imag_value(m.group("im")))
    raise ComplexParseError(f"malformed complex literal: {text!r}")


def _imag_value(body: str | None) -> float:
    if body is None or body == "" or body == "+":
        return 1.0
    if body == "-":
        return -1.0
    return float(body)


def parse_complex_list(text: str) -> list[complex]:
    items = [tok for tok in text.split(",") if tok.strip() != ""]
    if not items:
        raise ComplexParseError(f"no complex values in {text!r}")
    return [parse_complex(tok) for tok in items]


def _load_input_spec(args) -> MonicPolynomial:
    """Resolve --coeffs/--roots/--input into a monic polynomial."""
    sources = [
        name
        for name, val in (
            ("--coeffs", args.coeffs),
            ("--roots", args.roots),
            ("--input", args.input),
        )
        if val
    ]
    if len(sources) != 1:
        raise ComplexParseError(
            "exactly one of --coeffs, --roots, --input is required"
        )
    for flag, val in (("--coeffs", args.coeffs), ("--roots", args.roots)):
        if val and len(val) > 1:
            raise ComplexParseError(f"duplicate {flag} flag")

    coeffs = roots = None
    leading = args.leading
    if args.coeffs:
        coeffs = parse_complex_list(args.coeffs[0])
    elif args.roots:
        roots = parse_complex_list(args.roots[0])
    else:
        with open(args.input[0] if isinstance(args.input, list) else args.input) as fh:
            data = json.load(fh)
        if ("coeffs" in data) == ("roots" in data):
            raise ComplexParseError(
                "input file must contain exactly one of 'coeffs' or 'roots'"
            )
        if "coeffs" in data:
            coeffs = [parse_complex(str(v)) for v in data["coeffs"]]
        else:
            roots = [parse_complex(str(v)) for v in data["roots"]]
        if "leading" in data:
            leading = str(data["leading"])

    if roots is not None:
        return coeffs_from_roots(roots)
    assert coeffs is not None
    if leading is not None:
        lead = parse_complex(leading)
        if lead == 0:
            raise ComplexParseError("leading coefficient must be nonzero")
        coeffs = [c / lead for c in coeffs]
    return MonicPolynomial(coeffs)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("POLYFLOW_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ComplexParseError(f"bad POLYFLOW_SEED value: {env!r}")
    return 0


def _report_payload(degree: int, report) -> dict:
    return {
        "degree": degree,
        "roots": [{"re": z.real, "im": z.imag} for z in report.roots],
        "residuals": [float(r) for r in report.residuals],
        "restarts": report.restarts_used,
        "starts": report.starts_used,
        "consensus_discrepancy": report.consensus_discrepancy,
        "warnings": report.warnings,
        "pre_polish_residuals": [float(r) for r in report.pre_polish_residuals],
    }


def _emit_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        lines = ["n,re,im,residual"]
        for n, (root, res) in enumerate(
            zip(payload["roots"], payload["residuals"])
        ):
            lines.append(f"{n},{root['re']!r},{root['im']!r},{res!r}")
        return "\n".join(lines)
    lines = [f"degree {payload['degree']}"]
    for root, res in zip(payload["roots"], payload["residuals"]):
        lines.append(f"  {root['re']:+.16g} {root['im']:+.16g}i  (residual {res:.3e})")
    lines.append(
        f"restarts {payload['restarts']}, starts {payload['starts']}, "
        f"consensus {payload['consensus_discrepancy']:.3e}"
    )
    for w in payload["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def _write_trajectory_csv(path: str, trajectory) -> None:
    rows = []
    for state in trajectory.samples:
        for n, z in enumerate(state.y):
            rows.append((state.t, n, z.real, z.imag))
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(path, "w") as fh:
        fh.write("t,n,re,im\n")
        for t, n, re_, im_ in rows:
            fh.write(f"{t!r},{n},{re_!r},{im_!r}\n")


def _cmd_solve(args) -> int:
    target = _load_input_spec(args)
    integ = IntegratorConfig(rtol=args.rtol, atol=args.atol)
    cfg = SolverConfig(
        seed=_resolve_seed(args),
        num_starts=args.starts,
        max_restarts_per_start=args.max_restarts,
        polish=not args.no_polish,
        integrator=integ,
    )
    report = solve(target, cfg, record_trajectory=args.trajectory is not None)
    if args.trajectory:
        _write_trajectory_csv(args.trajectory, report.trajectory)
    print(_emit_report(_report_payload(target.degree, report), args.output))
    return EXIT_OK


def _unit_disc_polynomial(n: int, rng: np.random.Generator) -> MonicPolynomial:
    r = np.sqrt(rng.uniform(0.0, 1.0, size=n))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return MonicPolynomial(r * np.exp(1j * theta))


def _cmd_check(args) -> int:
    seed = _resolve_seed(args)
    rng = np.random.default_rng(seed)
    rows: list[tuple[str, bool, str]] = []

    # Fixed point: building the problem from the exact roots must zero
    # the vector field bitwise and leave the flow stationary.
    builtin = [np.array(r, dtype=np.complex128) for r in ([1, 2], [1, 2, 3], [2j, -2j])]
    seeded = [
        rng.uniform(-1, 1, size=k) + 1j * rng.uniform(-1, 1, size=k)
        for k in (4, 6, 8)
    ]
    ok = True
    for roots in builtin + seeded:
        target = coeffs_from_roots(roots)
        problem = make_problem(target, roots)
        field = vector_field(problem, roots)
        final = integrate(problem, roots).final.y
        ok &= bool(np.all(field == 0.0) and np.array_equal(final, roots))
    rows.append(("fixed-point (exact seeds stay put)", ok, "bitwise"))

    # Conservation along integrated trajectories.
    worst_res = 0.0
    cfg = IntegratorConfig(rtol=1e-10)
    instances = [
        _unit_disc_polynomial(k, rng) for k in (2, 3, 5, 8, 10, 12)
    ]
    for target in instances:
        y0 = _sample_for(target, rng)
        problem = make_problem(target, y0)
        traj = integrate(problem, y0, cfg, record="all")
        for state in traj.samples:
            worst_res = max(worst_res, homotopy_residual(problem, state))
    rows.append(("homotopy residual <= 1e-6", worst_res <= 1e-6, f"max {worst_res:.2e}"))

    # Finite-difference derivative identity.
    worst_fd = 0.0
    for target in instances:
        if target.degree > 8:
            continue
        y0 = _sample_for(target, rng)
        problem = make_problem(target, y0)
        traj = integrate(problem, y0, cfg, record="all")
        worst_fd = max(worst_fd, identity_fd_check(problem, traj, h=1e-4))
    rows.append(("derivative identity (fd) <= 1e-5", worst_fd <= 1e-5, f"max {worst_fd:.2e}"))

    # Vieta round trip through the full solver.
    worst_rt = 0.0
    for target in instances:
        report = solve(target, SolverConfig(seed=seed))
        back = coeffs_from_roots(report.roots)
        scale = np.maximum(np.abs(target.coeffs), 1.0)
        worst_rt = max(worst_rt, float(np.max(np.abs(back.coeffs - target.coeffs) / scale)))
    rows.append(("Vieta round trip <= 1e-6", worst_rt <= 1e-6, f"max {worst_rt:.2e}"))

    all_ok = True
    for name, passed, detail in rows:
        print(f"{'PASS' if passed else 'FAIL'}  {name}  [{detail}]")
        all_ok &= passed
    return EXIT_OK if all_ok else EXIT_NO_SOLUTION


def _sample_for(target: MonicPolynomial, rng: np.random.Generator) -> np.ndarray:
    from .poly import cauchy_root_bound
    from .solver import sample_initial_data

    return sample_initial_data(target.degree, cauchy_root_bound(target), rng)


def _parse_degree_range(text: str) -> range:
    m = re.match(r"^(\d+)(?:\.\.(\d+))?$", text)
    if not m:
        raise ComplexParseError(f"bad degree range {text!r} (expected a..b)")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 2 or hi < lo:
        raise ComplexParseError(f"bad degree range {text!r}")
    return range(lo, hi + 1)


def _cmd_bench(args) -> int:
    seed = _resolve_seed(args)
    degrees = _parse_degree_range(args.degrees)
    print(f"{'N':>4} {'median_ms':>10} {'restart_rate':>13} {'oracle_max_dist':>16}")
    for n in degrees:
        rng = np.random.default_rng(seed + 1000 * n)
        times = []
        restarts = 0
        oracle_worst = 0.0
        for trial in range(args.trials):
            target = _unit_disc_polynomial(n, rng)
            cfg = SolverConfig(seed=seed + trial)
            t0 = time.perf_counter()
            try:
                report = solve(target, cfg)
            except (NoConvergence, ResidualTooLarge) as exc:
                print(f"  degree {n} trial {trial}: {exc}", file=sys.stderr)
                continue
            times.append(time.perf_counter() - t0)
            restarts += report.restarts_used
            try:
                ref = durand_kerner(target, tol=1e-13, max_iters=2000)
            except PolyflowError:
                continue
            _, d = match_root_sets(report.roots, ref)
            oracle_worst = max(oracle_worst, d)
        med = statistics.median(times) * 1e3 if times else float("nan")
        print(
            f"{n:>4} {med:>10.3f} {restarts / max(1, args.trials):>13.3f} "
            f"{oracle_worst:>16.3e}"
        )
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyflow",
        description="All zeros of a complex monic polynomial via a root-flow ODE.",
    )
    parser.add_argument("--version", action="version", version=f"polyflow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute all roots")
    p_solve.add_argument("--coeffs", action="append",
                         help='comma-separated c1..cN, e.g. "0,-1"')
    p_solve.add_argument("--roots", action="append",
                         help="comma-separated roots; polynomial built via Vieta")
    p_solve.add_argument("--input", help="JSON file with 'coeffs' or 'roots'")
    p_solve.add_argument("--leading", help="leading coefficient for non-monic input")
    p_solve.add_argument("--seed", type=int)
    p_solve.add_argument("--starts", type=int, default=3)
    p_solve.add_argument("--rtol", type=float, default=1e-10)
    p_solve.add_argument("--atol", type=float, default=1e-12)
    p_solve.add_argument("--max-restarts", type=int, default=5)
    p_solve.add_argument("--no-polish", action="store_true")
    p_solve.add_argument("--trajectory", help="write accepted-step samples to CSV")
    p_solve.add_argument("--output", choices=("json", "csv", "plain"), default="json")
    p_solve.set_defaults(fn=_cmd_solve)

    p_check = sub.add_parser("check", help="run the invariant suite")
    p_check.add_argument("--seed", type=int)
    p_check.set_defaults(fn=_cmd_check)

    p_bench = sub.add_parser("bench", help="desk-scale benchmark")
    p_bench.add_argument("--degrees", default="2..10", help="range a..b")
    p_bench.add_argument("--trials", type=int, default=10)
    p_bench.add_argument("--seed", type=int)
    p_bench.set_defaults(fn=_cmd_bench)
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (ComplexParseError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NoConvergence, ResidualTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except PolyflowError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
