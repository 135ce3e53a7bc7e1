"""
Command-line front end.

    uhankel revert   --a 1.5,1.75,1.875          inverse coefficients
    uhankel verify   --target h3 --lambda 1/4    optimizer + oracle vs closed form
    uhankel sweep    --target h3 --lambda-min 0.05 --lambda-max 1 --steps 20 --out h3.csv
    uhankel extremal f2 --lambda 1               coefficients, determinants, deviation

Exit status: 0 verified, 1 usage or domain error, 2 invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

import numpy as np

from . import __version__
from .bounds import (
    SHARPNESS_RTOL,
    SOUNDNESS_TOL,
    BoundReport,
    SearchConfig,
    Target,
    brute_force_oracle,
    maximize,
)
from .coeffs import DirectCoeffs, inverse_coeffs_from_direct
from .errors import ConvergenceError, UHankelError
from .hankel import H2_2, H3_1, hankel_det
from .series import TruncatedSeries, series_revert
from .uclass import CATALOG, DEFAULT_RADIUS, DEFAULT_SAMPLES, extremal, u_deviation

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
ORACLE_AGREEMENT = 1e-3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return f"{x:.15g}"


def rounded(x: float) -> float:
    return float(fmt(x)) + 0.0


def parse_real(text: str) -> float:
    """Decimal or simple fraction such as '1/4'."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a real number: {text!r}") from None


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    try:
        return complex(parse_real(s))
    except UsageError:
        pass
    try:
        value = complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise UsageError(f"not finite: {text!r}")
    return value


def _cjson(z: complex) -> dict:
    return {"re": rounded(z.real), "im": rounded(z.imag)}


# ---------------------------------------------------------------------------
# sweep rows
# ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    lam: float
    target: str
    closed_form: float
    optimizer_max: float
    oracle_max: float
    gap: float
    a2_mod: float
    a2_arg: float
    c1_mod: float
    c1_arg: float
    c2_mod: float
    c2_arg: float
    c3_mod: float
    c3_arg: float
    wall_time_ms: int

    @classmethod
    def from_report(cls, r: BoundReport, oracle_max: float, wall_time_ms: int = 0) -> SweepRow:
        p = r.argmax
        polar = []
        for z in (p.a2, *p.schwarz.as_tuple()):
            polar += [abs(z), math.atan2(z.imag, z.real) if z != 0 else 0.0]
        return cls(r.lam, r.target.value, r.closed_form, r.optimizer_max, oracle_max, r.gap, *polar, wall_time_ms)

    @staticmethod
    def header() -> list[str]:
        return ["lambda" if f.name == "lam" else f.name for f in fields(SweepRow)]

    def cells(self) -> list[str]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            out.append(fmt(v) if isinstance(v, float) else str(v))
        return out

    def as_json(self) -> dict:
        d = {"lambda" if k == "lam" else k: v for k, v in asdict(self).items()}
        return {k: rounded(v) if isinstance(v, float) else v for k, v in d.items()}

    @classmethod
    def from_cells(cls, cells: dict) -> SweepRow:
        kwargs = {}
        for f in fields(cls):
            raw = cells["lambda" if f.name == "lam" else f.name]
            kwargs[f.name] = raw if f.name == "target" else (int(raw) if f.name == "wall_time_ms" else float(raw))
        return cls(**kwargs)


def write_csv(rows: list[SweepRow], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(SweepRow.header())
    for r in rows:
        w.writerow(r.cells())


def read_csv(stream) -> list[SweepRow]:
    return [SweepRow.from_cells(d) for d in csv.DictReader(stream)]


def _run_one(args) -> tuple[BoundReport, float, int]:
    lam, target, cfg, oracle_grid = args
    t0 = time.perf_counter()
    report = maximize(lam, target, cfg)
    oracle = brute_force_oracle(lam, target, oracle_grid, cfg.enforce_a3_constraint)
    return report, oracle, int(round(1000 * (time.perf_counter() - t0)))


def run_sweep(target, lambdas, cfg, oracle_grid=200, workers=1, timing=False) -> list[SweepRow]:
    """One row per lambda, in the order given, whatever the completion order."""
    jobs = [(float(lam), Target.parse(target), cfg, oracle_grid) for lam in lambdas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return [SweepRow.from_report(r, o, ms if timing else 0) for r, o, ms in results]


def crossover_bracket(rows: list[SweepRow]) -> tuple[float, float] | None:
    """First pair of consecutive lambdas between which the H3 argmax family flips."""
    fam = ["c1" if r.c1_mod >= 0.5 else "c2" for r in rows]
    for i in range(1, len(rows)):
        if fam[i] != fam[i - 1]:
            return rows[i - 1].lam, rows[i].lam
    return None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _config(args) -> SearchConfig:
    return SearchConfig(
        grid_points_per_axis=args.grid,
        refine_iterations=args.refine,
        tol_opt=args.tol,
        enforce_a3_constraint=args.enforce_a3 == "on",
        seed=args.seed,
    )


def cmd_revert(args, out) -> int:
    if args.a is not None:
        tail = [parse_complex(t) for t in args.a.split(",") if t.strip()]
    elif args.family:
        lam = parse_real(args.lam)
        f = extremal(args.family, lam, parse_real(args.phi))
        tail = list(f.series(max(args.order, 5))[2:])
    else:
        raise UsageError("give --a or --family")
    if args.order < 2:
        raise UsageError("--order must be >= 2")
    f = TruncatedSeries.normalized(tail, args.order)
    g = series_revert(f)
    result = {
        "order": args.order,
        "a": {f"a{k}": _cjson(complex(f[k])) for k in range(2, args.order + 1)},
        "A": {f"A{k}": _cjson(complex(g[k])) for k in range(2, args.order + 1)},
    }
    if args.order <= 5:
        padded = TruncatedSeries.normalized(tail, 5)
        closed = inverse_coeffs_from_direct(DirectCoeffs(*(complex(padded[k]) for k in range(2, 6))))
        closed_vals = closed.as_tuple()[: args.order - 1]
        result["closed_form"] = {f"A{k + 2}": _cjson(v) for k, v in enumerate(closed_vals)}
        result["max_discrepancy"] = max(abs(v - g[k + 2]) for k, v in enumerate(closed_vals))
    json.dump(result, out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    lam = parse_real(args.lam)
    cfg = _config(args)
    target = Target.parse(args.target)
    try:
        report = maximize(lam, target, cfg)
        status = None
    except ConvergenceError as exc:
        report, status = exc.best, str(exc)
    oracle = brute_force_oracle(lam, target, args.oracle_grid, cfg.enforce_a3_constraint)
    row = SweepRow.from_report(report, oracle)

    checks = {
        "sound": report.sound() and (not report.claimed or oracle <= report.closed_form + SOUNDNESS_TOL),
        "sharp": report.sharp(),
        "oracle_agrees": oracle >= report.optimizer_max - ORACLE_AGREEMENT,
        "feasible": report.min_slack() >= -SOUNDNESS_TOL,
        "converged": status is None,
    }
    payload = row.as_json()
    payload.pop("wall_time_ms")
    payload.update(
        claimed=report.claimed,
        family=report.family,
        constraint_residuals={k: rounded(v) for k, v in report.constraint_residuals.items()},
        checks=checks,
    )
    if not report.claimed:
        payload["note"] = "unconditional region: no bound is claimed without the |a3| hypothesis"
    if status:
        payload["convergence"] = status
    json.dump(payload, out, indent=2)
    out.write("\n")
    return EXIT_OK if all(checks.values()) else EXIT_VIOLATION


def cmd_sweep(args, out) -> int:
    lo, hi = parse_real(args.lambda_min), parse_real(args.lambda_max)
    if not (0 < lo <= hi <= 1):
        raise UsageError("need 0 < lambda-min <= lambda-max <= 1")
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    cfg = _config(args)
    lambdas = np.linspace(lo, hi, args.steps)
    t0 = time.perf_counter()
    rows = run_sweep(args.target, lambdas, cfg, args.oracle_grid, args.workers, args.timing)

    buf = io.StringIO()
    if args.format == "csv":
        write_csv(rows, buf)
    else:
        json.dump([r.as_json() for r in rows], buf, indent=2)
        buf.write("\n")
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        out.write(buf.getvalue())

    max_gap = max(abs(r.gap) for r in rows)
    summary = [f"rows: {len(rows)}", f"max |gap|: {fmt(max_gap)}"]
    if Target.parse(args.target) is Target.H3_1:
        br = crossover_bracket(rows)
        summary.append("crossover: none" if br is None else f"crossover: ({fmt(br[0])}, {fmt(br[1])}]")
    summary.append(f"elapsed: {time.perf_counter() - t0:.2f} s")
    print("\n".join(summary), file=sys.stderr)
    violated = any(
        r.optimizer_max > r.closed_form + SOUNDNESS_TOL or r.gap > SHARPNESS_RTOL * r.closed_form for r in rows
    )
    return EXIT_VIOLATION if violated and cfg.enforce_a3_constraint else EXIT_OK


def cmd_extremal(args, out) -> int:
    lam = parse_real(args.lam)
    f = extremal(args.name, lam, parse_real(args.phi))
    s = f.series(8)
    g = series_revert(s)
    payload = {
        "name": args.name,
        "lambda": rounded(lam),
        "denominator": [_cjson(c) for c in f.denom],
        "a": {f"a{k}": _cjson(complex(s[k])) for k in range(2, 6)},
        "A": {f"A{k}": _cjson(complex(g[k])) for k in range(2, 6)},
        "H2_2_inverse": _cjson(hankel_det(H2_2, g.coeffs)),
        "H3_1_inverse": _cjson(hankel_det(H3_1, g.coeffs)),
        "deviation": rounded(u_deviation(f, args.radius, args.samples)),
        "radius": args.radius,
    }
    payload["member"] = payload["deviation"] <= lam
    json.dump(payload, out, indent=2)
    out.write("\n")
    return EXIT_OK


def _search_flags(p):
    p.add_argument("--target", required=True, choices=["h2", "h3"])
    p.add_argument("--grid", type=int, default=8, help="grid points per search axis")
    p.add_argument("--refine", type=int, default=4000, help="Nelder-Mead iteration cap per restart")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--enforce-a3", choices=["on", "off"], default="on")
    p.add_argument("--oracle-grid", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="uhankel", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("revert", help="inverse-series coefficients")
    p.add_argument("--a", help="comma-separated a2,a3,... (complex like 1+2j or fractions like 1/4)")
    p.add_argument("--family", choices=sorted(CATALOG), help="take a2.. from a catalog function instead")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--phi", default="0")
    p.add_argument("--order", type=int, default=5)
    p.set_defaults(func=cmd_revert)

    p = sub.add_parser("verify", help="reproduce one bound numerically")
    _search_flags(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="verify a bound across a lambda grid")
    _search_flags(p)
    p.add_argument("--lambda-min", required=True)
    p.add_argument("--lambda-max", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill wall_time_ms (output is then not reproducible)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("extremal", help="certificate for a catalog function")
    p.add_argument("name", choices=sorted(CATALOG))
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--phi", default="0")
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_extremal)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, UHankelError) as exc:
        print(f"uhankel {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
