"""Command-line front end.

Subcommands::

    emden-dq solve    --problem ex7 [--n 35 --digits 60 ...]
    emden-dq zeros    --m 1.5,2,2.5,3 [...]
    emden-dq converge --problem ex7 --n 10,20,30 [...]
    emden-dq figure   --problem standard:m=3 [...]
    emden-dq --fixtures            # run the acceptance checks

Every command writes a delimited table (CSV by default, markdown with
``--format markdown``) whose header records the full run configuration, so
identical configurations produce byte-identical files. Numbers in CSV carry
the full working precision and round-trip through the decimal strings;
markdown rounds to 10 significant digits for side-by-side reading.

Option precedence: explicit flags > config file (``--config``, flat
``key=value`` lines) > the EMDEN_DQ_DIGITS environment variable (digits
only) > per-problem catalog defaults.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from mpmath import mp, nstr

from . import oracles, problems
from .errors import (
    EmdenDQError,
    NewtonDiverged,
    NoZeroInDomain,
    PrecisionInsufficient,
    SingularMatrix,
    UnknownProblem,
)
from .kernels import GAUSSIAN, Kernel, resolve_family
from .numerics import PrecisionContext
from .problems import (
    CLOSURE_COLLOCATION,
    CLOSURE_LEAST_SQUARES,
    STANDARD_FIRST_ZEROS,
    first_zero,
    problem_by_name,
    solve,
)

EXIT_OK = 0
EXIT_DIVERGED = 2
EXIT_PRECISION = 3
EXIT_UNKNOWN_PROBLEM = 4
EXIT_IO = 5

ENV_DIGITS = "EMDEN_DQ_DIGITS"


@dataclass
class RunConfig:
    """Resolved options for one command invocation."""

    problem: str = ""
    n: int | None = None
    domain: float | None = None
    kernel: str = GAUSSIAN
    c: float = 1.0
    digits: int = 50
    closure: str = CLOSURE_COLLOCATION
    x0: str | None = None
    format: str = "csv"
    out: str = "-"

    def context(self) -> PrecisionContext:
        return PrecisionContext(self.digits)

    def make_kernel(self) -> Kernel:
        return Kernel(self.kernel, self.c)


# ---------------------------------------------------------------------------
# Table writer
# ---------------------------------------------------------------------------


def _fmt_full(value, digits: int) -> str:
    """Round-trip-safe decimal form at the working precision."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    with mp.workdps(digits):
        return nstr(mp.mpf(value), digits, strip_zeros=True)


def _fmt_display(value, digits: int) -> str:
    """Rounded form for markdown tables (10 significant digits)."""
    if isinstance(value, str):
        return value
    with mp.workdps(max(digits, 15)):
        return nstr(mp.mpf(value), 10, strip_zeros=True)


def render_table(header: dict, columns: list, rows: list, fmt: str, digits: int) -> str:
    """Render rows to CSV or markdown with the run header on top."""
    lines = []
    if fmt == "csv":
        for k, v in header.items():
            lines.append(f"# {k}={v}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(
                ",".join(
                    v if isinstance(v, str) else _fmt_full(v, digits) for v in row
                )
            )
    elif fmt == "markdown":
        for k, v in header.items():
            lines.append(f"- {k}: {v}")
        lines.append("")
        lines.append("| " + " | ".join(columns) + " |")
        lines.append("|" + "|".join(" --- " for _ in columns) + "|")
        for row in rows:
            lines.append(
                "| " + " | ".join(_fmt_display(v, digits) for v in row) + " |"
            )
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str) -> None:
    if out in ("-", ""):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Shared command plumbing
# ---------------------------------------------------------------------------


def decimal_num(ctx, x):
    """Context scalar from the shortest decimal form of ``x``.

    Probe abscissae are decimal by intent (0.01 means one hundredth, not
    the nearest binary double), so floats go through their repr.
    """
    return ctx.num(repr(x) if isinstance(x, float) else x)


def _reference_values(prob, ctx, xs):
    """Reference values aligned with ``xs``: closed form, else the RK oracle."""
    with ctx.scope():
        xs = [decimal_num(ctx, x) for x in xs]
        if prob.reference is not None:
            return [prob.reference(x) for x in xs], "closed-form"
        rel_tol = max(1e-12, 10.0 ** (-(ctx.decimal_digits - 6)))
        x_end = max(xs)
        positive = sorted(x for x in xs if x > 0)
        curve = oracles.rk_reference(prob, x_end, rel_tol, ctx, sample_at=positive)
        return [
            ctx.num(prob.y0) if x == 0 else curve.eval(x) for x in xs
        ], "rk-adaptive"


def _run_header(cfg: RunConfig, prob, sol=None, extra=()):
    header = {
        "problem": prob.name,
        "n": cfg.n,
        "domain_length": cfg.domain,
        "kernel": cfg.kernel,
        "shape_c": cfg.c,
        "digits": cfg.digits,
        "closure": cfg.closure,
    }
    if sol is not None:
        header["condition_estimate"] = _sci(sol.condition_estimate)
        header["newton_iters"] = sol.newton_iters
        header["final_residual_norm"] = _sci(sol.final_residual_norm)
        if sol.precision_warning:
            header["precision_warning"] = (
                "condition estimate within 10 digits of working precision"
            )
    header.update(extra)
    return header


def _sci(v) -> str:
    try:
        with mp.workdps(15):
            return nstr(mp.mpf(v), 4)
    except (ValueError, TypeError):
        return str(v)


def _solve_for(cfg: RunConfig, prob):
    ctx = cfg.context()
    sol = solve(
        prob,
        N=cfg.n,
        L=cfg.domain,
        k=cfg.make_kernel(),
        ctx=ctx,
        x0_strategy=cfg.x0,
        closure=cfg.closure,
    )
    if sol.precision_warning:
        print(
            f"warning: {prob.name}: interpolation condition estimate "
            f"{_sci(sol.condition_estimate)} is within 10 digits of the "
            f"working precision ({cfg.digits} digits)",
            file=sys.stderr,
        )
    return sol


def _fill_defaults(cfg: RunConfig, prob) -> None:
    if cfg.n is None:
        cfg.n = prob.default_N
    if cfg.domain is None:
        cfg.domain = prob.default_L


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_solve(cfg: RunConfig) -> int:
    prob = problem_by_name(cfg.problem)
    _fill_defaults(cfg, prob)
    ctx = cfg.context()
    sol = _solve_for(cfg, prob)
    refs, ref_kind = _reference_values(prob, ctx, prob.probe_points)
    columns = ["x", "y_rbfdq", "y_reference", "abs_error", "residual"]
    rows = []
    with ctx.scope():
        for x, ref in zip(prob.probe_points, refs):
            xv = decimal_num(ctx, x)
            y = sol.y_at(xv)
            y_str = _fmt_full(y, cfg.digits)
            ref_str = _fmt_full(ref, cfg.digits)
            # abs_error is recomputed from the serialized columns so the
            # emitted file is exactly self-consistent.
            err = abs(ctx.num(y_str) - ctx.num(ref_str))
            res = abs(sol.residual_at(xv))
            rows.append([_fmt_full(xv, cfg.digits), y_str, ref_str, err, res])
    header = _run_header(cfg, prob, sol, extra={"reference": ref_kind})
    _emit(render_table(header, columns, rows, cfg.format, cfg.digits), cfg.out)
    return EXIT_OK


def cmd_zeros(cfg: RunConfig, m_values: list) -> int:
    ctx = cfg.context()
    columns = ["m", "N", "zero_rbfdq", "zero_reference", "abs_diff"]
    rows = []
    failed = False
    rel_tol = max(1e-10, 10.0 ** (-(ctx.decimal_digits - 6)))
    ref_ctx = PrecisionContext(max(30, min(ctx.decimal_digits, 40)))
    for m in m_values:
        prob = problems.standard_problem(m)
        n_used = cfg.n if cfg.n is not None else prob.default_N
        run = RunConfig(**{**cfg.__dict__, "n": n_used, "domain": cfg.domain})
        if run.domain is None:
            run.domain = prob.default_L
        try:
            sol = _solve_for(run, prob)
            zero = first_zero(sol)
            ref = oracles.first_zero_reference(m, rel_tol, ref_ctx)
            with ctx.scope():
                diff = abs(ctx.num(zero) - ctx.num(ref))
            rows.append([f"{m:g}", n_used, zero, ref, diff])
        except (NoZeroInDomain, NewtonDiverged) as err:
            rows.append([f"{m:g}", n_used, f"error:{type(err).__name__}", "", ""])
            failed = True
    header = {
        "command": "zeros",
        "kernel": cfg.kernel,
        "shape_c": cfg.c,
        "digits": cfg.digits,
        "closure": cfg.closure,
    }
    _emit(render_table(header, columns, rows, cfg.format, cfg.digits), cfg.out)
    return EXIT_DIVERGED if failed else EXIT_OK


def cmd_converge(cfg: RunConfig, n_values: list) -> int:
    prob = problem_by_name(cfg.problem)
    ctx = cfg.context()
    refs, ref_kind = _reference_values(prob, ctx, prob.probe_points)
    columns = ["N", "max_abs_error", "condition_estimate"]
    rows = []
    for n in n_values:
        run = RunConfig(**{**cfg.__dict__, "n": n})
        _fill_defaults(run, prob)
        sol = _solve_for(run, prob)
        with ctx.scope():
            err = max(
                abs(sol.y_at(decimal_num(ctx, x)) - ref)
                for x, ref in zip(prob.probe_points, refs)
            )
        rows.append([n, err, sol.condition_estimate])
    header = _run_header(cfg, prob, extra={"command": "converge", "reference": ref_kind})
    header.pop("n", None)
    _emit(render_table(header, columns, rows, cfg.format, cfg.digits), cfg.out)
    return EXIT_OK


def cmd_figure(cfg: RunConfig) -> int:
    prob = problem_by_name(cfg.problem)
    _fill_defaults(cfg, prob)
    ctx = cfg.context()
    sol = _solve_for(cfg, prob)
    n_samples = 400
    with ctx.scope():
        L = ctx.num(cfg.domain)
        xs = [L * i / (n_samples - 1) for i in range(n_samples)]
    refs, ref_kind = _reference_values(prob, ctx, xs)
    columns = ["x", "y_rbfdq", "y_reference"]
    rows = []
    with ctx.scope():
        for x, ref in zip(xs, refs):
            rows.append([x, sol.y_at(x), ref])
    header = _run_header(cfg, prob, sol, extra={"command": "figure", "reference": ref_kind})
    _emit(render_table(header, columns, rows, cfg.format, cfg.digits), cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key=value): {line!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


_CONFIG_KEYS = {
    "problem": str,
    "n": int,
    "domain": float,
    "kernel": str,
    "c": float,
    "digits": int,
    "closure": str,
    "x0": str,
    "format": str,
    "out": str,
}


def _build_config(args) -> RunConfig:
    file_values = {}
    if args.config:
        raw = _load_config_file(args.config)
        for key, value in raw.items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            file_values[key] = _CONFIG_KEYS[key](value)
    cfg = RunConfig()
    env_digits = os.environ.get(ENV_DIGITS)
    if env_digits:
        cfg.digits = int(env_digits)
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
        elif key in file_values:
            setattr(cfg, key, file_values[key])
    cfg.kernel = resolve_family(cfg.kernel)
    if cfg.closure not in (CLOSURE_COLLOCATION, CLOSURE_LEAST_SQUARES):
        raise ValueError(f"unknown closure {cfg.closure!r}")
    return cfg


def _add_common(p: argparse.ArgumentParser, with_problem: bool = True) -> None:
    if with_problem:
        p.add_argument("--problem", help="catalog name, e.g. ex7 or standard:m=2")
    p.add_argument("--n", type=int, help="number of collocation nodes")
    p.add_argument("--domain", type=float, help="domain length L")
    p.add_argument("--kernel", help="kernel family: gaussian, mq, imq, iq")
    p.add_argument("--c", type=float, help="kernel shape parameter (default 1)")
    p.add_argument("--digits", type=int, help="working decimal digits (default 50)")
    p.add_argument(
        "--closure",
        help="collocation (square system) or least-squares (all residuals)",
    )
    p.add_argument("--x0", help="initial guess: constant or linear-decay")
    p.add_argument("--format", choices=["csv", "markdown"], help="output format")
    p.add_argument("--out", help="output path ('-' for stdout)")
    p.add_argument("--config", help="flat key=value config file")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emden-dq",
        description="Meshless RBF differential-quadrature solver for "
        "Lane-Emden type initial value problems.",
    )
    parser.add_argument(
        "--fixtures",
        action="store_true",
        help="run the acceptance checks and print PASS/FAIL per criterion",
    )
    sub = parser.add_subparsers(dest="command")
    p_solve = sub.add_parser("solve", help="solve one problem and tabulate it")
    _add_common(p_solve)
    p_zeros = sub.add_parser("zeros", help="first zeros of the standard family")
    p_zeros.add_argument("--m", default="1.5,2,2.5,3,4", help="comma-separated indices")
    _add_common(p_zeros, with_problem=False)
    p_conv = sub.add_parser("converge", help="error versus node count")
    p_conv.add_argument("--n-list", help="comma-separated node counts (or --n)")
    _add_common(p_conv)
    p_fig = sub.add_parser("figure", help="dense samples for external plotting")
    _add_common(p_fig)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.fixtures:
        from . import fixtures

        return fixtures.run_all(verbose=True)
    if not args.command:
        _parser().print_help()
        return EXIT_OK
    try:
        cfg = _build_config(args)
        if args.command == "solve":
            if not cfg.problem:
                raise UnknownProblem("no problem given (use --problem)")
            return cmd_solve(cfg)
        if args.command == "zeros":
            m_values = [float(tok) for tok in args.m.split(",") if tok.strip()]
            return cmd_zeros(cfg, m_values)
        if args.command == "converge":
            if not cfg.problem:
                raise UnknownProblem("no problem given (use --problem)")
            if args.n_list:
                n_values = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
            elif cfg.n is not None:
                n_values = [cfg.n]
            else:
                n_values = [problem_by_name(cfg.problem).default_N]
            return cmd_converge(cfg, n_values)
        if args.command == "figure":
            if not cfg.problem:
                raise UnknownProblem("no problem given (use --problem)")
            return cmd_figure(cfg)
        raise ValueError(f"unknown command {args.command!r}")
    except UnknownProblem as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_UNKNOWN_PROBLEM
    except (PrecisionInsufficient, SingularMatrix) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECISION
    except (NewtonDiverged, NoZeroInDomain) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DIVERGED
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except (EmdenDQError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
