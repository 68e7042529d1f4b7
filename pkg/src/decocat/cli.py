"""decocat command line: figure data as CSV, plus the self-verification suite.

Exit codes: 0 success, 1 invalid arguments, 2 I/O failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import math
import shlex
import sys
from pathlib import Path

from . import __version__, cat_state, checks, measurement
from .numerics import RNG_ALGORITHM, GridSpec

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_Q_ENV = (1.0, 0.8, 0.6, 0.4, 0.2, 0.0)


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return float.__repr__(x)
    return str(x)


def metadata_lines(command: str, params: dict, seed=None, rng: str | None = None) -> list[str]:
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return [
        f"# command: {command}",
        "# parameters: " + " ".join(f"{k}={_fmt(v)}" for k, v in params.items()),
        f"# seed: {'' if seed is None else seed}",
        f"# rng: {rng or 'none'}",
        f"# version: decocat {__version__}",
        f"# timestamp: {stamp}",
    ]


def write_csv(path: Path, meta: list[str], header: list[str], rows) -> None:
    # fields are numbers or empty, so no quoting is needed
    with open(path, "w", newline="") as fh:
        fh.write("".join(line + "\n" for line in meta))
        fh.write(",".join(header) + "\n")
        fh.writelines(row if isinstance(row, str) else ",".join(map(_fmt, row)) + "\n" for row in rows)


def data_rows(path) -> list[str]:
    """Non-comment lines of a decocat CSV (header included)."""
    with open(path) as fh:
        return [line for line in fh if not line.startswith("#")]


def _grid(args) -> GridSpec:
    try:
        return GridSpec(args.grid_min, args.grid_max, args.points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_fringes(alpha: float, q_env_list, grid: GridSpec, out: Path, command: str = "fringes") -> int:
    """Momentum fringes of one system mode for each environment overlap, plus a visibility summary."""
    if not alpha > 0:
        raise UsageError("--alpha must be positive")
    for q in q_env_list:
        if not 0.0 <= q <= 1.0:
            raise UsageError(f"--q-env values must lie in [0, 1], got {q}")
    out.mkdir(parents=True, exist_ok=True)
    params = dict(alpha=alpha, grid_min=grid.grid_min, grid_max=grid.grid_max, points=grid.points)
    summary = []
    for i, q in enumerate(q_env_list):
        dens = cat_state.fringe_marginal(alpha, q, grid)
        meta = metadata_lines(command, {**params, "q_env": q})
        meta.append(f"# normalization_residual: {dens.normalization_residual!r}")
        write_csv(out / f"fringe_{i:02d}.csv", meta, ["p", "density"], zip(dens.nodes.tolist(), dens.values.tolist()))
        summary.append((q, cat_state.fringe_visibility(dens), q))
    write_csv(
        out / "summary.csv",
        metadata_lines(command, {**params, "q_env": ",".join(map(repr, q_env_list))}),
        ["q_env", "visibility_measured", "visibility_analytic"],
        summary,
    )
    return EXIT_OK


def dynamics_rows(alpha: float, n: int, m_step: int, m_max: int):
    for m in range(0, m_max + 1, m_step):
        eff = cat_state.EffectiveCat(a=math.sqrt((n - m) * alpha * alpha), b=math.sqrt(m * alpha * alpha))
        s = cat_state.effective_summary(eff)
        yield m, m * alpha * alpha, cat_state.env_visibility_identical(m, alpha), s.V, s.K


def cmd_dynamics(alpha: float, n: int, m_step: int, m_max: int, out: Path, command: str = "dynamics") -> int:
    """Visibility and Schmidt number as environment modes are added."""
    if not alpha > 0:
        raise UsageError("--alpha must be positive")
    if m_step < 1 or m_max < 0:
        raise UsageError("--m-step must be >= 1 and --m-max >= 0")
    if m_max >= n:
        raise UsageError(f"--m-max ({m_max}) must be below --n ({n})")
    try:
        measurement.check_mode_count(n, alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_csv(
        out,
        metadata_lines(command, dict(alpha=alpha, n=n, m_step=m_step, m_max=m_max)),
        ["m", "photons_reduced", "V_eq19", "V_schmidt", "K"],
        dynamics_rows(alpha, n, m_step, m_max),
    )
    return EXIT_OK


def collapse_rows(trajectories):
    """Pre-formatted CSV lines; the m = 0 row has an empty y."""
    for traj in trajectories:
        i = traj.index
        ys = [""] + list(map(repr, traj.ys.tolist()))
        series = zip(ys, traj.p_plus_series.tolist(), traj.h_series.tolist())
        yield from (f"{i},{m},{y},{p!r},{h!r}\n" for m, (y, p, h) in enumerate(series))


def cmd_collapse(
    alpha: float, m_max: int, trajectories: int, seed: int, out: Path, command: str = "collapse"
) -> int:
    """Long-format collapse trajectories: trajectory_id, m, y, p_plus, health."""
    if not alpha > 0:
        raise UsageError("--alpha must be positive")
    if trajectories < 1 or m_max < 0:
        raise UsageError("--trajectories must be >= 1 and --m-max >= 0")
    try:
        threads = measurement.thread_count()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    runs = measurement.ensemble(alpha, m_max, trajectories, seed, threads=threads)
    write_csv(
        out,
        metadata_lines(command, dict(alpha=alpha, m_max=m_max, trajectories=trajectories), seed, RNG_ALGORITHM),
        ["trajectory_id", "m", "y", "p_plus", "health"],
        collapse_rows(runs),
    )
    return EXIT_OK


def cmd_verify(out: Path | None = None, stream=None) -> int:
    """Run every bundled oracle check and print a PASS/FAIL table."""
    stream = stream or sys.stdout
    results = checks.run_all()
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    for line in lines:
        print(line, file=stream)
    if out is not None:
        out.write_text("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="decocat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"decocat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fringes", help="momentum fringes versus environment overlap")
    p.add_argument("--alpha", type=float, default=3.4)
    p.add_argument("--q-env", type=float, action="append", help="environment overlap; repeatable")
    p.add_argument("--beta", type=float, action="append", help="environment amplitude, q_env = exp(-2 beta^2); repeatable")
    p.add_argument("--grid-min", type=float, default=-6.0)
    p.add_argument("--grid-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=2401)
    p.add_argument("--out", type=Path, default=Path("fringes"), help="output directory")

    p = sub.add_parser("dynamics", help="visibility and Schmidt number versus environment size")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--m-step", type=int, default=100)
    p.add_argument("--m-max", type=int, default=20_000)
    p.add_argument("--out", type=Path, default=Path("dynamics.csv"))

    p = sub.add_parser("collapse", help="sequential-measurement collapse trajectories")
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--m-max", type=int, default=20_000)
    p.add_argument("--trajectories", type=int, default=15)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", type=Path, default=Path("collapse.csv"))

    p = sub.add_parser("verify", help="run the bundled verification checks")
    p.add_argument("--out", type=Path, default=None, help="also write the report here")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    command = "decocat " + shlex.join(argv)
    try:
        if args.command == "fringes":
            q_env = list(args.q_env or [])
            q_env += [math.exp(-2.0 * b * b) for b in args.beta or []]
            return cmd_fringes(args.alpha, q_env or list(DEFAULT_Q_ENV), _grid(args), args.out, command)
        if args.command == "dynamics":
            return cmd_dynamics(args.alpha, args.n, args.m_step, args.m_max, args.out, command)
        if args.command == "collapse":
            return cmd_collapse(args.alpha, args.m_max, args.trajectories, args.seed, args.out, command)
        return cmd_verify(args.out)
    except UsageError as exc:
        print(f"decocat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"decocat: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
