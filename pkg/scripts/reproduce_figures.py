#!/usr/bin/env python3
"""Regenerate the data behind the four figures, and optionally plot it.

    python scripts/reproduce_figures.py --out figures/ [--plot]

Writes fig1/ (fringes), fig2_dynamics.csv, fig2_profiles.csv and
fig34_collapse.csv. Plotting needs matplotlib.
"""

import argparse
import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from decocat import cli
from decocat.cat_state import MultimodeCat, effective_params, total_momentum_marginal
from decocat.numerics import GridSpec


@dataclass
class FigureConfig:
    fringe_alpha: float = 3.4
    betas: list = field(default_factory=lambda: [0.0, 0.2, 0.35, 0.5, 0.7, 1.0])
    alpha: float = 0.01
    n_dynamics: int = 100_000
    m_max: int = 20_000
    profile_ms: list = field(default_factory=lambda: [0, 2000, 5000, 11_000])
    trajectories: int = 15
    seed: int = 42


def write_profiles(cfg: FigureConfig, path: Path) -> None:
    """Total-momentum fringes of the system for a few environment sizes."""
    with open(path, "w", newline="") as fh:
        fh.writelines(line + "\n" for line in cli.metadata_lines("reproduce_figures profiles", vars(cfg)))
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m", "p", "density"])
        for m in cfg.profile_ms:
            cat = MultimodeCat.identical(cfg.alpha, cfg.n_dynamics, m)
            n_sys = cfg.n_dynamics - m
            half = 8 * math.sqrt(n_sys)
            dens = total_momentum_marginal(effective_params(cat), n_sys, GridSpec(-half, half, 4001))
            w.writerows([m, repr(p), repr(v)] for p, v in zip(dens.nodes.tolist(), dens.values.tolist()))


def read(path):
    return list(csv.DictReader(io.StringIO("".join(cli.data_rows(path)))))


def plot(out: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for f in sorted((out / "fig1").glob("fringe_*.csv")):
        rows = read(f)
        ax.plot([float(r["p"]) for r in rows], [float(r["density"]) for r in rows], lw=0.8, label=f.stem)
    ax.set_xlabel("p")
    ax.set_ylabel("P(p)")
    ax.legend(fontsize=6)
    fig.savefig(out / "fig1.png", dpi=150)

    rows = read(out / "fig2_dynamics.csv")
    fig, ax = plt.subplots(figsize=(6, 4))
    m = [int(r["m"]) for r in rows]
    ax.plot(m, [float(r["V_schmidt"]) for r in rows], label="V")
    ax.plot(m, [float(r["K"]) for r in rows], label="K")
    ax.set_xlabel("environment modes m")
    ax.legend()
    fig.savefig(out / "fig2.png", dpi=150)

    rows = read(out / "fig34_collapse.csv")
    fig, (a3, a4) = plt.subplots(1, 2, figsize=(11, 4))
    by_id = {}
    for r in rows:
        by_id.setdefault(r["trajectory_id"], []).append(r)
    for traj in by_id.values():
        m = [int(r["m"]) for r in traj]
        a3.plot(m, [float(r["p_plus"]) for r in traj], lw=0.7)
        a4.plot(m, [float(r["health"]) for r in traj], lw=0.7)
    a3.set_xlabel("m")
    a3.set_ylabel("p+")
    a4.set_xlabel("m")
    a4.set_ylabel("H")
    fig.savefig(out / "fig34.png", dpi=150)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()
    cfg = FigureConfig()
    args.out.mkdir(parents=True, exist_ok=True)

    q_env = [math.exp(-2 * b * b) for b in cfg.betas]
    cli.cmd_fringes(cfg.fringe_alpha, q_env, GridSpec(-6.0, 6.0, 2401), args.out / "fig1")
    cli.cmd_dynamics(cfg.alpha, cfg.n_dynamics, 100, cfg.m_max, args.out / "fig2_dynamics.csv")
    write_profiles(cfg, args.out / "fig2_profiles.csv")
    cli.cmd_collapse(cfg.alpha, cfg.m_max, cfg.trajectories, cfg.seed, args.out / "fig34_collapse.csv")
    if args.plot:
        plot(args.out)
    print(f"wrote figure data to {args.out}")


if __name__ == "__main__":
    main()
