"""Sequential coordinate measurements of environment modes.

In the identical-mode limit n alpha^2 >> 1 the unmeasured modes are a
two-branch mixture: "alive" (every coordinate centred at -alpha sqrt2) with
weight p+ and "dead" (centred at +alpha sqrt2) with weight p-. Measuring one
environment coordinate y multiplies each weight by exp(-(y +- alpha sqrt2)^2)
and renormalizes. The log-odds H = ln(p+/p-) therefore performs a random walk
with step -4 sqrt2 alpha y.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .numerics import log_sum_exp, make_rng, standard_normals

SQRT2 = math.sqrt(2.0)
BRANCH_VARIANCE = 0.5
LOG_HALF = math.log(0.5)
MIN_N_ALPHA2 = 10.0


@dataclass(frozen=True)
class CollapseState:
    k: int
    log_p_plus: float
    log_p_minus: float
    alpha: float
    sum_y: float = 0.0

    @property
    def p_plus(self) -> float:
        return math.exp(self.log_p_plus)

    @property
    def p_minus(self) -> float:
        return math.exp(self.log_p_minus)


@dataclass(frozen=True)
class Trajectory:
    seed: int
    index: int
    alpha: float
    ys: np.ndarray
    p_plus_series: np.ndarray
    h_series: np.ndarray

    @property
    def m_max(self) -> int:
        return len(self.ys)

    def h_closed_form(self) -> np.ndarray:
        """-4 sqrt2 alpha * running sum of y, aligned with `h_series`."""
        running = np.concatenate(([0.0], np.cumsum(self.ys)))
        return -4.0 * SQRT2 * self.alpha * running

    def collapse_step(self, threshold: float = 0.99) -> int | None:
        """First m with max(p+, p-) >= threshold, or None."""
        p = self.p_plus_series
        hit = np.flatnonzero(np.maximum(p, 1.0 - p) >= threshold)
        return int(hit[0]) if hit.size else None


def check_mode_count(n: int, alpha: float) -> None:
    """The two-branch model needs n alpha^2 >> 1; enforce n alpha^2 >= 10."""
    if n * alpha * alpha < MIN_N_ALPHA2:
        raise ValueError(
            f"n * alpha^2 = {n * alpha * alpha:g} < {MIN_N_ALPHA2:g}: "
            "the two-branch collapse model does not apply"
        )


def initial_state(alpha: float) -> CollapseState:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return CollapseState(k=0, log_p_plus=LOG_HALF, log_p_minus=LOG_HALF, alpha=float(alpha))


def _branch_draw(p_plus: float, shift: float, u_branch: float, z: float) -> float:
    mean = -shift if u_branch < p_plus else shift
    return mean + math.sqrt(BRANCH_VARIANCE) * z


def sample_next(state: CollapseState, rng: np.random.Generator) -> float:
    """Draw the next coordinate from the predictive two-Gaussian mixture.

    Consumes exactly two uniforms: one picks the branch, one becomes a
    standard normal by inverse CDF.
    """
    u_branch, u_noise = rng.random(2)
    z = float(standard_normals(u_noise))
    return _branch_draw(state.p_plus, SQRT2 * state.alpha, float(u_branch), z)


def bayes_update(state: CollapseState, y: float) -> CollapseState:
    shift = SQRT2 * state.alpha
    lp = state.log_p_plus - (y + shift) ** 2
    lm = state.log_p_minus - (y - shift) ** 2
    norm = log_sum_exp(lp, lm)
    return replace(
        state,
        k=state.k + 1,
        log_p_plus=lp - norm,
        log_p_minus=lm - norm,
        sum_y=state.sum_y + y,
    )


def health(state: CollapseState) -> float:
    """ln(p+ / p-), finite even when p- underflows as a probability."""
    return state.log_p_plus - state.log_p_minus


def health_closed_form(state: CollapseState) -> float:
    return -4.0 * SQRT2 * state.alpha * state.sum_y


def run_trajectory(
    alpha: float, m_max: int, seed: int, index: int = 0, n: int | None = None
) -> Trajectory:
    """Measure m_max environment modes one after another.

    The stream is `make_rng(seed, index)`; uniforms are drawn in one block,
    which yields the same numbers as calling `sample_next` step by step.
    """
    state = initial_state(alpha)
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    if n is not None:
        check_mode_count(n, alpha)
    rng = make_rng(seed, index)
    u = rng.random((m_max, 2))
    branch = u[:, 0].tolist()
    noise = standard_normals(u[:, 1]).tolist()

    shift = SQRT2 * state.alpha
    sigma = math.sqrt(BRANCH_VARIANCE)
    lp, lm = state.log_p_plus, state.log_p_minus
    ys = [0.0] * m_max
    p_plus = [0.0] * (m_max + 1)
    h = [0.0] * (m_max + 1)
    p_plus[0] = math.exp(lp)
    exp, log1p = math.exp, math.log1p
    # hot loop: same arithmetic, in the same order, as sample_next + bayes_update
    for i in range(m_max):
        y = (-shift if branch[i] < exp(lp) else shift) + sigma * noise[i]
        lp = lp - (y + shift) ** 2
        lm = lm - (y - shift) ** 2
        if lp >= lm:
            norm = lp + log1p(exp(lm - lp))
        else:
            norm = lm + log1p(exp(lp - lm))
        lp -= norm
        lm -= norm
        ys[i] = y
        p_plus[i + 1] = exp(lp)
        h[i + 1] = lp - lm
    return Trajectory(
        seed=seed,
        index=index,
        alpha=state.alpha,
        ys=np.array(ys),
        p_plus_series=np.array(p_plus),
        h_series=np.array(h),
    )


def thread_count(default: int = 1) -> int:
    raw = os.environ.get("DECOCAT_THREADS")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"DECOCAT_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("DECOCAT_THREADS must be at least 1")
    return value


def ensemble(
    alpha: float, m_max: int, count: int, seed: int, threads: int | None = None
) -> list[Trajectory]:
    """`count` independent trajectories; trajectory i uses stream (seed, i).

    Output order and content do not depend on `threads`.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    initial_state(alpha)
    workers = thread_count() if threads is None else threads
    if workers <= 1 or count == 1:
        return [run_trajectory(alpha, m_max, seed, i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: run_trajectory(alpha, m_max, seed, i), range(count)))
