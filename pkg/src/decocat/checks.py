"""Self-verification checks bundled by `decocat verify`.

Each check recomputes a quantity by an independent route (quadrature, FFT,
closed form) and compares at a fixed tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import cat_state, interference, measurement
from .numerics import (
    GridSpec,
    centered_grid,
    dft_unitary,
    dft_unitary_2d,
    dual_grid,
    make_rng,
    trapezoid_integral,
    trapezoid_integral_2d,
)

TEST_ALPHAS = (0.5, 1.0, 3.4, 1j, 1 + 1j)


@dataclass
class CheckResult:
    name: str
    passed: bool
    error: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<28s} error={self.error:.3e}  tol={self.tolerance:.1e}"


def _result(name: str, error: float, tol: float) -> CheckResult:
    # NaN must fail
    return CheckResult(name, bool(error <= tol), float(error), tol)


def _axis(alphas, per_unit: float) -> np.ndarray:
    reach = max(math.sqrt(2.0) * max(abs(a.real), abs(a.imag)) for a in alphas) + 10.0
    points = int(math.ceil(2 * reach * per_unit)) + 1
    return np.linspace(-reach, reach, points)


def norm_error(alphas, momentum: bool = False) -> float:
    """|1 - quadrature norm| of a 1- or 2-mode cat."""
    cat = cat_state.MultimodeCat(alphas)
    wave = cat_state.cat_wavefunction_p if momentum else cat_state.cat_wavefunction_x
    if cat.n == 1:
        x = _axis(cat.alphas, 250)
        dens = np.abs(wave(cat, x[:, None])) ** 2
        return abs(trapezoid_integral(dens, x[1] - x[0]) - 1.0)
    if cat.n == 2:
        x = _axis(cat.alphas, 40)
        gx, gy = np.meshgrid(x, x, indexing="ij")
        dens = np.abs(wave(cat, np.stack([gx, gy], axis=-1))) ** 2
        h = x[1] - x[0]
        return abs(trapezoid_integral_2d(dens, h, h) - 1.0)
    raise ValueError("quadrature norm check supports 1 or 2 modes")


def duality_error(alphas, points: int | None = None, half_width: float = 16.0) -> float:
    """Max pointwise gap between DFT(coordinate wavefunction) and the momentum wavefunction."""
    cat = cat_state.MultimodeCat(alphas)
    if points is None:
        points = 4096 if cat.n == 1 else 256
    h = 2 * half_width / points
    x, p = centered_grid(points, h), dual_grid(points, h)
    if cat.n == 1:
        got = dft_unitary(cat_state.cat_wavefunction_x(cat, x[:, None]), h)
        want = cat_state.cat_wavefunction_p(cat, p[:, None])
    elif cat.n == 2:
        gx, gy = np.meshgrid(x, x, indexing="ij")
        gp, gq = np.meshgrid(p, p, indexing="ij")
        got = dft_unitary_2d(cat_state.cat_wavefunction_x(cat, np.stack([gx, gy], -1)), h)
        want = cat_state.cat_wavefunction_p(cat, np.stack([gp, gq], -1))
    else:
        raise ValueError("duality check supports 1 or 2 modes")
    return float(np.max(np.abs(got - want)))


def check_normalization() -> CheckResult:
    worst = 0.0
    for a in TEST_ALPHAS:
        for modes in ([a], [a, a]):
            worst = max(worst, norm_error(modes), norm_error(modes, momentum=True))
    return _result("wavefunction normalization", worst, 1e-6)


def check_fourier_duality() -> CheckResult:
    worst = max(max(duality_error([a]), duality_error([a, a])) for a in TEST_ALPHAS)
    return _result("fourier duality", worst, 1e-6)


def check_visibility_routes(alpha: float = 0.01, n: int = 100_000) -> CheckResult:
    worst = 0.0
    for m in range(0, 20_001, 1000):
        eff = cat_state.effective_params(cat_state.MultimodeCat.identical(alpha, n, m))
        v = cat_state.effective_summary(eff).V
        worst = max(worst, abs(v - cat_state.env_visibility_identical(m, alpha)))
    return _result("visibility route agreement", worst, 1e-6)


def check_fringe_contrast(alpha: float = 3.4) -> CheckResult:
    grid = GridSpec(-6.0, 6.0, 2401)
    worst = 0.0
    for q in np.linspace(0.0, 1.0, 11):
        v = cat_state.fringe_visibility(cat_state.fringe_marginal(alpha, float(q), grid))
        worst = max(worst, abs(v - q))
    return _result("fringe contrast law", worst, 1e-6)


def check_schmidt_identities(count: int = 2000, seed: int = 7) -> CheckResult:
    rng = make_rng(seed)
    r = np.sqrt(rng.random((count, 2)))
    phi = 2 * np.pi * rng.random((count, 2))
    qs = r * np.exp(1j * phi)
    worst = 0.0
    for q1, q2 in qs:
        pair = interference.OverlapPair(q1, q2)
        c = interference.two_qubit_coefficients(pair)
        s = interference.pair_summary(pair)
        coeff = abs(c.c00) ** 2 + abs(c.c01) ** 2 + abs(c.c10) ** 2 + c.c11**2
        worst = max(
            worst,
            abs(coeff - pair.norm2),
            abs(s.lambda0 + s.lambda1 - 1.0),
            abs(interference.schmidt_number([s.lambda0, s.lambda1]) - s.K),
            abs(s.V * s.V - (1.0 - 4.0 * s.delta)),
        )
    return _result("schmidt identities", worst, 1e-12)


def check_health_equivalence(count: int = 5, m_max: int = 20_000) -> CheckResult:
    worst = 0.0
    for traj in measurement.ensemble(0.01, m_max, count, seed=2024, threads=1):
        worst = max(worst, float(np.max(np.abs(traj.h_series - traj.h_closed_form()))))
    return _result("health closed form", worst, 1e-9)


def martingale_zscore(p_plus: float, alpha: float, draws: int, seed: int) -> float:
    """(mean of one-step updated p+ minus prior p+) in standard errors."""
    state = measurement.CollapseState(
        k=0, log_p_plus=math.log(p_plus), log_p_minus=math.log1p(-p_plus), alpha=alpha
    )
    rng = make_rng(seed)
    updated = np.array(
        [measurement.bayes_update(state, measurement.sample_next(state, rng)).p_plus for _ in range(draws)]
    )
    se = updated.std(ddof=1) / math.sqrt(draws)
    return abs(updated.mean() - state.p_plus) / se


def check_martingale(draws: int = 10_000) -> CheckResult:
    worst = max(martingale_zscore(p, 0.3, draws, seed=11 + i) for i, p in enumerate((0.5, 0.8, 0.2)))
    return _result("martingale (z-score)", worst, 3.0)


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_normalization,
    check_fourier_duality,
    check_visibility_routes,
    check_fringe_contrast,
    check_schmidt_identities,
    check_health_equivalence,
    check_martingale,
)


def run_all() -> list[CheckResult]:
    results = []
    for check in ALL_CHECKS:
        try:
            results.append(check())
        except Exception as exc:  # a crashing check is a failed check
            results.append(CheckResult(f"{check.__name__} ({type(exc).__name__})", False, math.nan, math.nan))
    return results
