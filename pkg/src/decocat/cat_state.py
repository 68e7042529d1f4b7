"""Two-mode and n-mode cat states: wavefunctions, marginals, effective reduction.

A multimode cat is (|a1..an> + |-a1..-an>) / sqrt(2 + 2 prod_j q_j) with
q_j = <a_j|-a_j> = exp(-2|a_j|^2). Amplitudes are plain Python/numpy
complex numbers; the real part sets the mean position sqrt(2) Re a and the
imaginary part the mean momentum sqrt(2) Im a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import interference
from .interference import OverlapPair, SchmidtSummary
from .numerics import GridSpec, trapezoid_integral

SQRT2 = math.sqrt(2.0)
PI_QUARTER = math.pi ** -0.25


@dataclass(frozen=True)
class MultimodeCat:
    """Cat over n modes; the last `m` modes form the environment."""

    alphas: np.ndarray
    m: int = 0

    def __post_init__(self):
        a = np.array(self.alphas, dtype=complex).reshape(-1)
        if a.size < 1:
            raise ValueError("a cat needs at least one mode")
        if not np.all(np.isfinite(a)):
            raise ValueError("mode amplitudes must be finite")
        if not 0 <= self.m <= a.size - 1:
            raise ValueError(f"environment size m={self.m} must satisfy 0 <= m < n={a.size}")
        a.flags.writeable = False
        object.__setattr__(self, "alphas", a)

    @classmethod
    def identical(cls, alpha: complex, n: int, m: int = 0) -> "MultimodeCat":
        return cls(np.full(n, alpha, dtype=complex), m)

    @property
    def n(self) -> int:
        return self.alphas.size

    @property
    def system(self) -> np.ndarray:
        return self.alphas[: self.n - self.m]

    @property
    def environment(self) -> np.ndarray:
        return self.alphas[self.n - self.m :]


@dataclass(frozen=True)
class EffectiveCat:
    a: float
    b: float

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("effective coherence parameters must be non-negative")

    @property
    def q_a(self) -> float:
        return math.exp(-2.0 * self.a**2)

    @property
    def q_b(self) -> float:
        return math.exp(-2.0 * self.b**2)


@dataclass
class GridDensity:
    """Unit-mass density sampled on a uniform grid.

    `envelope_width` is w in the Gaussian envelope exp(-(p/w)^2) that the
    fringes modulate; `fringe_visibility` divides it out.
    """

    grid_min: float
    grid_max: float
    values: np.ndarray
    normalization_residual: float
    envelope_width: float = 1.0
    metadata: dict = field(default_factory=dict)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.grid_min, self.grid_max, len(self.values))

    @property
    def spacing(self) -> float:
        return (self.grid_max - self.grid_min) / (len(self.values) - 1)


def coherent_wavefunction_x(alpha: complex, x):
    """<x|alpha> with x = (a + a^dagger)/sqrt(2)."""
    re, im = complex(alpha).real, complex(alpha).imag
    x = np.asarray(x, dtype=float)
    return PI_QUARTER * np.exp(-0.5 * (x - SQRT2 * re) ** 2 + 1j * (SQRT2 * im * x - re * im))


def coherent_wavefunction_p(alpha: complex, p):
    """<p|alpha>, the unitary Fourier transform of `coherent_wavefunction_x`."""
    re, im = complex(alpha).real, complex(alpha).imag
    p = np.asarray(p, dtype=float)
    return PI_QUARTER * np.exp(-0.5 * (p - SQRT2 * im) ** 2 - 1j * (SQRT2 * re * p - re * im))


def cat_normalization(alphas) -> float:
    # |<a|-a>| = exp(-2|a|^2) multiplies across modes
    total = float(np.sum(np.abs(np.asarray(alphas)) ** 2))
    return 1.0 / math.sqrt(2.0 + 2.0 * math.exp(-2.0 * total))


def _cat_amplitude(cat: MultimodeCat, coords, single_mode):
    coords = np.asarray(coords, dtype=float)
    if coords.shape[-1:] != (cat.n,):
        raise ValueError(f"expected {cat.n} coordinates per point, got shape {coords.shape}")
    plus = np.ones(coords.shape[:-1], dtype=complex)
    minus = np.ones(coords.shape[:-1], dtype=complex)
    for j, a in enumerate(cat.alphas):
        plus = plus * single_mode(a, coords[..., j])
        minus = minus * single_mode(-a, coords[..., j])
    return cat_normalization(cat.alphas) * (plus + minus)


def cat_wavefunction_x(cat: MultimodeCat, xs):
    """Coordinate wavefunction; `xs` has the n mode coordinates on its last axis."""
    return _cat_amplitude(cat, xs, coherent_wavefunction_x)


def cat_wavefunction_p(cat: MultimodeCat, ps):
    """Momentum wavefunction; `ps` has the n mode momenta on its last axis."""
    return _cat_amplitude(cat, ps, coherent_wavefunction_p)


def _density_on(grid: GridSpec, raw: np.ndarray, width: float, **metadata) -> GridDensity:
    if grid.points < 16:
        raise ValueError("grid needs at least 16 points")
    mass = trapezoid_integral(raw, grid.spacing)
    return GridDensity(
        grid_min=grid.grid_min,
        grid_max=grid.grid_max,
        values=raw / mass,
        normalization_residual=mass - 1.0,
        envelope_width=width,
        metadata=metadata,
    )


def fringe_marginal(alpha: complex, q_env: float, grid: GridSpec) -> GridDensity:
    """Momentum marginal of one system mode when the environment overlap is q_env.

    For real alpha this is exp(-p^2) (1 + q_env cos(2 sqrt2 alpha p)) up to
    normalization. An imaginary part adds a cosh term, written here as two
    displaced Gaussians so large Im(alpha) cannot overflow.
    """
    if not 0.0 <= q_env <= 1.0:
        raise ValueError(f"environment overlap must lie in [0, 1], got {q_env}")
    re, im = complex(alpha).real, complex(alpha).imag
    p = grid.nodes()
    q_alpha = math.exp(-2.0 * (re * re + im * im))
    shifted = 0.5 * (np.exp(-((p - SQRT2 * im) ** 2)) + np.exp(-((p + SQRT2 * im) ** 2)))
    fringes = q_env * np.exp(-p * p - 2.0 * im * im) * np.cos(2.0 * SQRT2 * re * p)
    raw = (shifted + fringes) / (math.sqrt(math.pi) * (1.0 + q_env * q_alpha))
    return _density_on(grid, raw, 1.0, alpha=complex(alpha), q_env=q_env)


def _vertex(y0: float, y1: float, y2: float) -> float:
    """Extremum value of the parabola through three equally spaced samples."""
    curv = y0 - 2.0 * y1 + y2
    if curv == 0.0:
        return y1
    shift = (y2 - y0) ** 2 / (8.0 * curv)
    cap = max(abs(y1 - y0), abs(y1 - y2))
    return y1 - max(-cap, min(cap, shift))


def fringe_visibility(density: GridDensity, envelope_floor: float = 1e-200) -> float:
    """(I_max - I_min) / (I_max + I_min) over the fringes of `density`.

    The Gaussian envelope is divided out first, so the extrema compared are
    fringe crests and troughs rather than the envelope peak and its tails.
    Interior extrema are refined by a three-point parabola.
    """
    p = density.nodes
    envelope = np.exp(-((p / density.envelope_width) ** 2))
    keep = envelope > envelope_floor
    g = density.values[keep] / envelope[keep]
    if g.size < 3:
        raise ValueError("too few grid points inside the envelope")
    left, mid, right = g[:-2], g[1:-1], g[2:]
    maxima = np.flatnonzero((mid >= left) & (mid > right)) + 1
    minima = np.flatnonzero((mid <= left) & (mid < right)) + 1
    if maxima.size == 0 or minima.size == 0:
        hi, lo = float(g.max()), float(g.min())
    else:
        hi = max(_vertex(*g[i - 1 : i + 2].tolist()) for i in maxima)
        lo = min(_vertex(*g[i - 1 : i + 2].tolist()) for i in minima)
        lo = max(lo, 0.0)
    if hi + lo == 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


def effective_params(cat: MultimodeCat) -> EffectiveCat:
    """Root-sum-square amplitudes of the system and environment blocks."""
    return EffectiveCat(
        a=math.sqrt(float(np.sum(np.abs(cat.system) ** 2))),
        b=math.sqrt(float(np.sum(np.abs(cat.environment) ** 2))),
    )


def effective_summary(eff: EffectiveCat) -> SchmidtSummary:
    return interference.pair_summary(OverlapPair(eff.q_a, eff.q_b))


def env_visibility_identical(m: int, alpha: float) -> float:
    """Visibility left after m identical environment modes: exp(-2 m alpha^2)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return math.exp(-2.0 * m * alpha * alpha)


def total_momentum_marginal(eff: EffectiveCat, n_sys: int, grid: GridSpec) -> GridDensity:
    """Density of p = p_1 + ... + p_{n_sys} for identical real system amplitudes.

    Only the collective mode sum(p_j)/sqrt(n_sys) carries the cat (with
    amplitude a); the orthogonal combinations are vacuum, so the sum is the
    single-mode fringe marginal stretched by sqrt(n_sys).
    """
    if n_sys < 1:
        raise ValueError("n_sys must be at least 1")
    w = math.sqrt(n_sys)
    p = grid.nodes() / w
    raw = np.exp(-p * p) * (1.0 + eff.q_b * np.cos(2.0 * SQRT2 * eff.a * p))
    raw /= w * math.sqrt(math.pi) * (1.0 + eff.q_a * eff.q_b)
    return _density_on(grid, raw, w, a=eff.a, b=eff.b, n_sys=n_sys)


def total_momentum_marginal_for(cat: MultimodeCat, grid: GridSpec) -> GridDensity:
    sys_modes = cat.system
    if np.any(sys_modes.imag != 0) or np.any(sys_modes != sys_modes[0]):
        raise NotImplementedError("total momentum marginal needs identical real system amplitudes")
    return total_momentum_marginal(effective_params(cat), sys_modes.size, grid)
