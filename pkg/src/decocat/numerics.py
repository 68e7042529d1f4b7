"""Shared numerical kernels: trapezoid quadrature, continuum DFT, log-sum-exp, RNG streams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

RNG_ALGORITHM = "numpy.Philox(SeedSequence(seed, spawn_key=(index,))) + inverse-CDF normals"


@dataclass(frozen=True)
class GridSpec:
    grid_min: float
    grid_max: float
    points: int

    def __post_init__(self):
        if not (math.isfinite(self.grid_min) and math.isfinite(self.grid_max)):
            raise ValueError("grid bounds must be finite")
        if self.grid_max <= self.grid_min:
            raise ValueError(f"grid_max ({self.grid_max}) must exceed grid_min ({self.grid_min})")
        if self.points < 16:
            raise ValueError(f"grid needs at least 16 points, got {self.points}")

    @property
    def spacing(self) -> float:
        return (self.grid_max - self.grid_min) / (self.points - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.grid_min, self.grid_max, self.points)


def trapezoid_integral(values, spacing: float) -> float:
    """Composite trapezoid rule on a uniform grid."""
    v = np.asarray(values)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("trapezoid rule needs at least 2 samples")
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    return float(spacing * (v.sum() - 0.5 * (v[0] + v[-1])))


def trapezoid_integral_2d(values, dx: float, dy: float) -> float:
    v = np.asarray(values)
    if v.ndim != 2 or min(v.shape) < 2:
        raise ValueError("2-D trapezoid rule needs at least a 2x2 grid")
    wx = np.ones(v.shape[0])
    wx[[0, -1]] = 0.5
    wy = np.ones(v.shape[1])
    wy[[0, -1]] = 0.5
    return float(dx * dy * (wx @ v @ wy))


def centered_grid(points: int, spacing: float) -> np.ndarray:
    """Grid x_j = (j - points // 2) * spacing, the layout `dft_unitary` expects."""
    return (np.arange(points) - points // 2) * spacing


def dual_grid(points: int, spacing: float) -> np.ndarray:
    """Momentum nodes matching `dft_unitary` output, ascending and containing 0."""
    return centered_grid(points, 2.0 * np.pi / (points * spacing))


def dft_unitary(samples, spacing: float) -> np.ndarray:
    """Continuum-normalized Fourier transform of samples on `centered_grid`.

    Approximates psi~(p) = (2 pi)^(-1/2) int psi(x) exp(-i p x) dx at the
    nodes of `dual_grid`. Works along the last axis, so a 2-D array is
    transformed row-wise; use `dft_unitary_2d` for a joint transform.
    """
    psi = np.asarray(samples, dtype=complex)
    n = psi.shape[-1]
    if n < 16:
        raise ValueError("DFT needs at least 16 samples")
    # ifftshift puts x=0 at index 0; fftshift puts p=0 at index n//2.
    spec = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(psi, axes=-1), axis=-1), axes=-1)
    return spec * (spacing / math.sqrt(2.0 * np.pi))


def idft_unitary(spectrum, spacing: float) -> np.ndarray:
    """Inverse of `dft_unitary`; `spacing` is the position-grid spacing."""
    phi = np.asarray(spectrum, dtype=complex)
    n = phi.shape[-1]
    if n < 16:
        raise ValueError("DFT needs at least 16 samples")
    back = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(phi, axes=-1), axis=-1), axes=-1)
    return back * (math.sqrt(2.0 * np.pi) / spacing)


def dft_unitary_2d(samples, spacing: float) -> np.ndarray:
    psi = np.asarray(samples, dtype=complex)
    return np.swapaxes(dft_unitary(np.swapaxes(dft_unitary(psi, spacing), 0, 1), spacing), 0, 1)


def log_sum_exp(a: float, b: float) -> float:
    """log(exp(a) + exp(b)) without overflow; exact when one side is -inf."""
    hi, lo = (a, b) if a >= b else (b, a)
    if hi == -math.inf:
        return -math.inf
    if hi == math.inf:
        return math.inf
    return hi + math.log1p(math.exp(lo - hi))


def make_rng(seed: int, index: int | None = None) -> np.random.Generator:
    """Philox stream for `seed`; `index` selects an independent child stream.

    The child key is SeedSequence(seed, spawn_key=(index,)), the same mixing
    `SeedSequence.spawn` uses, so streams do not depend on creation order.
    """
    if index is None:
        ss = np.random.SeedSequence(seed)
    else:
        ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(ss))


def standard_normals(uniforms) -> np.ndarray:
    return ndtri(uniforms)


def gaussian_sample(rng: np.random.Generator, mean: float, variance: float) -> float:
    """One Normal(mean, variance) draw consuming exactly one uniform from `rng`.

    Inverse-CDF sampling keeps scalar and batched draws from the same stream
    bit-identical, which plain `rng.normal` (ziggurat) does not.
    """
    if not variance > 0:
        raise ValueError(f"variance must be positive, got {variance}")
    return mean + math.sqrt(variance) * float(ndtri(rng.random()))
