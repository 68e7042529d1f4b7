"""Two interfering alternatives entangled with an environment.

A bipartite state (|phi1, psi1> + |phi2, psi2>)/norm is fully described by
the overlaps q1 = <phi1|phi2> and q2 = <psi1|psi2>. Gram-Schmidt on each
side maps it onto two qubits, whose Schmidt spectrum gives the Schmidt
number K and the interference visibility V.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

OVERLAP_SLACK = 1e-12
DELTA_SLACK = 1e-12
MIN_NORM2 = 1e-300


class DestructiveInterferenceError(ValueError):
    """Raised when q1*q2 -> -1 and the superposition has no norm."""


@dataclass(frozen=True)
class OverlapPair:
    q1: complex
    q2: complex

    def __post_init__(self):
        for name in ("q1", "q2"):
            q = complex(getattr(self, name))
            if not (math.isfinite(q.real) and math.isfinite(q.imag)):
                raise ValueError(f"{name} must be finite, got {q}")
            if abs(q) > 1 + OVERLAP_SLACK:
                raise ValueError(f"invalid overlap: |{name}| = {abs(q)} > 1")
            object.__setattr__(self, name, q)

    @property
    def norm2(self) -> float:
        return 2.0 + 2.0 * (self.q1 * self.q2).real


@dataclass(frozen=True)
class TwoQubitCoefficients:
    c00: complex
    c01: complex
    c10: complex
    c11: float
    norm2: float

    def as_matrix(self):
        return [[self.c00, self.c01], [self.c10, self.c11]]


@dataclass(frozen=True)
class SchmidtSummary:
    delta: float
    lambda0: float
    lambda1: float
    K: float
    V: float


def _one_minus_abs2(q: complex) -> float:
    # clamp: |q| may exceed 1 by OVERLAP_SLACK
    return max(0.0, 1.0 - abs(q) ** 2)


def coherent_overlap(alpha: complex) -> complex:
    """<alpha|-alpha> = exp(-2|alpha|^2); real and positive."""
    return complex(math.exp(-2.0 * abs(alpha) ** 2), 0.0)


def two_qubit_coefficients(pair: OverlapPair) -> TwoQubitCoefficients:
    q1, q2 = pair.q1, pair.q2
    s1 = math.sqrt(_one_minus_abs2(q1))
    s2 = math.sqrt(_one_minus_abs2(q2))
    return TwoQubitCoefficients(
        c00=1 + q1 * q2,
        c01=q1 * s2,
        c10=q2 * s1,
        c11=s1 * s2,
        norm2=pair.norm2,
    )


def delta(pair: OverlapPair) -> float:
    """|det c|^2 of the normalized two-qubit state, in [0, 1/4]."""
    norm2 = pair.norm2
    if norm2 <= MIN_NORM2:
        raise DestructiveInterferenceError(
            f"destructively interfering alternatives: 2 + 2 Re(q1 q2) = {norm2}"
        )
    d = _one_minus_abs2(pair.q1) * _one_minus_abs2(pair.q2) / norm2**2
    return min(d, 0.25)


def schmidt_summary(delta: float) -> SchmidtSummary:
    if not (-DELTA_SLACK <= delta <= 0.25 + DELTA_SLACK):
        raise ValueError(f"delta must lie in [0, 1/4], got {delta}")
    d = min(max(delta, 0.0), 0.25)
    v = math.sqrt(max(0.0, 1.0 - 4.0 * d))
    # descending weights, so V = lambda0 - lambda1 >= 0
    return SchmidtSummary(
        delta=d,
        lambda0=0.5 * (1.0 + v),
        lambda1=0.5 * (1.0 - v),
        K=1.0 / (1.0 - 2.0 * d),
        V=v,
    )


def pair_summary(pair: OverlapPair) -> SchmidtSummary:
    return schmidt_summary(delta(pair))


def environment_visibility(q2: complex) -> float:
    """V = |q2|; valid when the system alternatives are orthogonal (q1 ~ 0)."""
    v = abs(q2)
    if v > 1 + OVERLAP_SLACK:
        raise ValueError(f"invalid overlap: |q2| = {v} > 1")
    return min(v, 1.0)


def schmidt_number(lambdas) -> float:
    return 1.0 / sum(lam * lam for lam in lambdas)


def visibility_from_K(K: float) -> float:
    return math.sqrt(max(0.0, (2.0 - K) / K))

