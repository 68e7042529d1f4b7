import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decocat.interference import (
    DestructiveInterferenceError,
    OverlapPair,
    coherent_overlap,
    delta,
    environment_visibility,
    pair_summary,
    schmidt_number,
    schmidt_summary,
    two_qubit_coefficients,
    visibility_from_K,
)

unit_disk = st.builds(
    lambda r, t: cmath.rect(math.sqrt(r), t),
    st.floats(0.0, 1.0),
    st.floats(0.0, 2 * math.pi),
)


def gram_schmidt_delta(q1: complex, q2: complex) -> float:
    """Oracle: build the two states explicitly in C^2 x C^2 and take |det|^2 of the normalized amplitudes."""
    phi1 = np.array([1.0, 0.0])
    phi2 = np.array([q1, math.sqrt(1 - abs(q1) ** 2)])  # <phi1|phi2> = q1
    psi1 = np.array([1.0, 0.0])
    psi2 = np.array([q2, math.sqrt(1 - abs(q2) ** 2)])
    state = np.kron(phi1, psi1) + np.kron(phi2, psi2)
    state = state / np.linalg.norm(state)
    return abs(np.linalg.det(state.reshape(2, 2))) ** 2


def test_coherent_overlap():
    assert coherent_overlap(0) == 1
    assert coherent_overlap(0.01).real == pytest.approx(0.99980002, abs=1e-8)
    assert coherent_overlap(3.4).real == pytest.approx(math.exp(-23.12), rel=1e-14)
    assert coherent_overlap(3.4).real == pytest.approx(9.1e-11, rel=0.01)
    assert coherent_overlap(1 + 1j) == pytest.approx(math.exp(-4.0))
    assert coherent_overlap(0.5j).imag == 0.0


def test_two_qubit_coefficient_examples():
    c = two_qubit_coefficients(OverlapPair(0, 0))
    assert (c.c00, c.c01, c.c10, c.c11, c.norm2) == (1, 0, 0, 1, 2)
    c = two_qubit_coefficients(OverlapPair(1, 1))
    assert (c.c00, c.c01, c.c10, c.c11, c.norm2) == (2, 0, 0, 0, 4)
    c = two_qubit_coefficients(OverlapPair(0.5, 0))
    assert c.c00 == 1 and c.c01 == 0.5 and c.c10 == 0
    assert c.c11 == pytest.approx(0.8660254037844386, abs=1e-15)
    assert c.norm2 == 2


def test_invalid_overlap_rejected():
    with pytest.raises(ValueError, match="invalid overlap"):
        OverlapPair(1.0 + 1e-9, 0)
    OverlapPair(1.0 + 1e-13, 0)  # within slack
    with pytest.raises(ValueError):
        environment_visibility(1.5)


def test_delta_examples():
    assert delta(OverlapPair(0, 0)) == 0.25
    assert delta(OverlapPair(1, 0.3)) == 0.0
    assert delta(OverlapPair(1, 1j)) == 0.0
    assert delta(OverlapPair(0.5, 0)) == pytest.approx(0.1875, abs=1e-15)


def test_destructive_interference_raises():
    with pytest.raises(DestructiveInterferenceError, match="destructively interfering"):
        delta(OverlapPair(1, -1))
    with pytest.raises(DestructiveInterferenceError):
        delta(OverlapPair(1j, 1j))


def test_schmidt_summary_examples():
    s = schmidt_summary(0.0)
    assert (s.lambda0, s.lambda1, s.K, s.V) == (1.0, 0.0, 1.0, 1.0)
    s = schmidt_summary(0.25)
    assert (s.lambda0, s.lambda1, s.K, s.V) == (0.5, 0.5, 2.0, 0.0)
    s = schmidt_summary(0.1875)
    assert s.lambda0 == pytest.approx(0.75, abs=1e-15)
    assert s.lambda1 == pytest.approx(0.25, abs=1e-15)
    assert s.K == pytest.approx(1.6, abs=1e-14)
    assert s.V == pytest.approx(math.sqrt(1 - 0.75), abs=1e-15)


def test_schmidt_summary_clamps_and_rejects():
    assert schmidt_summary(-5e-13).delta == 0.0
    assert schmidt_summary(0.25 + 5e-13).K == 2.0
    with pytest.raises(ValueError):
        schmidt_summary(-1e-9)
    with pytest.raises(ValueError):
        schmidt_summary(0.26)


def test_environment_visibility():
    assert environment_visibility(1) == 1
    assert environment_visibility(0) == 0
    assert environment_visibility(math.exp(-2.2)) == pytest.approx(0.11080315836233387, abs=1e-15)
    assert environment_visibility(0.6j) == pytest.approx(0.6)


@given(unit_disk, unit_disk)
def test_coefficient_norm_identity(q1, q2):
    pair = OverlapPair(q1, q2)
    c = two_qubit_coefficients(pair)
    total = abs(c.c00) ** 2 + abs(c.c01) ** 2 + abs(c.c10) ** 2 + abs(c.c11) ** 2
    assert abs(total - pair.norm2) <= 1e-12
    assert c.c11 >= 0


@given(unit_disk, unit_disk)
def test_delta_matches_explicit_state(q1, q2):
    pair = OverlapPair(q1, q2)
    if pair.norm2 < 1e-3:
        return
    d = delta(pair)
    assert 0.0 <= d <= 0.25
    assert d == pytest.approx(gram_schmidt_delta(q1, q2), abs=1e-9)


@given(st.floats(0.0, 0.25))
def test_schmidt_invariants(d):
    s = schmidt_summary(d)
    assert abs(s.lambda0 + s.lambda1 - 1) <= 1e-12
    assert s.lambda0 >= s.lambda1 >= 0
    assert 1 <= s.K <= 2 and 0 <= s.V <= 1
    assert abs(schmidt_number([s.lambda0, s.lambda1]) - s.K) <= 1e-12
    assert abs(s.V - (s.lambda0 - s.lambda1)) <= 1e-12
    assert abs(s.V**2 - (1 - 4 * d)) <= 1e-12
    assert abs(visibility_from_K(s.K) - s.V) <= 1e-6  # sqrt amplifies near K = 2


def test_schmidt_weights_match_svd():
    # singular values of the normalized coefficient matrix are sqrt(lambda)
    for q1, q2 in [(0.3, 0.7), (0.5j, 0.2 + 0.1j), (0.9, -0.4), (0.0, 0.99)]:
        pair = OverlapPair(q1, q2)
        c = two_qubit_coefficients(pair)
        sv = np.linalg.svd(np.array(c.as_matrix(), dtype=complex) / math.sqrt(c.norm2), compute_uv=False)
        s = pair_summary(pair)
        assert sv**2 == pytest.approx([s.lambda0, s.lambda1], abs=1e-12)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_three_route_visibility(q2, tiny):
    q1 = 1e-8 * tiny
    v = pair_summary(OverlapPair(q1, q2)).V
    assert abs(v - environment_visibility(q2)) <= 2e-8


@given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=20, unique=True))
def test_visibility_monotone_in_environment_overlap(qs):
    qs = sorted(qs)
    summaries = [pair_summary(OverlapPair(0.0, q)) for q in qs]
    vs = [s.V for s in summaries]
    ks = [s.K for s in summaries]
    assert all(a <= b for a, b in zip(vs, vs[1:]))
    assert all(a >= b for a, b in zip(ks, ks[1:]))
    assert vs[-1] - vs[0] >= qs[-1] - qs[0] - 2e-8
