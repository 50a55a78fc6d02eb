import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cue_lab.contingency import count_matrices
from cue_lab.cue import (
    Kind,
    MomentSpec,
    Verdict,
    haar_sample,
    mc_moment_estimate,
    moment_exact,
    range_verdict,
    sc_moment_exact,
    secular_coeffs,
    trsym_moment_exact,
    trsym_values,
)

import oracles

SEC, SYM = Kind.SECULAR, Kind.SYMMETRIC_POWER
vectors = st.lists(st.integers(0, 2), max_size=3)

# specs named in the module examples, with exact values
MC_SPECS = [
    (MomentSpec((1,), (1,), 2, SEC), 1),
    (MomentSpec((0, 1), (0, 1), 2, SEC), 1),
    (MomentSpec((2,), (2,), 1, SYM), 1),
    (MomentSpec((2,), (2,), 2, SEC), 2),
    (MomentSpec((2,), (2,), 1, SEC), 1),
    (MomentSpec((0, 2), (0, 2), 2, SYM), 3),
]


def test_sc_examples():
    for N in range(1, 5):
        assert sc_moment_exact(MomentSpec((1,), (1,), N)) == 1
    for N in range(2, 5):
        assert sc_moment_exact(MomentSpec((2,), (2,), N)) == 2
    assert sc_moment_exact(MomentSpec((2,), (2,), 1)) == 1


def test_trsym_examples():
    for n in range(1, 5):
        a = (0,) * (n - 1) + (1,)
        for N in range(1, 4):
            assert trsym_moment_exact(MomentSpec(a, a, N, SYM)) == 1
    assert trsym_moment_exact(MomentSpec((2,), (2,), 1, SYM)) == 1
    assert trsym_moment_exact(MomentSpec((0, 2), (0, 2), 2, SYM)) == 3


def test_range_verdict_examples():
    assert range_verdict(MomentSpec((1,), (1,), 1)) is Verdict.IN_RANGE_DG
    assert range_verdict(MomentSpec((0, 3), (0, 3), 3, SYM)) is Verdict.IN_RANGE_MIN
    assert range_verdict(MomentSpec((2,), (2,), 1)) is Verdict.OUT_OF_RANGE
    assert range_verdict(MomentSpec((2,), (2,), 1, SYM)) is Verdict.OUT_OF_RANGE


def test_spec_validation():
    with pytest.raises(ValueError):
        MomentSpec((-1,), (1,), 2)
    with pytest.raises(ValueError):
        MomentSpec((1,), (1,), 0)
    assert MomentSpec((1, 0), (0, 1), 3).mu_t == (2,)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_exact_moments_against_weyl_integration(N):
    for a in ((1,), (2,), (0, 1), (1, 1), (3,), (0, 0, 1)):
        for b in ((1,), (2,), (0, 1), (1, 1), (3,), (0, 0, 1)):
            spec = MomentSpec(a, b, N)
            mu, nu = spec.mu, spec.mu_t
            if mu.n != nu.n:
                assert sc_moment_exact(spec) == trsym_moment_exact(spec) == 0
                continue
            assert sc_moment_exact(spec) == oracles.weyl_integral(
                oracles.e_mono(mu, N), oracles.e_mono(nu, N), N
            )
            assert trsym_moment_exact(MomentSpec(a, b, N, SYM)) == oracles.weyl_integral(
                oracles.h_mono(mu, N), oracles.h_mono(nu, N), N
            )


@settings(max_examples=60, deadline=None)
@given(vectors, vectors, st.integers(1, 6), st.sampled_from([SEC, SYM]))
def test_swap_symmetry_and_range(a, b, N, kind):
    spec = MomentSpec(a, b, N, kind)
    assert moment_exact(spec) == moment_exact(spec.swapped())
    if spec.mu.n != spec.mu_t.n:
        assert moment_exact(spec) == 0
    elif range_verdict(spec) is not Verdict.OUT_OF_RANGE:
        assert moment_exact(spec) == count_matrices(spec.mu, spec.mu_t)


def test_haar_sample_unitary():
    for N in (1, 2, 5, 16):
        U = haar_sample(N, seed=N)
        assert np.linalg.norm(U @ U.conj().T - np.eye(N)) < 1e-10
    assert abs(abs(haar_sample(1, 7)[0, 0]) - 1) < 1e-12
    assert np.array_equal(haar_sample(4, 11), haar_sample(4, 11))
    with pytest.raises(ValueError):
        haar_sample(65, 0)


def test_secular_and_trsym_values():
    U = haar_sample(5, 3)
    sc = secular_coeffs(U)
    assert abs(sc[0] - 1) < 1e-12 and abs(abs(sc[-1]) - 1) < 1e-8
    # det(zI + U) has the Sc_n as coefficients
    z = 0.3 - 0.7j
    assert abs(np.linalg.det(z * np.eye(5) + U) - np.polyval(sc, z)) < 1e-10
    h = trsym_values(U, 7)
    assert abs(h[0] - 1) < 1e-12
    for n in range(1, 6):
        assert abs(sum((-1) ** k * sc[k] * h[n - k] for k in range(n + 1))) < 1e-8
    u = np.exp(0.4j)
    assert np.allclose(trsym_values(np.array([[u]]), 4), [u**n for n in range(5)])
    assert np.allclose(secular_coeffs(np.array([[u]])), [1, u])
    with pytest.raises(ValueError):
        trsym_values(U, 65)


def test_trace_mean_is_zero():
    spec = MomentSpec((1,), (), 3)
    est, se = mc_moment_estimate(spec, 100_000, seed=5)
    assert abs(est) <= 4 * se


@pytest.mark.slow
@pytest.mark.parametrize("spec,exact", MC_SPECS, ids=lambda x: repr(x) if isinstance(x, MomentSpec) else str(x))
def test_mc_consistency(spec, exact):
    assert moment_exact(spec) == exact
    est, se = mc_moment_estimate(spec, 100_000, seed=2024)
    assert abs(est - exact) <= 4 * se + 1e-12


def test_mc_is_deterministic():
    spec = MomentSpec((2,), (2,), 2)
    assert mc_moment_estimate(spec, 12_345, 9) == mc_moment_estimate(spec, 12_345, 9)
    assert mc_moment_estimate(spec, 12_345, 9) != mc_moment_estimate(spec, 12_345, 10)
    with pytest.raises(ValueError):
        mc_moment_estimate(spec, 999, 0)
