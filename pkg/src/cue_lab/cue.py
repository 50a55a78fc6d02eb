"""Moments over the CUE: exact values through Schur pairings, Monte Carlo as a check."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .partitions import from_multiplicity_vectors
from .symfunc import e_to_schur, h_to_schur, hall_pairing_truncated

MC_CHUNK = 10_000


class Kind(str, enum.Enum):
    SECULAR = "secular"
    SYMMETRIC_POWER = "symmetric-power"


class Verdict(str, enum.Enum):
    IN_RANGE_DG = "in-range-DG"
    IN_RANGE_MIN = "in-range-min"
    OUT_OF_RANGE = "out-of-range"


@dataclass(frozen=True)
class MomentSpec:
    """E prod_j X_j^{a_j} conj(X_j)^{b_j} over U(N), X_j = Sc_j or Tr Sym^j."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    N: int
    kind: Kind = Kind.SECULAR

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "kind", Kind(self.kind))
        if any(x < 0 for x in self.a + self.b):
            raise ValueError("multiplicities must be non-negative")
        if self.N < 1:
            raise ValueError("N must be positive")

    @property
    def mu(self):
        return from_multiplicity_vectors(self.a)

    @property
    def mu_t(self):
        return from_multiplicity_vectors(self.b)

    def swapped(self) -> "MomentSpec":
        return MomentSpec(self.b, self.a, self.N, self.kind)


def sc_moment_exact(spec: MomentSpec, bound: int | None = None) -> int:
    """Haar average of prod Sc_j^{a_j} conj(Sc_j)^{b_j}: <e_mu, e_mu~> over shapes with <= N rows."""
    mu, mu_t = spec.mu, spec.mu_t
    if mu.n != mu_t.n:
        return 0
    return hall_pairing_truncated(e_to_schur(mu, bound), e_to_schur(mu_t, bound), spec.N)


def trsym_moment_exact(spec: MomentSpec, bound: int | None = None) -> int:
    """Haar average of prod (Tr Sym^j)^{a_j} conj(...)^{b_j}: <h_mu, h_mu~> truncated at N rows."""
    mu, mu_t = spec.mu, spec.mu_t
    if mu.n != mu_t.n:
        return 0
    return hall_pairing_truncated(h_to_schur(mu, bound), h_to_schur(mu_t, bound), spec.N)


def moment_exact(spec: MomentSpec, bound: int | None = None) -> int:
    if spec.kind is Kind.SECULAR:
        return sc_moment_exact(spec, bound)
    return trsym_moment_exact(spec, bound)


def range_verdict(spec: MomentSpec) -> Verdict:
    """Which theorem, if any, guarantees the moment equals N_{mu, mu~}.

    Secular coefficients need sum j a_j, sum j b_j <= N.  Symmetric-power
    traces need only min(sum a_j, sum b_j) <= N and always report that
    condition.
    """
    if spec.kind is Kind.SECULAR:
        weighted = max(spec.mu.n, spec.mu_t.n)
        return Verdict.IN_RANGE_DG if weighted <= spec.N else Verdict.OUT_OF_RANGE
    if min(sum(spec.a), sum(spec.b)) <= spec.N:
        return Verdict.IN_RANGE_MIN
    return Verdict.OUT_OF_RANGE


# --- numerics ----------------------------------------------------------------

def _ginibre(rng: np.random.Generator, size: tuple[int, ...]) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def _haar_batch(rng: np.random.Generator, count: int, N: int) -> np.ndarray:
    z = _ginibre(rng, (count, N, N))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    # make the triangular factor's diagonal positive real; plain QR is not Haar
    return q * (d / np.abs(d))[..., None, :]


def haar_sample(N: int, seed: int) -> np.ndarray:
    """One Haar-random element of U(N), deterministic in ``seed``."""
    if not 1 <= N <= 64:
        raise ValueError("N must be in [1, 64]")
    rng = np.random.default_rng(seed)
    return _haar_batch(rng, 1, N)[0]


def _elementary_from_roots(roots: np.ndarray) -> np.ndarray:
    """e_0..e_N of the last axis of ``roots`` (batched)."""
    N = roots.shape[-1]
    coeffs = np.zeros(roots.shape[:-1] + (N + 1,), dtype=complex)
    coeffs[..., 0] = 1.0
    for i in range(N):
        lam = roots[..., i : i + 1]
        coeffs[..., 1 : i + 2] = coeffs[..., 1 : i + 2] + lam * coeffs[..., 0 : i + 1]
    return coeffs


def _complete_from_power_sums(p: np.ndarray, n_max: int) -> np.ndarray:
    """h_0..h_{n_max} from p_1..p_{n_max} (last axis) via n h_n = sum_k p_k h_{n-k}."""
    h = np.zeros(p.shape[:-1] + (n_max + 1,), dtype=complex)
    h[..., 0] = 1.0
    for n in range(1, n_max + 1):
        acc = np.zeros(p.shape[:-1], dtype=complex)
        for k in range(1, n + 1):
            acc = acc + p[..., k - 1] * h[..., n - k]
        h[..., n] = acc / n
    return h


def _power_sums(eigs: np.ndarray, n_max: int) -> np.ndarray:
    return np.stack([np.sum(eigs**k, axis=-1) for k in range(1, n_max + 1)], axis=-1)


def secular_coeffs(U: np.ndarray) -> np.ndarray:
    """(Sc_0, ..., Sc_N) with det(zI + U) = sum_n z^{N-n} Sc_n(U)."""
    return _elementary_from_roots(np.linalg.eigvals(np.asarray(U, dtype=complex)))


def trsym_values(U: np.ndarray, n_max: int) -> np.ndarray:
    """(h_0, ..., h_{n_max}) of the eigenvalues, i.e. Tr Sym^n(U)."""
    if not 0 <= n_max <= 64:
        raise ValueError("n_max must be in [0, 64]")
    eigs = np.linalg.eigvals(np.asarray(U, dtype=complex))
    if n_max == 0:
        return np.ones(1, dtype=complex)
    return _complete_from_power_sums(_power_sums(eigs, n_max), n_max)


def _integrand(spec: MomentSpec, mats: np.ndarray) -> np.ndarray:
    ell = max(len(spec.a), len(spec.b), 1)
    eigs = np.linalg.eigvals(mats)
    if spec.kind is Kind.SECULAR:
        x = _elementary_from_roots(eigs)
        x = np.concatenate([x, np.zeros(x.shape[:-1] + (max(0, ell + 1 - x.shape[-1]),))], axis=-1)
    else:
        x = _complete_from_power_sums(_power_sums(eigs, ell), ell)
    val = np.ones(mats.shape[0], dtype=complex)
    for j, (aj, bj) in enumerate(zip(_pad(spec.a, ell), _pad(spec.b, ell)), start=1):
        if aj:
            val *= x[:, j] ** aj
        if bj:
            val *= np.conj(x[:, j]) ** bj
    return val


def _pad(v: Sequence[int], ell: int) -> tuple[int, ...]:
    return tuple(v) + (0,) * (ell - len(v))


def mc_moment_estimate(spec: MomentSpec, samples: int, seed: int) -> tuple[complex, float]:
    """Sample mean and standard error of the integrand under Haar measure.

    Samples come in fixed-size chunks, each from its own child stream of
    ``seed``; chunks are independent and the result is reproducible.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    children = np.random.SeedSequence(seed).spawn((samples + MC_CHUNK - 1) // MC_CHUNK)
    chunks = []
    done = 0
    for child in children:
        count = min(MC_CHUNK, samples - done)
        chunks.append(_integrand(spec, _haar_batch(np.random.default_rng(child), count, spec.N)))
        done += count
    vals = np.concatenate(chunks)
    mean = vals.mean()
    var = np.sum(np.abs(vals - mean) ** 2) / (samples - 1)
    return complex(mean), float(np.sqrt(var / samples))
