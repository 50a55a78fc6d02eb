"""Homogeneous symmetric functions in Schur coordinates.

Products by e_k and h_k use the Pieri rules (vertical / horizontal strips),
products by p_k use Murnaghan-Nakayama on beta-sets.  The U(N) Haar pairing
is the Hall inner product restricted to shapes with at most N rows.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .config import DEGREE_BOUND
from .errors import SizeLimitError, SizeMismatchError
from .partitions import Partition, conjugate


def _normalize(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class SchurVector(Mapping):
    """Sparse vector sum_lambda c_lambda s_lambda with every lambda of size ``degree``.

    Coefficients are ints, or Fractions when a rational combination is
    required (e.g. an intermediate characteristic-map value).
    """

    __slots__ = ("degree", "_coeffs")

    def __init__(self, degree: int, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean = {}
        for key, value in items:
            key = Partition(key)
            if key.n != degree:
                raise SizeMismatchError(f"{key} is not a partition of {degree}")
            value = _normalize(value)
            if value:
                clean[key] = clean.get(key, 0) + value
        self.degree = degree
        self._coeffs = {k: _normalize(v) for k, v in clean.items() if v}

    def __getitem__(self, key):
        return self._coeffs.get(Partition(key), 0)

    def __iter__(self) -> Iterator[Partition]:
        return iter(sorted(self._coeffs, reverse=True))

    def __len__(self):
        return len(self._coeffs)

    def __contains__(self, key):
        return Partition(key) in self._coeffs

    def items(self):
        return [(k, self._coeffs[k]) for k in self]

    def __eq__(self, other):
        if isinstance(other, SchurVector):
            if not self._coeffs and not other._coeffs:
                return True
            return self.degree == other.degree and self._coeffs == other._coeffs
        if isinstance(other, Mapping):
            return self._coeffs == {Partition(k): v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, frozenset(self._coeffs.items())))

    def __repr__(self):
        body = ", ".join(f"s{k}: {self._coeffs[k]}" for k in self)
        return f"SchurVector({self.degree}, {{{body}}})"

    def __add__(self, other: "SchurVector") -> "SchurVector":
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        if self.degree != other.degree:
            raise SizeMismatchError("cannot add Schur vectors of different degree")
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return SchurVector(self.degree, out)

    def __neg__(self):
        return SchurVector(self.degree, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SchurVector":
        return SchurVector(self.degree, {k: c * v for k, v in self._coeffs.items()})

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._coeffs.values())

    def as_dict(self) -> dict[Partition, int | Fraction]:
        return dict(self._coeffs)


def _check_degree(n: int, bound: int | None) -> None:
    bound = DEGREE_BOUND if bound is None else bound
    if n > bound:
        raise SizeLimitError(f"degree {n} exceeds the bound {bound}")


# --- strip additions ---------------------------------------------------------

def _horizontal_strips(lam: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    """Shapes mu with mu/lam a horizontal strip of k boxes.

    mu interlaces lam: lam_i <= mu_i <= lam_{i-1}, with at most one new row.
    """
    rows = list(lam) + [0]
    limit = [None] + list(lam)  # row i may grow up to lam_{i-1}

    def rec(i, left, acc):
        if i == len(rows):
            if left == 0:
                yield tuple(x for x in acc if x)
            return
        top = left if limit[i] is None else min(left, limit[i] - rows[i])
        for add in range(top, -1, -1):
            acc.append(rows[i] + add)
            yield from rec(i + 1, left - add, acc)
            acc.pop()

    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def _add_horizontal(lam: tuple[int, ...], k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_horizontal_strips(lam, k))


@lru_cache(maxsize=None)
def _add_vertical(lam: tuple[int, ...], k: int) -> tuple[tuple[int, ...], ...]:
    lam_c = tuple(conjugate(lam))
    return tuple(tuple(conjugate(mu)) for mu in _add_horizontal(lam_c, k))


@lru_cache(maxsize=None)
def _add_border_strips(lam: tuple[int, ...], k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """(mu, sign) for each border strip of size k that can be added to lam.

    On beta-numbers beta_i = lam_i + L - i, adding a k-strip moves one bead
    from b to an empty b + k; the strip height is the number of beads jumped.
    """
    L = len(lam) + k
    padded = list(lam) + [0] * (L - len(lam))
    beta = [padded[i] + L - 1 - i for i in range(L)]
    occupied = set(beta)
    out = []
    for idx, b in enumerate(beta):
        target = b + k
        if target in occupied:
            continue
        jumped = sum(1 for c in beta if b < c < target)
        new_beta = sorted((target if j == idx else c for j, c in enumerate(beta)), reverse=True)
        mu = tuple(x for x in (new_beta[i] - (L - 1 - i) for i in range(L)) if x)
        out.append((mu, -1 if jumped % 2 else 1))
    return tuple(out)


def _multiply(vec: dict, k: int, rule) -> dict:
    out: dict = defaultdict(int)
    for lam, c in vec.items():
        for mu in rule(lam, k):
            out[mu] += c
    return out


def _iterate(parts: Partition, rule) -> dict:
    vec = {(): 1}
    for k in parts:
        vec = _multiply(vec, k, rule)
    return vec


# --- public expansions -------------------------------------------------------

@lru_cache(maxsize=None)
def _e_cached(mu: Partition) -> SchurVector:
    return SchurVector(mu.n, _iterate(mu, _add_vertical))


@lru_cache(maxsize=None)
def _h_cached(mu: Partition) -> SchurVector:
    return SchurVector(mu.n, _iterate(mu, _add_horizontal))


@lru_cache(maxsize=None)
def _p_cached(rho: Partition) -> SchurVector:
    vec = {(): 1}
    for k in rho:
        out: dict = defaultdict(int)
        for lam, c in vec.items():
            for mu, sgn in _add_border_strips(lam, k):
                out[mu] += sgn * c
        vec = out
    return SchurVector(rho.n, vec)


def e_to_schur(mu: Iterable[int], bound: int | None = None) -> SchurVector:
    """e_mu = sum_lambda K_{lambda', mu} s_lambda."""
    mu = Partition(mu)
    _check_degree(mu.n, bound)
    return _e_cached(mu)


def h_to_schur(mu: Iterable[int], bound: int | None = None) -> SchurVector:
    """h_mu = sum_lambda K_{lambda, mu} s_lambda."""
    mu = Partition(mu)
    _check_degree(mu.n, bound)
    return _h_cached(mu)


def p_to_schur(rho: Iterable[int], bound: int | None = None) -> SchurVector:
    """p_rho in the Schur basis; the coefficients are the characters chi^lambda(rho)."""
    rho = Partition(rho)
    _check_degree(rho.n, bound)
    return _p_cached(rho)


def schur(lam: Iterable[int]) -> SchurVector:
    lam = Partition(lam)
    return SchurVector(lam.n, {lam: 1})


@lru_cache(maxsize=None)
def _kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    # Remove the cells holding the largest letter: they form a horizontal strip
    # of size mu[-1] at the outer rim of lam.
    if not mu:
        return 1 if not lam else 0
    if len(lam) > len(mu):
        return 0
    k = mu[-1]
    rest = mu[:-1]
    total = 0
    for nu in _remove_horizontal(lam, k):
        total += _kostka(nu, rest)
    return total


def _remove_horizontal(lam: tuple[int, ...], k: int) -> Iterator[tuple[int, ...]]:
    """Shapes nu with lam/nu a horizontal strip of size k: lam_{i+1} <= nu_i <= lam_i."""
    rows = list(lam)

    def rec(i, left, acc):
        if i == len(rows):
            if left == 0:
                yield tuple(x for x in acc if x)
            return
        floor = rows[i + 1] if i + 1 < len(rows) else 0
        for take in range(0, min(left, rows[i] - floor) + 1):
            acc.append(rows[i] - take)
            yield from rec(i + 1, left - take, acc)
            acc.pop()

    yield from rec(0, k, [])


def kostka(lam: Iterable[int], mu: Iterable[int]) -> int:
    """Number of semistandard tableaux of shape lam and content mu.

    ``mu`` may be given in any order (Kostka numbers are symmetric in the
    content); it is sorted before use.
    """
    lam, mu = Partition(lam), Partition(mu)
    if lam.n != mu.n:
        raise SizeMismatchError(f"|{lam}| != |{mu}|")
    return _kostka(tuple(lam), tuple(mu))


def omega(f: SchurVector) -> SchurVector:
    """The involution s_lambda -> s_lambda'."""
    return SchurVector(f.degree, {conjugate(k): v for k, v in f.items()})


def hall_pairing_truncated(f: SchurVector, g: SchurVector, N: int):
    """<f, g> over Schur shapes with at most N rows; 0 across different degrees.

    This is the Haar integral of f * conj(g) over U(N) for real-coefficient
    f, g evaluated at the eigenvalues.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if f.degree != g.degree and f and g:
        return 0
    total = 0
    small, large = (f, g) if len(f) <= len(g) else (g, f)
    for lam, c in small.items():
        if len(lam) <= N:
            total += c * large[lam]
    return _normalize(total) if isinstance(total, Fraction) else total
