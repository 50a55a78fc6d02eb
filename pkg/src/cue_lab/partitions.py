"""Integer partitions, doubling as cycle types of permutations."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable

from .config import PARTITION_BOUND
from .errors import SizeLimitError


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Any iterable of non-negative integers is accepted; zeros are dropped and
    the parts are sorted, so ``Partition([1, 3, 0])`` is ``(3, 1)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(x) for x in parts]
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, sorted((x for x in parts if x), reverse=True))

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def ell(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        """Map part size i to m_i, the number of parts equal to i."""
        return dict(Counter(self))

    def multiplicity_vector(self) -> tuple[int, ...]:
        """(m_1, ..., m_{largest part}); inverse of :func:`from_multiplicity_vectors`."""
        if not self:
            return ()
        m = Counter(self)
        return tuple(m.get(i, 0) for i in range(1, self[0] + 1))

    def conjugate(self) -> "Partition":
        return conjugate(self)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,1,1"``, ``"(3,1,1)"`` or ``""`` (the empty partition)."""
        text = text.strip().strip("()[]").strip()
        if not text:
            return cls()
        return cls(int(tok) for tok in text.split(","))


EMPTY = Partition()


def _check_bound(n: int, bound: int | None) -> None:
    bound = PARTITION_BOUND if bound is None else bound
    if n > bound:
        raise SizeLimitError(f"partitions of {n} exceed the bound {bound}")


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, bound: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_bound(n, bound)
    return [Partition(p) for p in _partitions(n, n)]


def partition_count(n: int) -> int:
    """p(n), by Euler's pentagonal recurrence (no enumeration)."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def conjugate(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return EMPTY
    return Partition(sum(1 for part in lam if part > i) for i in range(lam[0]))


def z_factor(rho: Iterable[int]) -> int:
    """Centralizer order prod_i i^{m_i} m_i! of a permutation of cycle type rho."""
    m = Counter(Partition(rho))
    return prod(i**k * factorial(k) for i, k in m.items())


def class_size(rho: Iterable[int]) -> int:
    """Number of permutations of cycle type rho, n!/z_rho."""
    rho = Partition(rho)
    return factorial(rho.n) // z_factor(rho)


def sign(rho: Iterable[int]) -> int:
    """Sign of any permutation with cycle type rho."""
    rho = Partition(rho)
    return -1 if (rho.n - rho.ell) % 2 else 1


def from_multiplicity_vectors(a: Iterable[int]) -> Partition:
    """Partition with a_j parts equal to j (j counted from 1)."""
    parts = []
    for j, count in enumerate(a, start=1):
        if count < 0:
            raise ValueError("multiplicities must be non-negative")
        parts.extend([j] * count)
    return Partition(parts)
