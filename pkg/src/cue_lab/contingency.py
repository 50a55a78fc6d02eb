"""N_{mu, mu~}: non-negative integer matrices with prescribed margins, counted three ways."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Iterator

from . import kernels
from .charmap import d_lambda_class_function, sn_inner_product
from .config import NODE_LIMIT
from .errors import IntegralityError, PreconditionError, SizeLimitError, SizeMismatchError
from .partitions import Partition, enumerate_partitions
from .symfunc import _check_degree, kostka


MATRIX_CELL_BOUND = 64


@dataclass(frozen=True)
class MarginMatrix:
    """Matrix of non-negative integers; ``rows``/``cols`` are its margins."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    @property
    def cols(self) -> tuple[int, ...]:
        if not self.entries:
            return ()
        return tuple(sum(c) for c in zip(*self.entries))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def transpose(self) -> "MarginMatrix":
        return MarginMatrix(tuple(zip(*self.entries)))

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def count_matrices(mu: Iterable[int], mu_t: Iterable[int], node_limit: int | None = None) -> int:
    """Exact N_{mu, mu~} by row-wise backtracking; 0 when the sizes differ."""
    mu, mu_t = Partition(mu), Partition(mu_t)
    if mu.n != mu_t.n:
        return 0
    return kernels.count_tables(tuple(mu), tuple(mu_t), NODE_LIMIT if node_limit is None else node_limit)


def enumerate_matrices(
    mu: Iterable[int], mu_t: Iterable[int], cell_bound: int = MATRIX_CELL_BOUND
) -> Iterator[MarginMatrix]:
    """Yield every matrix with row sums ``mu`` and column sums ``mu_t`` exactly once.

    Margins are used in the order given, so non-partition orderings work too.
    """
    rows = [int(x) for x in mu]
    cols = [int(x) for x in mu_t]
    if len(rows) * len(cols) > cell_bound:
        raise SizeLimitError(f"{len(rows)}x{len(cols)} exceeds {cell_bound} cells")
    if sum(rows) != sum(cols):
        return
    rem = list(cols)
    current: list[tuple[int, ...]] = []

    def row_fill(i):
        if i == len(rows):
            if not any(rem):
                yield MarginMatrix(tuple(current))
            return
        yield from place(i, 0, rows[i], [])

    def place(i, j, left, acc):
        if j == len(cols):
            if left == 0:
                current.append(tuple(acc))
                yield from row_fill(i + 1)
                current.pop()
            return
        if sum(rem[j:]) < left:
            return
        for x in range(min(left, rem[j]), -1, -1):
            rem[j] -= x
            acc.append(x)
            yield from place(i, j + 1, left - x, acc)
            acc.pop()
            rem[j] += x

    if not rows and not cols:
        yield MarginMatrix(())
        return
    yield from row_fill(0)


def count_via_kostka(mu: Iterable[int], mu_t: Iterable[int], bound: int | None = None) -> int:
    """sum_lambda K_{lambda, mu} K_{lambda, mu~}."""
    mu, mu_t = Partition(mu), Partition(mu_t)
    if mu.n != mu_t.n:
        raise SizeMismatchError(f"|{mu}| != |{mu_t}|")
    _check_degree(mu.n, bound)
    return sum(kostka(lam, mu) * kostka(lam, mu_t) for lam in enumerate_partitions(mu.n))


def count_via_sn_average(mu: Iterable[int], mu_t: Iterable[int]) -> Fraction:
    """(1/n!) sum_{pi in S_n} d_mu(pi) d_mu~(pi), required to be an integer."""
    mu, mu_t = Partition(mu), Partition(mu_t)
    if mu.n != mu_t.n:
        raise SizeMismatchError(f"|{mu}| != |{mu_t}|")
    value = Fraction(sn_inner_product(d_lambda_class_function(mu), d_lambda_class_function(mu_t)))
    if value.denominator != 1:
        raise IntegralityError(f"S_n average for {mu}, {mu_t} is {value}")
    return value


@dataclass(frozen=True)
class MultinomialReport:
    mu: Partition
    mu_t: Partition
    lhs: int            # n! * N_{mu, mu~}
    via_matrices: int   # sum_C multinomial(C) * prod c_ij!
    via_set_pairs: int  # sum over ordered set-partition pairs of prod |A_i & B_j|!

    @property
    def balanced(self) -> bool:
        return self.lhs == self.via_matrices == self.via_set_pairs

    def __bool__(self):
        return self.balanced


def _ordered_set_partitions(labels: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[tuple[frozenset, ...]]:
    if not sizes:
        if not labels:
            yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(labels, first):
        chosen = frozenset(block)
        remaining = tuple(x for x in labels if x not in chosen)
        for tail in _ordered_set_partitions(remaining, rest):
            yield (chosen,) + tail


def multinomial_identity_check(mu: Iterable[int], mu_t: Iterable[int], max_n: int = 8) -> MultinomialReport:
    """Check n! N = sum over ordered set-partition pairs (A, B) of prod |A_i & B_j|!.

    The right side is evaluated twice: grouped by intersection matrix C with
    multiplicity n!/prod c_ij!, and directly over set partitions B against
    one fixed A (every A gives the same inner sum by relabelling), scaled by
    the number of A's.
    """
    mu, mu_t = Partition(mu), Partition(mu_t)
    if mu.n != mu_t.n:
        raise SizeMismatchError(f"|{mu}| != |{mu_t}|")
    n = mu.n
    if n > max_n:
        raise PreconditionError(f"n = {n} exceeds {max_n}")

    lhs = factorial(n) * count_matrices(mu, mu_t)

    via_matrices = 0
    for C in enumerate_matrices(mu, mu_t, cell_bound=max(MATRIX_CELL_BOUND, n * n)):
        cells = [c for row in C.entries for c in row]
        multinomial = factorial(n) // prod(factorial(c) for c in cells)
        via_matrices += multinomial * prod(factorial(c) for c in cells)

    labels = tuple(range(n))
    fixed_a = next(_ordered_set_partitions(labels, tuple(mu)))
    n_a = factorial(n) // prod(factorial(m) for m in mu)
    inner = 0
    for b in _ordered_set_partitions(labels, tuple(mu_t)):
        inner += prod(factorial(len(a & bj)) for a in fixed_a for bj in b)
    via_set_pairs = n_a * inner

    return MultinomialReport(mu, mu_t, lhs, via_matrices, via_set_pairs)


def three_way(mu: Iterable[int], mu_t: Iterable[int]) -> tuple[int, int, int]:
    """(backtracking, Kostka, S_n average) counts for a pair of partitions of n."""
    return (
        count_matrices(mu, mu_t),
        count_via_kostka(mu, mu_t),
        int(count_via_sn_average(mu, mu_t)),
    )
