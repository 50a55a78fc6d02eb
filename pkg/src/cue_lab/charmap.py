"""Class functions on S_n, the divisor statistics d_lambda and the characteristic map."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Mapping

from .errors import SizeMismatchError
from .partitions import Partition, enumerate_partitions, sign, z_factor
from .symfunc import SchurVector, _check_degree, p_to_schur


@dataclass(frozen=True)
class ClassFunction:
    """Rational-valued function on the cycle types of S_n (zero values dropped)."""

    n: int
    values: Mapping[Partition, Fraction | int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for rho, v in dict(self.values).items():
            rho = Partition(rho)
            if rho.n != self.n:
                raise SizeMismatchError(f"{rho} is not a cycle type of S_{self.n}")
            if v:
                v = Fraction(v)
                clean[rho] = v.numerator if v.denominator == 1 else v
        object.__setattr__(self, "values", clean)

    def __call__(self, rho) -> Fraction | int:
        return self.values.get(Partition(rho), 0)

    def __hash__(self):
        return hash((self.n, frozenset(self.values.items())))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        if self.n != other.n:
            raise SizeMismatchError("class functions on different S_n")
        return ClassFunction(self.n, {r: v * other(r) for r, v in self.values.items()})

    @classmethod
    def from_function(cls, n: int, fn: Callable[[Partition], Fraction | int]) -> "ClassFunction":
        return cls(n, {rho: fn(rho) for rho in enumerate_partitions(n)})


def trivial(n: int) -> ClassFunction:
    return ClassFunction.from_function(n, lambda rho: 1)


def sgn(n: int) -> ClassFunction:
    return ClassFunction.from_function(n, sign)


def _multinomial(total: int, parts: Iterable[int]) -> int:
    return factorial(total) // prod(factorial(p) for p in parts)


def _compositions(total: int, k: int, caps: tuple[int, ...], length: int):
    """Ways to split ``total`` cycles of ``length`` among k blocks without overflow."""
    if k == 0:
        if total == 0:
            yield ()
        return
    top = min(total, caps[0] // length)
    for c in range(top, -1, -1):
        for rest in _compositions(total - c, k - 1, caps[1:], length):
            yield (c,) + rest


@lru_cache(maxsize=None)
def _d_value(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    # cycles grouped by length: [(length, multiplicity), ...]
    groups = sorted(Partition(rho).multiplicities().items(), reverse=True)

    @lru_cache(maxsize=None)
    def assign(gi: int, caps: tuple[int, ...]) -> int:
        if gi == len(groups):
            return 1 if not any(caps) else 0
        length, mult = groups[gi]
        total = 0
        for split in _compositions(mult, len(caps), caps, length):
            # equal-length cycles are distinct objects: multinomial weight
            weight = _multinomial(mult, split)
            left = tuple(c - s * length for c, s in zip(caps, split))
            total += weight * assign(gi + 1, left)
        return total

    return assign(0, lam)


def d_lambda_value(lam: Iterable[int], rho: Iterable[int]) -> int:
    """d_lambda(pi) for any pi of cycle type rho.

    Counts ordered tuples (A_1, ..., A_l) of disjoint pi-invariant sets with
    |A_i| = lam_i covering [n].  Invariant sets are unions of cycles, so this
    is the number of ways to deal the cycles of rho into l labelled blocks
    with exact size totals.
    """
    lam, rho = Partition(lam), Partition(rho)
    if lam.n != rho.n:
        raise SizeMismatchError(f"|{lam}| != |{rho}|")
    return _d_value(tuple(lam), tuple(rho))


def d_lambda_class_function(lam: Iterable[int]) -> ClassFunction:
    lam = Partition(lam)
    return ClassFunction.from_function(lam.n, lambda rho: d_lambda_value(lam, rho))


def sn_inner_product(f: ClassFunction, g: ClassFunction) -> Fraction | int:
    """(1/n!) sum_pi f(pi) g(pi), summed by class: sum_rho f(rho) g(rho) / z_rho."""
    if f.n != g.n:
        raise SizeMismatchError(f"S_{f.n} vs S_{g.n}")
    total = sum((Fraction(v) * g(rho) / z_factor(rho) for rho, v in f.values.items()), Fraction(0))
    return total.numerator if total.denominator == 1 else total


def sign_twist(f: ClassFunction) -> ClassFunction:
    return ClassFunction(f.n, {rho: sign(rho) * v for rho, v in f.values.items()})


def characteristic_map(f: ClassFunction, N: int, bound: int | None = None) -> SchurVector:
    """Ch^(N)(f) = sum_rho f(rho)/z_rho * p_rho, reported untruncated in Schur coordinates.

    ``N`` only fixes the target group U(N); truncation to at most N rows
    happens in :func:`cue_lab.symfunc.hall_pairing_truncated`.
    """
    if N < 1:
        raise ValueError("N must be positive")
    _check_degree(f.n, bound)
    acc: dict = {}
    for rho, v in f.values.items():
        w = Fraction(v) / z_factor(rho)
        for lam, c in p_to_schur(rho, bound=bound).items():
            acc[lam] = acc.get(lam, 0) + w * c
    return SchurVector(f.n, acc)
