"""Exact arithmetic in Z[zeta_E], elements reduced modulo the cyclotomic polynomial Phi_E."""

from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd
from typing import Sequence


def _poly_divmod_int(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial (coefficients low to high)."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        quot[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return quot, a[:db]


@lru_cache(maxsize=None)
def cyclotomic_poly(E: int) -> tuple[int, ...]:
    """Phi_E, low to high."""
    num = [-1] + [0] * (E - 1) + [1]
    for d in range(1, E):
        if E % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(num)


def _reduce(coeffs: Sequence[int], E: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(E)
    d = len(phi) - 1
    if len(coeffs) <= d:
        out = list(coeffs) + [0] * (d - len(coeffs))
    else:
        _, out = _poly_divmod_int(list(coeffs), list(phi))
        out = out + [0] * (d - len(out))
    return tuple(out)


class CyclotomicInt:
    """sum_i c_i zeta_E^i with i < phi(E); the representation is canonical."""

    __slots__ = ("E", "coeffs")

    def __init__(self, E: int, coeffs: Sequence[int] = ()):
        self.E = E
        self.coeffs = _reduce(coeffs, E)

    @classmethod
    def from_exponent_counts(cls, E: int, counts: Sequence[int]) -> "CyclotomicInt":
        """sum_k counts[k] zeta^k for k in [0, E)."""
        return cls(E, counts)

    @classmethod
    def integer(cls, E: int, n: int) -> "CyclotomicInt":
        return cls(E, [n])

    def _same(self, other):
        if isinstance(other, int):
            return CyclotomicInt.integer(self.E, other)
        if other.E != self.E:
            raise ValueError("different cyclotomic orders")
        return other

    def __add__(self, other):
        other = self._same(other)
        return CyclotomicInt(self.E, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.E, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        other = self._same(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return CyclotomicInt(self.E, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CyclotomicInt.integer(self.E, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CyclotomicInt":
        E = self.E
        out = [0] * E
        for i, c in enumerate(self.coeffs):
            out[(-i) % E] += c
        return CyclotomicInt(E, out)

    def abs2(self) -> "CyclotomicInt":
        return self * self.conjugate()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else 0

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.E)
        return complex(sum(c * z**i for i, c in enumerate(self.coeffs)))

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.integer(self.E, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.E == other.E and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.E, self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return str(self.rational())
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"({' + '.join(terms)})_{self.E}"


def root_of_unity_exponent(num: int, den: int, E: int) -> int:
    """Exponent k with zeta_E^k = exp(2 pi i num / den), requiring den | E."""
    if E % den:
        raise ValueError(f"{den} does not divide {E}")
    return (num * (E // den)) % E


def lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out

