"""Arithmetic in F_q and F_q[T], factorization, and divisor statistics of monic polynomials.

Field elements are ints in [0, q).  For q = p^r the int's base-p digits are
the coordinates in the polynomial basis 1, t, ..., t^{r-1} modulo the field's
defining polynomial.  Polynomials store coefficients low to high.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Iterator, Sequence

from . import kernels
from .charmap import d_lambda_value
from .config import max_enum
from .contingency import count_matrices
from .errors import PreconditionError, SizeLimitError, SizeMismatchError
from .partitions import Partition

MAX_Q = 1024
MAX_FACTOR_DEGREE = 24


# --- prime-field helpers used to bootstrap extension fields ---------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q: int) -> tuple[int, int]:
    """(p, r) with q = p^r, or ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            r, m = 0, q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1 or not is_prime(p):
                break
            return p, r
    raise ValueError(f"{q} is not a prime power")


def _fp_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = [x % p for x in a]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        if c:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] - c * bj) % p
    return _fp_strip(r[:db])


def _fp_irreducible(f: Sequence[int], p: int) -> bool:
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for low in product(range(p), repeat=k):
            if not _fp_mod(f, list(low) + [1], p):
                return False
    return True


def _fp_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _fp_mod(out, mod, p) if out else []


class FieldSpec:
    """F_q with q = p^r, plus flat add/mul/neg/inv tables over the int encoding."""

    def __init__(self, p: int, r: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**r
        if q > MAX_Q:
            raise SizeLimitError(f"q = {q} exceeds {MAX_Q}")
        if modulus is None:
            modulus = self._smallest_irreducible(p, r)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree r")
        if r > 1 and not _fp_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.r, self.q, self.modulus = p, r, q, modulus
        self._build_tables()

    @staticmethod
    def _smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
        if r == 1:
            return (0, 1)
        for low in product(range(p), repeat=r):
            f = list(low) + [1]
            if _fp_irreducible(f, p):
                return tuple(f)
        raise AssertionError("no irreducible polynomial found")  # unreachable

    @classmethod
    def from_q(cls, q: int) -> "FieldSpec":
        return field_of(q)

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.r):
            out.append(x % self.p)
            x //= self.p
        return _fp_strip(out)

    def _undigits(self, d: Sequence[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def _build_tables(self):
        p, q = self.p, self.q
        if self.r == 1:
            add = [(x + y) % p for x in range(q) for y in range(q)]
            mul = [(x * y) % p for x in range(q) for y in range(q)]
        else:
            digits = [self._digits(x) for x in range(q)]
            add, mul = [], []
            for x in range(q):
                for y in range(q):
                    dx, dy = digits[x], digits[y]
                    s = [((dx[i] if i < len(dx) else 0) + (dy[i] if i < len(dy) else 0)) % p for i in range(self.r)]
                    add.append(self._undigits(s))
                    mul.append(self._undigits(_fp_mulmod(dx, dy, self.modulus, p)))
        self.add = array("i", add)
        self.mul = array("i", mul)
        self.neg = array("i", [next(y for y in range(q) if add[x * q + y] == 0) for x in range(q)])
        inv = [0] * q
        for x in range(1, q):
            inv[x] = next(y for y in range(1, q) if mul[x * q + y] == 1)
        self.inv = array("i", inv)

    def _key(self):
        return (self.p, self.r, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.r}, modulus={self.modulus})"

    def units(self) -> range:
        return range(1, self.q)


@lru_cache(maxsize=None)
def field_of(q: int) -> FieldSpec:
    p, r = prime_power(q)
    return FieldSpec(p, r)


# --- polynomials ---------------------------------------------------------------

class FPoly:
    """Immutable polynomial over a :class:`FieldSpec`; coefficients low to high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        if any(not 0 <= x < field.q for x in c):
            raise ValueError(f"coefficients must lie in [0, {field.q})")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("FPoly is immutable")

    @classmethod
    def T(cls, field: FieldSpec) -> "FPoly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FieldSpec, c: int) -> "FPoly":
        return cls(field, (c,))

    @classmethod
    def one(cls, field: FieldSpec) -> "FPoly":
        return cls(field, (1,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lead == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def _wrap(self, coeffs) -> "FPoly":
        out = object.__new__(FPoly)
        object.__setattr__(out, "field", self.field)
        object.__setattr__(out, "coeffs", tuple(coeffs))
        return out

    def _check(self, other):
        if not isinstance(other, FPoly):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __eq__(self, other):
        if not isinstance(other, FPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def sort_key(self):
        return (self.degree, self.coeffs[::-1])

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add[out[i] * F.q + y]
        while out and out[-1] == 0:
            out.pop()
        return self._wrap(out)

    def __neg__(self):
        return self._wrap(self.field.neg[x] for x in self.coeffs)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        return self._wrap(kernels.poly_mul(self.coeffs, other.coeffs, F.add, F.mul, F.q))

    def __divmod__(self, other):
        other = self._check(other)
        F = self.field
        quo, rem = kernels.poly_divmod(self.coeffs, other.coeffs, F.add, F.mul, F.neg, F.inv, F.q)
        return self._wrap(quo), self._wrap(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = FPoly.one(self.field), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c: int) -> "FPoly":
        F = self.field
        return self._wrap(F.mul[c * F.q + x] for x in self.coeffs) if c else self._wrap(())

    def monic(self) -> "FPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv[self.lead])

    def divides(self, other: "FPoly") -> bool:
        return (other % self).is_zero()

    def index(self) -> int:
        """Base-q integer sum c_i q^i; a bijection from polynomials of degree < d to [0, q^d)."""
        q = self.field.q
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    @classmethod
    def from_index(cls, field: FieldSpec, idx: int) -> "FPoly":
        out = []
        while idx:
            idx, c = divmod(idx, field.q)
            out.append(c)
        return cls(field, out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def poly_gcd(a: FPoly, b: FPoly) -> FPoly:
    """Monic gcd (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def enumerate_monic(n: int, field: FieldSpec, bound: int | None = None) -> Iterator[FPoly]:
    """All q^n monic polynomials of degree n, lexicographic in (c_0, ..., c_{n-1})."""
    bound = max_enum() if bound is None else bound
    if field.q**n > bound:
        raise SizeLimitError(f"q^n = {field.q}^{n} exceeds the enumeration bound {bound}")
    for low in product(range(field.q), repeat=n):
        yield FPoly(field, low + (1,))


def count_monic(n: int, field: FieldSpec) -> int:
    return field.q**n


# --- factorization -------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""

    factors: tuple[tuple[FPoly, int], ...]

    def product(self, field: FieldSpec) -> FPoly:
        out = FPoly.one(field)
        for P, e in self.factors:
            out = out * P**e
        return out

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def cycle_type(self) -> Partition:
        """One part of size deg P for each repetition of each prime P."""
        return Partition(P.degree for P, e in self.factors for _ in range(e))

    def __len__(self):
        return len(self.factors)


@lru_cache(maxsize=None)
def irreducibles(field: FieldSpec, d: int) -> tuple[FPoly, ...]:
    """Monic irreducibles of degree d in enumeration order (trial-division sieve)."""
    if d < 1:
        return ()
    smaller = [P for k in range(1, d // 2 + 1) for P in irreducibles(field, k)]
    out = []
    for f in enumerate_monic(d, field, bound=max(max_enum(), field.q**d)):
        if not any(P.divides(f) for P in smaller):
            out.append(f)
    return tuple(out)


@lru_cache(maxsize=200_000)
def _factor_coeffs(field: FieldSpec, coeffs: tuple[int, ...]) -> Factorization:
    rem = FPoly(field, coeffs)
    found: list[tuple[FPoly, int]] = []
    d = 1
    while 2 * d <= rem.degree:
        for P in irreducibles(field, d):
            e = 0
            while True:
                quo, r = divmod(rem, P)
                if not r.is_zero():
                    break
                rem, e = quo, e + 1
            if e:
                found.append((P, e))
            if 2 * d > rem.degree:
                break
        d += 1
    if rem.degree > 0:
        found.append((rem, 1))
    found.sort(key=lambda pe: pe[0].sort_key())
    return Factorization(tuple(found))


def factorize(f: FPoly) -> Factorization:
    if not f.is_monic:
        raise PreconditionError(f"{f} is not monic")
    if f.degree > MAX_FACTOR_DEGREE:
        raise SizeLimitError(f"degree {f.degree} exceeds {MAX_FACTOR_DEGREE}")
    return _factor_coeffs(f.field, f.coeffs)


def moebius(f: FPoly) -> int:
    fac = factorize(f)
    if not fac.is_squarefree:
        return 0
    return -1 if len(fac) % 2 else 1


def is_squarefree(f: FPoly) -> bool:
    return factorize(f).is_squarefree


def d_lambda_q(lam: Iterable[int], f: FPoly) -> int:
    """d_lambda evaluated at the cycle type read off the prime factorization of f.

    For squarefull f this is not the number of ordered factorizations
    f = f_1 ... f_l with deg f_i = lam_i; e.g. f = T^2, lam = (1, 1) gives 2.
    """
    lam = Partition(lam)
    if lam.n != f.degree:
        raise SizeMismatchError(f"|{lam}| != deg f = {f.degree}")
    return d_lambda_value(lam, factorize(f).cycle_type())


def divisor_correlation_sum(mu, mu_t, n: int, field: FieldSpec, bound: int | None = None) -> int:
    """sum over monic f of degree n of d_{mu,q}(f) d_{mu~,q}(f)."""
    mu, mu_t = Partition(mu), Partition(mu_t)
    if mu.n != n or mu_t.n != n:
        raise SizeMismatchError(f"{mu}, {mu_t} must both be partitions of {n}")
    # d_lambda depends on f only through its cycle type
    by_type: dict[Partition, int] = {}
    for f in enumerate_monic(n, field, bound):
        ct = factorize(f).cycle_type()
        by_type[ct] = by_type.get(ct, 0) + 1
    return sum(cnt * d_lambda_value(mu, ct) * d_lambda_value(mu_t, ct) for ct, cnt in by_type.items())


# --- polynomiality in q ----------------------------------------------------------

def lagrange_coefficients(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Exact coefficients (low to high) of the interpolant through (xs, ys)."""
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate(coeffs: Sequence[Fraction], x) -> Fraction:
    return reduce(lambda acc, c: acc * x + c, reversed(coeffs), Fraction(0))


def next_prime_power(q: int) -> int:
    m = q + 1
    while True:
        try:
            prime_power(m)
            return m
        except ValueError:
            m += 1


@dataclass(frozen=True)
class PolynomialFit:
    mu: Partition
    mu_t: Partition
    n: int
    values: dict[int, int]
    coefficients: tuple[Fraction, ...]
    holdout_q: int
    holdout_value: int
    predicted: Fraction
    target: int

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    @property
    def verdict(self) -> bool:
        return (
            self.integral
            and self.degree == self.n
            and self.leading == self.target
            and self.predicted == self.holdout_value
        )


def polynomiality_check(mu, mu_t, n: int, primes: Sequence[int], holdout: int | None = None) -> PolynomialFit:
    """Interpolate q -> divisor_correlation_sum through ``primes``; test against a held-out q.

    Passes iff the interpolant is integral of degree exactly n, its leading
    coefficient is N_{mu, mu~} and it reproduces the holdout exactly.  The
    holdout defaults to the next prime power after max(primes).
    """
    qs = sorted(set(int(q) for q in primes))
    if len(qs) < n + 1:
        raise PreconditionError(f"need at least {n + 1} distinct q values, got {len(qs)}")
    if holdout is None:
        holdout = next_prime_power(qs[-1])
    if holdout in qs:
        raise PreconditionError("holdout must differ from the fitting points")
    mu, mu_t = Partition(mu), Partition(mu_t)
    values = {q: divisor_correlation_sum(mu, mu_t, n, field_of(q)) for q in qs}
    coeffs = lagrange_coefficients(qs, [values[q] for q in qs])
    held = divisor_correlation_sum(mu, mu_t, n, field_of(holdout))
    return PolynomialFit(
        mu=mu,
        mu_t=mu_t,
        n=n,
        values=values,
        coefficients=tuple(coeffs),
        holdout_q=holdout,
        holdout_value=held,
        predicted=evaluate(coeffs, holdout),
        target=count_matrices(mu, mu_t),
    )


# --- gcd matrices ------------------------------------------------------------------

def gcd_matrix(fs: Sequence[FPoly], gs: Sequence[FPoly]) -> list[list[FPoly]]:
    """h[i][j] = gcd(g_i, f_j): rows follow ``gs``, columns follow ``fs``."""
    for x in list(fs) + list(gs):
        if not x.is_monic:
            raise PreconditionError(f"{x} is not monic")
    return [[poly_gcd(g, f) for f in fs] for g in gs]


def degree_matrix(h: Sequence[Sequence[FPoly]]) -> list[list[int]]:
    return [[x.degree for x in row] for row in h]


def _gcd(a, b):
    if isinstance(a, FPoly):
        return poly_gcd(a, b)
    return math.gcd(a, b)


def _exact_div(a, b):
    if isinstance(a, FPoly):
        quo, rem = divmod(a, b)
        if not rem.is_zero():
            raise ArithmeticError(f"{b} does not divide {a}")
        return quo
    if a % b:
        raise ArithmeticError(f"{b} does not divide {a}")
    return a // b


def _product(items, one):
    out = one
    for x in items:
        out = out * x
    return out


def _one_like(x):
    return FPoly.one(x.field) if isinstance(x, FPoly) else 1


def vaughan_wooley_decompose(ms: Sequence, ns: Sequence) -> list[list]:
    """Matrix a with prod_j a[i][j] = m_i and prod_i a[i][j] = n_j, given prod m = prod n.

    a[i][j] = gcd(m_i / prod_{l<j} a[i][l], n_j / prod_{l<i} a[l][j]), filled in
    order of i + j (row-major order respects that).  Works for positive
    integers and for monic polynomials; no coprimality is needed.
    """
    if not ms or not ns:
        raise PreconditionError("need at least one m and one n")
    one = _one_like(ms[0])
    if isinstance(ms[0], FPoly):
        for x in list(ms) + list(ns):
            if not x.is_monic:
                raise PreconditionError(f"{x} is not monic")
    elif any(x < 1 for x in list(ms) + list(ns)):
        raise PreconditionError("integers must be positive")
    if _product(ms, one) != _product(ns, one):
        raise PreconditionError("products of the two tuples differ")
    row_left = list(ms)
    col_left = list(ns)
    a = [[one] * len(ns) for _ in ms]
    for i in range(len(ms)):
        for j in range(len(ns)):
            g = _gcd(row_left[i], col_left[j])
            a[i][j] = g
            row_left[i] = _exact_div(row_left[i], g)
            col_left[j] = _exact_div(col_left[j], g)
    if any(x != one for x in row_left + col_left):
        raise ArithmeticError("decomposition did not exhaust the inputs")  # balanced inputs never get here
    return a
