"""Dirichlet characters modulo Q in F_q[T], character sums, L-functions and their moments.

Character values are stored exactly as exponents of zeta_E, E the exponent
of the unit group, and moments are evaluated in Z[zeta_E].
"""

from __future__ import annotations

import cmath
import math
import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .config import max_enum
from .contingency import count_matrices
from .cyclotomic import CyclotomicInt, lcm
from .errors import NumericError, PreconditionError, SizeLimitError
from .ffield import FieldSpec, FPoly, enumerate_monic, factorize, field_of, irreducibles, moebius, poly_gcd
from .partitions import Partition

MAX_PHI = 10**5


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class UnitGroup:
    """(F_q[T]/Q)^*, written as a direct product of cyclic groups of prime-power order.

    Residues are identified by ``FPoly.index()`` (base-q digits of the
    reduced representative).  ``dlog[idx]`` is the exponent vector of a unit
    against ``generators``.
    """

    def __init__(self, Q: FPoly):
        if not Q.is_monic:
            raise PreconditionError(f"modulus {Q} is not monic")
        self.Q = Q
        self.field = Q.field
        self.degree = Q.degree
        q = self.field.q
        size = q**self.degree
        if size > max(max_enum(), MAX_PHI):
            raise SizeLimitError(f"residue ring of size {size} is too large")
        self.one = FPoly.one(self.field) % Q
        self.units: list[FPoly] = [
            r for r in (FPoly.from_index(self.field, i) for i in range(size)) if self._is_unit(r)
        ]
        self.phi = len(self.units)
        if self.phi > MAX_PHI:
            raise SizeLimitError(f"phi(Q) = {self.phi} exceeds {MAX_PHI}")
        self.generators: list[tuple[FPoly, int]] = []
        self._decompose()
        self.exponent = lcm(m for _, m in self.generators)
        self.dlog: dict[int, tuple[int, ...]] = {}
        self._build_dlog()
        self._kernels: list[tuple[int, ...]] | None = None

    def _is_unit(self, r: FPoly) -> bool:
        if self.degree == 0:
            return True
        return poly_gcd(r, self.Q).is_one()

    def mul(self, a: FPoly, b: FPoly) -> FPoly:
        return (a * b) % self.Q

    def pow(self, a: FPoly, e: int) -> FPoly:
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def reduce(self, f: FPoly) -> FPoly:
        return f % self.Q

    def _decompose(self):
        # Greedy choice of maximal order inside each Sylow subgroup, lifting
        # each new generator so that its order equals its order modulo the
        # span of the earlier ones.
        phi = self.phi
        for p in _prime_factors(phi):
            pk = 1
            while phi % (pk * p) == 0:
                pk *= p
            cofactor = phi // pk
            sylow = sorted({self.pow(u, cofactor) for u in self.units}, key=FPoly.index)
            span: dict[FPoly, tuple[int, ...]] = {self.one: ()}
            gens: list[tuple[FPoly, int]] = []
            while len(span) < len(sylow):
                candidates = []
                for x in sylow:
                    y, d = x, 1
                    while y not in span:
                        y, d = self.pow(y, p), d * p
                    if d > 1:
                        candidates.append((d, x, y))
                top = max(d for d, _, _ in candidates)
                lifted = None
                for d, x, y in candidates:
                    if d != top:
                        continue
                    exps = span[y]
                    if all(e % d == 0 for e in exps):
                        corr = self.one
                        for (g, _), e in zip(gens, exps):
                            corr = self.mul(corr, self.pow(g, e // d))
                        inv_corr = self.pow(corr, pk - 1)  # corr lies in the p-group of order pk
                        lifted = (self.mul(x, inv_corr), d)
                        break
                if lifted is None:
                    raise ArithmeticError("no liftable element of maximal order")
                g, d = lifted
                new_span = {}
                power = self.one
                for j in range(d):
                    for s, exps in span.items():
                        new_span[self.mul(s, power)] = exps + (j,)
                    power = self.mul(power, g)
                span = {k: v + (0,) * (len(gens) + 1 - len(v)) for k, v in new_span.items()}
                gens.append(lifted)
            self.generators.extend(gens)

    def _build_dlog(self):
        orders = [m for _, m in self.generators]
        for exps in product(*(range(m) for m in orders)):
            u = self.one
            for (g, _), e in zip(self.generators, exps):
                if e:
                    u = self.mul(u, self.pow(g, e))
            idx = u.index()
            if idx in self.dlog:
                raise ArithmeticError("generators do not give unique exponent vectors")
            self.dlog[idx] = exps
        if math.prod(orders) != self.phi or len(self.dlog) != self.phi:
            raise ArithmeticError("generator orders do not multiply to phi(Q)")

    def divisor_kernels(self) -> list[tuple[int, ...]]:
        """For each proper monic divisor Q' of Q, the indices of units congruent to 1 mod Q'."""
        if self._kernels is None:
            one = FPoly.one(self.field)
            self._kernels = [
                tuple(u.index() for u in self.units if ((u - one) % Qp).is_zero())
                for Qp in proper_divisors(self.Q)
            ]
        return self._kernels

    def exponents_of(self, f: FPoly) -> tuple[int, ...] | None:
        """Exponent vector of f mod Q, or None when gcd(f, Q) != 1."""
        return self.dlog.get(self.reduce(f).index())

    def __repr__(self):
        return f"UnitGroup(Q={self.Q}, phi={self.phi}, orders={[m for _, m in self.generators]})"


@lru_cache(maxsize=256)
def build_unit_group(Q: FPoly) -> UnitGroup:
    return UnitGroup(Q)


@dataclass(frozen=True)
class Character:
    """chi(g_i) = exp(2 pi i c_i / m_i) for generator g_i of order m_i."""

    group: UnitGroup = field(repr=False, compare=False)
    exponents: tuple[int, ...]
    table: dict = field(repr=False, compare=False, hash=False)

    @property
    def E(self) -> int:
        return self.group.exponent

    def exponent_at(self, f: FPoly) -> int | None:
        """k with chi(f) = zeta_E^k, or None when chi(f) = 0."""
        return self.table.get(self.group.reduce(f).index())

    def __call__(self, f: FPoly) -> complex:
        k = self.exponent_at(f)
        return 0j if k is None else cmath.exp(2j * cmath.pi * k / self.E)

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @property
    def is_odd(self) -> bool:
        """Nontrivial on the constants F_q^* (an unverified convention, see README)."""
        F = self.group.field
        if self.group.degree == 0:
            return False
        return any(self.exponent_at(FPoly.const(F, c)) != 0 for c in F.units())

    @property
    def is_primitive(self) -> bool:
        """For every proper monic divisor Q' of Q, chi is nontrivial on units = 1 mod Q'."""
        G = self.group
        return all(any(self.table[idx] for idx in kernel) for kernel in G.divisor_kernels())

    def conjugate(self) -> "Character":
        return make_character(self.group, tuple((-c) % m for c, (_, m) in zip(self.exponents, self.group.generators)))


def proper_divisors(Q: FPoly) -> list[FPoly]:
    """Monic divisors of Q other than Q itself (1 included)."""
    F = Q.field
    if Q.degree <= 0:
        return []
    fac = factorize(Q).factors
    out = []
    for exps in product(*(range(e + 1) for _, e in fac)):
        if list(exps) == [e for _, e in fac]:
            continue
        d = FPoly.one(F)
        for (P, _), k in zip(fac, exps):
            d = d * P**k
        out.append(d)
    return out


def make_character(group: UnitGroup, exponents: Sequence[int]) -> Character:
    E = group.exponent
    weights = [E // m for _, m in group.generators]
    table = {}
    for idx, vec in group.dlog.items():
        table[idx] = sum(c * e * w for c, e, w in zip(exponents, vec, weights)) % E
    return Character(group, tuple(exponents), table)


def characters(Q: FPoly) -> list[Character]:
    """All phi(Q) Dirichlet characters mod Q; the principal one first."""
    G = build_unit_group(Q)
    return [make_character(G, c) for c in product(*(range(m) for _, m in G.generators))]


# --- character sums -----------------------------------------------------------------

def _monic_residue_histogram(group: UnitGroup, n: int, twist: str) -> dict[int, int]:
    """Residue index -> sum of weights of monic f of degree n coprime to Q.

    weight is 1 for twist 'none' and mu(f) for twist 'moebius'.
    """
    if twist not in ("none", "moebius"):
        raise ValueError(f"unknown twist {twist!r}")
    return _histogram_cached(group, n, twist, max_enum())


@lru_cache(maxsize=512)
def _histogram_cached(group: UnitGroup, n: int, twist: str, bound: int) -> dict[int, int]:
    hist: Counter = Counter()
    for f in enumerate_monic(n, group.field, bound):
        w = 1 if twist == "none" else moebius(f)
        if w == 0:
            continue
        idx = group.reduce(f).index()
        if idx in group.dlog:
            hist[idx] += w
    return dict(hist)


def _char_sum_from_hist(chi: Character, hist: dict[int, int]) -> CyclotomicInt:
    counts = [0] * chi.E
    for idx, w in hist.items():
        counts[chi.table[idx]] += w
    return CyclotomicInt.from_exponent_counts(chi.E, counts)


def char_sum(chi: Character, n: int, twist: str = "none") -> CyclotomicInt:
    """sum over monic f of degree n of chi(f) (times mu(f) when twist='moebius'), exactly."""
    return _char_sum_from_hist(chi, _monic_residue_histogram(chi.group, n, twist))


def lfunction_coeffs(chi: Character) -> list[CyclotomicInt]:
    """Coefficients of L(u, chi) in degrees 0 .. deg Q - 1.

    For the principal character L is not a polynomial of degree < deg Q and a
    warning is emitted; the truncated list is still returned.
    """
    if chi.is_principal:
        warnings.warn("principal character: L(u, chi) is not a polynomial of degree < deg Q", stacklevel=2)
    return [char_sum(chi, n) for n in range(max(chi.group.degree, 1))]


def char_moment(Q: FPoly, n: int, k: int, twist: str = "none") -> Fraction:
    """(1/phi(Q)) sum_chi |sum_{f monic, deg n} w(f) chi(f)|^{2k}, exact."""
    G = build_unit_group(Q)
    hist = _monic_residue_histogram(G, n, twist)
    total = CyclotomicInt.integer(G.exponent, 0)
    for chi in characters(Q):
        s = _char_sum_from_hist(chi, hist)
        total = total + s.abs2() ** k
    if not total.is_rational():
        raise ArithmeticError("character moment is not rational")  # Galois invariance makes this impossible
    return Fraction(total.rational(), G.phi)


def solution_count(n: int, k: int, Q: FPoly, constraint: str = "none") -> int:
    """#{f_1..f_k = g_1..g_k : all monic of degree n, coprime to Q, squarefree if asked}."""
    if constraint not in ("none", "squarefree"):
        raise ValueError(f"unknown constraint {constraint!r}")
    F = Q.field
    if F.q ** (n * k) > max_enum():
        raise SizeLimitError(f"q^(nk) = {F.q}^{n * k} exceeds the enumeration bound")
    allowed = [
        f for f in enumerate_monic(n, F)
        if (Q.degree == 0 or poly_gcd(f, Q).is_one())
        and (constraint == "none" or factorize(f).is_squarefree)
    ]
    products: Counter = Counter({FPoly.one(F): 1})
    for _ in range(k):
        nxt: Counter = Counter()
        for prod_, cnt in products.items():
            for f in allowed:
                nxt[prod_ * f] += cnt
        products = nxt
    return sum(c * c for c in products.values())


# --- Theta_chi numerics -------------------------------------------------------------

def _poly_roots(coeffs: Sequence[complex], tol: float = 1e-12, max_sweeps: int = 10_000,
                restarts: int = 5, seed: int = 0) -> np.ndarray:
    """All roots of sum c_i u^i (low to high) by Weierstrass / Durand-Kerner iteration."""
    c = np.array(coeffs, dtype=complex)
    while len(c) and c[-1] == 0:
        c = c[:-1]
    d = len(c) - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    monic = c / c[-1]
    radius = 1 + max(abs(monic[:-1]))
    rng = random.Random(seed)

    def value(z):
        return np.polyval(monic[::-1], z)

    for attempt in range(restarts):
        shift = complex(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)) if attempt else 0
        z = np.array([(0.4 + 0.9j + shift) ** i for i in range(d)], dtype=complex) * radius / 2
        for _ in range(max_sweeps):
            delta = np.empty(d, dtype=complex)
            for i in range(d):
                denom = np.prod([z[i] - z[j] for j in range(d) if j != i]) if d > 1 else 1.0
                if denom == 0:
                    break
                delta[i] = value(z[i]) / denom
                z[i] -= delta[i]
            else:
                if np.max(np.abs(delta)) <= tol * max(1.0, np.max(np.abs(z))):
                    # Newton polish
                    deriv = np.polyder(monic[::-1])
                    for _ in range(3):
                        z = z - value(z) / np.polyval(deriv, z)
                    if np.max(np.abs(value(z))) <= 1e-10 * max(1.0, float(np.max(np.abs(monic)))):
                        return z
                    break
                continue
            break
    raise NumericError(f"root iteration did not converge after {max_sweeps} sweeps")


@dataclass(frozen=True)
class ThetaReport:
    chi: tuple[int, ...]
    q: int
    deg_Q: int
    degree_ok: bool
    roots: tuple[complex, ...]
    max_modulus_dev: float
    max_sc_dev: float
    max_trsym_dev: float
    max_moebius_series_dev: float
    weil_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.degree_ok
            and len(self.roots) == self.deg_Q - 1
            and self.max_modulus_dev <= 1e-9
            and self.max_sc_dev <= 1e-8
            and self.max_trsym_dev <= 1e-8
            and self.max_moebius_series_dev <= 1e-8
            and self.weil_ok
        )


def _series_inverse(c: Sequence[complex], n_terms: int) -> list[complex]:
    out = [1 / c[0]]
    for n in range(1, n_terms):
        acc = sum(c[k] * out[n - k] for k in range(1, min(n, len(c) - 1) + 1))
        out.append(-acc / c[0])
    return out


def theta_checks(chi: Character, n_max: int | None = None) -> ThetaReport:
    """Numerical checks on L(u, chi) = det(I - u sqrt(q) Theta_chi) for odd primitive chi.

    (i) deg L = deg Q - 1; (ii) every root has |u| = q^{-1/2}; (iii) Sc_n of
    the unitary eigenvalues matches (-1)^n q^{-n/2} times the character sum;
    (iv) Tr Sym^n matches q^{-n/2} [u^n] 1/L, and [u^n] 1/L matches the
    exact Moebius-twisted character sum; (v) the Weil bound.
    """
    G = chi.group
    if not (chi.is_odd and chi.is_primitive):
        raise PreconditionError("theta_checks needs an odd primitive character")
    q, dQ = G.field.q, G.degree
    if dQ > 10:
        raise PreconditionError("deg Q must be at most 10")
    d = dQ - 1
    n_max = 2 * dQ if n_max is None else n_max
    exact = [char_sum(chi, n) for n in range(dQ)]
    L = [complex(x) for x in exact]
    degree_ok = abs(L[d]) > 1e-9
    roots = _poly_roots(L)
    sq = math.sqrt(q)
    modulus_dev = max((abs(abs(u) - 1 / sq) for u in roots), default=0.0)

    theta = 1 / (sq * roots) if len(roots) else np.zeros(0, dtype=complex)
    # e_n(theta) from the product prod (1 + theta_i x)
    e = np.zeros(d + 1, dtype=complex)
    e[0] = 1
    for t in theta:
        e[1:] = e[1:] + t * e[:-1]
    sc_dev = max(abs(e[n] - (-1) ** n * L[n] / sq**n) for n in range(d + 1))

    p = [np.sum(theta**k) for k in range(1, n_max + 1)]
    h = [1 + 0j]
    for n in range(1, n_max + 1):
        h.append(sum(p[k - 1] * h[n - k] for k in range(1, n + 1)) / n)
    inv = _series_inverse(L, n_max + 1)
    trsym_dev = max(abs(h[n] - inv[n] / sq**n) for n in range(n_max + 1))
    moeb_dev = max(abs(inv[n] - complex(char_sum(chi, n, "moebius"))) for n in range(dQ + 1))

    weil_ok = all(abs(L[n]) <= math.comb(d, n) * sq**n + 1e-8 for n in range(d + 1))
    return ThetaReport(
        chi=chi.exponents,
        q=q,
        deg_Q=dQ,
        degree_ok=degree_ok,
        roots=tuple(complex(u) for u in roots),
        max_modulus_dev=float(modulus_dev),
        max_sc_dev=float(sc_dev),
        max_trsym_dev=float(trsym_dev),
        max_moebius_series_dev=float(moeb_dev),
        weil_ok=weil_ok,
    )


def odd_primitive_characters(Q: FPoly) -> list[Character]:
    return [chi for chi in characters(Q) if chi.is_odd and chi.is_primitive]


# --- large-q trend ------------------------------------------------------------------

@dataclass(frozen=True)
class TrendRow:
    q: int
    Q: str
    phi: int
    ratio_none: float
    ratio_moebius: float
    target: int
    exact_ratio_none: Fraction | None


def katz_trend_report(d: int, n: int, k: int, primes: Sequence[int]) -> list[TrendRow]:
    """Per q: both normalized moments next to N_{(n^k),(n^k)}.  Nothing is asserted.

    Q is the first monic irreducible of degree d.  Ratios are computed in
    floating point; ``exact_ratio_none`` (from the solution count) is filled
    in when nk <= d.
    """
    target = count_matrices(Partition([n] * k), Partition([n] * k))
    rows = []
    for q in primes:
        F = field_of(q)
        Q = irreducibles(F, d)[0]
        G = build_unit_group(Q)
        ratios = []
        for twist in ("none", "moebius"):
            hist = _monic_residue_histogram(G, n, twist)
            idx = np.array(list(hist), dtype=np.int64)
            w = np.array([hist[i] for i in hist], dtype=float)
            acc = 0.0
            for chi in characters(Q):
                ks = np.array([chi.table[i] for i in idx], dtype=float)
                s = np.sum(w * np.exp(2j * np.pi * ks / G.exponent))
                acc += abs(s) ** (2 * k)
            ratios.append(float(acc / G.phi / q ** (n * k)))
        exact = Fraction(solution_count(n, k, Q), q ** (n * k)) if n * k <= d else None
        rows.append(TrendRow(q, repr(Q), G.phi, ratios[0], ratios[1], target, exact))
    return rows


# --- integers -----------------------------------------------------------------------

def _squarefree(m: int) -> bool:
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def integer_mk(x: int, k: int, constraint: str = "none") -> int:
    """#{n_1...n_k = m_1...m_k : 1 <= n_i, m_i <= x}, optionally all squarefree."""
    if constraint not in ("none", "squarefree"):
        raise ValueError(f"unknown constraint {constraint!r}")
    x = int(x)
    if x < 1:
        return 0
    if x**k > 10**8:
        raise SizeLimitError(f"x^k = {x}^{k} exceeds 10^8")
    allowed = [m for m in range(1, x + 1) if constraint == "none" or _squarefree(m)]
    products: Counter = Counter({1: 1})
    for _ in range(k):
        nxt: Counter = Counter()
        for p, c in products.items():
            for m in allowed:
                nxt[p * m] += c
        products = nxt
    return sum(c * c for c in products.values())


def parse_modulus(text: str) -> FPoly:
    """``"1,0,1@q=2"`` -> 1 + T^2 over F_2 (coefficients low to high)."""
    coeffs, _, qpart = text.partition("@")
    if not qpart.strip().startswith("q="):
        raise ValueError(f"expected '<c0,c1,...>@q=<q>', got {text!r}")
    F: FieldSpec = field_of(int(qpart.strip()[2:]))
    return FPoly(F, [int(c) for c in coeffs.split(",") if c.strip() != ""])
