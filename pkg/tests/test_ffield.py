import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cue_lab.charmap import d_lambda_value
from cue_lab.contingency import count_matrices
from cue_lab.errors import PreconditionError, SizeLimitError, SizeMismatchError
from cue_lab.ffield import (
    FieldSpec,
    FPoly,
    d_lambda_q,
    degree_matrix,
    divisor_correlation_sum,
    enumerate_monic,
    factorize,
    field_of,
    gcd_matrix,
    irreducibles,
    is_squarefree,
    lagrange_coefficients,
    moebius,
    next_prime_power,
    polynomiality_check,
    poly_gcd,
    prime_power,
    vaughan_wooley_decompose,
)
from cue_lab.partitions import enumerate_partitions

import oracles

F2, F3, F4, F5 = (field_of(q) for q in (2, 3, 4, 5))


def P(F, *coeffs):
    return FPoly(F, coeffs)


def T(F):
    return FPoly.T(F)


def test_prime_power():
    assert prime_power(8) == (2, 3) and prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(6)
    assert next_prime_power(5) == 7 and next_prime_power(7) == 8


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    F = field_of(q)
    add = lambda x, y: F.add[x * q + y]  # noqa: E731
    mul = lambda x, y: F.mul[x * q + y]  # noqa: E731
    for x in range(q):
        assert add(x, 0) == x and mul(x, 1) == x and add(x, F.neg[x]) == 0
        if x:
            assert mul(x, F.inv[x]) == 1
        for y in range(q):
            assert add(x, y) == add(y, x) and mul(x, y) == mul(y, x)
            for z in range(q):
                assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
                assert mul(mul(x, y), z) == mul(x, mul(y, z))
    # the multiplicative group is cyclic of order q - 1
    orders = []
    for x in range(1, q):
        k, y = 1, x
        while y != 1:
            y, k = mul(y, x), k + 1
        orders.append(k)
    assert max(orders) == q - 1


def test_field_spec_validation():
    assert F4.modulus == (1, 1, 1)
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, modulus=(1, 0, 1))
    with pytest.raises(SizeLimitError):
        FieldSpec(2, 11)


def test_enumerate_examples():
    assert list(enumerate_monic(1, F2)) == [T(F2), T(F2) + FPoly.one(F2)]
    assert len(list(enumerate_monic(2, F2))) == 4
    got = list(enumerate_monic(2, F3))
    assert len(got) == len(set(got)) == 9
    with pytest.raises(SizeLimitError):
        list(enumerate_monic(5, F3, bound=100))


def test_enumeration_bound_from_environment(monkeypatch):
    monkeypatch.setenv("CUE_LAB_MAX_ENUM", "10")
    with pytest.raises(SizeLimitError):
        next(enumerate_monic(3, F3))


def test_arithmetic():
    t = T(F3)
    f = t**2 + FPoly.one(F3)
    assert (f * f) // f == f and (f * f) % f == FPoly(F3)
    q, r = divmod(t**3 + t, t**2 + t.scale(2))
    assert q * (t**2 + t.scale(2)) + r == t**3 + t
    with pytest.raises(ZeroDivisionError):
        divmod(t, FPoly(F3))
    assert repr(t**2 + t.scale(2) + FPoly.one(F3)) == "T^2 + 2*T + 1"
    assert FPoly.from_index(F3, (t**2 + t).index()) == t**2 + t


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), max_size=6), st.lists(st.integers(0, 4), max_size=6))
def test_multiplication_against_schoolbook(p, a, b):
    F = field_of(p)
    a = [x % p for x in a]
    b = [x % p for x in b]
    got = FPoly(F, a) * FPoly(F, b)
    strip = lambda v: tuple(v[: max((i + 1 for i, x in enumerate(v) if x), default=0)])  # noqa: E731
    assert got.coeffs == oracles.fp_mul(strip(a), strip(b), p)


def test_factorize_examples():
    t = T(F2)
    one = FPoly.one(F2)
    assert factorize(t**2).factors == ((t, 2),)
    assert factorize(t**2 + one).factors == ((t + one, 2),)
    f = t**2 + t + one
    assert factorize(f).factors == ((f, 1),)
    with pytest.raises(PreconditionError):
        factorize(P(F3, 0, 2))


@pytest.mark.parametrize("p,n", [(2, d) for d in range(1, 7)] + [(3, d) for d in range(1, 6)])
def test_factorize_against_trial_division(p, n):
    F = field_of(p)
    for f in enumerate_monic(n, F):
        fac = factorize(f)
        assert fac.product(F) == f
        assert [(g.coeffs, m) for g, m in fac.factors] == sorted(oracles.fp_factor(f.coeffs, p),
                                                               key=lambda gm: (len(gm[0]), gm[0][::-1]))
        assert moebius(f) == oracles.fp_moebius(f.coeffs, p)
        assert fac.cycle_type() == oracles.fp_cycle_type(f.coeffs, p)


def test_factorize_in_gf4():
    for f in enumerate_monic(3, F4):
        fac = factorize(f)
        assert fac.product(F4) == f
        for g, _ in fac.factors:
            assert all(not P_.divides(g) for k in range(1, g.degree // 2 + 1) for P_ in irreducibles(F4, k))


def test_irreducible_counts():
    # necklace formula for the number of monic irreducibles
    for q in (2, 3, 4):
        F = field_of(q)
        for d in range(1, 6 if q < 4 else 4):
            expected = sum(_mu(d // k) * q**k for k in range(1, d + 1) if d % k == 0) // d
            assert len(irreducibles(F, d)) == expected


def _mu(n):
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def test_moebius_examples():
    t = T(F2)
    assert moebius(t) == -1
    assert moebius(t**2) == 0
    assert moebius(t * (t + FPoly.one(F2))) == 1
    assert is_squarefree(t) and not is_squarefree(t**2)


def test_moebius_sums_vanish():
    # sum over monic f of degree n of mu(f) is 1, -q, 0, 0, ...
    for q in (2, 3):
        F = field_of(q)
        sums = [sum(moebius(f) for f in enumerate_monic(n, F)) for n in range(5)]
        assert sums == [1, -q, 0, 0, 0]


def test_d_lambda_q_examples():
    t = T(F2)
    one = FPoly.one(F2)
    assert d_lambda_q((1, 1), t**2) == 2
    irr = t**2 + t + one
    assert d_lambda_q((1, 1), irr) == 0
    assert d_lambda_q((2,), irr) == 1
    with pytest.raises(SizeMismatchError):
        d_lambda_q((1,), irr)


def test_d_lambda_q_differs_from_ordered_factorizations_at_squarefull():
    # ordered pairs (f1, f2) of monic linears with f1 f2 = T^2: only (T, T)
    t = T(F2)
    literal = sum(1 for a in enumerate_monic(1, F2) for b in enumerate_monic(1, F2) if a * b == t**2)
    assert literal == 1 and d_lambda_q((1, 1), t**2) == 2


def test_divisor_sum_examples():
    assert divisor_correlation_sum((1, 1), (1, 1), 2, F2) == 12
    assert divisor_correlation_sum((1, 1), (1, 1), 2, F3) == 24
    assert divisor_correlation_sum((2,), (1, 1), 2, F2) == 6
    with pytest.raises(SizeMismatchError):
        divisor_correlation_sum((2,), (1,), 2, F2)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_divisor_sum_against_brute(p, n):
    F = field_of(p)
    monics = oracles.monic_fp(n, p)
    types = [oracles.fp_cycle_type(f, p) for f in monics]
    for mu in enumerate_partitions(n):
        for nu in enumerate_partitions(n):
            brute = sum(d_lambda_value(mu, t) * d_lambda_value(nu, t) for t in types)
            assert divisor_correlation_sum(mu, nu, n, F) == brute


def test_lagrange():
    assert lagrange_coefficients([0, 1, 2], [1, 3, 7]) == [1, 1, 1]
    assert lagrange_coefficients([1, 2], [5, 5]) == [5]
    with pytest.raises(ValueError):
        lagrange_coefficients([1, 1], [0, 0])


def test_polynomiality_examples():
    fit = polynomiality_check((1, 1), (1, 1), 2, [2, 3, 5], holdout=7)
    assert fit.coefficients == (0, 2, 2) and fit.leading == 2 and fit.verdict
    assert fit.holdout_value == 2 * 49 + 2 * 7
    fit = polynomiality_check((2,), (2,), 2, [2, 3, 5])
    assert fit.leading == 1 and fit.verdict and fit.holdout_q == 7
    fit = polynomiality_check((1,), (1,), 1, [2, 3])
    assert fit.coefficients == (0, 1) and fit.verdict
    with pytest.raises(PreconditionError):
        polynomiality_check((1, 1), (1, 1), 2, [2])
    with pytest.raises(PreconditionError):
        polynomiality_check((1, 1), (1, 1), 2, [2, 3, 5], holdout=5)


@pytest.mark.parametrize("n", [2, 3])
def test_large_q_trend(n):
    primes = [2, 3, 5, 7, 11]
    for mu in enumerate_partitions(n):
        for nu in enumerate_partitions(n):
            target = count_matrices(mu, nu)
            fit = polynomiality_check(mu, nu, n, primes[: n + 1], holdout=primes[n + 1])
            assert fit.verdict
            # sub-leading coefficients bound the error: |S/q^n - N| <= C/q
            C = sum(abs(c) for c in fit.coefficients[:-1])
            devs = []
            for q in primes:
                S = divisor_correlation_sum(mu, nu, n, field_of(q))
                dev = abs(Fraction(S, q**n) - target)
                assert dev <= Fraction(C, q)
                devs.append(dev)
            assert all(a >= b for a, b in zip(devs, devs[1:]))


def test_gcd_matrix_examples():
    t = T(F2)
    one = FPoly.one(F2)
    h = gcd_matrix([t, t + one], [t, t + one])
    assert h == [[t, one], [one, t + one]]
    assert degree_matrix(h) == [[1, 0], [0, 1]]
    assert gcd_matrix([t * (t + one)], [t, t + one]) == [[t], [t + one]]
    with pytest.raises(PreconditionError):
        gcd_matrix([P(F2, 1)], [P(F2, 0)])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(0, 10**9))
def test_gcd_matrix_reconstruction(p, seed):
    F = field_of(p)
    rng = random.Random(seed)
    primes = [P_ for d in (1, 2, 3) for P_ in irreducibles(F, d)]
    chosen = rng.sample(primes, rng.randint(1, min(5, len(primes))))
    # split the same set of primes into coprime f's and coprime g's
    fs = _random_grouping(chosen, rng, F)
    gs = _random_grouping(chosen, rng, F)
    h = gcd_matrix(fs, gs)
    for i, g in enumerate(gs):
        assert _prod(h[i], F) == g
    for j, f in enumerate(fs):
        assert _prod([row[j] for row in h], F) == f
    deg = degree_matrix(h)
    assert [sum(r) for r in deg] == [g.degree for g in gs]


def _random_grouping(items, rng, F):
    k = rng.randint(1, len(items))
    groups = [[] for _ in range(k)]
    for x in items:
        groups[rng.randrange(k)].append(x)
    return [_prod(g, F) for g in groups]


def _prod(xs, F):
    out = FPoly.one(F)
    for x in xs:
        out = out * x
    return out


def test_vaughan_wooley_examples():
    assert vaughan_wooley_decompose([4, 3], [6, 2]) == [[2, 2], [3, 1]]
    t = T(F2)
    one = FPoly.one(F2)
    assert vaughan_wooley_decompose([t, t], [t, t]) == [[t, one], [one, t]]
    f = t**3 + t + one
    assert vaughan_wooley_decompose([f], [f]) == [[f]]
    with pytest.raises(PreconditionError):
        vaughan_wooley_decompose([4, 3], [6, 3])


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["int", 2, 3]), st.integers(0, 10**9))
def test_vaughan_wooley_reconstruction(domain, seed):
    rng = random.Random(seed)
    if domain == "int":
        atoms = [rng.choice([2, 3, 5, 7]) for _ in range(rng.randint(1, 7))]
        one, mul = 1, (lambda a, b: a * b)
    else:
        F = field_of(domain)
        pool = list(irreducibles(F, 1)) + list(irreducibles(F, 2))
        atoms = [rng.choice(pool) for _ in range(rng.randint(1, 7))]
        one, mul = FPoly.one(F), (lambda a, b: a * b)
    ms = _split(atoms, rng, one, mul)
    ns = _split(atoms, rng, one, mul)
    a = vaughan_wooley_decompose(ms, ns)
    for i, m in enumerate(ms):
        acc = one
        for x in a[i]:
            acc = mul(acc, x)
        assert acc == m
    for j, n in enumerate(ns):
        acc = one
        for row in a:
            acc = mul(acc, row[j])
        assert acc == n
    if domain == "int":
        assert math.prod(ms) == math.prod(ns)


def _split(atoms, rng, one, mul):
    k = rng.randint(1, 4)
    out = [one] * k
    for x in atoms:
        i = rng.randrange(k)
        out[i] = mul(out[i], x)
    return out


def test_poly_gcd():
    t = T(F3)
    one = FPoly.one(F3)
    a = (t + one) * (t**2 + one)
    b = (t + one) * t
    assert poly_gcd(a, b) == t + one
    assert poly_gcd(a.scale(2), b) == t + one
    assert poly_gcd(t, one) == one
