"""Slow, independent reference implementations used only by the tests.

None of these share code with the package: symmetric functions are expanded
in monomials, U(N) integrals use the Weyl integration formula, counts come
from brute-force enumeration.
"""

from collections import Counter, defaultdict
from itertools import combinations, permutations, product
from math import factorial, prod


# --- partitions ---------------------------------------------------------------------

def partitions_brute(n):
    """All partitions of n by backtracking over the largest part."""
    out = []

    def rec(left, cap, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(min(left, cap), 0, -1):
            rec(left - k, k, acc + [k])

    rec(n, n, [])
    return out


def cycle_type(perm):
    seen, lengths = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def perm_of_type(rho):
    """A permutation of range(n) with cycle type rho."""
    perm, start = [], 0
    for length in rho:
        perm.extend(start + (i + 1) % length for i in range(length))
        start += length
    return tuple(perm)


def class_sizes_brute(n):
    return Counter(cycle_type(p) for p in permutations(range(n)))


# --- d_lambda -----------------------------------------------------------------------

def d_lambda_brute(lam, perm):
    """Ordered tuples of disjoint perm-invariant sets of sizes lam covering range(n)."""
    n = len(perm)
    if sum(lam) != n:
        return 0
    count = 0
    for labels in product(range(len(lam)), repeat=n):
        if any(labels.count(i) != lam[i] for i in range(len(lam))):
            continue
        if all(labels[perm[x]] == labels[x] for x in range(n)):
            count += 1
    return count


# --- contingency tables ------------------------------------------------------------

def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def matrices_brute(rows, cols):
    """Every matrix with the given margins: each row runs over all compositions of its sum."""
    rows, cols = list(rows), list(cols)
    if sum(rows) != sum(cols):
        return []
    out = []
    for choice in product(*(list(_compositions(r, len(cols))) for r in rows)):
        if [sum(c[j] for c in choice) for j in range(len(cols))] == cols:
            out.append(tuple(choice))
    return out


# --- SSYT ---------------------------------------------------------------------------

def ssyt_count(shape, content):
    """Semistandard tableaux of the given shape and content, by filling cells in row order."""
    shape = [x for x in shape if x]
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    remaining = list(content)
    grid = {}

    def rec(k):
        if k == len(cells):
            return 1
        r, c = cells[k]
        total = 0
        for v in range(len(remaining)):
            if not remaining[v]:
                continue
            if c > 0 and grid[(r, c - 1)] > v:
                continue
            if r > 0 and grid[(r - 1, c)] >= v:
                continue
            remaining[v] -= 1
            grid[(r, c)] = v
            total += rec(k + 1)
            remaining[v] += 1
        return total

    if sum(shape) != sum(content):
        return 0
    return rec(0)


# --- monomial expansions ------------------------------------------------------------

def poly_mul(a, b):
    out = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def poly_pow_product(factors, k):
    out = {(0,) * k: 1}
    for f in factors:
        out = poly_mul(out, f)
    return out


def _unit(k, i, power=1):
    e = [0] * k
    e[i] = power
    return tuple(e)


def elementary(j, k):
    return {tuple(1 if i in s else 0 for i in range(k)): 1 for s in combinations(range(k), j)}


def complete(j, k):
    out = {}
    for s in product(range(k), repeat=j):
        e = [0] * k
        for i in s:
            e[i] += 1
        out[tuple(e)] = 1
    return out


def power_sum(j, k):
    return {_unit(k, i, j): 1 for i in range(k)}


def e_mono(mu, k):
    return poly_pow_product([elementary(j, k) for j in mu], k)


def h_mono(mu, k):
    return poly_pow_product([complete(j, k) for j in mu], k)


def p_mono(rho, k):
    return poly_pow_product([power_sum(j, k) for j in rho], k)


def schur_coefficients(f, k):
    """Schur expansion of a symmetric polynomial f in k variables.

    Coefficient of s_lambda (ell(lambda) <= k) is the coefficient of
    x^(lambda + delta) in a_delta * f, a_delta the Vandermonde determinant.
    """
    vdm = {}
    for perm in permutations(range(k)):
        exps = tuple(k - 1 - perm.index(i) for i in range(k))
        sign = (-1) ** sum(1 for a, b in combinations(perm, 2) if a > b)
        vdm[exps] = sign
    g = poly_mul(f, vdm)
    out = {}
    for e, c in g.items():
        if all(e[i] > e[i + 1] for i in range(k - 1)):
            lam = tuple(x for x in (e[i] - (k - 1 - i) for i in range(k)) if x)
            out[lam] = c
    return out


# --- Haar integrals over U(N) -------------------------------------------------------

def weyl_integral(f, g, N):
    """E_{U(N)} f(eigs) conj(g(eigs)) for polynomials f, g in N variables with integer coefficients.

    Weyl integration: (1/N!) * constant term of f(z) g(1/z) prod_{i != j} (1 - z_i / z_j).
    """
    gbar = {tuple(-x for x in e): c for e, c in g.items()}
    weight = {(0,) * N: 1}
    for i in range(N):
        for j in range(N):
            if i != j:
                weight = poly_mul(weight, {(0,) * N: 1, tuple(1 if t == i else -1 if t == j else 0 for t in range(N)): -1})
    total = poly_mul(poly_mul(f, gbar), weight)
    ct = total.get((0,) * N, 0)
    assert ct % factorial(N) == 0
    return ct // factorial(N)


# --- finite fields (prime q only) ---------------------------------------------------

def fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def monic_fp(n, p):
    """Monic polynomials of degree n over F_p as coefficient tuples, low to high."""
    return [tuple(c) + (1,) for c in product(range(p), repeat=n)]


def fp_divides(d, f, p):
    """Does monic d divide f? By brute-force search for the cofactor."""
    if len(d) > len(f):
        return False
    lead = f[-1]
    for c in product(range(p), repeat=len(f) - len(d)):
        if fp_mul(d, tuple(c) + (lead,), p) == f:
            return True
    return False


def fp_factor(f, p):
    """Factorization of monic f over F_p as a sorted list of (factor, multiplicity)."""
    out = []
    f = tuple(f)
    d = 1
    while len(f) > 1:
        found = False
        for g in monic_fp(d, p):
            if fp_divides(g, f, p):
                m = 0
                while len(f) > 1 and fp_divides(g, f, p):
                    f = next(tuple(c) + (f[-1],) for c in product(range(p), repeat=len(f) - len(g))
                             if fp_mul(g, tuple(c) + (f[-1],), p) == f)
                    m += 1
                out.append((g, m))
                found = True
        d += 1
        if not found and d > len(f):
            break
    return out


def fp_cycle_type(f, p):
    return tuple(sorted((len(g) - 1 for g, m in fp_factor(f, p) for _ in range(m)), reverse=True))


def fp_moebius(f, p):
    fac = fp_factor(f, p)
    if any(m > 1 for _, m in fac):
        return 0
    return (-1) ** len(fac)


def fp_gcd_is_one(f, Q, p):
    """gcd(f, Q) = 1 iff no monic irreducible factor of Q divides f."""
    if len(Q) == 1:
        return True
    return all(not fp_divides(g, f, p) for g, _ in fp_factor(Q, p))


def solution_count_brute(n, k, Q, p, squarefree=False):
    allowed = [f for f in monic_fp(n, p)
               if fp_gcd_is_one(f, Q, p) and (not squarefree or fp_moebius(f, p) != 0)]
    total = 0
    for fs in product(allowed, repeat=k):
        pf = prod_fp(fs, p)
        for gs in product(allowed, repeat=k):
            if prod_fp(gs, p) == pf:
                total += 1
    return total


def prod_fp(fs, p):
    out = (1,)
    for f in fs:
        out = fp_mul(out, f, p)
    return out


# --- integers -----------------------------------------------------------------------

def integer_mk_brute(x, k, squarefree=False):
    def sqf(m):
        return all(m % (d * d) for d in range(2, m + 1))

    allowed = [m for m in range(1, x + 1) if not squarefree or sqf(m)]
    return sum(1 for t in product(allowed, repeat=2 * k) if prod(t[:k]) == prod(t[k:]))
