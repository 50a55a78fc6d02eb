"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each case is checked for identical output across backends before timing.
"""

import argparse
import random
import timeit

from cue_lab.ffield import field_of
from cue_lab.kernels import available_backends

TABLE_CASES = [
    ((4, 3, 2, 1), (3, 3, 2, 2)),
    ((5, 4, 3, 2, 1, 1), (4, 4, 3, 3, 2)),
    ((1,) * 10, (1,) * 10),
    ((3, 3, 3, 3), (2, 2, 2, 2, 2, 2)),
]


def _random_poly(rng, q, d):
    return tuple(rng.randrange(q) for _ in range(d)) + (1,)


def poly_cases(q, d, count, seed=0):
    rng = random.Random(seed)
    return [(_random_poly(rng, q, d), _random_poly(rng, q, d // 2)) for _ in range(count)]


def bench(repeat: int):
    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the Python fallback is available")
    names = sorted(backends)
    print(f"{'case':<44}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")

    for rows, cols in TABLE_CASES:
        results = {n: backends[n].count_tables(rows, cols, 10**9) for n in names}
        assert len(set(results.values())) == 1, results
        times = {
            n: min(timeit.repeat(lambda m=backends[n]: m.count_tables(rows, cols, 10**9), number=1, repeat=repeat))
            for n in names
        }
        _line(f"count_tables {_compact(rows)} x {_compact(cols)}", times, names)

    for q, d in ((2, 64), (9, 24), (31, 16)):
        F = field_of(q)
        cases = poly_cases(q, d, 200)

        def run_mul(m):
            return [m.poly_mul(a, b, F.add, F.mul, q) for a, b in cases]

        def run_div(m):
            return [m.poly_divmod(a, b, F.add, F.mul, F.neg, F.inv, q) for a, b in cases]

        for label, fn in (("poly_mul", run_mul), ("poly_divmod", run_div)):
            outs = {n: fn(backends[n]) for n in names}
            assert all(outs[n] == outs[names[0]] for n in names), label
            times = {n: min(timeit.repeat(lambda m=backends[n]: fn(m), number=1, repeat=repeat)) for n in names}
            _line(f"{label} q={q} deg={d} x200", times, names)


def _compact(margins):
    return ",".join(map(str, margins))


def _line(label, times, names):
    speed = times["python"] / times["cython"] if "cython" in times and times["cython"] > 0 else float("nan")
    print(f"{label:<44}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    bench(ap.parse_args().repeat)
