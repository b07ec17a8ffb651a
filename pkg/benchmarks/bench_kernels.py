"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both paths are called directly, so the MU_CERT_DISABLE_NUMBA flag does not
matter here. Each case checks that the two paths agree before timing them.
"""
import argparse
import time

import numpy as np

from mucert import kernels
from mucert._accel import HAVE_NUMBA


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    sieve_bound = 2_000_000
    primes = np.flatnonzero(kernels._sieve_numpy(sieve_bound))[1:].astype(np.int64)
    # 11a2 b-invariants at a prime near the enumeration budget
    b2, b4, b6, ell = -4, -15640, -1054319, 1_999_993
    args = tuple(int(v) % ell for v in (b2, b4, b6)) + (ell,)
    return [
        ("sieve to 2e6", kernels._sieve_numba, kernels._sieve_numpy, (sieve_bound,)),
        ("cubic charsum l~2e6", kernels._charsum_numba, kernels._charsum_numpy, args),
        ("legendre(-239, primes<=2e6)", kernels._legendre_many_numba, kernels._legendre_many_numpy,
         (-239, primes)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':32s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for name, fast, slow, call in cases():
        a, b = fast(*call), slow(*call)  # warm-up, also triggers compilation
        if not np.array_equal(np.asarray(a), np.asarray(b)):
            raise SystemExit(f"{name}: numba and numpy paths disagree")
        t_fast = best_of(fast, call, args.repeat)
        t_slow = best_of(slow, call, args.repeat)
        print(f"{name:32s} {1e3 * t_fast:11.2f} {1e3 * t_slow:11.2f} {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
