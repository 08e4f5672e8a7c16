"""Compare the compiled row-reduction kernel with the pure-Python fallback.

Run with ``python3 benchmarks/bench_rref.py``.  Both kernels reduce the same
random matrices in place; the script checks that they agree and prints the
median time per call for each size and prime.
"""

import argparse
import statistics
import timeit

import numpy as np

from frobcat import _fallback

try:
    from frobcat import _ckernels
except ImportError:
    _ckernels = None


def time_kernel(fn, m, p, repeat):
    def once():
        fn(m.copy(), p)

    once()  # warm up
    return statistics.median(timeit.repeat(once, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 7])
    parser.add_argument("--repeat", type=int, default=7)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled kernel not built; only the fallback is timed")
    rng = np.random.default_rng(args.seed)
    print(f"{'p':>3} {'n':>5} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    for p in args.primes:
        for n in args.sizes:
            m = rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64)
            t_py = time_kernel(_fallback.rref_inplace, m, p, args.repeat)
            if _ckernels is None:
                print(f"{p:>3} {n:>5} {t_py * 1e3:>12.3f} {'-':>14} {'-':>8}")
                continue
            a, b = m.copy(), m.copy()
            assert list(_fallback.rref_inplace(a, p)) == list(_ckernels.rref_inplace(b, p))
            assert np.array_equal(a, b)
            t_c = time_kernel(_ckernels.rref_inplace, m, p, args.repeat)
            print(f"{p:>3} {n:>5} {t_py * 1e3:>12.3f} {t_c * 1e3:>14.3f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
