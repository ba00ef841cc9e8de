"""Compare the compiled and pure-Python evaluation kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--K 200 5000 50000]

Every available backend (``python/int``, ``python/gmpy2``, ``compiled/int``,
``compiled/gmpy2``) runs the same workloads; results are checked for
equality before timings are reported.
"""

import argparse
import random
import time

from sparseroots import _kernels


def _workloads(K, rng):
    one = 1 << K

    def point():
        # fixed-point images of points in (0.5, 1.05)
        return one // 2 + rng.randrange(one // 2 + one // 20)

    def coeffs(k):
        return [rng.randrange(-(1 << (K + 10)), 1 << (K + 10)) for _ in range(k)]

    tri = (coeffs(3), [0, 1, 100000])
    wide = (coeffs(8), sorted(rng.sample(range(1, 5000), 7) + [0]))
    tower = [(coeffs(6 - i), sorted(rng.sample(range(1, 60), 5 - i) + [0])) for i in range(6)]
    grid = [point() for _ in range(73)]
    C = point()
    return {
        "sparse_eval trinomial n=1e5": lambda ns: ns.sparse_eval(tri[0], tri[1], C, K),
        "sparse_eval 8-nomial n=5000": lambda ns: ns.sparse_eval(wide[0], wide[1], C, K),
        "sparse_eval_many tower k=6": lambda ns: ns.sparse_eval_many(tower, C, K),
        "grid_eval tower x 73 points": lambda ns: ns.grid_eval(tower, grid, K),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--K", type=int, nargs="+", default=[200, 5000, 50000], help="fixed-point fraction bits")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = _kernels.backends()
    print(f"active backend: {_kernels.BACKEND}/{_kernels.BIGINT}")
    for K in args.K:
        print(f"\nK = {K}")
        print(f"{'workload':32}" + "".join(f"{name:>16}" for name in backends))
        _run(_workloads(K, random.Random(args.seed)), backends, args.repeat)


def _run(work, backends, repeat):
    for label, job in work.items():
        expected = None
        row = f"{label:32}"
        for name, ns in backends.items():
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                got = job(ns)
                best = min(best, time.perf_counter() - t0)
            if expected is None:
                expected = got
            elif got != expected:
                raise SystemExit(f"backend {name} disagrees on {label}")
            row += f"{best * 1e3:13.3f} ms"
        print(row)


if __name__ == "__main__":
    main()
