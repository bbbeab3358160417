#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 1000 10000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from netmatch._kernels import available_backends
from netmatch.generators import GeneratorParams, generate_ba, generate_hk


def bench(mod, g, repeat):
    def matching():
        pl = np.full(g.n, -1, dtype=np.int64)
        pr = np.full(g.n, -1, dtype=np.int64)
        mod.hopcroft_karp(g.indptr, g.indices, pl, pr)
        return pl, pr

    pl, pr = matching()
    cases = {
        "hopcroft_karp": matching,
        "triangles_per_node": lambda: mod.triangles_per_node(g.indptr, g.indices),
        "alternating_classes": lambda: mod.alternating_classes(g.indptr, g.indices, pl, pr),
    }
    return {name: min(timeit.repeat(fn, number=1, repeat=repeat)) for name, fn in cases.items()}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawTextHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 50000])
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python fallback is timed")
    print(f"{'graph':<14}{'kernel':<22}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        for label, gen in (("BA", generate_ba), ("HK", generate_hk)):
            g = gen(GeneratorParams(n, args.m, p=0.5, seed=1))
            times = {b: bench(mod, g, args.repeat) for b, mod in backends.items()}
            for kernel in times["python"]:
                row = f"{label} n={n:<9}{kernel:<22}"
                row += "".join(f"{times[b][kernel] * 1e3:>10.2f}ms" for b in backends)
                if "cython" in times:
                    row += f"{times['python'][kernel] / times['cython'][kernel]:>9.0f}x"
                print(row)


if __name__ == "__main__":
    main()
