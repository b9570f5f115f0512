"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--size 60] [--repeat 5]

Also times a full Nisan-profile computation through each backend.
"""

import argparse
import random
import timeit

from roabp_lab import kernels, nisan
from roabp_lab.symfun import esym


def random_matrix(rng, rows, cols, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    n = args.size
    p = 1_000_003
    dense = random_matrix(rng, n, n)
    modp = [[x % p for x in row] for row in dense]
    small = random_matrix(rng, n // 2, n // 2)

    found = kernels.backends()
    if "compiled" not in found:
        print("compiled backend not built; only the python kernels are timed")
    results = {}
    for name, mod in found.items():
        t_mod = min(timeit.repeat(lambda: mod.rank_mod_p(modp, p), number=1, repeat=args.repeat))
        t_int = min(timeit.repeat(lambda: mod.rank_integer(small), number=1, repeat=args.repeat))
        results[name] = (t_mod, t_int)
        print(f"{name:>9}: rank_mod_p {n}x{n} {t_mod * 1e3:9.2f} ms   "
              f"rank_integer {n // 2}x{n // 2} {t_int * 1e3:9.2f} ms")
    if len(results) == 2:
        (pm, pi), (cm, ci) = results["python"], results["compiled"]
        print(f"  speedup: mod p x{pm / cm:.1f}, integer x{pi / ci:.1f}")

    f = esym(8, 4) ** 2
    t = min(timeit.repeat(lambda: nisan.width_profile(f, range(8)), number=1, repeat=args.repeat))
    print(f"width profile of (ESym_8^4)^2 with the active '{kernels.BACKEND}' backend: {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
