"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--size 280x350] [--dmax 64] [--repeat 3]

Both backends get identical inputs; outputs are checked for bitwise
equality before timings are printed.
"""

import argparse
import time

import numpy as np

from crossband.kernels import available_backends, load_backend
from crossband.matching import DIRECTIONS


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--size", default="280x350", help="HxW")
    ap.add_argument("--dmax", type=int, default=64)
    ap.add_argument("--window", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    h, w = (int(v) for v in args.size.split("x"))

    rng = np.random.default_rng(0)
    left, right = rng.random((h, w)), rng.random((h, w))
    vol = rng.integers(0, 25, (h, w, args.dmax + 1)).astype(np.float64)

    results = {}
    for name in available_backends():
        k = load_backend(name)
        t_desc, dl = best_of(lambda: k.census_descriptors(left, args.window), args.repeat)
        dr = k.census_descriptors(right, args.window)
        t_vol, cv = best_of(lambda: k.census_volume(dl, dr, args.dmax), args.repeat)
        t_sgm, agg = best_of(lambda: k.sgm_aggregate(vol, 10.0, 120.0, DIRECTIONS), args.repeat)
        results[name] = (t_desc, t_vol, t_sgm, dl, cv, agg)

    names = list(results)
    if len(names) > 1:
        ref = results[names[0]][3:]
        for n in names[1:]:
            same = all(np.array_equal(a, b) for a, b in zip(ref, results[n][3:]))
            print(f"{names[0]} vs {n}: outputs {'identical' if same else 'DIFFER'}")

    print(f"{h}x{w}, dmax {args.dmax}, census {args.window}x{args.window}, 8 paths, best of {args.repeat}")
    print(f"{'backend':>8} {'census':>9} {'volume':>9} {'sgm':>9} {'total':>9}")
    for n in names:
        t = results[n][:3]
        print(f"{n:>8} {t[0]:8.3f}s {t[1]:8.3f}s {t[2]:8.3f}s {sum(t):8.3f}s")
    if "cython" in results and "python" in results:
        print(f"speed-up: {sum(results['python'][:3]) / sum(results['cython'][:3]):.1f}x")


if __name__ == "__main__":
    main()
