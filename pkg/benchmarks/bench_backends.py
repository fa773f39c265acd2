"""Compare the compiled and pure-python partition sweep backends.

The partition sweep is the package's hot loop: the brute-force
correlation oracle touches every partition up to the size cutoff
(215,308 of them at the default cutoff 40).  This script times the
three sweep primitives under both backends and prints the speedups.

Run:  python3 benchmarks/bench_backends.py [--n-cut 40] [--repeat 5]
"""

import argparse
import importlib
import os
import statistics
import sys
import time


def _load_backends():
    from pfapart import _measure_core_py as pure

    try:
        from pfapart import _measure_core as compiled
    except ImportError:
        compiled = None
    return pure, compiled


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-cut", type=int, default=40)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    pure, compiled = _load_backends()
    if compiled is None:
        print("compiled extension not available; timing the pure backend only")
    impls = [("python", pure)] + ([("compiled", compiled)] if compiled else [])

    n_cut = args.n_cut
    arrays = {name: impl.build_table(n_cut) for name, impl in impls}
    count = len(arrays[impls[0][0]][0])
    print(f"n_cut = {n_cut}: {count} partitions\n")

    rows = []
    for name, impl in impls:
        t_build, _ = best_of(lambda impl=impl: impl.build_table(n_cut), args.repeat)
        sizes, lengths, parents, last_parts, offsets, parts_flat, hh = arrays[name]
        t_poch, _ = best_of(
            lambda impl=impl: impl.pochhammer_pair_products(
                parents, lengths, last_parts, 2.5 + 0j, 1.5 + 0j
            ),
            args.repeat,
        )
        t_masks, _ = best_of(
            lambda impl=impl: impl.window_masks(lengths, offsets, parts_flat, -8, 4),
            args.repeat,
        )
        rows.append((name, t_build, t_poch, t_masks))

    print(f"{'backend':<10} {'build_table':>12} {'pochhammer':>12} {'window_masks':>13}")
    for name, tb, tp, tm in rows:
        print(f"{name:<10} {tb * 1e3:>10.1f}ms {tp * 1e3:>10.1f}ms {tm * 1e3:>11.1f}ms")

    if len(rows) == 2:
        py, cy = rows[0], rows[1]
        print(
            f"\nspeedup     {py[1] / cy[1]:>10.1f}x {py[2] / cy[2]:>10.1f}x "
            f"{py[3] / cy[3]:>11.1f}x"
        )


if __name__ == "__main__":
    main()
