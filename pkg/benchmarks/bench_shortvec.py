"""Benchmark the two short-vector enumeration backends on the E8 form.

Usage: python3 benchmarks/bench_shortvec.py [--norm-max N] [--repeat R]
"""

import argparse
import importlib
import sys
from time import perf_counter

from enumgeo import _shortvec as pure
from enumgeo import lattice as lat


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = perf_counter()
        result = fn()
        times.append(perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--norm-max", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    gram = lat.e8_lattice().gram
    data = pure.prepare(gram)

    try:
        compiled = importlib.import_module("enumgeo._shortvec_c")
    except ImportError:
        compiled = None

    print(f"E8 enumeration up to norm {args.norm_max}, "
          f"best of {args.repeat}")
    t_pure, counts_pure = best_of(
        lambda: pure.count_by_norm(data, args.norm_max), args.repeat)
    total = sum(counts_pure)
    print(f"  pure python : {t_pure:8.4f} s   ({total} vectors)")

    if compiled is None:
        print("  compiled    : not built (pip install -e . without "
              "ENUMGEO_NO_EXT)")
        return 0

    t_c, counts_c = best_of(
        lambda: compiled.count_by_norm(data["lm"], data["m"], data["ehat"],
                                       data["lam"], args.norm_max,
                                       data["rank"]),
        args.repeat)
    if counts_c != counts_pure:
        print("BACKENDS DISAGREE", file=sys.stderr)
        return 1
    print(f"  compiled    : {t_c:8.4f} s   ({sum(counts_c)} vectors)")
    print(f"  speedup     : {t_pure / t_c:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
