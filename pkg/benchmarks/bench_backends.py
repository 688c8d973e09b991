#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernel backends.

Times the truncated-product sum (the engine hot loop) and the modular-form
partial sums across truncation sizes, and prints one CSV block per kernel.

Usage:
    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import math
import statistics
import time

from barnesg import _pykernels, backend


def _impls():
    out = [("pure", _pykernels)]
    try:
        from barnesg import _ckernels
        out.insert(0, ("compiled", _ckernels))
    except ImportError:
        print("# compiled core not built; timing pure backend only")
    return out


def _time(fn, repeat):
    fn()  # warm up
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    z, tau = 2 + 1j, math.sqrt(2)
    impls = _impls()

    print("kernel,backend,N,seconds,per_term_ns")
    for name, mod in impls:
        for N in (64, 256, 1024, 4096, 16384):
            t = _time(lambda: mod.gn_sum(z, tau, N), args.repeat)
            print(f"gn_sum,{name},{N},{t:.6g},{1e9 * t / N:.1f}")
    for name, mod in impls:
        for m in (64, 256, 1024, 4096):
            t = _time(lambda: mod.cd_sums(tau, m, 6), args.repeat)
            print(f"cd_sums,{name},{m},{t:.6g},{1e9 * t / m:.1f}")

    if len(impls) == 2:
        t_c = _time(lambda: impls[0][1].gn_sum(z, tau, 4096), args.repeat)
        t_p = _time(lambda: impls[1][1].gn_sum(z, tau, 4096), args.repeat)
        print(f"# gn_sum speedup at N=4096: {t_p / t_c:.1f}x "
              f"(active engine backend: {backend.backend_name()})")


if __name__ == "__main__":
    main()
