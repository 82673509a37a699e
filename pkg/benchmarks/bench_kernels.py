"""Time the compiled subset kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --order 8 --repeat 3
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from plumbzeta import zoo
from plumbzeta._kernels import available_backends
from plumbzeta.lattice import build_context, enumerate_Sprime
from plumbzeta.zeta import _chi_reduced_table, _offdiag


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--graphs", nargs="*", default=["e8", "star_222", "cusp5"])
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the numpy fallback is available")
    header = f"{'graph':<10}{'kernel':<14}{'rows':>7}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for name in args.graphs:
        ctx = build_context(zoo.load(name))
        a = np.array(enumerate_Sprime(ctx, args.order), dtype=np.int64)
        off, chi = _offdiag(ctx), _chi_reduced_table(ctx)
        calls = {
            "closure_table": lambda impl: impl.closure_table(off, a),
            "incexc_sums": lambda impl: impl.incexc_sums(off, chi, a),
        }
        for kernel, call in calls.items():
            results = {b: call(impl) for b, impl in backends.items()}
            first = next(iter(results.values()))
            if not all(np.array_equal(first, r) for r in results.values()):
                raise SystemExit(f"backends disagree on {name} {kernel}")
            timing = {b: _best(lambda impl=impl: call(impl), args.repeat) for b, impl in backends.items()}
            line = f"{name:<10}{kernel:<14}{len(a):>7}" + "".join(f"{t * 1e3:>10.2f}ms" for t in timing.values())
            if len(timing) > 1:
                line += f"{timing['numpy'] / timing['cython']:>9.1f}x"
            print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
