"""Time the compiled kernels against the pure-Python fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 1000,10000,100000] [--repeats 5]

Reports best-of-N wall time per backend for each hot kernel on a realistic
parameter set (shape 3, mean SNR 31.6, rho 0.9), plus an end-to-end
sop_per_node quadrature per backend.
"""

import argparse
import logging
import time

import numpy as np

import wsnsec
from wsnsec import LinkParams, NodeChannel, WiretapModel, sop_per_node
from wsnsec._kernels import _pykernels

BETA, SCALE, RHO = 3.0, 28.4, 0.9
KMAX, TERM_TOL = 10, 1e-12


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(mod):
    return {
        "outdated_pdf": lambda g: mod.outdated_pdf(g, BETA, SCALE, RHO, KMAX, TERM_TOL),
        "outdated_cdf": lambda g: mod.outdated_cdf(g, BETA, SCALE, RHO, KMAX, TERM_TOL),
        "coverage_integrand": lambda g: mod.coverage_integrand(
            g, BETA, SCALE, RHO, KMAX, TERM_TOL, 3.0, 110.9, 2.0, 1.0
        ),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000",
                    help="comma-separated grid sizes (default 1000,10000,100000)")
    ap.add_argument("--repeats", type=int, default=5, help="timing repeats (default 5)")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    # the rho<1 end-to-end case clamps by design; keep the timing output clean
    logging.getLogger("wsnsec").setLevel(logging.ERROR)

    backends = wsnsec.available_backends()
    mods = {"python": _pykernels}
    if "cython" in backends:
        from wsnsec._kernels import _ckernels

        mods["cython"] = _ckernels
    else:
        print("compiled backend not built; timing pure Python only\n")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<20} {'n':>8} " + "".join(f"{b + ' [ms]':>14}" for b in mods)
          + ("   speedup" if len(mods) > 1 else ""))
    for n in sizes:
        g = rng.uniform(0.0, 150.0, size=n)
        for name in kernel_cases(_pykernels):
            times = {b: best_of(args.repeats, kernel_cases(m)[name], g) for b, m in mods.items()}
            row = f"{name:<20} {n:>8} " + "".join(f"{1e3 * times[b]:>14.3f}" for b in times)
            if len(mods) > 1:
                row += f"   {times['python'] / times['cython']:>6.1f}x"
            print(row)

    print()
    node = NodeChannel(
        main=LinkParams.from_db(shape=3.0, mean_snr_db=20.0),
        wiretap=WiretapModel(LinkParams.from_db(shape=3.0, mean_snr_db=15.0), rho=RHO),
    )
    initial = wsnsec.active_backend()
    try:
        times = {}
        for b in mods:
            wsnsec.use_backend(b)
            times[b] = best_of(args.repeats, sop_per_node, node, 1.0)
        row = "sop_per_node (end-to-end quadrature): " + "  ".join(
            f"{b} {1e3 * times[b]:.3f} ms" for b in times
        )
        if len(mods) > 1:
            row += f"  ({times['python'] / times['cython']:.1f}x)"
        print(row)
    finally:
        wsnsec.use_backend(initial)


if __name__ == "__main__":
    main()
