#!/usr/bin/env python3
"""Compare the numba and numpy implementations of the majorization kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 2000] [--sizes 4,12,64,512]

Reports the one-off compile (or cache-load) cost of the JIT kernels and the
per-call time of each implementation for several vector lengths.
"""

import argparse
import time

import numpy as np

from spectral_spread import _kernels


def _time(fn, args, repeat):
    fn(*args)
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - start) / repeat


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=2000)
    p.add_argument("--sizes", default="4,12,64,512")
    p.add_argument("--batch", type=int, default=256, help="rows for the batched kernel")
    args = p.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    try:
        start = time.perf_counter()
        margins_jit, spread_jit, batch_jit = _kernels.jit_kernels()
        x = np.random.default_rng(0).random(4)
        margins_jit(x, x), spread_jit(x), batch_jit(x[None], x[None])
        compile_s = time.perf_counter() - start
    except ImportError:
        print("numba is not installed; only the numpy path is available")
        return 1
    print(f"JIT build + first call (compile or cache load): {compile_s:.3f} s")
    print(f"{'kernel':16s} {'n':>6s} {'numpy us':>10s} {'numba us':>10s} {'speedup':>8s}")

    rng = np.random.default_rng(1)
    for n in sizes:
        x, y = rng.random(n), rng.random(n)
        lam = -np.sort(-rng.standard_normal(n))
        X, Y = rng.random((args.batch, n)), rng.random((args.batch, n))
        cases = [
            ("margins", _kernels.margins_numpy, margins_jit, (x, y)),
            ("spread", _kernels.spread_numpy, spread_jit, (lam,)),
            ("batch_margins", _kernels.batch_margins_numpy, batch_jit, (X, Y)),
        ]
        for name, f_np, f_jit, fargs in cases:
            assert np.allclose(f_np(*fargs), f_jit(*fargs))
            t_np = _time(f_np, fargs, args.repeat) * 1e6
            t_jit = _time(f_jit, fargs, args.repeat) * 1e6
            print(f"{name:16s} {n:6d} {t_np:10.2f} {t_jit:10.2f} {t_np / t_jit:8.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
