"""Time each kernel under the numba and numpy backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

The first numba call of each kernel compiles it; that warm-up is excluded
from the timings. Outputs are also checked for agreement.
"""

import argparse
import timeit

import numpy as np

from slice_weaver.kernels import numba_impl, numpy_impl


def cases():
    rng = np.random.default_rng(0)
    k7 = ~np.eye(7, dtype=bool)
    upper = np.triu(rng.random((14, 14)) < 0.5, 1)
    sparse = upper | upper.T
    z = rng.standard_normal((200_000, 9))
    loads = numpy_impl.factor_loads(z, 0.1, 0.03, 0.05)
    r = rng.uniform(0, 3, (1024, 8))
    s = rng.uniform(0, 3, (1024, 8))
    return [
        ("count_colorings K7 k=7", "count_colorings", (k7, 7)),
        ("is_colorable K7 k=6", "is_colorable", (k7, 6)),
        ("max_clique_size G(14, 0.5)", "max_clique_size", (sparse,)),
        ("factor_loads 200000x9", "factor_loads", (z, 0.1, 0.03, 0.05)),
        ("shifted_mean_var 200000", "shifted_mean_var", (loads,)),
        ("objective_batch 1024x8", "objective_batch", (r, s, 0.5, 0.1, True, 0.7)),
    ]


def best_time(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    opts = parser.parse_args(argv)
    if numba_impl is None:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':32s} {'numpy [s]':>12s} {'numba [s]':>12s} {'speedup':>9s}  agree")
    for label, name, args in cases():
        np_fn = getattr(numpy_impl, name)
        nb_fn = getattr(numba_impl, name)
        ref, got = np_fn(*args), nb_fn(*args)  # warm-up and compile
        agree = bool(np.allclose(ref, got, rtol=1e-10))
        t_np = best_time(np_fn, args, opts.repeat)
        t_nb = best_time(nb_fn, args, opts.repeat)
        print(f"{label:32s} {t_np:12.6f} {t_nb:12.6f} {t_np / t_nb:8.1f}x  {agree}")


if __name__ == "__main__":
    main()
