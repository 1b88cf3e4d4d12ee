"""Compare the numba kernels against the pure-numpy fallback.

Times the three hot kernels on realistic workloads, then two end-to-end
library operations with the kernel bindings swapped between backends.
Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import statistics
import time

import numpy as np

from ffperm import _kernels as K
from ffperm import (is_lpp, is_pp, lpp_beta, lpp_chain, make_field,
                    pp_hn, to_table)


def bench(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def poly_mul_workload(field, n, terms, seed):
    rng = np.random.default_rng(seed)
    q = field.q
    exps_a = rng.integers(0, q, size=(terms, n)).astype(np.int64)
    exps_b = rng.integers(0, q, size=(terms, n)).astype(np.int64)
    vals_a = rng.integers(1, q, size=terms).astype(np.int64)
    vals_b = rng.integers(1, q, size=terms).astype(np.int64)
    radix = (q ** np.arange(n - 1, -1, -1)).astype(np.int64)
    out = np.zeros(q**n, dtype=np.int64)
    args = (exps_a, vals_a, exps_b, vals_b, q, radix, field.add_t,
            field.mul_t, field.digit_t, field.p_pows, field.p)
    return args, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=30,
                        help="timing repetitions per case (default 30)")
    args = parser.parse_args()

    numba_fns = None
    if K.BACKEND == "numba":
        numba_fns = (K.mat_apply_nb, K.poly_mul_nb, K.lpp_scan_nb)
    else:
        print("numba backend unavailable (BACKEND=%s); timing numpy only\n"
              % K.BACKEND)
    numpy_fns = (K.mat_apply_np, K.poly_mul_np, K.lpp_scan_np)

    f9 = make_field(3, 2)
    f16 = make_field(2, 4)
    f64 = make_field(2, 6)

    # kernel workloads ------------------------------------------------------
    mul_args, mul_out = poly_mul_workload(f9, 3, 150, seed=1)

    rng = np.random.default_rng(2)
    mat_M = f64.lagr_t
    mat_A = rng.integers(0, 64, size=(64, 4096)).astype(np.int64)

    scan_table = to_table(lpp_chain(f9, 3)).values.reshape(-1)
    scan_big = to_table(lpp_beta(f16, 3)).values.reshape(-1)

    def kernel_cases(mat_apply, poly_mul, lpp_scan):
        return [
            ("poly_mul   150x150 terms, q=9  n=3",
             lambda: poly_mul(*mul_args, np.zeros_like(mul_out))),
            ("mat_apply  64x64 @ 64x4096, q=64",
             lambda: mat_apply(mat_M, mat_A, f64.add_t, f64.mul_t)),
            ("lpp_scan   clean LPP table, q=9 n=3",
             lambda: lpp_scan(scan_table, 3, 9)),
            ("lpp_scan   clean LPP table, q=16 n=3",
             lambda: lpp_scan(scan_big, 3, 16)),
        ]

    # end-to-end workloads (swap the module bindings) -----------------------
    def e2e_cases():
        return [
            ("build+is_lpp  lpp_chain, q=9 n=3",
             lambda: is_lpp(lpp_chain(f9, 3))),
            ("build+is_pp   pp_hn, q=16 n=3",
             lambda: is_pp(pp_hn(f16, 3))),
        ]

    saved = (K.mat_apply, K.poly_mul, K.lpp_scan)

    def with_backend(fns, case_fn):
        K.mat_apply, K.poly_mul, K.lpp_scan = fns
        try:
            return bench(case_fn, args.repeat)
        finally:
            K.mat_apply, K.poly_mul, K.lpp_scan = saved

    rows = []
    if numba_fns is not None:
        for case in kernel_cases(*numba_fns):  # warm the JIT caches
            case[1]()

    for idx, (name, _) in enumerate(kernel_cases(*numpy_fns)):
        np_best, np_med = bench(kernel_cases(*numpy_fns)[idx][1], args.repeat)
        if numba_fns is not None:
            nb_best, nb_med = bench(kernel_cases(*numba_fns)[idx][1],
                                    args.repeat)
            rows.append((name, nb_med, np_med, np_best / max(nb_best, 1e-12)))
        else:
            rows.append((name, None, np_med, None))

    for name, case_fn in e2e_cases():
        if numba_fns is not None:
            with_backend(numba_fns, case_fn)  # warm
            nb_best, nb_med = with_backend(numba_fns, case_fn)
            np_best, np_med = with_backend(numpy_fns, case_fn)
            rows.append((name, nb_med, np_med, np_best / max(nb_best, 1e-12)))
        else:
            np_best, np_med = with_backend(numpy_fns, case_fn)
            rows.append((name, None, np_med, None))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'numba (ms)':>11}  {'numpy (ms)':>11}  "
          f"{'speedup':>8}")
    for name, nb_med, np_med, ratio in rows:
        nb_s = f"{nb_med * 1e3:11.3f}" if nb_med is not None else " " * 11
        ratio_s = f"{ratio:7.1f}x" if ratio is not None else " " * 8
        print(f"{name:<{width}}  {nb_s}  {np_med * 1e3:11.3f}  {ratio_s}")


if __name__ == "__main__":
    main()
