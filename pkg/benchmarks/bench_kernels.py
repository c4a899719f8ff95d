"""Benchmark the compiled kernel module against the numpy fallback.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from orbivol._kernels import cykernels, pykernels
from orbivol.basis import build_basis
from orbivol.curvature import default_scaled_metric, global_curvature_scan
from orbivol.quaternion import GroundField
from orbivol.structure import structure_constants


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_quat_matmul(rng):
    print("\nquat_matmul (quaternion matrix product)")
    print(f"{'size':>12} {'numpy':>12} {'cython':>12} {'speedup':>9}")
    for size in (4, 8, 16, 32):
        a = rng.standard_normal((size, size, 4))
        b = rng.standard_normal((size, size, 4))
        t_py = timeit(pykernels.quat_matmul, a, b, repeat=20)
        if cykernels is None:
            print(f"{size:>10}^2 {t_py * 1e6:>10.1f}us {'-':>12}")
            continue
        t_cy = timeit(cykernels.quat_matmul, a, b, repeat=20)
        print(f"{size:>10}^2 {t_py * 1e6:>10.1f}us {t_cy * 1e6:>10.1f}us "
              f"{t_py / t_cy:>8.1f}x")


def bench_bracket_batch(rng):
    print("\nbracket_batch (batched structure-constant bracket)")
    print(f"{'case':>16} {'numpy':>12} {'cython':>12} {'speedup':>9}")
    for n in (1, 2, 3):
        model = build_basis(GroundField.QUATERNION, n)
        table = structure_constants(model).table
        for batch in (64, 4096):
            x = rng.standard_normal((batch, model.dim))
            y = rng.standard_normal((batch, model.dim))
            t_py = timeit(pykernels.bracket_batch, table, x, y)
            label = f"n={n} b={batch}"
            if cykernels is None:
                print(f"{label:>16} {t_py * 1e3:>10.2f}ms {'-':>12}")
                continue
            t_cy = timeit(cykernels.bracket_batch, table, x, y)
            print(f"{label:>16} {t_py * 1e3:>10.2f}ms {t_cy * 1e3:>10.2f}ms "
                  f"{t_py / t_cy:>8.1f}x")


def bench_scan():
    print("\nglobal curvature scan, sp(2,1), 4000 samples "
          "(end-to-end, selected backend)")
    model = build_basis(GroundField.QUATERNION, 2)
    metric = default_scaled_metric(model)
    t0 = time.perf_counter()
    report = global_curvature_scan(metric, samples=4000, ascent_iters=60,
                                   seed=3)
    print(f"  empirical max {report.empirical_max:.6f} in "
          f"{time.perf_counter() - t0:.2f} s")


def main():
    from orbivol._kernels import backend_name
    print(f"selected backend: {backend_name}"
          + ("" if cykernels is not None else
             "  (compiled kernels unavailable; numpy only)"))
    rng = np.random.default_rng(0)
    bench_quat_matmul(rng)
    bench_bracket_batch(rng)
    bench_scan()


if __name__ == "__main__":
    main()
