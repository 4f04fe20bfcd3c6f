"""Compare the numba kernels with their numpy fallbacks.

    python benchmarks/bench_kernels.py [--zeros 2000] [--points 4000] [--gram 64]

Both backends are called directly, so one process times both; the first
numba call (compilation) is excluded.  Results are checked to agree.
"""
import argparse
import time

import numpy as np

from mslab import _accel, _kernels


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--zeros", type=int, default=2000)
    ap.add_argument("--points", type=int, default=4000)
    ap.add_argument("--gram", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _accel.USE_NUMBA:
        print("numba disabled (MSLAB_DISABLE_NUMBA set); timing numpy only")

    rng = np.random.default_rng(0)
    r = np.sqrt(rng.uniform(0.0, 0.999, args.zeros))
    zeros = r * np.exp(2j * np.pi * rng.uniform(size=args.zeros))
    phases = np.where(zeros == 0, 0.0, -np.angle(zeros))
    pts = 0.9 * np.sqrt(rng.uniform(size=args.points)) * np.exp(2j * np.pi * rng.uniform(size=args.points))
    A = rng.normal(size=(args.gram, args.gram)) + 1j * rng.normal(size=(args.gram, args.gram))
    G = A @ A.conj().T

    cases = [
        ("factor_logsum (disc)",
         lambda: _kernels._np_logsum(_kernels.DISC, zeros, phases, pts),
         lambda: _kernels._nb_logsum(_kernels.DISC, zeros, phases, pts)),
        ("factor_logderiv_sum (disc)",
         lambda: _kernels._np_logderiv_sum(_kernels.DISC, zeros, pts),
         lambda: _kernels._nb_logderiv_sum(_kernels.DISC, zeros, pts)),
        (f"jacobi_eigh ({args.gram}x{args.gram})",
         lambda: _kernels._np_jacobi_eigh(G.copy(), 1e-15, 100),
         lambda: _kernels._nb_jacobi_eigh(G.copy(), 1e-15, 100)),
    ]
    print(f"{'kernel':32s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, f_np, f_nb in cases:
        t_np, out_np = _best(f_np, args.repeat)
        if _accel.USE_NUMBA:
            f_nb()
            t_nb, out_nb = _best(f_nb, args.repeat)
            diff = max(float(np.max(np.abs(np.sort(np.ravel(a)) - np.sort(np.ravel(b)))))
                       for a, b in zip(out_np[:1], out_nb[:1]))
            print(f"{name:32s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f} {diff:10.2e}")
        else:
            print(f"{name:32s} {t_np:10.4f} {'-':>10s}")


if __name__ == "__main__":
    main()
