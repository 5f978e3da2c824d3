"""Benchmark the compiled coefficient kernels against the numpy reference.

Usage: python benchmarks/bench_kernels.py [--d-max D] [--reps K]
"""

from __future__ import annotations

import argparse
import time

from mirabolic._kernels import _ref

try:
    from mirabolic._kernels import _fast
except ImportError:
    _fast = None


def time_call(fn, *args, reps: int = 3) -> float:
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=24)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()

    psi_values = [1.0] * args.d_max
    cases = [
        ("grid_exp_sum m=2", "grid_exp_sum", (args.d_max, (6, 4))),
        ("grid_exp_sum m=3", "grid_exp_sum", (args.d_max, (6, 4, 2))),
        (
            "bf_weighted_sum n=3",
            "bf_weighted_sum",
            (3, 0.7 + 0.3j, (12, 24), args.d_max, psi_values),
        ),
        (
            "bf_weighted_sum n=4",
            "bf_weighted_sum",
            (4, 0.7 + 0.3j, (12, 24, 6), args.d_max, psi_values),
        ),
    ]

    if _fast is None:
        print("compiled extension not available; timing reference only")
    header = f"{'case':24s} {'reference':>12s} {'compiled':>12s} {'speedup':>9s}"
    print(header)
    print("-" * len(header))
    for label, fn_name, fargs in cases:
        t_ref = time_call(getattr(_ref, fn_name), *fargs, reps=args.reps)
        if _fast is not None:
            v_ref = getattr(_ref, fn_name)(*fargs)
            v_fast = getattr(_fast, fn_name)(*fargs)
            if abs(v_ref - v_fast) > 1e-9 * max(1.0, abs(v_ref)):
                raise AssertionError(f"{label}: implementations disagree")
            t_fast = time_call(getattr(_fast, fn_name), *fargs, reps=args.reps)
            print(f"{label:24s} {t_ref*1e3:10.3f}ms {t_fast*1e3:10.3f}ms {t_ref/t_fast:8.1f}x")
        else:
            print(f"{label:24s} {t_ref*1e3:10.3f}ms {'-':>12s} {'-':>9s}")


if __name__ == "__main__":
    main()
