"""Pure numpy reference implementation of the hot kernels."""

from __future__ import annotations

import cmath

import numpy as np

IMPLEMENTATION = "reference"


def grid_exp_sum(d: int, r) -> complex:
    """sum over v in (Z/d)^m of e((r . v)/d), by direct grid summation.

    The phase index is accumulated modulo d in integer arithmetic, so the
    result is a sum of exact d-th roots of unity.
    """
    r = np.asarray(r, dtype=np.int64)
    m = len(r)
    if d == 1:
        return complex(1.0)
    roots = np.exp(2j * np.pi * np.arange(d) / d)
    v = np.arange(d, dtype=np.int64)
    idx = np.zeros((1,), dtype=np.int64)
    for i in range(m):
        idx = (idx[:, None] + (r[i] % d) * v[None, :]) % d
        idx = idx.reshape(-1)
    return complex(roots[idx].sum())


def bf_weighted_sum(n: int, nu: complex, r, d_max: int, psi_values) -> complex:
    """sum_{d=1}^{d_max} psi(d) d^{-nu-n/2} grid_exp_sum(d, r).

    psi_values[d-1] must hold psi(d) for d = 1..d_max.
    """
    total = 0j
    for d in range(1, d_max + 1):
        w = complex(psi_values[d - 1])
        if w == 0:
            continue
        total += w * cmath.exp((-nu - n / 2) * cmath.log(d)) * grid_exp_sum(d, r)
    return total
