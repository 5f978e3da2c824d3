# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementation of the hot kernels (see _ref.py for the contract)."""

from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc

IMPLEMENTATION = "cython"


def grid_exp_sum(long d, r):
    cdef int m = len(r)
    cdef long i, j
    if d == 1:
        return 1.0 + 0.0j
    cdef long *rr = <long *> malloc(m * sizeof(long))
    cdef long *v = <long *> malloc(m * sizeof(long))
    cdef double *re = <double *> malloc(d * sizeof(double))
    cdef double *im = <double *> malloc(d * sizeof(double))
    cdef double two_pi = 6.283185307179586476925286766559
    cdef double acc_re = 0.0, acc_im = 0.0
    cdef long idx = 0
    cdef int k
    cdef bint done = 0
    try:
        for k in range(m):
            rr[k] = (<long> r[k]) % d
            if rr[k] < 0:
                rr[k] += d
            v[k] = 0
        for j in range(d):
            re[j] = cos(two_pi * j / d)
            im[j] = sin(two_pi * j / d)
        # odometer over v in (Z/d)^m with incremental phase index
        while not done:
            acc_re += re[idx]
            acc_im += im[idx]
            done = 1
            for k in range(m):
                v[k] += 1
                idx += rr[k]
                if idx >= d:
                    idx -= d
                if v[k] < d:
                    done = 0
                    break
                # roll over: subtract d * rr[k] mod d == 0, reset digit
                v[k] = 0
        return complex(acc_re, acc_im)
    finally:
        free(rr)
        free(v)
        free(re)
        free(im)


def bf_weighted_sum(int n, complex nu, r, long d_max, psi_values):
    cdef long d
    cdef complex total = 0, w, power
    cdef complex expo = -nu - n / 2.0
    import cmath
    for d in range(1, d_max + 1):
        w = psi_values[d - 1]
        if w == 0:
            continue
        power = cmath.exp(expo * cmath.log(d))
        total = total + w * power * grid_exp_sum(d, r)
    return total
