# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled version of the exponential-sum kernel in ``_fallback``."""

import numpy as np

from libc.math cimport cos, exp, expm1, sin, fabs, hypot

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double creal(double complex)
    double cimag(double complex)

cdef double SMALL_EXPONENT = 0.5


cdef inline double complex _cexpm1(double complex z) nogil:
    cdef double x = creal(z)
    cdef double y = cimag(z)
    cdef double half = sin(0.5 * y)
    return (expm1(x) * cos(y) - 2.0 * half * half) + 1j * (exp(x) * sin(y))


def expsum(double complex[:, ::1] coef,
           double complex[:, ::1] lin,
           double complex[:, ::1] rate,
           double complex[::1] shift,
           double[::1] sigma,
           bint anchored):
    cdef Py_ssize_t ns = sigma.shape[0]
    cdef Py_ssize_t nk = coef.shape[0]
    cdef Py_ssize_t nj = coef.shape[1]
    out_arr = np.empty((ns, nk), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t i, m, j
    cdef double s, biggest, size
    cdef double complex acc, arg
    with nogil:
        for i in range(ns):
            s = sigma[i]
            for m in range(nk):
                acc = 0
                if anchored:
                    biggest = 0.0
                    for j in range(nj):
                        arg = rate[m, j] * s
                        size = hypot(creal(arg), cimag(arg))
                        if size > biggest:
                            biggest = size
                    if biggest <= SMALL_EXPONENT:
                        for j in range(nj):
                            arg = rate[m, j] * s
                            acc = acc + coef[m, j] * _cexpm1(arg) + lin[m, j] * s * cexp(arg)
                        out[i, m] = acc * cexp(shift[m])
                        continue
                for j in range(nj):
                    arg = rate[m, j] * s
                    acc = acc + (coef[m, j] + lin[m, j] * s) * cexp(arg + shift[m])
                out[i, m] = acc
    return out_arr
