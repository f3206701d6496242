# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the hot kernels (see _pyref.py for the reference)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, floor, pi

cnp.import_array()


def dtft(values, nu):
    cdef cnp.float64_t[::1] x = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.float64_t[::1] f = np.ascontiguousarray(nu, dtype=np.float64)
    out = np.zeros(f.shape[0], dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef Py_ssize_t i, n
    cdef double re, im, w, phase
    for i in range(f.shape[0]):
        re = 0.0
        im = 0.0
        w = -2.0 * pi * f[i]
        for n in range(x.shape[0]):
            phase = w * n
            re += x[n] * cos(phase)
            im += x[n] * sin(phase)
        o[i] = re + 1j * im
    return out


def fold_linear(samples, double spl, Py_ssize_t n_rows, Py_ssize_t cols, double start=0.0):
    cdef cnp.complex128_t[::1] x = np.ascontiguousarray(samples, dtype=np.complex128)
    out = np.empty((n_rows, cols), dtype=np.complex128)
    cdef cnp.complex128_t[:, ::1] o = out
    cdef Py_ssize_t r, j, i0, i1, last = x.shape[0] - 1
    cdef double pos, frac
    for r in range(n_rows):
        for j in range(cols):
            pos = start + r * spl + j
            i0 = <Py_ssize_t>floor(pos)
            frac = pos - i0
            i1 = i0 + 1 if i0 + 1 <= last else last
            o[r, j] = (1.0 - frac) * x[i0] + frac * x[i1]
    return out


def resample_linear(samples, double step, Py_ssize_t n_out):
    cdef cnp.complex128_t[::1] x = np.ascontiguousarray(samples, dtype=np.complex128)
    out = np.empty(n_out, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef Py_ssize_t m, i0, i1, last = x.shape[0] - 1
    cdef double pos, frac
    for m in range(n_out):
        pos = m * step
        i0 = <Py_ssize_t>floor(pos)
        frac = pos - i0
        i1 = i0 + 1 if i0 + 1 <= last else last
        o[m] = (1.0 - frac) * x[i0] + frac * x[i1]
    return out


def render_pulses(values, Py_ssize_t oversample, Py_ssize_t n_high):
    cdef cnp.float64_t[::1] x = np.ascontiguousarray(values, dtype=np.float64)
    out = np.zeros(x.shape[0] * oversample, dtype=np.float64)
    cdef cnp.float64_t[::1] o = out
    cdef Py_ssize_t n, j
    for n in range(x.shape[0]):
        for j in range(n_high):
            o[n * oversample + j] = x[n]
    return out
