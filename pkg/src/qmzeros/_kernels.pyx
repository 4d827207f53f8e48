# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef inline void _accumulate(double ar, double ai, double aa, const double* pr, const double* pi,
                             const double* pa, double* sr, double* si, double* m,
                             Py_ssize_t npt) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(npt):
        sr[i] += ar * pr[i] - ai * pi[i]
        si[i] += ar * pi[i] + ai * pr[i]
        # |a q^n| as |a| |q|^n: no squaring, so no underflow
        m[i] += aa * pa[i]


def eval_series(double complex[:, ::1] coeffs, double complex[::1] q, Py_ssize_t cut):
    """Sum each coefficient row at every q; also the partial sum through index
    `cut` and the sum of term magnitudes."""
    cdef Py_ssize_t ns = coeffs.shape[0], nc = coeffs.shape[1], npt = q.shape[0]
    # split storage keeps the per-point loop contiguous so it vectorises
    cdef double[::1] zr = np.ascontiguousarray(np.real(q))
    cdef double[::1] zi = np.ascontiguousarray(np.imag(q))
    cdef double[::1] pr = np.ones(npt)
    cdef double[::1] pi = np.zeros(npt)
    cdef double[::1] za = np.ascontiguousarray(np.abs(q))
    cdef double[::1] pa = np.ones(npt)
    sr_arr = np.zeros((ns, npt))
    si_arr = np.zeros((ns, npt))
    mag = np.zeros((ns, npt))
    cdef double[:, ::1] sr = sr_arr
    cdef double[:, ::1] si = si_arr
    cdef double[:, ::1] M = mag
    part = None
    cdef Py_ssize_t s, i, n
    cdef double ar, ai, tmp
    for n in range(nc):
        with nogil:
            for s in range(ns):
                ar = coeffs[s, n].real
                ai = coeffs[s, n].imag
                if ar == 0.0 and ai == 0.0:
                    continue
                _accumulate(ar, ai, sqrt(ar * ar + ai * ai), &pr[0], &pi[0], &pa[0],
                            &sr[s, 0], &si[s, 0], &M[s, 0], npt)
            for i in range(npt):
                tmp = pr[i] * zr[i] - pi[i] * zi[i]
                pi[i] = pr[i] * zi[i] + pi[i] * zr[i]
                pr[i] = tmp
                pa[i] = pa[i] * za[i]
                # subnormal powers are slow and contribute nothing
                if pa[i] < 1e-290:
                    pr[i] = 0.0
                    pi[i] = 0.0
                    pa[i] = 0.0
        if n == cut:
            part = sr_arr + 1j * si_arr
    full = sr_arr + 1j * si_arr
    if part is None:
        part = full.copy()
    return full, part, mag


def phase_increments(double complex[::1] values):
    """Principal argument of values[i+1] / values[i]."""
    cdef Py_ssize_t n = values.shape[0], i
    re = np.empty(max(n - 1, 0))
    im = np.empty(max(n - 1, 0))
    cdef double[::1] R = re
    cdef double[::1] I = im
    cdef double ar, ai, br, bi
    with nogil:
        for i in range(n - 1):
            ar = values[i + 1].real
            ai = values[i + 1].imag
            br = values[i].real
            bi = values[i].imag
            R[i] = ar * br + ai * bi
            I[i] = ai * br - ar * bi
    # numpy's vectorised arctan2 beats a scalar libm loop
    return np.arctan2(im, re)
