# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-point kernels; one restart column at a time, scalar loops."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, pow

cnp.import_array()

MAX_ITER = 500
VALUE_TOL = 1e-12


cdef inline double _cabs(double complex z) noexcept:
    return abs(z)


cdef double _pnorm(double complex[::1] v, double p, Py_ssize_t d) noexcept:
    cdef double m = 0.0, a, acc = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        a = _cabs(v[i])
        if a > m:
            m = a
    if m == 0.0 or p == INFINITY:
        return m
    for i in range(d):
        acc += pow(_cabs(v[i]) / m, p)
    return m * pow(acc, 1.0 / p)


cdef void _dual(double complex[::1] z, double ball_exp,
                double complex[::1] out, Py_ssize_t d) noexcept:
    """out = unit ball_exp-norm vector maximizing Re <out, z>; ball_exp in (1, 2]."""
    cdef double e = 1.0 / (ball_exp - 1.0)
    cdef double m = 0.0, a, nrm
    cdef Py_ssize_t i
    for i in range(d):
        a = _cabs(z[i])
        if a > m:
            m = a
    if m == 0.0:
        for i in range(d):
            out[i] = 0.0
        out[0] = 1.0
        return
    for i in range(d):
        a = _cabs(z[i])
        if a == 0.0:
            out[i] = 0.0
        else:
            out[i] = (z[i] / a) * pow(a / m, e)
    nrm = _pnorm(out, ball_exp, d)
    for i in range(d):
        out[i] = out[i] / nrm


cdef void _matvec(double complex[:, ::1] u, double complex[::1] x,
                  double complex[::1] out, Py_ssize_t d) noexcept:
    cdef Py_ssize_t i, j
    cdef double complex acc
    for i in range(d):
        acc = 0.0
        for j in range(d):
            acc = acc + u[i, j] * x[j]
        out[i] = acc


cdef void _matvec_adj(double complex[:, ::1] u, double complex[::1] x,
                      double complex[::1] out, Py_ssize_t d) noexcept:
    cdef Py_ssize_t i, j
    cdef double complex acc
    for j in range(d):
        acc = 0.0
        for i in range(d):
            acc = acc + u[i, j].conjugate() * x[i]
        out[j] = acc


def omega_ascent(u, double r, double s, w0, int max_iter=MAX_ITER,
                 double tol=VALUE_TOL):
    """Alternating dual-map ascent for sup |v^H U w| over B_r x B_s."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] u_arr = np.ascontiguousarray(
        u, dtype=np.complex128)
    if not u_arr.flags.writeable:
        u_arr = u_arr.copy()
    w0 = np.asarray(w0, dtype=np.complex128)
    if w0.ndim == 1:
        w0 = w0[:, None]
    cdef Py_ssize_t d = u_arr.shape[0]
    cdef Py_ssize_t k = w0.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v_out = np.zeros((d, k), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] w_out = np.zeros((d, k), dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] iters = np.zeros(k, dtype=np.int64)
    cdef cnp.ndarray[cnp.npy_bool, ndim=1] conv = np.zeros(k, dtype=bool)

    cdef double complex[:, ::1] um = u_arr
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] wcol = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vcol = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] y = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] wv = wcol
    cdef double complex[::1] vv = vcol
    cdef double complex[::1] zv = z
    cdef double complex[::1] yv = y
    cdef Py_ssize_t col, i, it
    cdef double val, prev, nrm
    cdef double complex acc

    for col in range(k):
        for i in range(d):
            wv[i] = w0[i, col]
        nrm = _pnorm(wv, s, d)
        for i in range(d):
            wv[i] = wv[i] / nrm
        prev = -1.0
        val = -1.0
        for it in range(1, max_iter + 1):
            _matvec(um, wv, zv, d)
            _dual(zv, r, vv, d)
            _matvec_adj(um, vv, yv, d)
            _dual(yv, s, wv, d)
            acc = 0.0
            for i in range(d):
                acc = acc + yv[i].conjugate() * wv[i]
            val = _cabs(acc)
            iters[col] = it
            if val - prev < tol and prev - val < tol:
                conv[col] = True
                break
            prev = val
        vals[col] = val
        for i in range(d):
            v_out[i, col] = vv[i]
            w_out[i, col] = wv[i]
    return vals, v_out, w_out, iters, conv


def pq_ascent(u, double p, double q, phi0, int max_iter=MAX_ITER,
              double tol=VALUE_TOL):
    """Power-type ascent for sup ||U phi||_q / ||phi||_p; tracks best witness."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] u_arr = np.ascontiguousarray(
        u, dtype=np.complex128)
    if not u_arr.flags.writeable:
        u_arr = u_arr.copy()
    phi0 = np.asarray(phi0, dtype=np.complex128)
    if phi0.ndim == 1:
        phi0 = phi0[:, None]
    cdef Py_ssize_t d = u_arr.shape[0]
    cdef Py_ssize_t k = phi0.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] best_phi = np.zeros((d, k), dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] best_vals = np.full(k, -1.0, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] iters = np.zeros(k, dtype=np.int64)
    cdef cnp.ndarray[cnp.npy_bool, ndim=1] conv = np.zeros(k, dtype=bool)

    cdef double q_exp = q - 1.0
    cdef double pull_exp = 0.0 if p == INFINITY else 1.0 / (p - 1.0)
    cdef double complex[:, ::1] um = u_arr
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] phi = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] psi = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] g = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] phiv = phi
    cdef double complex[::1] psiv = psi
    cdef double complex[::1] gv = g
    cdef double complex[::1] zv = z
    cdef Py_ssize_t col, i, it
    cdef double val, last, nrm, m, a

    for col in range(k):
        for i in range(d):
            phiv[i] = phi0[i, col]
        nrm = _pnorm(phiv, p, d)
        for i in range(d):
            phiv[i] = phiv[i] / nrm
        last = -1.0
        for it in range(1, max_iter + 1):
            _matvec(um, phiv, psiv, d)
            val = _pnorm(psiv, q, d)
            iters[col] = it
            if val > best_vals[col]:
                best_vals[col] = val
                for i in range(d):
                    best_phi[i, col] = phiv[i]
            if val - last < tol and last - val < tol:
                conv[col] = True
                break
            last = val
            m = 0.0
            for i in range(d):
                a = _cabs(psiv[i])
                if a > m:
                    m = a
            if m == 0.0:
                break
            for i in range(d):
                a = _cabs(psiv[i])
                if a == 0.0:
                    gv[i] = 0.0
                else:
                    gv[i] = (psiv[i] / a) * pow(a / m, q_exp)
            _matvec_adj(um, gv, zv, d)
            m = 0.0
            for i in range(d):
                a = _cabs(zv[i])
                if a > m:
                    m = a
            if m == 0.0:
                break
            for i in range(d):
                a = _cabs(zv[i])
                if a == 0.0:
                    phiv[i] = 0.0
                else:
                    phiv[i] = (zv[i] / a) * pow(a / m, pull_exp)
            nrm = _pnorm(phiv, p, d)
            for i in range(d):
                phiv[i] = phiv[i] / nrm
        if best_vals[col] < 0.0:
            best_vals[col] = 0.0
    return best_vals, best_phi, iters, conv
