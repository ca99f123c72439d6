# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Same contracts as ``harrisar._kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, fabs

cnp.import_array()

DEF MAX_NEWTON = 200
cdef double EPS = 2.220446049250313e-16

OP_ADD = 0
OP_MAX = 1
OP_MIN = 2


def ar_recursion(int op, double b, y0, innov, apply):
    cdef double[:, :] y0v = np.ascontiguousarray(y0, dtype=np.float64)
    cdef double[:, :, :] ev = np.ascontiguousarray(innov, dtype=np.float64)
    cdef cnp.uint8_t[:, :, :] av = np.ascontiguousarray(apply, dtype=np.uint8)
    cdef Py_ssize_t n_steps = ev.shape[0]
    cdef Py_ssize_t n_paths = ev.shape[1]
    cdef Py_ssize_t k = ev.shape[2]
    if op < 0 or op > 2:
        raise ValueError(f"unknown op code {op}")
    if y0v.shape[0] != n_paths or y0v.shape[1] != k:
        raise ValueError("y0 shape does not match innovations")
    out = np.empty((n_steps + 1, n_paths, k), dtype=np.float64)
    cdef double[:, :, :] ov = out
    cdef Py_ssize_t n, r, i
    cdef double s, e
    for r in range(n_paths):
        for i in range(k):
            ov[0, r, i] = y0v[r, i]
    for n in range(n_steps):
        for r in range(n_paths):
            for i in range(k):
                s = b * ov[n, r, i]
                if av[n, r, i]:
                    e = ev[n, r, i]
                    if op == 0:
                        s = s + e
                    elif op == 1:
                        if e > s:
                            s = e
                    else:
                        if e < s:
                            s = e
                ov[n + 1, r, i] = s
    return out


def truncated_convolve(x, y, Py_ssize_t n):
    cdef double[:] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[:] yv = np.ascontiguousarray(y, dtype=np.float64)
    out = np.zeros(n, dtype=np.float64)
    cdef double[:] ov = out
    cdef Py_ssize_t nx = min(xv.shape[0], n)
    cdef Py_ssize_t ny = min(yv.shape[0], n)
    cdef Py_ssize_t i, j, jmax
    cdef double xi
    for i in range(nx):
        xi = xv[i]
        if xi == 0.0:
            continue
        jmax = min(ny, n - i)
        for j in range(jmax):
            ov[i + j] += xi * yv[j]
    return out


cdef double _solve_one(double t, double alpha, double beta, double omega):
    cdef double lo = (t - fabs(beta)) / alpha
    cdef double hi = (t + fabs(beta)) / alpha
    cdef double v = t / alpha
    cdef double tol = 4.0 * EPS * (fabs(t) if fabs(t) > 1.0 else 1.0)
    cdef double g, dg, step, scale
    cdef int it
    for it in range(MAX_NEWTON):
        g = alpha * v + beta * sin(omega * v) - t
        if fabs(g) <= tol:
            break
        if g < 0:
            lo = v
        else:
            hi = v
        scale = fabs(v) if fabs(v) > 1.0 else 1.0
        if hi - lo <= 2.0 * EPS * scale:
            break
        dg = alpha + beta * omega * cos(omega * v)
        step = v - g / dg
        if not (step > lo and step < hi):
            step = 0.5 * (lo + hi)
        v = step
    return v


def solve_log_periodic(target, double alpha, double beta, double omega):
    arr = np.ascontiguousarray(target, dtype=np.float64)
    shape = arr.shape
    cdef double[:] tv = arr.reshape(-1)
    out = np.empty(tv.shape[0], dtype=np.float64)
    cdef double[:] ov = out
    cdef Py_ssize_t j
    for j in range(tv.shape[0]):
        ov[j] = _solve_one(tv[j], alpha, beta, omega)
    return out.reshape(shape)
