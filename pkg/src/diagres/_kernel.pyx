# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernels; mirror of diagres._kernel_py (see its docstring).

Coefficients stay Python objects (Fraction, or int for prime fields) so the
speedup comes from the tuple arithmetic and dict plumbing, which dominate
Gröbner reduction time.
"""

BACKEND = "compiled"


def tup_add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] + b[i]
    return tuple(out)


def tup_sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long d
    cdef list out = [0] * n
    for i in range(n):
        d = a[i] - b[i]
        if d < 0:
            return None
        out[i] = d
    return tuple(out)


def tup_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] if a[i] >= b[i] else b[i]
    return tuple(out)


def axpy_q(dict dst, c, tuple m, dict src):
    cdef Py_ssize_t i, n = len(m)
    cdef tuple k, kk
    cdef list buf
    for k, v in src.items():
        buf = [0] * n
        for i in range(n):
            buf[i] = k[i] + m[i]
        kk = tuple(buf)
        w = dst.get(kk)
        if w is None:
            dst[kk] = c * v
        else:
            w = w + c * v
            if w:
                dst[kk] = w
            else:
                del dst[kk]


def axpy_p(dict dst, long c, tuple m, dict src, long p):
    cdef Py_ssize_t i, n = len(m)
    cdef long w, v
    cdef tuple k, kk
    cdef list buf
    for k, val in src.items():
        v = val
        buf = [0] * n
        for i in range(n):
            buf[i] = k[i] + m[i]
        kk = tuple(buf)
        got = dst.get(kk)
        if got is None:
            w = (c * v) % p
            if w:
                dst[kk] = w
        else:
            w = (got + c * v) % p
            if w:
                dst[kk] = w
            else:
                del dst[kk]


def mul_q(dict a, dict b):
    cdef dict out = {}
    if len(a) > len(b):
        a, b = b, a
    for k, v in a.items():
        axpy_q(out, v, k, b)
    return out


def mul_p(dict a, dict b, long p):
    cdef dict out = {}
    if len(a) > len(b):
        a, b = b, a
    for k, v in a.items():
        axpy_p(out, v, k, b, p)
    return out
