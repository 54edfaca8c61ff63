# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Lusztig-datum transport and GGMS vertex accumulation."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def transport(long[:] n0, Py_ssize_t root, long[:, :] steps, Py_ssize_t nwords):
    cdef Py_ssize_t m = n0.shape[0]
    cdef cnp.ndarray[long, ndim=2] out = np.zeros((nwords, m), dtype=np.int64)
    cdef long[:, :] data = out
    cdef Py_ssize_t s, t, parent, child, k
    cdef long a, b, c, mn
    for t in range(m):
        data[root, t] = n0[t]
    for s in range(steps.shape[0]):
        parent = steps[s, 0]
        child = steps[s, 1]
        k = steps[s, 3]
        for t in range(m):
            data[child, t] = data[parent, t]
        if steps[s, 2] == 2:
            data[child, k] = data[parent, k + 1]
            data[child, k + 1] = data[parent, k]
        else:
            a = data[parent, k]
            b = data[parent, k + 1]
            c = data[parent, k + 2]
            mn = a if a < c else c
            data[child, k] = b + c - mn
            data[child, k + 1] = mn
            data[child, k + 2] = a + b - mn
    return out


def accumulate(long[:, :] data, long[:] lam, long[:, :] elt, long[:, :, :] dirs, Py_ssize_t nW):
    cdef Py_ssize_t nwords = data.shape[0]
    cdef Py_ssize_t m = data.shape[1]
    cdef Py_ssize_t r = lam.shape[0]
    cdef cnp.ndarray[long, ndim=2] out = np.zeros((nW, r), dtype=np.int64)
    cdef long[:, :] mu = out
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen_a = np.zeros(nW, dtype=np.uint8)
    cdef cnp.uint8_t[:] seen = seen_a
    cdef long[:] v = np.zeros(r, dtype=np.int64)
    cdef Py_ssize_t u, l, t, w
    cdef long c
    for u in range(nwords):
        for t in range(r):
            v[t] = lam[t]
        for l in range(m, -1, -1):
            if l < m:
                c = data[u, l]
                if c:
                    for t in range(r):
                        v[t] -= c * dirs[u, l, t]
            w = elt[u, l]
            if seen[w]:
                for t in range(r):
                    if mu[w, t] != v[t]:
                        return None, w
            else:
                seen[w] = 1
                for t in range(r):
                    mu[w, t] = v[t]
    return out, -1
