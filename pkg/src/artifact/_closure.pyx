# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled forward-chaining kernel for rule sets over at most 64 literals."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from artifact import _closure_py

cdef int WORD = 64


cdef uint64_t _run(int n, int *heads, uint64_t *bodies, uint64_t mask) nogil:
    cdef int i, live
    cdef char *done = <char *> malloc(n)
    for i in range(n):
        done[i] = 0
    cdef bint changed = True
    while changed:
        changed = False
        for i in range(n):
            if not done[i] and (bodies[i] & mask) == bodies[i]:
                mask |= (<uint64_t> 1) << heads[i]
                done[i] = 1
                changed = True
    free(done)
    return mask


def closure(heads, bodies, seed, int width=0):
    if width > WORD or width <= 0:
        return _closure_py.closure(heads, bodies, seed)
    cdef int n = len(heads)
    cdef int *h = <int *> malloc(max(n, 1) * sizeof(int))
    cdef uint64_t *b = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    cdef int i
    try:
        for i in range(n):
            h[i] = heads[i]
            b[i] = bodies[i]
        return _run(n, h, b, seed)
    finally:
        free(h)
        free(b)


def closure_many(heads, bodies, seeds, selections, int width=0):
    if width > WORD or width <= 0:
        return _closure_py.closure_many(heads, bodies, seeds, selections)
    cdef int n = len(heads)
    cdef int *h = <int *> malloc(max(n, 1) * sizeof(int))
    cdef uint64_t *b = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    cdef int *sh = <int *> malloc(max(n, 1) * sizeof(int))
    cdef uint64_t *sb = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
    cdef int i, k, m
    out = []
    try:
        for i in range(n):
            h[i] = heads[i]
            b[i] = bodies[i]
        for seed, chosen in zip(seeds, selections):
            m = 0
            for k in chosen:
                sh[m] = h[k]
                sb[m] = b[k]
                m += 1
            out.append(_run(m, sh, sb, seed))
        return out
    finally:
        free(h)
        free(b)
        free(sh)
        free(sb)
