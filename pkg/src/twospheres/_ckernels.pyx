# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Lloyd kernels: Voronoi assignment fused with per-cluster sums."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF BLOCK = 1024


def assign_accumulate(const double[:, ::1] points, const double[::1] c1, const double[::1] c2):
    """Label each point 0 (nearer c1, ties included) or 1, and sum coordinates per cluster.

    Sums are accumulated per block of 1024 points and the block partials are
    added in order, so the result does not depend on anything but the input.
    """
    cdef Py_ssize_t count = points.shape[0], dim = points.shape[1]
    cdef Py_ssize_t i, k, start, stop
    cdef double d1, d2, t
    labels = np.empty(count, dtype=np.int8)
    sums = np.zeros((2, dim), dtype=np.float64)
    block = np.zeros((2, dim), dtype=np.float64)
    counts = np.zeros(2, dtype=np.int64)
    cdef cnp.int8_t[::1] lab = labels
    cdef double[:, ::1] total = sums
    cdef double[:, ::1] part = block
    cdef cnp.int64_t n0 = 0
    cdef int c
    for start in range(0, count, BLOCK):
        stop = min(start + BLOCK, count)
        part[:, :] = 0.0
        for i in range(start, stop):
            d1 = 0.0
            d2 = 0.0
            for k in range(dim):
                t = points[i, k] - c1[k]
                d1 += t * t
                t = points[i, k] - c2[k]
                d2 += t * t
            c = 0 if d1 <= d2 else 1
            lab[i] = c
            n0 += 1 - c
            for k in range(dim):
                part[c, k] += points[i, k]
        for c in range(2):
            for k in range(dim):
                total[c, k] += part[c, k]
    counts[0] = n0
    counts[1] = count - n0
    return labels, sums, counts


def cluster_sse(const double[:, ::1] points, const cnp.int8_t[::1] labels,
                const double[::1] c1, const double[::1] c2):
    """Sum of squared distances from each point to the centroid of its label."""
    cdef Py_ssize_t count = points.shape[0], dim = points.shape[1]
    cdef Py_ssize_t i, k, start, stop
    cdef double t, d, part, total = 0.0
    cdef const double[::1] c
    for start in range(0, count, BLOCK):
        stop = min(start + BLOCK, count)
        part = 0.0
        for i in range(start, stop):
            c = c1 if labels[i] == 0 else c2
            d = 0.0
            for k in range(dim):
                t = points[i, k] - c[k]
                d += t * t
            part += d
        total += part
    return total
