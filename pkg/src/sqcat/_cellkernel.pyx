# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the diagonal 2-cell join.

Mirrors ``_cellkernel_py.join_cells`` but takes the outer-square lookup as
two sorted, parallel int64 arrays (keys and edge indices) and resolves them
by binary search, so the hot loop runs without touching Python objects.
"""

BACKEND = "cython"


cdef inline long long _find(const long long[::1] keys, const long long[::1] vals,
                            long long key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < keys.shape[0] and keys[lo] == key:
        return vals[lo]
    return -2


def join_cells(const long long[::1] a_start, const long long[::1] a_stop,
               const long long[::1] b_start, const long long[::1] b_stop,
               const long long[::1] a_fcomp, const long long[::1] a_g0,
               const long long[::1] a_g2, const long long[::1] a_d2edge,
               const long long[::1] a_s0, const long long[::1] a_s1,
               const long long[::1] b_hcomp, const long long[::1] b_e0,
               const long long[::1] b_e2, const long long[::1] b_d0edge,
               const long long[::1] b_s0, const long long[::1] b_s1,
               const long long[::1] comp_e, long long ne,
               const long long[::1] sq_keys, const long long[::1] sq_edges,
               long long km, long long enc_base, long long[::1] out):
    cdef Py_ssize_t n = 0
    cdef Py_ssize_t g, i, j
    cdef long long ne2 = ne * ne
    cdef long long fpart, base_g0, base_g2, d2part, le, re, d1e, key
    cdef long long as0, as1
    cdef bint failed = 0
    with nogil:
        for g in range(a_start.shape[0]):
            if failed:
                break
            if b_start[g] == b_stop[g]:
                continue
            for i in range(a_start[g], a_stop[g]):
                if failed:
                    break
                fpart = a_fcomp[i] * km
                base_g0 = a_g0[i] * ne
                base_g2 = a_g2[i] * ne
                d2part = (a_d2edge[i] + 1) * enc_base
                as0 = a_s0[i]
                as1 = a_s1[i]
                for j in range(b_start[g], b_stop[g]):
                    if (as0 != 0 and b_s0[j] != 0) or (as1 != 0 and b_s1[j] != 0):
                        continue
                    le = comp_e[base_g0 + b_e0[j]]
                    re = comp_e[base_g2 + b_e2[j]]
                    key = (fpart + b_hcomp[j]) * ne2 + le * ne + re
                    d1e = _find(sq_keys, sq_edges, key)
                    if d1e == -2:
                        failed = 1
                        break
                    out[n] = (d2part + b_d0edge[j] + 1) * enc_base + d1e + 1
                    n += 1
    if failed:
        return -(n + 1)
    return n
