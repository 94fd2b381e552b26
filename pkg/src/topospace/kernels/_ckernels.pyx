# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pykernels``.

Inputs are ``array('q')`` buffers. Callers guarantee entries fit comfortably
in int64 (no sum of two entries overflows).
"""

from cpython.array cimport array, clone
from array import array as pyarray


def closure(long long[::1] flat, Py_ssize_t n):
    cdef array out = clone(pyarray('q'), n * n, False)
    cdef long long[::1] d = out
    cdef Py_ssize_t i, j, k, ri, rk
    cdef long long dik, via
    for i in range(n * n):
        d[i] = flat[i]
    for k in range(n):
        rk = k * n
        for i in range(n):
            ri = i * n
            dik = d[ri + k]
            for j in range(n):
                via = dik + d[rk + j]
                if via < d[ri + j]:
                    d[ri + j] = via
    return out


cdef inline bint _tri_bad(long long[::1] f, Py_ssize_t n, Py_ssize_t x,
                          Py_ssize_t y, Py_ssize_t z):
    return f[x * n + z] > f[x * n + y] + f[y * n + z]


cdef inline bint _ultra_bad(long long[::1] f, Py_ssize_t n, Py_ssize_t x,
                            Py_ssize_t y, Py_ssize_t z):
    cdef long long xy = f[x * n + y]
    cdef long long yz = f[y * n + z]
    return f[x * n + z] > (xy if xy > yz else yz)


def scan_triples(long long[::1] flat, Py_ssize_t n):
    cdef Py_ssize_t i, j, k, o
    cdef Py_ssize_t xs[3]
    cdef Py_ssize_t ys[3]
    cdef Py_ssize_t zs[3]
    cdef bint have_tri = False, have_ultra = False
    tri = None
    ultra = None
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                xs[0] = i; ys[0] = j; zs[0] = k
                xs[1] = j; ys[1] = i; zs[1] = k
                xs[2] = i; ys[2] = k; zs[2] = j
                for o in range(3):
                    if not have_tri and _tri_bad(flat, n, xs[o], ys[o], zs[o]):
                        tri = (xs[o], ys[o], zs[o])
                        have_tri = True
                    if not have_ultra and _ultra_bad(flat, n, xs[o], ys[o], zs[o]):
                        ultra = (xs[o], ys[o], zs[o])
                        have_ultra = True
                if have_tri and have_ultra:
                    return tri, ultra
    return tri, ultra


def census(long long[::1] flat, Py_ssize_t n):
    cdef Py_ssize_t i, j, k
    cdef long long a, b, c, t
    cdef long long eq = 0, iso = 0, other = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a = flat[i * n + j]
                b = flat[i * n + k]
                c = flat[j * n + k]
                if a > b:
                    t = a; a = b; b = t
                if b > c:
                    t = b; b = c; c = t
                if a > b:
                    t = a; a = b; b = t
                if a == c:
                    eq += 1
                elif b == c:
                    iso += 1
                else:
                    other += 1
    return eq, iso, other


def canonical(long long[::1] code):
    cdef Py_ssize_t n = code.shape[0]
    if n == 0:
        return ()
    cdef Py_ssize_t maxid = 0, p
    for p in range(n):
        if (code[p] >> 2) > maxid:
            maxid = code[p] >> 2
    cdef array lab_arr = clone(pyarray('q'), maxid + 1, False)
    cdef array best_arr = clone(pyarray('q'), n, False)
    cdef array cand_arr = clone(pyarray('q'), n, False)
    cdef long long[::1] lab = lab_arr
    cdef long long[::1] best = best_arr
    cdef long long[::1] cand = cand_arr
    cdef bint have_best = False
    cdef int direction, cmp
    cdef Py_ssize_t r, q, src
    cdef long long sym, cid, next_label
    for direction in range(2):
        for r in range(n):
            for p in range(maxid + 1):
                lab[p] = 0
            next_label = 1
            # cmp: -1 smaller than best so far, 0 equal prefix, 1 larger
            cmp = -1 if not have_best else 0
            for q in range(n):
                if direction == 0:
                    src = (r + q) % n
                else:
                    src = (r - q + n) % n
                sym = code[src]
                cid = sym >> 2
                if lab[cid] == 0:
                    lab[cid] = next_label
                    next_label += 1
                cand[q] = (lab[cid] << 2) | (sym & 3)
                if cmp == 0:
                    if cand[q] < best[q]:
                        cmp = -1
                    elif cand[q] > best[q]:
                        cmp = 1
                        break
            if cmp == -1:
                for q in range(n):
                    best[q] = cand[q]
                have_best = True
    return tuple(best_arr)


def tricolorable(Py_ssize_t n_arcs, long long[::1] crossings):
    if n_arcs < 2:
        return False
    cdef Py_ssize_t m = crossings.shape[0] // 3
    cdef array col_arr = clone(pyarray('q'), n_arcs, True)
    cdef long long[::1] colors = col_arr
    cdef Py_ssize_t a, t
    cdef long long x, y, z
    cdef bint ok, carry
    # odometer over arcs 1..n_arcs-1, arc 0 pinned to colour 0
    while True:
        ok = True
        for t in range(m):
            x = colors[crossings[3 * t]]
            y = colors[crossings[3 * t + 1]]
            z = colors[crossings[3 * t + 2]]
            if not ((x == y and y == z) or (x != y and y != z and x != z)):
                ok = False
                break
        if ok:
            for a in range(1, n_arcs):
                if colors[a] != colors[0]:
                    return True
        a = 1
        carry = True
        while carry and a < n_arcs:
            colors[a] += 1
            if colors[a] == 3:
                colors[a] = 0
                a += 1
            else:
                carry = False
        if carry:
            return False
