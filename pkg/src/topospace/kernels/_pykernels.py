"""Pure-Python kernels. Reference semantics for the compiled twin in ``_ckernels.pyx``.

Matrices arrive flattened row-major as integer lists (rationals already scaled
to a common denominator by the caller), so every comparison is exact.
"""

from __future__ import annotations


def closure(flat, n):
    """Floyd-Warshall all-pairs shortest distances; returns a new flat list."""
    d = list(flat)
    for k in range(n):
        rk = k * n
        for i in range(n):
            ri = i * n
            dik = d[ri + k]
            for j in range(n):
                via = dik + d[rk + j]
                if via < d[ri + j]:
                    d[ri + j] = via
    return d


def _orientations(i, j, k):
    # (x, y, z): test side x-z against the route through y
    return ((i, j, k), (j, i, k), (i, k, j))


def scan_triples(flat, n):
    """First triangle-inequality and first ultrametric-inequality violation.

    Unordered triples are visited as i < j < k in lexicographic order, each in
    the three orientations of ``_orientations``. A witness ``(x, y, z)`` means
    d(x,z) > d(x,y) + d(y,z) (triangle) or d(x,z) > max(d(x,y), d(y,z))
    (ultrametric).
    """
    tri = None
    ultra = None
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for x, y, z in _orientations(i, j, k):
                    xz = flat[x * n + z]
                    xy = flat[x * n + y]
                    yz = flat[y * n + z]
                    if tri is None and xz > xy + yz:
                        tri = (x, y, z)
                    if ultra is None and xz > (xy if xy > yz else yz):
                        ultra = (x, y, z)
                if tri is not None and ultra is not None:
                    return tri, ultra
    return tri, ultra


def census(flat, n):
    """Counts (equilateral, top-two-equal isosceles, other) over all triples."""
    eq = iso = other = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = sorted((flat[i * n + j], flat[i * n + k], flat[j * n + k]))
                if a == c:
                    eq += 1
                elif b == c:
                    iso += 1
                else:
                    other += 1
    return eq, iso, other


def _relabelled(seq):
    labels = {}
    out = []
    for sym in seq:
        cid = sym >> 2
        if cid not in labels:
            labels[cid] = len(labels) + 1
        out.append((labels[cid] << 2) | (sym & 3))
    return out


def canonical(code):
    """Least relabelled rotation of the code or of its reversal.

    Symbols are encoded ``crossing << 2 | over << 1 | positive``. Relabelling
    numbers crossings 1, 2, ... by first appearance.
    """
    if not code:
        return ()
    n = len(code)
    best = None
    for seq in (list(code), list(reversed(code))):
        for r in range(n):
            cand = _relabelled(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return tuple(best)


def tricolorable(n_arcs, crossings):
    """Exhaustive search for a non-trivial Fox 3-colouring.

    ``crossings`` is a flat list of (over, under_in, under_out) arc triples.
    Colour 0 is pinned on arc 0 (colour permutations are symmetric), so the
    search covers 3**(n_arcs - 1) assignments.
    """
    if n_arcs < 2:
        return False
    m = len(crossings) // 3
    colors = [0] * n_arcs
    free = n_arcs - 1
    for code in range(3 ** free):
        c = code
        for a in range(1, n_arcs):
            colors[a] = c % 3
            c //= 3
        ok = True
        for t in range(m):
            x = colors[crossings[3 * t]]
            y = colors[crossings[3 * t + 1]]
            z = colors[crossings[3 * t + 2]]
            if not ((x == y and y == z) or (x != y and y != z and x != z)):
                ok = False
                break
        if ok:
            first = colors[0]
            for a in range(1, n_arcs):
                if colors[a] != first:
                    return True
    return False
