"""Hot inner loops, compiled when available.

At import time the Cython extension ``_ckernels`` is preferred; if it was not
built the pure-Python twin ``_pykernels`` is used instead. ``BACKEND`` names
the active one. Integer inputs too large for int64 arithmetic are always
routed to the Python kernels, which work on unbounded ints.
"""

from __future__ import annotations

from array import array

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

# any sum of two entries below this bound stays inside int64
_SAFE = 1 << 61


def _fits(values) -> bool:
    return all(-_SAFE < v < _SAFE for v in values)


def _native(values) -> bool:
    return _ckernels is not None and _fits(values)


def closure(flat: list[int], n: int) -> list[int]:
    if _native(flat):
        return list(_ckernels.closure(array("q", flat), n))
    return _pykernels.closure(flat, n)


def scan_triples(flat: list[int], n: int):
    if _native(flat):
        return _ckernels.scan_triples(array("q", flat), n)
    return _pykernels.scan_triples(flat, n)


def census(flat: list[int], n: int) -> tuple[int, int, int]:
    if _native(flat):
        return _ckernels.census(array("q", flat), n)
    return _pykernels.census(flat, n)


def canonical(code: list[int]) -> tuple[int, ...]:
    if _native(code):
        return _ckernels.canonical(array("q", code))
    return _pykernels.canonical(code)


def tricolorable(n_arcs: int, crossings: list[int]) -> bool:
    if _ckernels is not None:
        return bool(_ckernels.tricolorable(n_arcs, array("q", crossings)))
    return _pykernels.tricolorable(n_arcs, crossings)
