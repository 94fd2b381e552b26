"""Knot diagrams as signed Gauss codes, Reidemeister moves and invariants.

A diagram is the circular sequence of crossings met while travelling along
the strand: ``O1+ U2+ O3+ U1+ O2+ U3+`` is the trefoil. Each crossing shows
up twice, once over and once under, with one sign.

Codes are not checked for planarity, so some of them describe virtual knots.
Moves and invariants below are purely combinatorial and stay valid there.

Every crossing in this model has an over-strand and an under-strand. Nothing
in it can express two strand points sharing a position, which is exactly
what identifying two occurrences of a chain would require.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import kernels
from .errors import (
    GaussParseError,
    IncompatibleWithKnotTheory,
    InvalidDiagram,
    MoveNotApplicable,
)

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def encode(cid: int, over: bool, sign: int) -> int:
    return (cid << 2) | (int(over) << 1) | int(sign > 0)


def cid_of(sym: int) -> int:
    return sym >> 2


def is_over(sym: int) -> bool:
    return bool(sym & 2)


def sign_of(sym: int) -> int:
    return 1 if sym & 1 else -1


def token(sym: int) -> str:
    return f"{'O' if is_over(sym) else 'U'}{cid_of(sym)}{'+' if sym & 1 else '-'}"


class KnotDiagram:
    """Immutable Gauss code; equality is up to rotation, reversal and relabelling."""

    __slots__ = ("code", "_key")

    def __init__(self, code: Sequence[int] = ()):
        code = tuple(code)
        seen: dict[int, list[int]] = {}
        for sym in code:
            if cid_of(sym) < 1:
                raise InvalidDiagram(f"crossing ids must be positive, got {cid_of(sym)}")
            seen.setdefault(cid_of(sym), []).append(sym)
        for cid, syms in seen.items():
            if len(syms) != 2:
                raise InvalidDiagram(f"crossing {cid} appears {len(syms)} times, not twice")
            a, b = syms
            if is_over(a) == is_over(b):
                raise InvalidDiagram(f"crossing {cid} needs one over and one under passage")
            if sign_of(a) != sign_of(b):
                raise InvalidDiagram(f"crossing {cid} carries two different signs")
        self.code = code
        self._key = None

    @classmethod
    def parse(cls, text: str) -> KnotDiagram:
        code = []
        for m in re.finditer(r"\S+", text):
            tm = _TOKEN.fullmatch(m.group())
            if tm is None:
                raise GaussParseError(
                    f"bad token {m.group()!r} at column {m.start() + 1}; expected e.g. O1+",
                    m.start(),
                )
            o, num, s = tm.groups()
            code.append(encode(int(num), o == "O", 1 if s == "+" else -1))
        try:
            return cls(code)
        except InvalidDiagram as exc:
            raise GaussParseError(str(exc)) from None

    @classmethod
    def load(cls, path) -> KnotDiagram:
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def __str__(self) -> str:
        return " ".join(token(s) for s in self.code)

    def __repr__(self) -> str:
        return f"KnotDiagram.parse({str(self)!r})"

    def __len__(self) -> int:
        return len(self.code)

    @property
    def n_crossings(self) -> int:
        return len(self.code) // 2

    @property
    def crossings(self) -> list[int]:
        return sorted({cid_of(s) for s in self.code})

    def key(self) -> tuple[int, ...]:
        if self._key is None:
            self._key = kernels.canonical(list(self.code))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, KnotDiagram) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


# --- moves -----------------------------------------------------------------

MOVE_KINDS = ("R1_remove", "R2_remove", "R3", "R1_add", "R2_add")


@dataclass(frozen=True)
class RMove:
    """A Reidemeister move at positions of the code.

    ``R1_remove (i,)``: positions i, i+1 hold one crossing.
    ``R2_remove (i, j)``: pairs at i and j hold the same two crossings.
    ``R3 (t, m, b)``: start positions of the top, middle and bottom pairs.
    ``R1_add (p,)``, ``R2_add (p, q)``: insertion points, with ``sign`` for
    the first new crossing, ``over_first`` for which passage comes first,
    and ``reverse`` for the order of the second R2 pair.
    """

    kind: str
    site: tuple[int, ...]
    sign: int = 1
    over_first: bool = True
    reverse: bool = False

    def __str__(self) -> str:
        s = f"{self.kind}@{','.join(map(str, self.site))}"
        if self.kind == "R1_add":
            s += f"[{'+' if self.sign > 0 else '-'}{'O' if self.over_first else 'U'}]"
        elif self.kind == "R2_add":
            s += (
                f"[{'+' if self.sign > 0 else '-'}{'O' if self.over_first else 'U'}"
                f"{'r' if self.reverse else ''}]"
            )
        return s

    def to_json(self) -> dict:
        out = {"kind": self.kind, "site": list(self.site)}
        if self.kind.endswith("_add"):
            out["sign"] = self.sign
            out["overFirst"] = self.over_first
        if self.kind == "R2_add":
            out["reverse"] = self.reverse
        return out


def _fail(move: RMove, why: str):
    raise MoveNotApplicable(f"{move}: {why}", witness=move.site)


def _check_r1(code, i) -> bool:
    n = len(code)
    return n >= 2 and 0 <= i < n and cid_of(code[i]) == cid_of(code[(i + 1) % n])


def _pair(code, i):
    n = len(code)
    return code[i % n], code[(i + 1) % n]


def _check_r2(code, i, j) -> bool:
    n = len(code)
    if n < 4 or not (0 <= i < n and 0 <= j < n):
        return False
    if len({i, (i + 1) % n, j, (j + 1) % n}) != 4:
        return False
    a1, a2 = _pair(code, i)
    b1, b2 = _pair(code, j)
    ids = {cid_of(a1), cid_of(a2)}
    if len(ids) != 2 or ids != {cid_of(b1), cid_of(b2)}:
        return False
    if not (is_over(a1) == is_over(a2) and is_over(b1) == is_over(b2)):
        return False
    return sign_of(a1) == -sign_of(a2)


def _r3_roles(code, t, m, b):
    """(x, y, z) crossings if the three pairs form a slide triangle, else None."""
    n = len(code)
    if n < 6 or any(not 0 <= s < n for s in (t, m, b)):
        return None
    if len({t, (t + 1) % n, m, (m + 1) % n, b, (b + 1) % n}) != 6:
        return None
    T, M, B = _pair(code, t), _pair(code, m), _pair(code, b)
    if not all(is_over(s) for s in T):
        return None
    if not any(is_over(s) for s in M) or all(is_over(s) for s in M):
        return None
    if any(is_over(s) for s in B):
        return None
    ux = next(s for s in M if not is_over(s))
    oz = next(s for s in M if is_over(s))
    x, z = cid_of(ux), cid_of(oz)
    tids = [cid_of(s) for s in T]
    if x not in tids:
        return None
    y = tids[1 - tids.index(x)]
    if {cid_of(s) for s in B} != {y, z} or len({x, y, z}) != 3:
        return None
    sx, sz = sign_of(ux), sign_of(oz)
    sy = sign_of(next(s for s in T if cid_of(s) == y))
    st = 1 if tids.index(x) == 0 else -1
    sm = 1 if cid_of(M[0]) == x else -1
    sb = 1 if cid_of(B[0]) == y else -1
    if not (sx * st * sm == sy * st * sb == sz * sm * sb):
        return None
    return x, y, z


def apply_rmove(d: KnotDiagram, move: RMove) -> KnotDiagram:
    code = list(d.code)
    n = len(code)
    kind = move.kind
    if kind == "R1_remove":
        if len(move.site) != 1 or not _check_r1(code, move.site[0]):
            _fail(move, "positions i and i+1 do not hold the same crossing")
        i = move.site[0]
        drop = {i, (i + 1) % n}
        return KnotDiagram(s for k, s in enumerate(code) if k not in drop)
    if kind == "R2_remove":
        if len(move.site) != 2 or not _check_r2(code, *move.site):
            _fail(move, "no bigon with one strand over both crossings")
        i, j = move.site
        drop = {i, (i + 1) % n, j, (j + 1) % n}
        return KnotDiagram(s for k, s in enumerate(code) if k not in drop)
    if kind == "R3":
        if len(move.site) != 3 or _r3_roles(code, *move.site) is None:
            _fail(move, "no slide triangle at these pairs")
        for s in move.site:
            a, b = s, (s + 1) % n
            code[a], code[b] = code[b], code[a]
        return KnotDiagram(code)
    if move.sign not in (1, -1):
        _fail(move, "sign must be +1 or -1")
    new = max(d.crossings, default=0) + 1
    if kind == "R1_add":
        if len(move.site) != 1 or not 0 <= move.site[0] <= n:
            _fail(move, f"insertion point outside 0..{n}")
        p = move.site[0]
        pair = [encode(new, move.over_first, move.sign), encode(new, not move.over_first, move.sign)]
        return KnotDiagram(code[:p] + pair + code[p:])
    if kind == "R2_add":
        if len(move.site) != 2 or not 0 <= move.site[0] <= move.site[1] <= n:
            _fail(move, f"insertion points must satisfy 0 <= p <= q <= {n}")
        p, q = move.site
        a, b = new, new + 1
        first = [encode(a, move.over_first, move.sign), encode(b, move.over_first, -move.sign)]
        second = [encode(a, not move.over_first, move.sign), encode(b, not move.over_first, -move.sign)]
        if move.reverse:
            second.reverse()
        return KnotDiagram(code[:p] + first + code[p:q] + second + code[q:])
    _fail(move, f"unknown move kind {kind!r}")


def inverse_move(d: KnotDiagram, move: RMove) -> RMove:
    """A move that undoes ``move`` when applied to ``apply_rmove(d, move)``.

    Restoration is up to rotation of the code.
    """
    n = len(d.code)
    if move.kind == "R1_add":
        return RMove("R1_remove", (move.site[0],))
    if move.kind == "R2_add":
        return RMove("R2_remove", (move.site[0], move.site[1] + 2))
    if move.kind == "R3":
        return move
    if move.kind == "R1_remove":
        i = move.site[0]
        first = d.code[i]
        if i == n - 1:
            return RMove("R1_add", (n - 2,), sign_of(first), is_over(first))
        return RMove("R1_add", (i,), sign_of(first), is_over(first))
    raise ValueError(f"no inverse recorded for {move.kind}")


def r3_sites(code: Sequence[int]) -> list[tuple[int, int, int]]:
    n = len(code)
    sites = set()
    for t in range(n):
        a, b = code[t], code[(t + 1) % n]
        if not (is_over(a) and is_over(b)) or cid_of(a) == cid_of(b):
            continue
        for x in (cid_of(a), cid_of(b)):
            ux = next(k for k in range(n) if cid_of(code[k]) == x and not is_over(code[k]))
            for m in ((ux - 1) % n, ux):
                for bb in range(n):
                    if _r3_roles(code, t, m, bb) is not None:
                        sites.add((t, m, bb))
    return sorted(sites)


def enumerate_applicable_moves(d: KnotDiagram) -> list[RMove]:
    """Every removal and slide that applies, then every insertion.

    Insertions run over each position with each sign and passage order;
    for R2 also over the order of the second pair.
    """
    code = d.code
    n = len(code)
    moves = [RMove("R1_remove", (i,)) for i in range(n) if _check_r1(code, i)]
    moves += [
        RMove("R2_remove", (i, j))
        for i in range(n)
        for j in range(i + 1, n)
        if _check_r2(code, i, j)
    ]
    moves += [RMove("R3", s) for s in r3_sites(code)]
    points = range(n) if n else [0]
    for p in points:
        for sign in (1, -1):
            for over in (True, False):
                moves.append(RMove("R1_add", (p,), sign, over))
    for p in points:
        for q in range(p, n + 1):
            for sign in (1, -1):
                for over in (True, False):
                    for rev in (False, True):
                        moves.append(RMove("R2_add", (p, q), sign, over, rev))
    return moves


# --- invariants ------------------------------------------------------------


def writhe(d: KnotDiagram) -> int:
    return sum(sign_of(s) for s in d.code if is_over(s))


def arcs(d: KnotDiagram) -> tuple[int, list[tuple[int, int, int]]]:
    """Arc count and, per crossing, (over arc, incoming under arc, outgoing under arc).

    Arcs run from one under-passage to the next.
    """
    code = d.code
    m = sum(1 for s in code if not is_over(s))
    if m == 0:
        return 0, []
    arc_at = []
    seen_under = 0
    for s in code:
        arc_at.append(seen_under % m)
        if not is_over(s):
            seen_under += 1
    over_arc = {}
    under = {}
    for k, s in enumerate(code):
        if is_over(s):
            over_arc[cid_of(s)] = arc_at[k]
        else:
            under[cid_of(s)] = (arc_at[k], (arc_at[k] + 1) % m)
    triples = [(over_arc[c], *under[c]) for c in sorted(over_arc)]
    return m, triples


def is_tricolorable(d: KnotDiagram) -> bool:
    n_arcs, triples = arcs(d)
    flat = [a for t in triples for a in t]
    return kernels.tricolorable(n_arcs, flat)


def lackenby_bound(c: int) -> int:
    """Known upper bound on moves needed to unknot a c-crossing unknot diagram.

    Exposed for scale only. The search below never uses it.
    """
    return (236 * c) ** 11


# --- search ----------------------------------------------------------------


def _neighbours(d: KnotDiagram) -> Iterator[tuple[RMove, KnotDiagram]]:
    for mv in enumerate_applicable_moves(d):
        yield mv, apply_rmove(d, mv)


def reduce_to_unknot(
    d: KnotDiagram,
    max_moves: int = 12,
    max_crossings: int = 8,
    prune_invariant: bool = True,
) -> list[RMove] | None:
    """Shortest move sequence from ``d`` to the empty diagram, or None.

    Breadth-first over diagrams up to rotation, reversal and relabelling.
    States above ``max_crossings`` are dropped, and so are states that cannot
    reach zero crossings in the moves left (a move removes at most two).
    With ``prune_invariant`` tricolorable states are dropped as well: the
    empty diagram is not tricolorable and every move keeps the invariant.
    None only means nothing was found within the bounds.
    """
    if max_moves < 0 or max_crossings < 0:
        raise ValueError("bounds must be nonnegative")
    if not d.code:
        return []
    if prune_invariant and is_tricolorable(d):
        return None

    def reachable(c: int, depth: int) -> bool:
        return depth + (c + 1) // 2 <= max_moves

    if not reachable(d.n_crossings, 0):
        return None
    seen = {d.key()}
    queue = deque([(d, ())])
    while queue:
        state, path = queue.popleft()
        depth = len(path) + 1
        for mv, nxt in _neighbours(state):
            c = nxt.n_crossings
            if c == 0:
                return list(path + (mv,))
            if c > max_crossings or not reachable(c, depth):
                continue
            k = nxt.key()
            if k in seen:
                continue
            seen.add(k)
            if prune_invariant and is_tricolorable(nxt):
                continue
            queue.append((nxt, path + (mv,)))
    return None


def attempt_collapse(d: KnotDiagram, arc_a: int, arc_b: int):
    """Try to identify two strand points. Always refused."""
    raise IncompatibleWithKnotTheory(
        f"cannot identify arcs {arc_a} and {arc_b}: every crossing of a knot "
        "diagram keeps one strand over the other, so two strand points never "
        "coincide; only an intersection could, and the diagram has none",
        witness=(arc_a, arc_b),
    )
